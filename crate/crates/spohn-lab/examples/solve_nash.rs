// Totally mixed Nash equilibria by multistart Newton.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spohn_lab::cli::reproduce::z_coordinates;
use spohn_lab::numeric::{solve_totally_mixed_nash, SolveConfig};
use spohn_lab::{Game, Result};

fn run_example() -> Result<()> {
    let cfg = SolveConfig::new(1);
    let game = Game::builtin("example-4player").expect("built-in");
    for pt in solve_totally_mixed_nash(&game, &cfg)? {
        let payoffs = game.payoff_map(&pt.distribution()?)?;
        println!("4-player game: z = {:?}, payoffs {:?}", z_coordinates(&pt.probabilities), payoffs);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..3 {
        let game = Game::random_binary(3, &mut rng);
        let pts = solve_totally_mixed_nash(&game, &cfg)?;
        println!("random 3-player game {k}: {} totally mixed equilibria", pts.len());
        for pt in pts {
            println!("  torus {:?}, residuals {:.1e} / {:.1e}", pt.torus, pt.quadric_residual, pt.minor_residual);
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
