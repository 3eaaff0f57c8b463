// Lifting a game by clique-paired players and checking the solution set grows
// by one affine direction per pair.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spohn_lab::numeric::{chart_dimension_probe, SolveConfig};
use spohn_lab::spohnci::nash_ci_system;
use spohn_lab::universality::{embed_variety, lift_game, sparse_game};
use spohn_lab::{Game, Partition, Result};

fn chart_dim(part: &Partition, game: &Game, cfg: &SolveConfig) -> Result<i64> {
    let sys = nash_ci_system(part, game)?;
    Ok(chart_dimension_probe(sys.param(), sys.polys(), cfg)?.dimension)
}

fn run_example() -> Result<()> {
    let cfg = SolveConfig::new(4);
    let base = Game::random_binary(3, &mut ChaCha8Rng::seed_from_u64(21));
    let d0 = chart_dim(&Partition::from_sizes(&[1, 1, 1])?, &base, &cfg)?;
    println!("base: 3 players, solution set dimension {d0}");
    for l in 1..=2 {
        let lifted = lift_game(&base, l)?;
        println!(
            "l = {l}: {} players, partition {:?}, dimension {}, verification {:?}",
            lifted.game.players(),
            lifted.partition.sizes(),
            chart_dim(&lifted.partition, &lifted.game, &cfg)?,
            lifted.report
        );
        for t in &lifted.targets {
            println!("  target {t}");
        }
    }

    // Player 2 has a zero table, so the base solution set is a curve.
    let curve = sparse_game(2, &[(1, &[1, 1], 2), (1, &[1, 2], -1), (1, &[2, 1], 5), (1, &[2, 2], 1)])?;
    let embedded = embed_variety(&curve, 2, 1, 1)?;
    println!(
        "embedded curve: partition {:?}, dimension {}",
        embedded.partition.sizes(),
        chart_dim(&embedded.partition, &embedded.game, &cfg)?
    );
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
