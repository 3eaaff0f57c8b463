// Numerical dimension of Spohn CI varieties against the clique count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spohn_lab::numeric::{dimension_probe, SolveConfig};
use spohn_lab::spohnci::expected_spohn_ci_dimension;
use spohn_lab::{Game, Graph, Result};

fn run_example() -> Result<()> {
    let cfg = SolveConfig::new(2);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for name in ["empty:3", "line:3", "complete:3", "line4", "cycle4", "g4-example"] {
        let g = Graph::builtin(name).expect("built-in");
        let game = Game::random_binary(g.vertex_count(), &mut rng);
        let probe = dimension_probe(&g, &game, &cfg)?;
        let smallest = probe.singular_values[0].iter().rev().take(3).map(|s| format!("{s:.1e}")).collect::<Vec<_>>();
        println!(
            "{name}: probe {} (local {:?}), expected {}, smallest singular values {}",
            probe.dimension,
            probe.local_dimensions,
            expected_spohn_ci_dimension(&g),
            smallest.join(" ")
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
