// Sampling totally mixed CI equilibria and their payoff region.

use spohn_lab::cli::reproduce::z_coordinates;
use spohn_lab::numeric::{pareto_dominates, payoff_region_sample, sample_ci_equilibria, SolveConfig};
use spohn_lab::{Game, Graph, Result};

fn run_example() -> Result<()> {
    let cfg = SolveConfig::new(5);
    let game = Game::builtin("example-4player").expect("built-in");
    let g = Graph::builtin("g4-example").expect("built-in");

    let pts = sample_ci_equilibria(&g, &game, 10, &cfg)?;
    for pt in &pts {
        let z = z_coordinates(&pt.probabilities);
        println!("z = {:.5?}  z0z3 - z1z2 = {:.1e}", z, z[0] * z[3] - z[1] * z[2]);
    }

    let nash = [4.0 / 3.0, -4.0 / 3.0, 4.0 / 3.0, -4.0 / 3.0];
    let pays = payoff_region_sample(&g, &game, 200, &cfg)?;
    let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
    for v in &pays {
        for (k, &i) in [0, 2].iter().enumerate() {
            lo[k] = lo[k].min(v[i]);
            hi[k] = hi[k].max(v[i]);
        }
    }
    let better = pays.iter().filter(|v| pareto_dominates(&[v[0], v[2]], &[nash[0], nash[2]])).count();
    println!("{} payoff vectors; PX1 in [{:.3}, {:.3}], PX3 in [{:.3}, {:.3}]", pays.len(), lo[0], hi[0], lo[1], hi[1]);
    println!("{better} of them beat the Nash payoff for players 1 and 3");
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
