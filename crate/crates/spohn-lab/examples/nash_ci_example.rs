// Nash CI equations of the built-in 4-player game on two 2-cliques.

use spohn_lab::cli::reproduce::displayed_product;
use spohn_lab::spohnci::{expected_nash_ci_dimension, nash_ci_system, w_system_generators};
use spohn_lab::{Game, Partition, Result};

fn run_example() -> Result<()> {
    let game = Game::builtin("example-4player").expect("built-in");
    let part = Partition::from_sizes(&[2, 2])?;
    let sys = nash_ci_system(&part, &game)?;
    for (i, f) in sys.polys().iter().enumerate() {
        let shown = displayed_product(sys.torus(), i)?;
        println!("F{} = {f}", i + 1);
        println!("   proportional to the displayed l{}q{}: {}", i + 1, i + 1, f.is_proportional(&shown));
    }
    println!("dimension: {}", expected_nash_ci_dimension(&part));

    let w = w_system_generators(&part, 0, 0)?;
    println!("linear system of F1 has {} generators:", w.len());
    for p in &w {
        println!("  {p}");
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
