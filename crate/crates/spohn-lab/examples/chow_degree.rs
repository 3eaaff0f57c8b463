// Degrees and canonical multidegrees of Nash CI varieties.

use spohn_lab::chow::{canonical_multidegree, is_general_type_surface, nash_ci_degree, nash_ci_degree_class};
use spohn_lab::spohnci::expected_nash_ci_dimension;
use spohn_lab::{Partition, Result};

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.push(first);
            out.push(rest);
        }
    }
    out
}

fn run_example() -> Result<()> {
    for n in 2..=5 {
        for sizes in partitions(n, n) {
            let part = Partition::from_sizes(&sizes)?;
            println!(
                "{:?}: dimension {}, degree {}, canonical {:?}",
                part.sizes(),
                expected_nash_ci_dimension(&part),
                nash_ci_degree(&part)?,
                canonical_multidegree(&part)
            );
        }
    }
    let surface = Partition::from_sizes(&[2, 2])?;
    println!("class of (2,2): {}", nash_ci_degree_class(&surface)?);
    println!("(2,2) surfaces are of general type: {}", is_general_type_surface(&surface)?);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
