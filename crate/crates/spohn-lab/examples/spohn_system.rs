// Torus polynomials of a random binary game on a graph, with the factors
// stripped from the raw determinants.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spohn_lab::spohnci::{build_system, expected_multidegree, expected_spohn_ci_dimension};
use spohn_lab::{Game, Graph, Result};

fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // Triangle on 1,2,3 with 4 and 5 isolated.
    let g = Graph::from_labeled_edges(5, &[(1, 2), (2, 3), (1, 3)])?;
    let game = Game::random_binary(5, &mut rng);
    let sys = build_system(&g, &game)?;
    sys.verify_reconstruction()?;

    println!("torus blocks: {}", sys.param().cliques().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
    for (i, f) in sys.polys().iter().enumerate() {
        let stripped = &sys.stripped()[i];
        println!(
            "F{}: {} terms, multidegree {:?} (expected {:?}), {} factor(s) stripped",
            i + 1,
            f.num_terms(),
            f.multidegree()?,
            expected_multidegree(&g, i),
            stripped.factors.len()
        );
    }
    println!("F4 = {}", sys.polys()[3]);
    println!("expected dimension of the Spohn CI variety: {}", expected_spohn_ci_dimension(&g));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
