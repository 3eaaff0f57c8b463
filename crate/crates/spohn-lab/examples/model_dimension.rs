// Clique parametrization and dimension of binary graphical models.

use spohn_lab::cimodel::{model_dimension, model_quadrics, param_map};
use spohn_lab::polyring::rat;
use spohn_lab::{Graph, Polynomial, Result};

fn run_example() -> Result<()> {
    for name in ["line4", "cycle4", "figure2", "g4-example"] {
        let g = Graph::builtin(name).expect("built-in");
        let (f0, f2) = g.clique_complex_face_counts();
        println!("{name}: {f0} vertices, {f2} faces with >= 2 vertices, model dimension {}", model_dimension(&g));
    }

    let g = Graph::builtin("line4").expect("built-in");
    let pm = param_map(&g);
    println!("torus of line4: {}", pm.torus().names().join(" "));
    println!("p1212 -> {}", Polynomial::monomial(pm.torus(), pm.image(5).clone(), rat(1)));

    let quadrics = model_quadrics(&g, &[2; 4])?;
    let mut killed = 0;
    for q in &quadrics {
        if pm.apply(q)?.is_zero() {
            killed += 1;
        }
    }
    println!("{killed} of {} global Markov quadrics vanish under the parametrization", quadrics.len());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
