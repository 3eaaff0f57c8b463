// Pairwise and global Markov statements of small graphs.

use spohn_lab::{Graph, Result, VertexSet};

fn run_example() -> Result<()> {
    let line = Graph::builtin("line4").expect("built-in");
    println!("pairwise(line4):");
    for s in line.pairwise_markov() {
        println!("  {s}");
    }
    let global = line.global_markov()?;
    println!("global(line4): {} statements", global.len());
    for s in global.iter().take(6) {
        println!("  {s}");
    }

    // {2} separates 1 from {3,4}.
    let sep = line.separates(VertexSet::singleton(0), VertexSet::from_vertices([2, 3]), VertexSet::singleton(1))?;
    println!("1 separated from 34 by 2: {sep}");

    let cycle = Graph::builtin("cycle4").expect("built-in");
    println!("pairwise(cycle4):");
    for s in cycle.pairwise_markov() {
        println!("  {s}");
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
