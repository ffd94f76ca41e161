// Neighborhoods split by edge color, colored through the bipartite double.

use herdisc::graph::{generate_family, Family};
use herdisc::orderings::degeneracy;
use herdisc::power::edge_color_coloring;
use herdisc::setsystem::{bipartite_double, EdgeColoring};

pub fn run_example() -> herdisc::Result<()> {
    for seed in 0..5 {
        let g = generate_family(Family::Gnp, &[80, 8, 100], seed)?;
        let gamma = EdgeColoring::random(&g, seed);
        let run = edge_color_coloring(&g, &gamma)?;
        let deg = degeneracy(&g);
        let double = bipartite_double(&g, &gamma)?;
        println!(
            "seed {seed}: deg={deg} double: {} vertices, deg={} disc={} < {}",
            double.n(),
            run.double_degeneracy,
            run.achieved,
            3 * deg
        );
    }
    Ok(())
}

fn main() -> herdisc::Result<()> {
    run_example()
}
