// Neighborhood systems of sparse graphs colored through a degeneracy
// orientation; the result stays below three times the degeneracy, also on
// every trace.

use herdisc::graph::{generate_family, subdivide, Family, Graph};
use herdisc::orderings::{degeneracy_order, orient_along};
use herdisc::power::{orientation_coloring, orientation_coloring_on};

pub fn run_example() -> herdisc::Result<()> {
    let graphs = [
        ("grid 12x12", Graph::grid(12, 12)),
        ("petersen", Graph::petersen()),
        ("gnp 200, p=0.03", generate_family(Family::Gnp, &[200, 3, 100], 7)?),
        ("K6 subdivided twice", subdivide(&Graph::complete(6), 2)),
    ];
    for (name, g) in &graphs {
        let (order, deg) = degeneracy_order(g);
        let orientation = orient_along(g, &order)?;
        let run = orientation_coloring(g, &orientation)?;
        let evens: Vec<usize> = (0..g.n()).step_by(2).collect();
        let traced = orientation_coloring_on(g, &orientation, Some(&evens))?;
        println!("{name:<20} deg={deg} out={} disc={} even-trace disc={} (< {})", run.out_degree, run.achieved, traced.achieved, 3 * deg);
    }
    Ok(())
}

fn main() -> herdisc::Result<()> {
    run_example()
}
