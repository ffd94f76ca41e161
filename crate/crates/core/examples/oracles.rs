// Brute-force oracles on small instances.

use herdisc::discrepancy::{exact_discrepancy, herdisc_search, spectral_lower_bound};
use herdisc::graph::Graph;
use herdisc::orderings::{degeneracy, wcol_exact};
use herdisc::setsystem::{neighborhood_system, shatter, vc_dimension, ShatterMode};

pub fn run_example() -> herdisc::Result<()> {
    let graphs = [
        ("C5", Graph::cycle(5)),
        ("petersen", Graph::petersen()),
        ("K3,3", Graph::complete_bipartite(3, 3)),
        ("grid 3x3", Graph::grid(3, 3)),
    ];
    for (name, g) in &graphs {
        let s = neighborhood_system(g);
        let (disc, chi) = exact_discrepancy(&s)?;
        let her = herdisc_search(&s, 1 << 12, 0)?;
        println!(
            "{name:<9} disc={disc} herdisc{}{} spectral>={} vc={} pi(3)={} coloring={:?}",
            if her.exhaustive { "=" } else { ">=" },
            her.lower_bound,
            spectral_lower_bound(&s)?,
            vc_dimension(&s)?,
            shatter(&s, 3, ShatterMode::Primal)?,
            chi.values()
        );
    }
    for (name, g) in [("P7", Graph::path(7)), ("C7", Graph::cycle(7)), ("K2,4", Graph::complete_bipartite(2, 4))] {
        println!("{name}: wcol_1={} wcol_2={} degeneracy={}", wcol_exact(&g, 1)?, wcol_exact(&g, 2)?, degeneracy(&g));
    }
    Ok(())
}

fn main() -> herdisc::Result<()> {
    run_example()
}
