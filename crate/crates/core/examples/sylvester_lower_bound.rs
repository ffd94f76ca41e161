// Sylvester graphs: neighborhood systems whose discrepancy grows with n.
// Exact values for small p, the spectral certificate beyond.

use herdisc::discrepancy::{beck_fiala, eval_discrepancy, exact_discrepancy, spectral_lower_bound};
use herdisc::graph::{hadamard, sylvester_graph};
use herdisc::orderings::degeneracy;
use herdisc::setsystem::neighborhood_system;

pub fn run_example() -> herdisc::Result<()> {
    for p in 1..=6 {
        assert!(hadamard(p)?.is_orthogonal());
        let g = sylvester_graph(p)?;
        let s = neighborhood_system(&g);
        let spectral = spectral_lower_bound(&s)?;
        let bf = eval_discrepancy(&s, &beck_fiala(&s))?.max;
        // exhaustive search only while the ground set is small
        let exact = if g.n() <= 16 { exact_discrepancy(&s)?.0.to_string() } else { "-".into() };
        println!(
            "p={p} n={:<3} deg={:<2} spectral>={:<6.3} exact={exact:<2} beck-fiala={bf}",
            g.n(),
            degeneracy(&g),
            *spectral.numer() as f64 / *spectral.denom() as f64,
        );
    }
    Ok(())
}

fn main() -> herdisc::Result<()> {
    run_example()
}
