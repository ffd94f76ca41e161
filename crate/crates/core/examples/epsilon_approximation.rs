// ε-approximations of a grid's neighborhood system by repeated halving.

use herdisc::approx::{epsilon_approximation, verify_net, Rational};
use herdisc::graph::Graph;
use herdisc::setsystem::neighborhood_system;

pub fn run_example() -> herdisc::Result<()> {
    let s = neighborhood_system(&Graph::grid(8, 8));
    for q in [2, 4, 8, 16] {
        let eps = Rational::new(1, q);
        let r = epsilon_approximation(&s, eps)?;
        let used: Vec<u64> = r.levels.iter().map(|l| l.disc_used).collect();
        println!(
            "eps=1/{q:<2} |A|={:<3} claimed={:<6} measured={:<6} net={} levels={used:?}",
            r.sample.len(),
            r.epsilon_claimed.to_string(),
            r.epsilon_measured.to_string(),
            verify_net(&s, &r.sample, eps)
        );
    }
    Ok(())
}

fn main() -> herdisc::Result<()> {
    run_example()
}
