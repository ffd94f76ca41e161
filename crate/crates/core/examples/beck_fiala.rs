// Beck–Fiala on random bounded-degree systems.

use herdisc::discrepancy::{beck_fiala_report, eval_discrepancy};
use herdisc::setsystem::random_system;

pub fn run_example() -> herdisc::Result<()> {
    println!("{:>5} {:>3} {:>6} {:>5} {:>5}", "n", "t", "rounds", "disc", "bound");
    for (seed, (n, t)) in [(40, 1), (120, 2), (200, 3), (300, 4), (500, 6)].into_iter().enumerate() {
        let s = random_system(n, n, t, seed as u64)?;
        let (chi, report) = beck_fiala_report(&s);
        let disc = eval_discrepancy(&s, &chi)?.max;
        assert!(disc <= report.bound);
        println!("{n:>5} {:>3} {:>6} {disc:>5} {:>5}", report.degree, report.rounds, report.bound);
    }
    Ok(())
}

fn main() -> herdisc::Result<()> {
    run_example()
}
