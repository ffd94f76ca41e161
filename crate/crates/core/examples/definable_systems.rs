// Set systems defined by quantifier-free formulas over pointer structures.

use herdisc::discrepancy::eval_discrepancy;
use herdisc::graph::random_degenerate;
use herdisc::pointer::{defined_system, from_degenerate_graph, parse_formula, qf_color, qf_decompose, PointerStructure};

pub fn run_example() -> herdisc::Result<()> {
    // the set of y: elements x with A(x) whose f-image is y (y in B) or f(y) (otherwise)
    let m = PointerStructure::new(6)
        .with_function("f", vec![1, 1, 4, 0, 4, 2])?
        .with_predicate("A", &[0, 2, 3, 5])?
        .with_predicate("B", &[1, 4])?;
    let phi = parse_formula("A(x1) & (B(y1) & f(x1)=y1 | !B(y1) & f(x1)=f(y1))")?;
    let dec = qf_decompose(&phi)?;
    println!("{phi}\n{dec}");
    println!("k={} t={}", dec.k(), dec.t());
    for set in defined_system(&m, &phi)?.sets() {
        println!("  {set:?}");
    }

    // neighborhoods of a 2-degenerate graph as one fixed formula
    for n in [20, 200, 1000] {
        let g = random_degenerate(n, 2, 1);
        let (m, eta) = from_degenerate_graph(&g);
        let run = qf_color(&m, std::slice::from_ref(&eta))?;
        let disc = eval_discrepancy(&defined_system(&m, &eta)?, &run.coloring)?.max;
        println!("n={n:<5} disc={disc} bound={} closure: {} sets, degree {}", run.bound, run.closure_size, run.closure_degree);
    }
    Ok(())
}

fn main() -> herdisc::Result<()> {
    run_example()
}
