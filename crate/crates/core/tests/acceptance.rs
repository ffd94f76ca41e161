//! Acceptance criteria. Runs without the libtest harness so every
//! criterion prints a PASS or FAIL line; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::Rng;

use herdisc::approx::{epsilon_approximation, verify_net, Rational};
use herdisc::discrepancy::{beck_fiala, eval_discrepancy, exact_discrepancy, herdisc_search, spectral_lower_bound};
use herdisc::graph::{generate_family, graph_power, random_degenerate, subdivide, sylvester_graph, Family, Graph};
use herdisc::orderings::{degeneracy, degeneracy_order, orient_along, wcol_exact};
use herdisc::pointer::{
    assemble, check_psi_disjoint, defined_system, eval_formula, from_degenerate_graph, psi_system, qf_color, qf_decompose, random_formula,
    random_structure, FormulaShape,
};
use herdisc::power::{edge_color_coloring, orientation_coloring, orientation_coloring_on, power_coloring};
use herdisc::rng;
use herdisc::setsystem::{bipartite_double, edge_color_system, neighborhood_system, random_system, EdgeColoring};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gnp(n: usize, percent: u64, seed: u64) -> Graph {
    generate_family(Family::Gnp, &[n as u64, percent, 100], seed).unwrap()
}

fn beck_fiala_contract() -> Outcome {
    let mut rng = rng::seeded(1);
    let start = Instant::now();
    let mut worst_ratio = (0, 1);
    for case in 0..1000 {
        let t = rng.gen_range(1..=6);
        let n = rng.gen_range(1..=500);
        let slots = rng.gen_range(t..=n.max(t));
        let s = random_system(n, slots, t, rng.gen()).unwrap();
        let t = s.degree() as u64;
        let disc = eval_discrepancy(&s, &beck_fiala(&s)).unwrap().max;
        ensure(disc < 2 * t.max(1), || format!("case {case}: disc {disc} with degree {t}"))?;
        if disc * worst_ratio.1 > worst_ratio.0 * t.max(1) {
            worst_ratio = (disc, t.max(1));
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("1000 systems in {:.1}s, worst disc/t = {}/{}", elapsed.as_secs_f64(), worst_ratio.0, worst_ratio.1))
}

/// Grids, gnp at four densities and subdivisions of both; never edgeless.
fn sparse_corpus(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = rng::seeded(seed);
    let mut graphs = Vec::new();
    while graphs.len() < count {
        let g = match graphs.len() % 4 {
            0 => Graph::grid(rng.gen_range(2..=10), rng.gen_range(2..=10)),
            1 | 2 => gnp(rng.gen_range(10..=80), [3, 5, 10, 20][rng.gen_range(0..4)], rng.gen()),
            _ => {
                let base = if rng.gen_bool(0.5) { Graph::grid(rng.gen_range(2..=6), rng.gen_range(2..=6)) } else { gnp(25, 15, rng.gen()) };
                subdivide(&base, rng.gen_range(1..=2))
            }
        };
        if g.edge_count() > 0 {
            graphs.push(g);
        }
    }
    graphs
}

fn orientation_bound() -> Outcome {
    let mut rng = rng::seeded(2);
    let mut traces = 0;
    for (i, g) in sparse_corpus(200, 20).iter().enumerate() {
        let (order, deg) = degeneracy_order(g);
        let bound = 3 * deg as u64;
        let orientation = orient_along(g, &order).unwrap();
        let system = neighborhood_system(g);
        let run = orientation_coloring(g, &orientation).unwrap();
        let disc = eval_discrepancy(&system, &run.coloring).unwrap().max;
        ensure(disc < bound, || format!("graph {i}: disc {disc}, degeneracy {deg}"))?;
        for _ in 0..50 {
            let subset: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
            let traced = orientation_coloring_on(g, &orientation, Some(&subset)).unwrap();
            let (sx, _) = system.trace(&subset).unwrap();
            let d = eval_discrepancy(&sx, &traced.coloring).unwrap().max;
            ensure(d < bound, || format!("graph {i}, subset {subset:?}: disc {d}, degeneracy {deg}"))?;
            traces += 1;
        }
    }
    Ok(format!("200 graphs, {traces} traces"))
}

fn exact_oracles() -> Outcome {
    let c5 = neighborhood_system(&Graph::cycle(5));
    let d = exact_discrepancy(&c5).unwrap().0;
    ensure(d == 2, || format!("disc C5 = {d}"))?;
    let mut her = 0;
    for mask in 1u32..32 {
        let subset: Vec<usize> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
        her = her.max(exact_discrepancy(&c5.trace(&subset).unwrap().0).unwrap().0);
    }
    ensure(her == 2, || format!("herdisc C5 = {her}"))?;
    let search = herdisc_search(&c5, 32, 0).unwrap();
    ensure(search.exhaustive && search.lower_bound == 2, || format!("herdisc_search C5 = {search:?}"))?;

    let expected = [1, 2, 2];
    let got: Vec<u64> = (1..=3).map(|p| exact_discrepancy(&neighborhood_system(&sylvester_graph(p).unwrap())).unwrap().0).collect();
    ensure(got == expected, || format!("Sylvester discrepancies {got:?}, oracle {expected:?}"))?;
    ensure(got.windows(2).all(|w| w[0] <= w[1]), || format!("{got:?} decreases"))?;
    Ok(format!("C5 disc = herdisc = 2, Sylvester p=1..3: {got:?}"))
}

fn power_pipeline() -> Outcome {
    let mut graphs: Vec<Graph> = Vec::new();
    for r in 1..=8 {
        for c in r..=8 {
            graphs.push(Graph::grid(r, c));
        }
    }
    let mut rng = rng::seeded(4);
    for _ in 0..24 {
        graphs.push(gnp(rng.gen_range(5..=60), [5, 8, 15][rng.gen_range(0..3)], rng.gen()));
    }
    let mut runs = 0;
    for (i, g) in graphs.iter().enumerate() {
        for d in 1..=3 {
            let (chi, cert) = power_coloring(g, d, None).unwrap();
            let achieved = eval_discrepancy(&neighborhood_system(&graph_power(g, d).unwrap()), &chi).unwrap().max;
            ensure(achieved < cert.claimed_bound, || format!("graph {i}, d={d}: {achieved} vs {}", cert.claimed_bound))?;
            runs += 1;
        }
        let (order, deg) = degeneracy_order(g);
        let (_, cert) = power_coloring(g, 1, Some(&order)).unwrap();
        ensure(cert.claimed_bound == 3 * (deg as u64 + 1), || format!("graph {i}: d=1 bound {}, deg {deg}", cert.claimed_bound))?;
    }
    Ok(format!("{runs} runs over {} graphs", graphs.len()))
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(move |mask| Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap())
}

fn wcol_identity() -> Outcome {
    let mut corpus: Vec<Graph> = (1..=5).flat_map(all_graphs).collect();
    for n in 1..=7 {
        corpus.extend([Graph::path(n), Graph::complete(n), Graph::star(n - 1), Graph::empty(n)]);
        if n >= 3 {
            corpus.push(Graph::cycle(n));
        }
    }
    corpus.extend([Graph::complete_bipartite(3, 4), Graph::complete_bipartite(2, 5), Graph::grid(2, 3)]);
    let mut rng = rng::seeded(5);
    for _ in 0..100 {
        corpus.push(gnp(rng.gen_range(6..=7), rng.gen_range(10..=90), rng.gen()));
    }
    for (i, g) in corpus.iter().enumerate() {
        let w = wcol_exact(g, 1).unwrap();
        let deg = degeneracy(g);
        ensure(w == deg + 1, || format!("graph {i}: wcol_1 {w}, degeneracy {deg}"))?;
    }
    Ok(format!("{} graphs", corpus.len()))
}

/// `[0, n)^k` in lexicographic order.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t: Vec<usize>| (0..n).map(move |v| [t.as_slice(), &[v]].concat())).collect();
    }
    out
}

fn decomposition_soundness() -> Outcome {
    let mut rng = rng::seeded(6);
    let mut checked = 0;
    for pair in 0..500 {
        let n = rng.gen_range(1..=8);
        let x_arity = if n <= 4 { rng.gen_range(1..=2) } else { 1 };
        let shape = FormulaShape::standard(x_arity, rng.gen_range(0..=2), rng.gen_range(1..=2), rng.gen_range(0..=2), 4);
        let m = random_structure(n, 2, 2, rng.gen());
        let phi = random_formula(&shape, rng.gen()).unwrap();
        let dec = qf_decompose(&phi).unwrap();
        check_psi_disjoint(&m, &dec).map_err(|e| format!("pair {pair}: {e}"))?;
        for psi in &dec.psis {
            let s = psi_system(&m, psi, phi.x_arity).unwrap();
            ensure(s.degree() <= 1, || format!("pair {pair}: ψ system of degree {}", s.degree()))?;
        }
        let xs = tuples(n, phi.x_arity);
        for b in tuples(n, phi.y_arity) {
            let direct: Vec<usize> = (0..xs.len()).filter(|&i| eval_formula(&m, &phi, &xs[i], &b).unwrap()).collect();
            let built = assemble(&m, &dec, &b).unwrap();
            ensure(built == direct, || format!("pair {pair}: '{phi}' at {b:?}: {built:?} vs {direct:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("500 pairs, {checked} parameter tuples, 0 mismatches"))
}

fn eta_constant() -> Outcome {
    let mut bounds = Vec::new();
    let mut maxima = Vec::new();
    for n in [10, 50, 200, 500] {
        let mut best = 0;
        for seed in 0..5 {
            let g = random_degenerate(n, 2, seed);
            let (m, eta) = from_degenerate_graph(&g);
            ensure(defined_system(&m, &eta).unwrap() == neighborhood_system(&g), || format!("n={n}: η does not define N(v)"))?;
            let run = qf_color(&m, std::slice::from_ref(&eta)).unwrap();
            let d = eval_discrepancy(&neighborhood_system(&g), &run.coloring).unwrap().max;
            ensure(d as u128 <= run.bound, || format!("n={n} seed {seed}: {d} > {}", run.bound))?;
            bounds.push(run.bound);
            best = best.max(d);
        }
        maxima.push(best);
    }
    ensure(bounds.iter().all(|&b| b == bounds[0]), || format!("bound varies: {bounds:?}"))?;
    let ceiling = bounds[0];
    ensure(maxima.iter().all(|&d| d as u128 <= ceiling), || format!("maxima {maxima:?} above {ceiling}"))?;
    Ok(format!("bound {ceiling} at every n; achieved maxima {maxima:?}"))
}

fn epsilon_approximation_grid() -> Outcome {
    let s = neighborhood_system(&Graph::grid(8, 8));
    let mut summary = String::new();
    for eps in [Rational::new(1, 4), Rational::new(1, 2), Rational::new(1, 8)] {
        let r = epsilon_approximation(&s, eps).unwrap();
        let (full, _) = s.with_ground_set();
        let a = r.sample.len() as u64;
        let mut measured = Rational::new(0, 1);
        for set in full.sets() {
            let hit = Rational::new(set.iter().filter(|v| r.sample.contains(v)).count() as u64, a);
            let share = Rational::new(set.len() as u64, 64);
            measured = measured.max(if hit > share { hit - share } else { share - hit });
        }
        ensure(measured == r.epsilon_measured, || format!("eps {eps}: measured {measured} vs reported {}", r.epsilon_measured))?;
        ensure(measured <= r.epsilon_claimed && r.epsilon_claimed <= eps, || {
            format!("eps {eps}: {measured} / {} / {eps}", r.epsilon_claimed)
        })?;
        let cap = (Rational::from_integer(2 * r.max_disc_used()) / eps).ceil().to_integer();
        ensure(a <= cap, || format!("eps {eps}: |A| = {a} above {cap}"))?;
        ensure(verify_net(&s, &r.sample, eps), || format!("eps {eps}: not a net"))?;
        if eps == Rational::new(1, 4) {
            summary = format!("eps 1/4: |A| = {a} <= {cap}, measured {measured} <= claimed {}", r.epsilon_claimed);
        }
    }
    Ok(summary)
}

fn edge_colored() -> Outcome {
    let mut rng = rng::seeded(9);
    let mut done = 0;
    while done < 100 {
        let g = gnp(rng.gen_range(5..=60), [5, 10, 20][rng.gen_range(0..3)], rng.gen());
        if g.edge_count() == 0 {
            continue;
        }
        let gamma = EdgeColoring::random(&g, rng.gen());
        let deg = degeneracy(&g);
        let double = bipartite_double(&g, &gamma).unwrap();
        ensure(degeneracy(&double) <= deg, || format!("graph {done}: double degeneracy {} > {deg}", degeneracy(&double)))?;
        let colored = edge_color_system(&g, &gamma).unwrap();
        ensure(colored.is_subfamily_of(&neighborhood_system(&double)), || format!("graph {done}: not a subfamily"))?;
        let run = edge_color_coloring(&g, &gamma).unwrap();
        let d = eval_discrepancy(&colored, &run.coloring).unwrap().max;
        ensure(d < 3 * deg as u64, || format!("graph {done}: disc {d}, degeneracy {deg}"))?;
        done += 1;
    }
    Ok("100 graphs".into())
}

fn spectral_soundness() -> Outcome {
    let mut rng = rng::seeded(10);
    let mut tight = 0;
    for case in 0..100 {
        let n = rng.gen_range(1..=12);
        let slots = rng.gen_range(1..=14);
        let s = random_system(n, slots, rng.gen_range(1..=slots), rng.gen()).unwrap();
        let lower: Ratio<u64> = spectral_lower_bound(&s).unwrap();
        let exact = exact_discrepancy(&s).unwrap().0;
        ensure(lower.floor().to_integer() <= exact, || format!("case {case}: spectral {lower} > exact {exact}"))?;
        tight += usize::from(lower.floor().to_integer() == exact);
    }
    Ok(format!("100 systems, {tight} with floor(bound) = exact"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("beck-fiala contract", beck_fiala_contract),
        ("orientation bound", orientation_bound),
        ("exact oracles", exact_oracles),
        ("graph power pipeline", power_pipeline),
        ("wcol_1 = degeneracy + 1", wcol_identity),
        ("decomposition soundness", decomposition_soundness),
        ("η bound independent of n", eta_constant),
        ("ε-approximation of 8x8 grid", epsilon_approximation_grid),
        ("edge-colored neighborhoods", edge_colored),
        ("spectral lower bound soundness", spectral_soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("FAIL {:>2} {name}: panicked", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
