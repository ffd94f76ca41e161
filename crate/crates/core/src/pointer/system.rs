use std::collections::{BTreeMap, HashSet, VecDeque};

use super::decompose::{assemble, qf_decompose, Conjunction, Literal, Psi, PsiDecomposition};
use super::formula::{eval_formula, eval_node, parse_formula, Assignment, Node, QFFormula, Term};
use super::structure::PointerStructure;
use super::{for_each_tuple, ground_size_for};
use crate::discrepancy::{beck_fiala, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::orderings::{degeneracy_order, orient_along};
use crate::setsystem::SetSystem;

/// Most parameter tuples `defined_system` will enumerate.
pub const PARAMETER_CAP: usize = 1_000_000;
/// Most sets `intersection_closure` will produce.
pub const CLOSURE_CAP: usize = 100_000;

fn parameter_count(n: usize, y_arity: usize) -> Result<usize> {
    u32::try_from(y_arity)
        .ok()
        .and_then(|k| n.checked_pow(k))
        .filter(|&c| c <= PARAMETER_CAP)
        .ok_or_else(|| Error::limit(format!("{n}^{y_arity} parameter tuples exceed {PARAMETER_CAP}")))
}

/// `{φ(M, b̄) : b̄ ∈ M^|ȳ|}` over the `x̄`-tuples of `M`, indexed lexicographically.
pub fn defined_system(m: &PointerStructure, phi: &QFFormula) -> Result<SetSystem> {
    let ground = ground_size_for(m.n(), phi.x_arity)?;
    parameter_count(m.n(), phi.y_arity)?;
    let mut sets = Vec::new();
    for_each_tuple(m.n(), phi.y_arity, |b| {
        let mut set = Vec::new();
        let mut index = 0;
        for_each_tuple(m.n(), phi.x_arity, |a| {
            if eval_node(m, &phi.root, &Assignment { x: a, y: b, z: &[] })? {
                set.push(index);
            }
            index += 1;
            Ok(())
        })?;
        sets.push(set);
        Ok(())
    })?;
    SetSystem::new(ground, sets)
}

/// The structure on `V(G)` whose functions `f1..fd` follow the arcs of a
/// degeneracy orientation (a vertex without an `i`-th arc is fixed by `fi`),
/// and the formula `η(x; y)` whose defined system is `{N(v)}`.
pub fn from_degenerate_graph(g: &Graph) -> (PointerStructure, QFFormula) {
    let (order, d) = degeneracy_order(g);
    let orientation = orient_along(g, &order).expect("order covers the graph");
    let d = d.max(1);
    let mut m = PointerStructure::new(g.n());
    for i in 0..d {
        let map = (0..g.n()).map(|v| orientation.out_neighbors(v).get(i).copied().unwrap_or(v)).collect();
        m = m.with_function(&format!("f{}", i + 1), map).expect("valid function");
    }
    let arcs: Vec<String> = (1..=d).map(|i| format!("f{i}(x1)=y1 | f{i}(y1)=x1")).collect();
    let eta = parse_formula(&format!("!(x1=y1) & ({})", arcs.join(" | "))).expect("eta parses");
    (m, eta)
}

fn rho_set(m: &PointerStructure, rho: &Conjunction, x_arity: usize) -> Result<Vec<usize>> {
    let node = Node::And(rho.0.iter().map(literal_node).collect());
    let mut set = Vec::new();
    let mut index = 0;
    for_each_tuple(m.n(), x_arity, |a| {
        if eval_node(m, &node, &Assignment { x: a, y: &[], z: &[] })? {
            set.push(index);
        }
        index += 1;
        Ok(())
    })?;
    Ok(set)
}

fn literal_node(l: &Literal) -> Node {
    let atom = Node::Atom(l.atom.clone());
    if l.positive {
        atom
    } else {
        Node::Not(Box::new(atom))
    }
}

/// `𝒮^ψ(M) = {ψ(M; c̄)}`: the classes of `x̄`-tuples by their key `c̄`.
pub fn psi_system(m: &PointerStructure, psi: &Psi, x_arity: usize) -> Result<SetSystem> {
    if let Some((_, i)) = psi.pairs.iter().find(|(_, i)| *i >= x_arity) {
        return Err(Error::invalid(format!("psi uses x{} beyond arity {x_arity}", i + 1)));
    }
    let ground = ground_size_for(m.n(), x_arity)?;
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut index = 0;
    for_each_tuple(m.n(), x_arity, |a| {
        classes.entry(psi.key(m, a)?).or_default().push(index);
        index += 1;
        Ok(())
    })?;
    SetSystem::new(ground, classes.into_values())
}

/// Checks by direct enumeration of all parameter tuples that each `ψ` of
/// `dec` puts every `x̄`-tuple in at most one set.
pub fn check_psi_disjoint(m: &PointerStructure, dec: &PsiDecomposition) -> Result<()> {
    let ground = ground_size_for(m.n(), dec.x_arity)?;
    for (j, psi) in dec.psis.iter().enumerate() {
        let count = parameter_count(m.n(), psi.z_arity())?;
        if count.saturating_mul(ground) > 10 * PARAMETER_CAP {
            return Err(Error::limit("disjointness check too large"));
        }
        let mut hits = vec![0usize; ground];
        for_each_tuple(m.n(), psi.z_arity(), |c| {
            let mut index = 0;
            for_each_tuple(m.n(), dec.x_arity, |a| {
                let inside = psi.pairs.iter().zip(c).all(|((w, i), &cr)| Term::eval_word(m, w, a[*i]).ok() == Some(cr));
                hits[index] += usize::from(inside);
                index += 1;
                Ok(())
            })
        })?;
        if let Some(a) = hits.iter().position(|&h| h > 1) {
            return Err(Error::Invariant(format!("psi{} puts tuple {a} in {} sets", j + 1, hits[a])));
        }
    }
    Ok(())
}

/// All non-empty intersections of members of `s`, plus the ground set.
pub fn intersection_closure(s: &SetSystem) -> Result<SetSystem> {
    let n = s.ground_size();
    let gens = s.sets();
    let mut containing = vec![Vec::new(); n];
    for (i, g) in gens.iter().enumerate() {
        for &u in g {
            containing[u].push(i);
        }
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    for set in std::iter::once((0..n).collect::<Vec<_>>()).chain(gens.iter().cloned()) {
        if !set.is_empty() && seen.insert(set.clone()) {
            queue.push_back(set);
        }
    }
    let mut touched = vec![false; gens.len()];
    while let Some(x) = queue.pop_front() {
        let mut candidates: Vec<usize> = Vec::new();
        for &u in &x {
            for &g in &containing[u] {
                if !touched[g] {
                    touched[g] = true;
                    candidates.push(g);
                }
            }
        }
        for g in candidates {
            touched[g] = false;
            let y = intersect(&x, &gens[g]);
            if !y.is_empty() && y.len() < x.len() && !seen.contains(&y) {
                if seen.len() >= CLOSURE_CAP {
                    return Err(Error::limit(format!("intersection closure exceeds {CLOSURE_CAP} sets")));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let closure = SetSystem::new(n, seen)?;
    let t = s.degree();
    if t < 64 && closure.degree() as u64 > 1u64 << t {
        return Err(Error::Invariant(format!("closure degree {} exceeds 2^{t}", closure.degree())));
    }
    Ok(closure)
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Compares [`assemble`] with direct evaluation for every parameter tuple
/// and checks that each `𝒮^ψ` is disjoint. Returns the number of tuples.
pub fn verify_decomposition(m: &PointerStructure, phi: &QFFormula) -> Result<usize> {
    let dec = qf_decompose(phi)?;
    check_psi_disjoint(m, &dec)?;
    let mut checked = 0;
    for_each_tuple(m.n(), phi.y_arity, |b| {
        let mut direct = Vec::new();
        let mut index = 0;
        for_each_tuple(m.n(), phi.x_arity, |a| {
            if eval_formula(m, phi, a, b)? {
                direct.push(index);
            }
            index += 1;
            Ok(())
        })?;
        if assemble(m, &dec, b)? != direct {
            return Err(Error::Invariant(format!("decomposition of '{phi}' differs at {b:?}")));
        }
        checked += 1;
        Ok(())
    })?;
    Ok(checked)
}

/// Result of [`qf_color`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QfColoring {
    pub coloring: Coloring,
    /// most `𝒮^Ψ` sets any defined set is a Boolean combination of
    pub k: usize,
    /// `|Ψ|`, a degree bound for `𝒮^Ψ(M)`
    pub t: usize,
    /// members of the intersection closure that was colored
    pub closure_size: usize,
    pub closure_degree: usize,
    /// `2^(2k + t + 1)`
    pub bound: u128,
}

/// Colors the domain of `m` so that every system defined by a formula in
/// `phis` has discrepancy at most `2^(2k + t + 1)`, a constant depending
/// on the formulas alone. Formulas must have a single `x` variable.
pub fn qf_color(m: &PointerStructure, phis: &[QFFormula]) -> Result<QfColoring> {
    qf_color_on(m, phis, None)
}

/// As [`qf_color`], for the traces on `subset`; the coloring is indexed
/// by position in the sorted subset.
pub fn qf_color_on(m: &PointerStructure, phis: &[QFFormula], subset: Option<&[usize]>) -> Result<QfColoring> {
    if let Some(phi) = phis.iter().find(|p| p.x_arity != 1) {
        return Err(Error::Unsupported(format!("qf_color needs one x variable, '{phi}' has {}", phi.x_arity)));
    }
    let decs = phis.iter().map(qf_decompose).collect::<Result<Vec<_>>>()?;
    let mut rhos: Vec<&Conjunction> = decs.iter().flat_map(|d| &d.rhos).collect();
    let mut psis: Vec<&Psi> = decs.iter().flat_map(|d| &d.psis).collect();
    rhos.sort();
    rhos.dedup();
    psis.sort();
    psis.dedup();
    let t = rhos.len() + psis.len();
    let k = decs.iter().map(PsiDecomposition::k).max().unwrap_or(0);

    let mut sets = Vec::new();
    for rho in rhos {
        sets.push(rho_set(m, rho, 1)?);
    }
    for psi in psis {
        sets.extend(psi_system(m, psi, 1)?.sets().iter().cloned());
    }
    let mut base = SetSystem::new(m.n(), sets)?;
    if let Some(x) = subset {
        base = base.trace(x)?.0;
    }
    let closure = intersection_closure(&base)?;
    let exponent = 2 * k + t + 1;
    if exponent >= 128 {
        return Err(Error::limit(format!("bound 2^{exponent} does not fit in 128 bits")));
    }
    Ok(QfColoring {
        coloring: beck_fiala(&closure),
        k,
        t,
        closure_size: closure.len(),
        closure_degree: closure.degree(),
        bound: 1u128 << exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrepancy::eval_discrepancy;
    use crate::pointer::{assemble, random_structure};
    use crate::setsystem::{neighborhood_system, random_system};

    #[test]
    fn singletons() {
        let m = random_structure(7, 1, 1, 0);
        let phi = parse_formula("x1=y1").unwrap();
        let s = defined_system(&m, &phi).unwrap();
        assert_eq!(s, SetSystem::new(7, (0..7).map(|v| vec![v])).unwrap());
        let run = qf_color(&m, &[phi]).unwrap();
        let disc = eval_discrepancy(&s, &run.coloring).unwrap().max;
        assert!(disc <= 1 && (disc as u128) <= run.bound);
    }

    #[test]
    fn degenerate_graph_round_trip() {
        for g in [Graph::cycle(5), Graph::complete(4), Graph::empty(4), Graph::petersen(), Graph::grid(3, 4)] {
            let (m, eta) = from_degenerate_graph(&g);
            assert_eq!(m.function_names().count(), crate::orderings::degeneracy(&g).max(1));
            assert_eq!(defined_system(&m, &eta).unwrap(), neighborhood_system(&g));
        }
        let (m, _) = from_degenerate_graph(&Graph::cycle(5));
        assert_eq!(m.function_names().count(), 2);
        let (m, _) = from_degenerate_graph(&Graph::empty(3));
        assert_eq!(m.function("f1").unwrap(), &[0, 1, 2]);
    }

    #[test]
    fn worked_example_sets() {
        let m = random_structure(6, 1, 0, 5)
            .with_predicate("A", &[0, 2, 3, 5])
            .unwrap()
            .with_predicate("B", &[1, 4])
            .unwrap()
            .with_function("f", vec![1, 1, 4, 0, 4, 2])
            .unwrap();
        let phi = parse_formula("A(x1) & (B(y1) & f(x1)=y1 | !B(y1) & f(x1)=f(y1))").unwrap();
        let dec = qf_decompose(&phi).unwrap();
        for b in 0..6 {
            let f = m.function("f").unwrap();
            let c = if [1, 4].contains(&b) { b } else { f[b] };
            let expected: Vec<usize> = [0, 2, 3, 5].into_iter().filter(|&a| f[a] == c).collect();
            assert_eq!(assemble(&m, &dec, &[b]).unwrap(), expected);
        }
        check_psi_disjoint(&m, &dec).unwrap();
    }

    #[test]
    fn assembly_matches_evaluation() {
        use crate::pointer::{random_formula, FormulaShape};
        for seed in 0..60 {
            let shape = FormulaShape::standard(1 + seed as usize % 2, seed as usize % 3, 2, 2, 4);
            let m = random_structure(1 + seed as usize % 6, 2, 2, seed);
            let phi = random_formula(&shape, seed).unwrap();
            let tuples = verify_decomposition(&m, &phi).unwrap();
            assert_eq!(tuples, m.n().pow(phi.y_arity as u32));
        }
    }

    #[test]
    fn closure_examples() {
        let s = SetSystem::new(3, [vec![0, 1], vec![1, 2]]).unwrap();
        let c = intersection_closure(&s).unwrap();
        assert_eq!(c, SetSystem::new(3, [vec![0, 1], vec![1, 2], vec![1], vec![0, 1, 2]]).unwrap());
        let disjoint = SetSystem::new(4, [vec![0], vec![1, 2]]).unwrap();
        let c = intersection_closure(&disjoint).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.contains_set(&[0, 1, 2, 3]));
        for seed in 0..20 {
            let s = random_system(30, 12, 2, seed).unwrap();
            let c = intersection_closure(&s).unwrap();
            assert!(c.degree() <= 4);
            assert_eq!(intersection_closure(&c).unwrap(), c);
        }
    }

    #[test]
    fn eta_bound_holds() {
        let g = Graph::grid(4, 5);
        let (m, eta) = from_degenerate_graph(&g);
        let run = qf_color(&m, std::slice::from_ref(&eta)).unwrap();
        let s = defined_system(&m, &eta).unwrap();
        assert!((eval_discrepancy(&s, &run.coloring).unwrap().max as u128) < run.bound);
        assert!(run.closure_degree <= 1 << run.t);
        let x: Vec<usize> = (0..20).step_by(3).collect();
        let traced = qf_color_on(&m, &[eta], Some(&x)).unwrap();
        let (sx, _) = s.trace(&x).unwrap();
        assert!((eval_discrepancy(&sx, &traced.coloring).unwrap().max as u128) < traced.bound);
    }
}
