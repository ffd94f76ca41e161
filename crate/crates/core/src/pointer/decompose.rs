//! Splitting a formula `φ(x̄; ȳ)` into parameter-free parts `ρ(x̄)` and
//! degree-one parts `ψ(x̄; z̄) = ⋀ f_r(x_{i_r}) = z_r`.
//!
//! Each DNF conjunct of `φ` becomes: a guard over `ȳ` alone, a `ρ` collecting
//! its `x̄`-only literals, a `ψ` collecting its positive cross equalities
//! `f(x_i) = g(y_j)` with `g(y_j)` replaced by a fresh `z`, and one
//! single-equality `ψ` per negated cross equality, which is subtracted.
//! For a parameter tuple `b̄` the conjunct then defines
//! `ρ(M) ∩ ψ(M; c̄) ∖ ⋃ ψ'(M; c̄')` when the guard holds and `∅` otherwise,
//! where each `c_r` is `g(b_j)`.

use std::collections::BTreeSet;
use std::fmt;

use super::formula::{eval_atom, Assignment, Atom, Node, QFFormula, Side, Term, Var};
use super::structure::PointerStructure;
use super::{for_each_tuple, ground_size_for};
use crate::error::{Error, Result};

/// Largest number of atoms accepted by [`qf_decompose`].
pub const ATOM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "!{}", self.atom)
        }
    }
}

/// A conjunction of literals; empty means true.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Conjunction(pub Vec<Literal>);

impl Conjunction {
    fn holds(&self, m: &PointerStructure, env: &Assignment) -> Result<bool> {
        for lit in &self.0 {
            if eval_atom(m, &lit.atom, env)? != lit.positive {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "true");
        }
        let parts: Vec<String> = self.0.iter().map(Literal::to_string).collect();
        write!(f, "{}", parts.join(" & "))
    }
}

/// `ψ(x̄; z̄) = ⋀_r word_r(x_{i_r}) = z_r`, stored as `(word_r, i_r)` pairs
/// in sorted order. No pairs means true.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Psi {
    pub pairs: Vec<(Vec<String>, usize)>,
}

impl Psi {
    pub fn z_arity(&self) -> usize {
        self.pairs.len()
    }

    /// The unique `c̄` with `a ∈ ψ(M; c̄)`.
    pub fn key(&self, m: &PointerStructure, a: &[usize]) -> Result<Vec<usize>> {
        self.pairs.iter().map(|(w, i)| Term::eval_word(m, w, a[*i])).collect()
    }
}

impl fmt::Display for Psi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "true");
        }
        let parts: Vec<String> = self
            .pairs
            .iter()
            .enumerate()
            .map(|(r, (w, i))| format!("{}={}", Term { var: Var::x(*i), word: w.clone() }, Var::z(r)))
            .collect();
        write!(f, "{}", parts.join(" & "))
    }
}

/// A `ψ` together with how its parameters come from `b̄`: `c_r = params[r](b̄)`,
/// each a function word applied to some `y_j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PsiUse {
    pub psi: usize,
    pub params: Vec<Term>,
}

impl PsiUse {
    fn parameters(&self, m: &PointerStructure, b: &[usize]) -> Result<Vec<usize>> {
        self.params.iter().map(|t| Term::eval_word(m, &t.word, b[t.var.index])).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjunct {
    /// literals over `ȳ` only
    pub guard: Conjunction,
    pub rho: usize,
    pub psi: PsiUse,
    /// subtracted single-equality `ψ`s from negated cross literals
    pub negated: Vec<PsiUse>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiDecomposition {
    pub x_arity: usize,
    pub y_arity: usize,
    pub rhos: Vec<Conjunction>,
    pub psis: Vec<Psi>,
    pub conjuncts: Vec<Conjunct>,
}

impl PsiDecomposition {
    /// Number of formulas in `Ψ`, which bounds the degree of `𝒮^Ψ(M)`.
    pub fn t(&self) -> usize {
        self.rhos.len() + self.psis.len()
    }

    /// Number of distinct sets of `𝒮^Ψ(M)` any `φ(M, b̄)` is combined from:
    /// one per `ρ` and one per distinct `(ψ, parameter map)` in use.
    pub fn k(&self) -> usize {
        let rhos: BTreeSet<usize> = self.conjuncts.iter().map(|c| c.rho).collect();
        let uses: BTreeSet<&PsiUse> = self.conjuncts.iter().flat_map(|c| std::iter::once(&c.psi).chain(&c.negated)).collect();
        rhos.len() + uses.len()
    }

    /// Number of DNF conjuncts.
    pub fn p(&self) -> usize {
        self.conjuncts.len()
    }
}

impl fmt::Display for PsiDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rhos.iter().enumerate() {
            writeln!(f, "rho{} = {r}", i + 1)?;
        }
        for (j, p) in self.psis.iter().enumerate() {
            writeln!(f, "psi{} = {p}", j + 1)?;
        }
        for c in &self.conjuncts {
            let show = |u: &PsiUse| {
                let ps: Vec<String> = u.params.iter().map(Term::to_string).collect();
                format!("psi{}({})", u.psi + 1, ps.join(", "))
            };
            write!(f, "if {}: rho{} & {}", c.guard, c.rho + 1, show(&c.psi))?;
            for n in &c.negated {
                write!(f, " minus {}", show(n))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn nnf(node: &Node, positive: bool) -> Node {
    match node {
        Node::Atom(_) if positive => node.clone(),
        Node::Atom(_) => Node::Not(Box::new(node.clone())),
        Node::Not(inner) => nnf(inner, !positive),
        Node::And(ns) | Node::Or(ns) => {
            let parts = ns.iter().map(|n| nnf(n, positive)).collect();
            if matches!(node, Node::And(_)) == positive {
                Node::And(parts)
            } else {
                Node::Or(parts)
            }
        }
    }
}

fn dnf(node: &Node) -> Vec<Vec<Literal>> {
    match node {
        Node::Atom(a) => vec![vec![Literal { positive: true, atom: a.clone().canonical() }]],
        Node::Not(inner) => match &**inner {
            Node::Atom(a) => vec![vec![Literal { positive: false, atom: a.clone().canonical() }]],
            _ => unreachable!("input is in negation normal form"),
        },
        Node::Or(ns) => ns.iter().flat_map(dnf).collect(),
        Node::And(ns) => ns.iter().fold(vec![Vec::new()], |acc, n| {
            let right = dnf(n);
            acc.iter()
                .flat_map(|l| {
                    right.iter().map(move |r| {
                        let mut c = l.clone();
                        c.extend(r.iter().cloned());
                        c
                    })
                })
                .collect()
        }),
    }
}

fn sides(atom: &Atom) -> (bool, bool) {
    let terms = atom.terms();
    (terms.iter().any(|t| t.var.side == Side::X), terms.iter().any(|t| t.var.side == Side::Y))
}

fn intern<T: PartialEq>(list: &mut Vec<T>, item: T) -> usize {
    match list.iter().position(|x| *x == item) {
        Some(i) => i,
        None => {
            list.push(item);
            list.len() - 1
        }
    }
}

/// One cross equality `f(x_i) = g(y_j)`.
type Cross = ((Vec<String>, usize), Term);

fn split_cross(atom: &Atom) -> Result<Cross> {
    let Atom::Eq(a, b) = atom else {
        return Err(Error::Unsupported(format!("atom {atom} mixes x and y")));
    };
    let (x, y) = if a.var.side == Side::X { (a, b) } else { (b, a) };
    Ok(((x.word.clone(), x.var.index), y.clone()))
}

pub fn qf_decompose(phi: &QFFormula) -> Result<PsiDecomposition> {
    if phi.atom_count() > ATOM_CAP {
        return Err(Error::limit(format!("formula has {} atoms, cap is {ATOM_CAP}", phi.atom_count())));
    }
    let mut dec =
        PsiDecomposition { x_arity: phi.x_arity, y_arity: phi.y_arity, rhos: Vec::new(), psis: Vec::new(), conjuncts: Vec::new() };
    'conjuncts: for lits in dnf(&nnf(&phi.root, true)) {
        let mut lits: BTreeSet<Literal> = lits.into_iter().collect();
        lits.retain(|l| !matches!(&l.atom, Atom::Eq(a, b) if a == b && l.positive));
        for l in &lits {
            let trivial_false = matches!(&l.atom, Atom::Eq(a, b) if a == b);
            let clash = lits.contains(&Literal { positive: !l.positive, atom: l.atom.clone() });
            if trivial_false || clash {
                continue 'conjuncts;
            }
        }
        let (mut rho, mut guard, mut cross, mut negated) = (BTreeSet::new(), Vec::new(), Vec::new(), Vec::new());
        for l in lits {
            match sides(&l.atom) {
                (true, false) => {
                    rho.insert(l);
                }
                (false, true) => guard.push(l),
                _ if l.positive => cross.push(split_cross(&l.atom)?),
                _ => negated.push(split_cross(&l.atom)?),
            }
        }
        // each g(y_j) keeps a single partner; the others become x-only equalities
        cross.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));
        let mut kept: Vec<Cross> = Vec::new();
        for c in cross {
            match kept.iter().find(|k| k.1 == c.1) {
                Some(((w, i), _)) => {
                    let lhs = Term { var: Var::x(*i), word: w.clone() };
                    let rhs = Term { var: Var::x(c.0 .1), word: c.0 .0.clone() };
                    rho.insert(Literal { positive: true, atom: Atom::Eq(lhs, rhs).canonical() });
                }
                None => kept.push(c),
            }
        }
        kept.sort();
        let psi = Psi { pairs: kept.iter().map(|c| c.0.clone()).collect() };
        let psi = PsiUse { psi: intern(&mut dec.psis, psi), params: kept.into_iter().map(|c| c.1).collect() };
        let mut negated: Vec<PsiUse> = negated
            .into_iter()
            .map(|(pair, param)| PsiUse { psi: intern(&mut dec.psis, Psi { pairs: vec![pair] }), params: vec![param] })
            .collect();
        negated.sort();
        negated.dedup();
        let rho = intern(&mut dec.rhos, Conjunction(rho.into_iter().collect()));
        let conjunct = Conjunct { guard: Conjunction(guard), rho, psi, negated };
        if !dec.conjuncts.contains(&conjunct) {
            dec.conjuncts.push(conjunct);
        }
    }
    Ok(dec)
}

/// `φ(M, b̄)` rebuilt from the decomposition, as sorted ground indices
/// (x̄-tuples indexed lexicographically).
pub fn assemble(m: &PointerStructure, dec: &PsiDecomposition, b: &[usize]) -> Result<Vec<usize>> {
    if b.len() != dec.y_arity {
        return Err(Error::invalid(format!("expected {} parameters, got {}", dec.y_arity, b.len())));
    }
    if let Some(&v) = b.iter().find(|&&v| v >= m.n()) {
        return Err(Error::invalid(format!("element {v} outside domain of size {}", m.n())));
    }
    let ground = ground_size_for(m.n(), dec.x_arity)?;
    let mut member = vec![false; ground];
    for c in &dec.conjuncts {
        if !c.guard.holds(m, &Assignment { x: &[], y: b, z: &[] })? {
            continue;
        }
        let rho = &dec.rhos[c.rho];
        let (psi, params) = (&dec.psis[c.psi.psi], c.psi.parameters(m, b)?);
        let negated: Vec<(&Psi, Vec<usize>)> =
            c.negated.iter().map(|u| Ok((&dec.psis[u.psi], u.parameters(m, b)?))).collect::<Result<_>>()?;
        let mut index = 0;
        for_each_tuple(m.n(), dec.x_arity, |a| {
            let i = index;
            index += 1;
            if member[i] || psi.key(m, a)? != params || !rho.holds(m, &Assignment { x: a, y: &[], z: &[] })? {
                return Ok(());
            }
            for (p, q) in &negated {
                if p.key(m, a)? == *q {
                    return Ok(());
                }
            }
            member[i] = true;
            Ok(())
        })?;
    }
    Ok(member.iter().enumerate().filter(|(_, &h)| h).map(|(i, _)| i).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointer::formula::parse_formula;

    fn dec(text: &str) -> PsiDecomposition {
        qf_decompose(&parse_formula(text).unwrap()).unwrap()
    }

    #[test]
    fn second_worked_example() {
        let d = dec("A(x1) & (B(y1) & f(x1)=y1 | !B(y1) & f(x1)=f(y1))");
        let rhos: Vec<String> = d.rhos.iter().map(ToString::to_string).collect();
        let psis: Vec<String> = d.psis.iter().map(ToString::to_string).collect();
        assert_eq!(rhos, ["A(x1)"]);
        assert_eq!(psis, ["f(x1)=z1"]);
        assert_eq!(d.p(), 2);
        let params: Vec<String> = d.conjuncts.iter().map(|c| c.psi.params[0].to_string()).collect();
        assert_eq!(params, ["y1", "f(y1)"]);
        assert_eq!((d.t(), d.k()), (2, 3));
    }

    #[test]
    fn first_worked_example() {
        let d = dec("R(x3) & B(y1) & h(x1)=f(y2) & h(x2)=g(y2)");
        assert_eq!(d.rhos.len(), 1);
        assert_eq!(d.rhos[0].to_string(), "R(x3)");
        assert_eq!(d.psis.len(), 1);
        assert_eq!(d.psis[0].to_string(), "h(x1)=z1 & h(x2)=z2");
        let c = &d.conjuncts[0];
        assert_eq!(c.guard.to_string(), "B(y1)");
        let params: Vec<String> = c.psi.params.iter().map(ToString::to_string).collect();
        assert_eq!(params, ["f(y2)", "g(y2)"]);
    }

    #[test]
    fn shared_parameter_is_normalized() {
        let d = dec("f(x1)=g(y1) & h(x2)=g(y1)");
        assert_eq!(d.psis.len(), 1);
        assert_eq!(d.psis[0].z_arity(), 1);
        assert_eq!(d.rhos[0].to_string(), "f(x1)=h(x2)");
    }

    #[test]
    fn no_parameters() {
        let d = dec("A(x1) | f(x1)=x1");
        assert_eq!(d.y_arity, 0);
        assert!(d.psis.iter().all(|p| p.pairs.is_empty()));
        assert_eq!(d.rhos.len(), 2);
    }

    #[test]
    fn contradictions_vanish() {
        let d = dec("A(x1) & !A(x1) | !(x1=x1)");
        assert!(d.conjuncts.is_empty());
        let m = PointerStructure::new(3).with_predicate("A", &[1]).unwrap();
        assert!(assemble(&m, &d, &[]).unwrap().is_empty());
    }

    #[test]
    fn atom_cap() {
        let text = vec!["A(x1)"; ATOM_CAP + 1].join(" & ");
        assert!(matches!(qf_decompose(&parse_formula(&text).unwrap()), Err(Error::ResourceLimit(_))));
    }
}
