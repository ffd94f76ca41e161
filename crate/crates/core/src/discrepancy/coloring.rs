use std::fmt::Write as _;
use std::ops::Neg;

use crate::error::{Error, Result};
use crate::setsystem::SetSystem;

/// A `±1` value for every ground element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(Vec<i8>);

impl Coloring {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::invalid("coloring entries must be -1 or 1"));
        }
        Ok(Coloring(values))
    }

    pub fn all_plus(n: usize) -> Self {
        Coloring(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    /// Signed sum over a set.
    pub fn sum(&self, set: &[usize]) -> i64 {
        set.iter().map(|&u| self.0[u] as i64).sum()
    }

    /// Pulls a coloring of a trace back along its index map; elements outside get `+1`.
    pub fn lift(&self, map: &[usize], ground_size: usize) -> Coloring {
        let mut values = vec![1; ground_size];
        for (i, &u) in map.iter().enumerate() {
            values[u] = self.0[i];
        }
        Coloring(values)
    }

    /// Restricts to the elements listed in `map` (in that order).
    pub fn restrict(&self, map: &[usize]) -> Coloring {
        Coloring(map.iter().map(|&u| self.0[u]).collect())
    }

    /// One `index value` line per element.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.0.iter().enumerate() {
            writeln!(out, "{i} {v}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (idx, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let err = || Error::Parse { line: idx + 1, msg: "expected `index value`".into() };
            let mut it = line.split_whitespace();
            let (Some(i), Some(v), None) = (it.next(), it.next(), it.next()) else { return Err(err()) };
            let i: usize = i.parse().map_err(|_| err())?;
            let v: i8 = v.parse().map_err(|_| err())?;
            if i != values.len() || (v != 1 && v != -1) {
                return Err(err());
            }
            values.push(v);
        }
        Ok(Coloring(values))
    }
}

impl Neg for &Coloring {
    type Output = Coloring;

    fn neg(self) -> Coloring {
        Coloring(self.0.iter().map(|v| -v).collect())
    }
}

/// Result of evaluating a coloring on a set system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Evaluation {
    /// Largest absolute signed sum over the sets.
    pub max: u64,
    /// First set attaining `max`; `None` for a system without sets.
    pub witness: Option<usize>,
}

pub fn eval_discrepancy(s: &SetSystem, chi: &Coloring) -> Result<Evaluation> {
    if chi.len() != s.ground_size() {
        return Err(Error::invalid(format!("coloring has {} entries, ground set has {}", chi.len(), s.ground_size())));
    }
    let mut best = Evaluation { max: 0, witness: None };
    for (i, set) in s.sets().iter().enumerate() {
        let d = chi.sum(set).unsigned_abs();
        if best.witness.is_none() || d > best.max {
            best = Evaluation { max: d, witness: Some(i) };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::setsystem::neighborhood_system;

    #[test]
    fn evaluations() {
        let pair = SetSystem::new(2, [vec![0, 1]]).unwrap();
        assert_eq!(eval_discrepancy(&pair, &Coloring::new(vec![1, -1]).unwrap()).unwrap().max, 0);

        let triple = SetSystem::new(3, [vec![0, 1, 2]]).unwrap();
        for code in 0..8 {
            let chi = Coloring::new((0..3).map(|i| if code >> i & 1 == 1 { -1 } else { 1 }).collect()).unwrap();
            assert_eq!(eval_discrepancy(&triple, &chi).unwrap().max % 2, 1);
        }

        let c5 = neighborhood_system(&Graph::cycle(5));
        let e = eval_discrepancy(&c5, &Coloring::all_plus(5)).unwrap();
        assert_eq!(e, Evaluation { max: 2, witness: Some(0) });

        assert_eq!(eval_discrepancy(&SetSystem::empty(2), &Coloring::all_plus(2)).unwrap().witness, None);
        assert!(eval_discrepancy(&c5, &Coloring::all_plus(4)).is_err());
    }

    #[test]
    fn text_format() {
        let chi = Coloring::new(vec![1, -1, -1]).unwrap();
        assert_eq!(chi.to_text(), "0 1\n1 -1\n2 -1\n");
        assert_eq!(Coloring::parse(&chi.to_text()).unwrap(), chi);
        assert!(Coloring::parse("0 1\n2 1\n").is_err());
        assert!(Coloring::parse("0 0\n").is_err());
        assert!(Coloring::new(vec![0]).is_err());
    }
}
