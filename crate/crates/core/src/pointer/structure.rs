use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// A finite structure with unary functions and unary predicates on `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct PointerStructure {
    n: usize,
    functions: BTreeMap<String, Vec<usize>>,
    predicates: BTreeMap<String, Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    n: usize,
    #[serde(default)]
    functions: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    predicates: BTreeMap<String, Vec<usize>>,
}

impl TryFrom<RawStructure> for PointerStructure {
    type Error = Error;

    fn try_from(raw: RawStructure) -> Result<Self> {
        let mut m = PointerStructure::new(raw.n);
        for (name, map) in raw.functions {
            m = m.with_function(&name, map)?;
        }
        for (name, members) in raw.predicates {
            m = m.with_predicate(&name, &members)?;
        }
        Ok(m)
    }
}

impl From<PointerStructure> for RawStructure {
    fn from(m: PointerStructure) -> Self {
        let predicates = m
            .predicates
            .into_iter()
            .map(|(name, bits)| (name, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()))
            .collect();
        RawStructure { n: m.n, functions: m.functions, predicates }
    }
}

impl PointerStructure {
    pub fn new(n: usize) -> Self {
        PointerStructure { n, functions: BTreeMap::new(), predicates: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds or replaces the function `name`; names start lowercase.
    pub fn with_function(mut self, name: &str, map: Vec<usize>) -> Result<Self> {
        if !name.starts_with(|c: char| c.is_ascii_lowercase()) || !valid_name(name) {
            return Err(Error::invalid(format!("bad function name '{name}'")));
        }
        if map.len() != self.n {
            return Err(Error::invalid(format!("function '{name}' has {} values for domain {}", map.len(), self.n)));
        }
        if let Some(v) = map.iter().find(|&&v| v >= self.n) {
            return Err(Error::invalid(format!("function '{name}' maps outside the domain ({v})")));
        }
        self.functions.insert(name.to_string(), map);
        Ok(self)
    }

    /// Adds or replaces the predicate `name` with the given members; names start uppercase.
    pub fn with_predicate(mut self, name: &str, members: &[usize]) -> Result<Self> {
        if !name.starts_with(|c: char| c.is_ascii_uppercase()) || !valid_name(name) {
            return Err(Error::invalid(format!("bad predicate name '{name}'")));
        }
        let mut bits = vec![false; self.n];
        for &u in members {
            *bits.get_mut(u).ok_or_else(|| Error::invalid(format!("predicate '{name}' member {u} outside the domain")))? = true;
        }
        self.predicates.insert(name.to_string(), bits);
        Ok(self)
    }

    pub fn function(&self, name: &str) -> Result<&[usize]> {
        self.functions.get(name).map(Vec::as_slice).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn predicate(&self, name: &str) -> Result<&[bool]> {
        self.predicates.get(name).map(Vec::as_slice).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn function_names(&self) -> impl Iterator<Item = &str> {
        self.functions.keys().map(String::as_str)
    }

    pub fn predicate_names(&self) -> impl Iterator<Item = &str> {
        self.predicates.keys().map(String::as_str)
    }

    /// `M[A]`: domain `A` (relabeled `0..|A|` in increasing order), with every
    /// function value that leaves `A` replaced by a fixed point.
    /// Also returns the map from new to old labels.
    pub fn weakly_induced(&self, subset: &[usize]) -> Result<(PointerStructure, Vec<usize>)> {
        let mut map = subset.to_vec();
        map.sort_unstable();
        map.dedup();
        if let Some(&u) = map.last().filter(|&&u| u >= self.n) {
            return Err(Error::invalid(format!("element {u} outside domain of size {}", self.n)));
        }
        let mut new_label = vec![usize::MAX; self.n];
        for (i, &u) in map.iter().enumerate() {
            new_label[u] = i;
        }
        let functions = self
            .functions
            .iter()
            .map(|(name, f)| {
                let g = map.iter().enumerate().map(|(i, &u)| if new_label[f[u]] == usize::MAX { i } else { new_label[f[u]] });
                (name.clone(), g.collect())
            })
            .collect();
        let predicates = self.predicates.iter().map(|(name, p)| (name.clone(), map.iter().map(|&u| p[u]).collect())).collect();
        Ok((PointerStructure { n: map.len(), functions, predicates }, map))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structure serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad structure JSON: {e}")))
    }
}

fn valid_name(name: &str) -> bool {
    name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Random total functions `f1..` and predicates `A1..` (each member with probability 1/2).
pub fn random_structure(n: usize, functions: usize, predicates: usize, seed: u64) -> PointerStructure {
    let mut rng = rng::seeded(seed);
    let mut m = PointerStructure::new(n);
    for i in 1..=functions {
        let map = (0..n).map(|_| rng.gen_range(0..n)).collect();
        m = m.with_function(&format!("f{i}"), map).unwrap();
    }
    for i in 1..=predicates {
        let members: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        m = m.with_predicate(&format!("A{i}"), &members).unwrap();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let m = random_structure(6, 2, 2, 3);
        let text = m.to_json();
        assert!(text.starts_with("{\"n\":6,\"functions\":{\"f1\":["));
        assert_eq!(PointerStructure::from_json(&text).unwrap(), m);
        assert!(PointerStructure::from_json(r#"{"n":2,"functions":{"f":[0,2]}}"#).is_err());
        assert!(PointerStructure::from_json(r#"{"n":2,"predicates":{"a":[0]}}"#).is_err());
    }

    #[test]
    fn weak_induction_fixes_escaping_values() {
        let m = PointerStructure::new(4).with_function("f", vec![1, 2, 3, 0]).unwrap().with_predicate("P", &[2, 3]).unwrap();
        let (sub, map) = m.weakly_induced(&[3, 1, 2]).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        // 1 -> 2 -> 3 stay inside; 3 -> 0 leaves, so 3 becomes a fixed point
        assert_eq!(sub.function("f").unwrap(), &[1, 2, 2]);
        assert_eq!(sub.predicate("P").unwrap(), &[false, true, true]);
    }
}
