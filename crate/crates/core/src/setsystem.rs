//! Finite set systems in canonical form, their constructions from graphs,
//! and small-instance combinatorial oracles.

use std::collections::{BTreeMap, HashSet};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// A ground set `0..ground_size` with a collection of distinct non-empty subsets.
///
/// Canonical form: every set is sorted, no set is empty, no set repeats,
/// and the collection is in lexicographic order. Duplicates and the empty
/// set never change the discrepancy, so they are not kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSetSystem")]
pub struct SetSystem {
    ground_size: usize,
    sets: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawSetSystem {
    ground_size: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<RawSetSystem> for SetSystem {
    type Error = Error;

    fn try_from(raw: RawSetSystem) -> Result<Self> {
        SetSystem::new(raw.ground_size, raw.sets)
    }
}

impl SetSystem {
    /// Validates and canonicalizes.
    pub fn new(ground_size: usize, sets: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut out = Vec::new();
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&max) = s.last() {
                if max >= ground_size {
                    return Err(Error::invalid(format!("element {max} outside ground set of size {ground_size}")));
                }
                out.push(s);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(SetSystem { ground_size, sets: out })
    }

    pub fn empty(ground_size: usize) -> Self {
        SetSystem { ground_size, sets: Vec::new() }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains_set(&self, set: &[usize]) -> bool {
        self.sets.binary_search_by(|s| s.as_slice().cmp(set)).is_ok()
    }

    /// Every set of `self` is also a set of `other`.
    pub fn is_subfamily_of(&self, other: &SetSystem) -> bool {
        self.sets.iter().all(|s| other.contains_set(s))
    }

    /// Adds the full ground set if missing; reports whether it was added.
    pub fn with_ground_set(&self) -> (SetSystem, bool) {
        let full: Vec<usize> = (0..self.ground_size).collect();
        if self.ground_size == 0 || self.contains_set(&full) {
            return (self.clone(), false);
        }
        let mut sets = self.sets.clone();
        sets.push(full);
        (SetSystem::new(self.ground_size, sets).unwrap(), true)
    }

    /// Number of sets containing each ground element.
    pub fn memberships(&self) -> Vec<usize> {
        let mut counts = vec![0; self.ground_size];
        for s in &self.sets {
            for &u in s {
                counts[u] += 1;
            }
        }
        counts
    }

    /// Maximum number of sets containing a single element.
    pub fn degree(&self) -> usize {
        self.memberships().into_iter().max().unwrap_or(0)
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Trace on `subset`, re-indexed densely; the returned map sends new indices to old ones.
    pub fn trace(&self, subset: &[usize]) -> Result<(SetSystem, Vec<usize>)> {
        let mut map: Vec<usize> = subset.to_vec();
        map.sort_unstable();
        map.dedup();
        if map.last().is_some_and(|&m| m >= self.ground_size) {
            return Err(Error::invalid("trace subset leaves the ground set"));
        }
        let mut new_index = vec![usize::MAX; self.ground_size];
        for (i, &u) in map.iter().enumerate() {
            new_index[u] = i;
        }
        let sets = self.sets.iter().map(|s| s.iter().filter_map(|&u| (new_index[u] != usize::MAX).then_some(new_index[u])).collect());
        Ok((SetSystem::new(map.len(), sets)?, map))
    }

    /// The dual system: ground = set indices, one set per original element.
    pub fn dual(&self) -> SetSystem {
        let mut sets = vec![Vec::new(); self.ground_size];
        for (i, s) in self.sets.iter().enumerate() {
            for &u in s {
                sets[u].push(i);
            }
        }
        SetSystem::new(self.sets.len(), sets).unwrap()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("set system JSON: {e}")))
    }

    /// Sets as bitmasks, for ground sets of at most 64 elements.
    pub(crate) fn masks(&self) -> Option<Vec<u64>> {
        (self.ground_size <= 64).then(|| self.sets.iter().map(|s| s.iter().fold(0u64, |m, &u| m | 1 << u)).collect())
    }
}

/// A random system on `ground_size` elements drawn from `set_slots` slots:
/// every element joins between 1 and `max_degree` distinct slots uniformly
/// (element 0 joins exactly `max_degree`), so the degree is at most
/// `max_degree`. Deterministic in `seed`.
pub fn random_system(ground_size: usize, set_slots: usize, max_degree: usize, seed: u64) -> Result<SetSystem> {
    if max_degree == 0 || set_slots < max_degree {
        return Err(Error::invalid("need 1 <= max_degree <= set_slots"));
    }
    let mut rng = rng::seeded(seed);
    let mut sets = vec![Vec::new(); set_slots];
    for u in 0..ground_size {
        let k = if u == 0 { max_degree } else { rng.gen_range(1..=max_degree) };
        for slot in rand::seq::index::sample(&mut rng, set_slots, k) {
            sets[slot].push(u);
        }
    }
    SetSystem::new(ground_size, sets)
}

/// `{N(v)}`: open neighborhoods of all vertices.
pub fn neighborhood_system(g: &Graph) -> SetSystem {
    SetSystem::new(g.n(), (0..g.n()).map(|v| g.neighbors(v).to_vec())).unwrap()
}

/// A 2-coloring of the edges of a graph, colors `1` and `2`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: BTreeMap<(usize, usize), u8>,
}

impl EdgeColoring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn uniform(g: &Graph, color: u8) -> Self {
        let mut gamma = Self::new();
        for (u, v) in g.edges() {
            gamma.set(u, v, color);
        }
        gamma
    }

    pub fn set(&mut self, u: usize, v: usize, color: u8) {
        assert!(color == 1 || color == 2, "edge colors are 1 and 2");
        self.colors.insert((u.min(v), u.max(v)), color);
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u8> {
        self.colors.get(&(u.min(v), u.max(v))).copied()
    }

    /// Each edge colored 1 or 2 with equal probability.
    pub fn random(g: &Graph, seed: u64) -> Self {
        let mut rng = rng::seeded(seed);
        let mut gamma = Self::new();
        for (u, v) in g.edges() {
            gamma.set(u, v, if rng.gen_bool(0.5) { 1 } else { 2 });
        }
        gamma
    }

    /// Lines `u v c`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gamma = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [u, v, c] = fields[..] else {
                return Err(bad("expected `u v c`"));
            };
            let num = |t: &str| t.parse::<usize>().map_err(|_| bad("not a number"));
            let c = num(c)?;
            if c != 1 && c != 2 {
                return Err(bad("edge colors are 1 and 2"));
            }
            gamma.set(num(u)?, num(v)?, c as u8);
        }
        Ok(gamma)
    }

    pub fn to_text(&self) -> String {
        self.colors.iter().map(|((u, v), c)| format!("{u} {v} {c}\n")).collect()
    }

    fn color_of(&self, u: usize, v: usize) -> Result<u8> {
        self.get(u, v).ok_or_else(|| Error::invalid(format!("edge {{{u}, {v}}} has no color")))
    }
}

/// The 1-neighborhoods and 2-neighborhoods of every vertex.
pub fn edge_color_system(g: &Graph, gamma: &EdgeColoring) -> Result<SetSystem> {
    let mut sets = Vec::with_capacity(2 * g.n());
    for v in 0..g.n() {
        let mut by_color = [Vec::new(), Vec::new()];
        for &u in g.neighbors(v) {
            by_color[(gamma.color_of(u, v)? - 1) as usize].push(u);
        }
        sets.extend(by_color);
    }
    SetSystem::new(g.n(), sets)
}

/// The bipartite graph with parts `V` and `V × {1, 2}`.
///
/// `(v, i)` is vertex `n + 2v + (i - 1)`, adjacent to every `u` joined to `v`
/// by an edge of color `i`.
pub fn bipartite_double(g: &Graph, gamma: &EdgeColoring) -> Result<Graph> {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for (u, v) in g.edges() {
        let i = gamma.color_of(u, v)? as usize;
        edges.push((u, n + 2 * v + i - 1));
        edges.push((v, n + 2 * u + i - 1));
    }
    Graph::from_edges(3 * n, edges)
}

/// Primal or dual shatter function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShatterMode {
    Primal,
    Dual,
}

const SHATTER_WORK_CAP: f64 = 1e8;
const VC_GROUND_CAP: usize = 20;

/// `π(m)`: the most distinct traces on any `m`-element subset of the ground set.
pub fn shatter(s: &SetSystem, m: usize, mode: ShatterMode) -> Result<usize> {
    match mode {
        ShatterMode::Dual => shatter(&s.dual(), m, ShatterMode::Primal),
        ShatterMode::Primal => {
            let n = s.ground_size();
            if m > n {
                return Err(Error::invalid(format!("m = {m} exceeds ground size {n}")));
            }
            let work = binomial(n, m) * s.len().max(1) as f64;
            if work > SHATTER_WORK_CAP {
                return Err(Error::limit(format!("shatter function needs ~{work:.0} steps")));
            }
            let mut best = 0;
            for_each_combination(n, m, |subset| {
                let traces: HashSet<Vec<usize>> =
                    s.sets().iter().map(|set| set.iter().copied().filter(|u| subset.binary_search(u).is_ok()).collect()).collect();
                best = best.max(traces.len());
            });
            Ok(best)
        }
    }
}

/// Size of the largest shattered subset (ground size at most 20).
pub fn vc_dimension(s: &SetSystem) -> Result<usize> {
    let n = s.ground_size();
    if n > VC_GROUND_CAP {
        return Err(Error::limit(format!("vc dimension capped at ground size {VC_GROUND_CAP}")));
    }
    let masks = s.masks().unwrap();
    if masks.is_empty() {
        return Ok(0);
    }
    let mut vc = 0;
    for k in 1..=n {
        if 1usize << k > masks.len() {
            break;
        }
        let mut found = false;
        for_each_combination(n, k, |subset| {
            if found {
                return;
            }
            let x = subset.iter().fold(0u64, |m, &u| m | 1 << u);
            let traces: HashSet<u64> = masks.iter().map(|&m| m & x).collect();
            found = traces.len() == 1 << k;
        });
        if !found {
            break;
        }
        vc = k;
    }
    Ok(vc)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Calls `f` on every sorted `k`-subset of `0..n`, lexicographically.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        f(&c);
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else { return };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}
