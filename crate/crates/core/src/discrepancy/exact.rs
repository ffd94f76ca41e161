//! Exhaustive discrepancy oracles.

use rand::seq::SliceRandom;
use rand::Rng as _;

use super::coloring::Coloring;
use crate::error::{Error, Result};
use crate::rng;
use crate::setsystem::SetSystem;

/// Default ground-size cap of [`exact_discrepancy`].
pub const DEFAULT_EXACT_CAP: usize = 24;

/// `disc(S)` and one optimal coloring, by branch and bound.
///
/// Colorings are enumerated with element 0 fixed to `+1` (global negation
/// is a symmetry) and the rest in increasing binary code, element 1 being
/// the most significant free bit and `+1` the zero bit. The witness is the
/// first optimal coloring in that order.
pub fn exact_discrepancy(s: &SetSystem) -> Result<(u64, Coloring)> {
    exact_discrepancy_capped(s, DEFAULT_EXACT_CAP)
}

pub fn exact_discrepancy_capped(s: &SetSystem, cap: usize) -> Result<(u64, Coloring)> {
    let n = s.ground_size();
    if n > cap {
        return Err(Error::limit(format!("exact discrepancy capped at {cap} elements, got {n}")));
    }
    if n == 0 || s.is_empty() {
        return Ok((0, Coloring::all_plus(n)));
    }
    let mut search = Search::new(s);
    search.assign(0, 1);
    search.descend(1);
    let values = search.best_coloring.expect("at least one coloring is complete");
    Ok((search.best, Coloring::new(values)?))
}

struct Search {
    n: usize,
    containing: Vec<Vec<usize>>,
    remaining: Vec<usize>,
    sums: Vec<i64>,
    current: Vec<i8>,
    best: u64,
    best_coloring: Option<Vec<i8>>,
    /// parity floor: an odd-sized set can never sum to zero
    floor: u64,
}

impl Search {
    fn new(s: &SetSystem) -> Self {
        let n = s.ground_size();
        let mut containing = vec![Vec::new(); n];
        for (i, set) in s.sets().iter().enumerate() {
            for &u in set {
                containing[u].push(i);
            }
        }
        let floor = s.sets().iter().map(|set| (set.len() % 2) as u64).max().unwrap_or(0);
        Search {
            n,
            containing,
            remaining: s.sets().iter().map(Vec::len).collect(),
            sums: vec![0; s.len()],
            current: vec![1; n],
            best: u64::MAX,
            best_coloring: None,
            floor,
        }
    }

    /// Assigns `value` to `u`; returns the smallest discrepancy still reachable.
    fn assign(&mut self, u: usize, value: i8) -> u64 {
        self.current[u] = value;
        let mut reachable = 0;
        for &set in &self.containing[u] {
            self.sums[set] += value as i64;
            self.remaining[set] -= 1;
        }
        for &set in &self.containing[u] {
            let slack = self.sums[set].unsigned_abs().saturating_sub(self.remaining[set] as u64);
            reachable = reachable.max(slack);
        }
        reachable
    }

    fn unassign(&mut self, u: usize) {
        let value = self.current[u] as i64;
        for &set in &self.containing[u] {
            self.sums[set] -= value;
            self.remaining[set] += 1;
        }
    }

    fn descend(&mut self, u: usize) {
        if self.best == self.floor {
            return;
        }
        if u == self.n {
            let value = self.sums.iter().map(|s| s.unsigned_abs()).max().unwrap_or(0);
            if value < self.best {
                self.best = value;
                self.best_coloring = Some(self.current.clone());
            }
            return;
        }
        for value in [1i8, -1] {
            // a set's final sum is at least |partial sum| - (unassigned count)
            if self.assign(u, value) < self.best {
                self.descend(u + 1);
            }
            self.unassign(u);
        }
    }
}

/// A certified lower bound on the hereditary discrepancy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HerdiscBound {
    pub lower_bound: u64,
    /// Ground elements of a trace attaining the bound.
    pub witness: Vec<usize>,
    /// True when every subset was evaluated, making the bound exact.
    pub exhaustive: bool,
}

/// `herdisc` exactly when `2^ground_size <= budget`, otherwise a lower bound
/// from `budget` random subsets followed by greedy single-element deletions.
pub fn herdisc_search(s: &SetSystem, budget: u64, seed: u64) -> Result<HerdiscBound> {
    let n = s.ground_size();
    let disc_of = |subset: &[usize]| -> Result<u64> {
        let (t, _) = s.trace(subset)?;
        Ok(exact_discrepancy(&t)?.0)
    };
    if n < 64 && 1u64 << n <= budget {
        let mut best = HerdiscBound { lower_bound: 0, witness: Vec::new(), exhaustive: true };
        for mask in 0u64..1 << n {
            let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let d = disc_of(&subset)?;
            if d > best.lower_bound {
                best.lower_bound = d;
                best.witness = subset;
            }
        }
        return Ok(best);
    }

    let mut rng = rng::seeded(seed);
    let max_size = n.min(DEFAULT_EXACT_CAP);
    let mut best = HerdiscBound { lower_bound: 0, witness: Vec::new(), exhaustive: false };
    let mut pool: Vec<usize> = (0..n).collect();
    let mut evaluated = 0;
    while evaluated < budget / 2 {
        pool.shuffle(&mut rng);
        let size = rng.gen_range(1..=max_size.max(1)).min(n);
        let mut subset = pool[..size].to_vec();
        subset.sort_unstable();
        let d = disc_of(&subset)?;
        evaluated += 1;
        if d > best.lower_bound || best.witness.is_empty() {
            best.lower_bound = d;
            best.witness = subset;
        }
    }
    // greedy: drop single elements while that strictly increases the discrepancy
    let mut improved = true;
    while improved && evaluated < budget {
        improved = false;
        for i in 0..best.witness.len() {
            let mut candidate = best.witness.clone();
            candidate.remove(i);
            let d = disc_of(&candidate)?;
            evaluated += 1;
            if d > best.lower_bound {
                best.lower_bound = d;
                best.witness = candidate;
                improved = true;
                break;
            }
            if evaluated >= budget {
                break;
            }
        }
    }
    Ok(best)
}
