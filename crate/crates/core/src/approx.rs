//! ε-approximations by repeated halving with Beck–Fiala colorings, and
//! exact checks of the approximation and net properties.
//!
//! A halving level colors the trace on the current subset, keeps one color
//! class rebalanced to exactly `⌈n/2⌉` elements, and charges the measured
//! discrepancy `D` of that split. Level `i` then moves every proportion by
//! at most `2D/n ≤ 2^(i+1) D / |U|`, which gives the claimed
//! `ε = (2/|U|) Σ 2^i D_i`.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::discrepancy::{beck_fiala, eval_discrepancy, Coloring};
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;

pub type Rational = Ratio<u64>;

fn as_fraction<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::invalid(format!("bad rational '{text}'"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
        None => (text.trim().parse().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// One halving step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    /// size of the subset that was halved
    pub size: usize,
    /// discrepancy of the Beck–Fiala coloring on the trace
    pub beck_fiala_disc: u64,
    /// Beck–Fiala color whose class was kept
    pub kept_color: i8,
    /// elements moved out of the kept class to reach `⌈size/2⌉`
    pub moved: usize,
    /// discrepancy of the final split, charged into ε
    pub disc_used: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproximationReport {
    pub ground_size: usize,
    /// whether `U` had to be added to the system
    pub adjoined_ground: bool,
    pub sample: Vec<usize>,
    #[serde(serialize_with = "as_fraction")]
    pub epsilon_target: Rational,
    #[serde(serialize_with = "as_fraction")]
    pub epsilon_claimed: Rational,
    #[serde(serialize_with = "as_fraction")]
    pub epsilon_measured: Rational,
    pub levels: Vec<Level>,
    /// the first level that would have pushed the claim past the target
    pub rejected: Option<Level>,
}

impl ApproximationReport {
    /// Largest `disc_used` over accepted and rejected levels.
    pub fn max_disc_used(&self) -> u64 {
        self.levels.iter().chain(&self.rejected).map(|l| l.disc_used).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn sorted_subset(subset: &[usize], ground: usize) -> Result<Vec<usize>> {
    let mut v = subset.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.last().is_some_and(|&u| u >= ground) {
        return Err(Error::invalid("subset leaves the ground set"));
    }
    Ok(v)
}

/// Splits `current` into a kept half of exactly `⌈|current|/2⌉` elements.
/// `s` must contain its ground set.
pub fn halve(s: &SetSystem, current: &[usize]) -> Result<(Vec<usize>, Level)> {
    let current = sorted_subset(current, s.ground_size())?;
    if current.is_empty() {
        return Err(Error::invalid("cannot halve an empty subset"));
    }
    if !s.contains_set(&(0..s.ground_size()).collect::<Vec<_>>()) {
        return Err(Error::invalid("halving needs the ground set as a member"));
    }
    let (trace, _) = s.trace(&current)?;
    let chi = beck_fiala(&trace);
    let beck_fiala_disc = eval_discrepancy(&trace, &chi)?.max;
    let plus = chi.values().iter().filter(|&&v| v == 1).count();
    let minus = current.len() - plus;
    let kept_color = match plus.cmp(&minus) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => chi.get(0),
    };
    let target = current.len().div_ceil(2);
    let mut split: Vec<i8> = chi.values().iter().map(|&v| if v == kept_color { 1 } else { -1 }).collect();
    let mut moved = 0;
    let kept_count = plus.max(minus);
    for v in split.iter_mut() {
        if kept_count - moved == target {
            break;
        }
        if *v == 1 {
            *v = -1;
            moved += 1;
        }
    }
    let split = Coloring::new(split)?;
    let disc_used = eval_discrepancy(&trace, &split)?.max;
    let kept = current.iter().zip(split.values()).filter(|(_, &v)| v == 1).map(|(&u, _)| u).collect();
    Ok((kept, Level { size: current.len(), beck_fiala_disc, kept_color, moved, disc_used }))
}

/// Halves `U` while the claimed ε stays within `eps`, adjoining `U` to `s` first if needed.
pub fn epsilon_approximation(s: &SetSystem, eps: Rational) -> Result<ApproximationReport> {
    if eps == Rational::from_integer(0) || eps > Rational::from_integer(1) {
        return Err(Error::invalid("eps must lie in (0, 1]"));
    }
    let n = s.ground_size();
    if n == 0 {
        return Err(Error::invalid("empty ground set has no sample"));
    }
    let (system, adjoined_ground) = s.with_ground_set();
    let mut current: Vec<usize> = (0..n).collect();
    let mut claimed = Rational::from_integer(0);
    let mut levels = Vec::new();
    let mut rejected = None;
    while current.len() > 1 {
        let (kept, level) = halve(&system, &current)?;
        let weight = 1u64.checked_shl(levels.len() as u32 + 1).ok_or_else(|| Error::limit("too many levels"))?;
        let next = claimed + Rational::new(weight * level.disc_used, n as u64);
        if next > eps {
            rejected = Some(level);
            break;
        }
        claimed = next;
        current = kept;
        levels.push(level);
    }
    let (_, _, measured) = verify_approximation(&system, &current, eps)?;
    Ok(ApproximationReport {
        ground_size: n,
        adjoined_ground,
        sample: current,
        epsilon_target: eps,
        epsilon_claimed: claimed,
        epsilon_measured: measured,
        levels,
        rejected,
    })
}

/// `(ok, worst set, max_S ||A∩S|/|A| − |S|/|U||)`, exactly.
pub fn verify_approximation(s: &SetSystem, sample: &[usize], eps: Rational) -> Result<(bool, Option<usize>, Rational)> {
    let sample = sorted_subset(sample, s.ground_size())?;
    if sample.is_empty() {
        return Err(Error::invalid("empty sample"));
    }
    let mut inside = vec![false; s.ground_size()];
    for &u in &sample {
        inside[u] = true;
    }
    let (a, u) = (sample.len() as u64, s.ground_size() as u64);
    let mut worst: Option<(usize, Rational)> = None;
    for (i, set) in s.sets().iter().enumerate() {
        let hit = Rational::new(set.iter().filter(|&&v| inside[v]).count() as u64, a);
        let share = Rational::new(set.len() as u64, u);
        let gap = if hit > share { hit - share } else { share - hit };
        if worst.as_ref().is_none_or(|(_, w)| gap > *w) {
            worst = Some((i, gap));
        }
    }
    let measured = worst.as_ref().map_or(Rational::from_integer(0), |(_, w)| *w);
    Ok((measured <= eps, worst.map(|(i, _)| i), measured))
}

/// Whether `sample` meets every set with at least `eps·|U|` elements.
pub fn verify_net(s: &SetSystem, sample: &[usize], eps: Rational) -> bool {
    let mut inside = vec![false; s.ground_size()];
    for &u in sample.iter().filter(|&&u| u < s.ground_size()) {
        inside[u] = true;
    }
    let threshold = eps * Rational::from_integer(s.ground_size() as u64);
    s.sets().iter().filter(|set| Rational::from_integer(set.len() as u64) >= threshold).all(|set| set.iter().any(|&v| inside[v]))
}
