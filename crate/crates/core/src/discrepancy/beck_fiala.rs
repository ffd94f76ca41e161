//! The constructive Beck–Fiala procedure over exact rationals.
//!
//! Every element starts at 0. While some element is unfrozen, the sets with
//! more than `t` unfrozen elements (the active sets) give fewer equations
//! than there are unfrozen variables, so the active constraint matrix has a
//! non-trivial kernel. The solver moves along a kernel vector as far as the
//! cube `[-1, 1]` allows and freezes every coordinate that reaches `±1`.
//! Active sums therefore stay exactly zero, and once a set turns inactive at
//! most `t` of its coordinates can still move, each by less than 2.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coloring::{eval_discrepancy, Coloring};
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;

/// Summary of a Beck–Fiala run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeckFialaReport {
    /// Degree `t` of the input system.
    pub degree: usize,
    /// Number of kernel steps taken.
    pub rounds: usize,
    /// Guaranteed ceiling `2t - 1` (0 when `t = 0`).
    pub bound: u64,
}

/// A coloring with discrepancy at most `2t - 1`, where `t` is the degree.
pub fn beck_fiala(s: &SetSystem) -> Coloring {
    beck_fiala_report(s).0
}

pub fn beck_fiala_report(s: &SetSystem) -> (Coloring, BeckFialaReport) {
    Solver::new(s).run(false).expect("unchecked run cannot fail")
}

/// Same as [`beck_fiala_report`], but verifies after every step that each
/// active set sums to exactly zero, and that the final coloring meets its bound.
pub fn beck_fiala_checked(s: &SetSystem) -> Result<(Coloring, BeckFialaReport)> {
    let (chi, report) = Solver::new(s).run(true)?;
    let achieved = eval_discrepancy(s, &chi)?.max;
    if achieved > report.bound {
        return Err(Error::Invariant(format!("Beck-Fiala coloring has discrepancy {achieved} > {}", report.bound)));
    }
    Ok((chi, report))
}

struct Solver<'a> {
    sets: &'a [Vec<usize>],
    /// element -> indices of the sets containing it
    containing: Vec<Vec<usize>>,
    /// per set, number of unfrozen elements
    unfrozen_in: Vec<usize>,
    x: Vec<BigRational>,
    frozen: Vec<bool>,
    t: usize,
    /// echelon prefix kept between rounds
    cache: Vec<BasisEntry<i128>>,
}

impl<'a> Solver<'a> {
    fn new(s: &'a SetSystem) -> Self {
        let n = s.ground_size();
        let mut containing = vec![Vec::new(); n];
        for (i, set) in s.sets().iter().enumerate() {
            for &u in set {
                containing[u].push(i);
            }
        }
        let t = containing.iter().map(Vec::len).max().unwrap_or(0);
        // elements in no set are fixed to +1 right away
        let frozen: Vec<bool> = containing.iter().map(Vec::is_empty).collect();
        let x = frozen.iter().map(|&f| if f { BigRational::one() } else { BigRational::zero() }).collect();
        Solver { sets: s.sets(), containing, unfrozen_in: s.sets().iter().map(Vec::len).collect(), x, frozen, t, cache: Vec::new() }
    }

    fn is_active(&self, set: usize) -> bool {
        self.unfrozen_in[set] > self.t
    }

    fn run(mut self, check: bool) -> Result<(Coloring, BeckFialaReport)> {
        let mut rounds = 0;
        while let Some(nu) = self.kernel_vector() {
            self.step(&nu);
            rounds += 1;
            if check {
                self.check_active_sums()?;
            }
        }
        let values = self.x.iter().map(|v| if v.is_positive() { 1 } else { -1 }).collect();
        let report = BeckFialaReport { degree: self.t, rounds, bound: (2 * self.t as u64).saturating_sub(1) };
        Ok((Coloring::new(values)?, report))
    }

    /// A non-zero integer kernel vector of the active constraint matrix,
    /// as `(element, coefficient)` pairs, or `None` once everything is frozen.
    ///
    /// Columns (unfrozen elements) are inserted in increasing index order
    /// into a fraction-free echelon basis; the first column that reduces to
    /// zero yields the kernel vector. It is primitive, with that column's
    /// coefficient positive, so it does not depend on pivot choices.
    /// Machine integers are tried first; on overflow the pass is redone in `BigInt`.
    fn kernel_vector(&mut self) -> Option<Vec<(usize, BigInt)>> {
        let mut cache = std::mem::take(&mut self.cache);
        match self.kernel_vector_in(&mut cache) {
            Some(found) => {
                self.cache = cache;
                found.map(|nu| nu.into_iter().map(|(j, v)| (j, BigInt::from(v))).collect())
            }
            None => self.kernel_vector_in::<BigInt>(&mut Vec::new()).expect("BigInt arithmetic does not overflow"),
        }
    }

    /// Outer `None` means overflow. `basis` may hold the echelon prefix of
    /// an earlier round; entries stay valid up to the first one whose
    /// column froze or whose pivot row went inactive.
    fn kernel_vector_in<T: Exact>(&self, basis: &mut Vec<BasisEntry<T>>) -> Option<Option<Vec<(usize, T)>>> {
        let keep = basis.iter().position(|b| self.frozen[b.col] || !self.is_active(b.rows[0].0)).unwrap_or(basis.len());
        basis.truncate(keep);
        let mut pivot_of: HashMap<usize, usize> = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter_mut().enumerate() {
            b.rows.retain(|&(r, _)| self.is_active(r));
            pivot_of.insert(b.rows[0].0, i);
        }
        let start = basis.last().map_or(0, |b| b.col + 1);
        for j in (start..self.x.len()).filter(|&j| !self.frozen[j]) {
            let mut entry = BasisEntry {
                col: j,
                rows: self.containing[j].iter().filter(|&&s| self.is_active(s)).map(|&s| (s, T::one())).collect(),
                combo: vec![(j, T::one())],
            };
            entry.rows.sort_unstable_by_key(|&(r, _)| r);
            loop {
                let Some(&(r, _)) = entry.rows.first() else {
                    let mut combo = entry.combo;
                    if combo.iter().find(|(c, _)| *c == j).is_some_and(|(_, v)| v.is_neg()) {
                        for (_, v) in &mut combo {
                            *v = v.neg()?;
                        }
                    }
                    return Some(Some(combo));
                };
                match pivot_of.get(&r) {
                    Some(&b) => entry.eliminate(&basis[b])?,
                    None => {
                        pivot_of.insert(r, basis.len());
                        basis.push(entry);
                        break;
                    }
                }
            }
        }
        Some(None)
    }

    fn step(&mut self, nu: &[(usize, BigInt)]) {
        let one = BigRational::one();
        let lambda = nu
            .iter()
            .filter(|(_, v)| !Zero::is_zero(v))
            .map(|(j, v)| {
                let target = if v.is_positive() { one.clone() } else { -one.clone() };
                (target - &self.x[*j]) / BigRational::from_integer(v.clone())
            })
            .min()
            .expect("kernel vector is non-zero");
        for (j, v) in nu {
            let j = *j;
            self.x[j] += &lambda * BigRational::from_integer(v.clone());
            if self.x[j].abs() == one {
                self.frozen[j] = true;
                for &s in &self.containing[j] {
                    self.unfrozen_in[s] -= 1;
                }
            }
        }
    }

    fn check_active_sums(&self) -> Result<()> {
        for (i, set) in self.sets.iter().enumerate().filter(|(i, _)| self.is_active(*i)) {
            let sum: BigRational = set.iter().map(|&u| &self.x[u]).sum();
            if !sum.is_zero() {
                return Err(Error::Invariant(format!("active set {i} has sum {sum}")));
            }
        }
        for (j, v) in self.x.iter().enumerate() {
            let inside = v.abs() < BigRational::one();
            if self.frozen[j] == inside {
                return Err(Error::Invariant(format!("element {j} at {v} has frozen = {}", self.frozen[j])));
            }
        }
        Ok(())
    }
}

/// Integer arithmetic for the elimination; `None` signals overflow.
trait Exact: Clone + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_one(&self) -> bool;
    fn is_zero(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// `a * x - b * y`
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

/// A reduced column: `rows` is its image over active sets (sorted, so the
/// first row is the pivot), and `combo` records it as an integer
/// combination of original columns.
struct BasisEntry<T> {
    col: usize,
    rows: Vec<(usize, T)>,
    combo: Vec<(usize, T)>,
}

impl<T: Exact> BasisEntry<T> {
    /// Clears the entry of `b`'s pivot row, then divides out the content.
    fn eliminate(&mut self, b: &BasisEntry<T>) -> Option<()> {
        let (pivot, pivot_value) = &b.rows[0];
        debug_assert_eq!(self.rows[0].0, *pivot);
        let h = self.rows[0].1.gcd(pivot_value);
        let (a, factor) = (pivot_value.div_exact(&h), self.rows[0].1.div_exact(&h));
        self.rows = combine(&self.rows, &a, &b.rows, &factor)?;
        self.combo = combine(&self.combo, &a, &b.combo, &factor)?;
        let mut g = self.combo[0].1.clone();
        for (_, v) in self.rows.iter().chain(&self.combo) {
            if g.is_one() {
                return Some(());
            }
            g = g.gcd(v);
        }
        if !g.is_zero() && !g.is_one() {
            for (_, v) in self.rows.iter_mut().chain(self.combo.iter_mut()) {
                *v = v.div_exact(&g);
            }
        }
        Some(())
    }
}

/// `a * x - b * y` on sparse vectors sorted by key.
fn combine<T: Exact>(x: &[(usize, T)], a: &T, y: &[(usize, T)], b: &T) -> Option<Vec<(usize, T)>> {
    let zero = T::zero();
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut k) = (0, 0);
    while i < x.len() || k < y.len() {
        let (key, v) = match (x.get(i), y.get(k)) {
            (Some((kx, vx)), Some((ky, vy))) if kx == ky => {
                i += 1;
                k += 1;
                (*kx, T::mul_sub(a, vx, b, vy)?)
            }
            (Some((kx, vx)), Some((ky, _))) if kx < ky => {
                i += 1;
                (*kx, T::mul_sub(a, vx, &zero, &zero)?)
            }
            (Some((kx, vx)), None) => {
                i += 1;
                (*kx, T::mul_sub(a, vx, &zero, &zero)?)
            }
            (_, Some((ky, vy))) => {
                k += 1;
                (*ky, T::mul_sub(&zero, &zero, b, vy)?)
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((key, v));
        }
    }
    Some(out)
}
