use nalgebra::DMatrix;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::setsystem::SetSystem;

/// Cap on `sets × ground_size` for [`spectral_lower_bound`].
pub const SPECTRAL_WORK_CAP: usize = 10_000_000;

const GRID: f64 = 1e6;
const RELATIVE_TOLERANCE: f64 = 1e-9;

/// `σ_min(A) · sqrt(n / m)` for the `m × n` incidence matrix `A`.
///
/// For every `x ∈ {-1, 1}^n`, `‖Ax‖_∞ ≥ ‖Ax‖_2 / √m ≥ σ_min √n / √m`, so the
/// value never exceeds the discrepancy. The smallest eigenvalue of `AᵀA` is
/// lowered by `1e-9 · max(1, λ_max)` before the square root, and the result
/// is rounded down to a multiple of `1e-6`. Values within `1e-9` below a grid
/// point snap to it; since the discrepancy is an integer (itself a grid
/// point), the reported bound still never exceeds it.
pub fn spectral_lower_bound(s: &SetSystem) -> Result<Ratio<u64>> {
    let (m, n) = (s.len(), s.ground_size());
    if m.saturating_mul(n) > SPECTRAL_WORK_CAP {
        return Err(Error::limit(format!("incidence matrix {m} x {n} exceeds the spectral cap")));
    }
    // AᵀA is singular when there are fewer sets than elements
    if m == 0 || n == 0 || m < n {
        return Ok(Ratio::from_integer(0));
    }
    let mut gram = DMatrix::<f64>::zeros(n, n);
    for set in s.sets() {
        for &u in set {
            for &v in set {
                gram[(u, v)] += 1.0;
            }
        }
    }
    let eigenvalues = gram.symmetric_eigenvalues();
    let lambda_min = eigenvalues.min();
    let lambda_max = eigenvalues.max();
    let safe = lambda_min - RELATIVE_TOLERANCE * lambda_max.max(1.0);
    if safe <= 0.0 {
        return Ok(Ratio::from_integer(0));
    }
    let bound = safe.sqrt() * (n as f64 / m as f64).sqrt();
    let units = (bound * GRID + RELATIVE_TOLERANCE * GRID).floor() as u64;
    Ok(Ratio::new(units, GRID as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrepancy::exact_discrepancy;
    use crate::graph::sylvester_graph;
    use crate::setsystem::neighborhood_system;

    #[test]
    fn identity() {
        let s = SetSystem::new(3, [vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(spectral_lower_bound(&s).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn fewer_sets_than_elements() {
        let s = SetSystem::new(3, [vec![0, 1, 2]]).unwrap();
        assert_eq!(spectral_lower_bound(&s).unwrap(), Ratio::from_integer(0));
    }

    #[test]
    fn sylvester_is_sound() {
        for p in 1..=3 {
            let s = neighborhood_system(&sylvester_graph(p).unwrap());
            let lb = spectral_lower_bound(&s).unwrap();
            let exact = exact_discrepancy(&s).unwrap().0;
            assert!(lb <= Ratio::from_integer(exact), "p = {p}: {lb} > {exact}");
        }
    }

    #[test]
    fn cap() {
        let s = SetSystem::new(5000, (0..2500).map(|i| vec![i, i + 1])).unwrap();
        assert!(matches!(spectral_lower_bound(&s), Err(Error::ResourceLimit(_))));
    }
}
