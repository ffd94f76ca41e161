use super::Graph;
use crate::error::{Error, Result};

/// Largest order exponent accepted by [`hadamard`] and [`sylvester_graph`].
pub const MAX_HADAMARD_ORDER: u32 = 13;

/// A Sylvester–Hadamard matrix of order `2^p` with `±1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    p: u32,
    entries: Vec<i8>,
}

impl HadamardMatrix {
    pub fn order_exponent(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> usize {
        1 << self.p
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.size() + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        let n = self.size();
        &self.entries[i * n..(i + 1) * n]
    }

    /// Checks `H Hᵀ = 2^p I` over the integers.
    pub fn is_orthogonal(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|k| {
                let dot: i64 = self.row(i).iter().zip(self.row(k)).map(|(&a, &b)| (a * b) as i64).sum();
                dot == if i == k { n as i64 } else { 0 }
            })
        })
    }
}

/// `H_0 = (1)` and `H_{p+1} = H_1 ⊗ H_p`.
pub fn hadamard(p: u32) -> Result<HadamardMatrix> {
    if p > MAX_HADAMARD_ORDER {
        return Err(Error::limit(format!("hadamard order 2^{p} exceeds cap 2^{MAX_HADAMARD_ORDER}")));
    }
    let mut entries = vec![1i8];
    let mut n = 1usize;
    for _ in 0..p {
        let m = 2 * n;
        let mut next = vec![0i8; m * m];
        for i in 0..n {
            for j in 0..n {
                let h = entries[i * n + j];
                next[i * m + j] = h;
                next[i * m + j + n] = h;
                next[(i + n) * m + j] = h;
                next[(i + n) * m + j + n] = -h;
            }
        }
        entries = next;
        n = m;
    }
    Ok(HadamardMatrix { p, entries })
}

/// Bipartite graph of `H_p` with `-1` entries dropped.
///
/// Rows are vertices `0..2^p`, columns are `2^p..2^{p+1}`.
pub fn sylvester_graph(p: u32) -> Result<Graph> {
    let h = hadamard(p)?;
    let n = h.size();
    let h = &h;
    let edges = (0..n).flat_map(|i| (0..n).filter(move |&j| h.get(i, j) == 1).map(move |j| (i, n + j)));
    let edges: Vec<_> = edges.collect();
    Graph::from_edges(2 * n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(hadamard(0).unwrap().entries, vec![1]);
        assert_eq!(hadamard(1).unwrap().entries, vec![1, 1, 1, -1]);
        assert!(hadamard(3).unwrap().is_orthogonal());
        assert!(matches!(hadamard(14), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn row_sums() {
        for p in 0..=6 {
            let h = hadamard(p).unwrap();
            for i in 0..h.size() {
                let sum: i64 = h.row(i).iter().map(|&x| x as i64).sum();
                assert_eq!(sum, if i == 0 { h.size() as i64 } else { 0 });
            }
            assert!(h.is_orthogonal());
        }
    }

    #[test]
    fn sylvester_graphs() {
        assert_eq!(sylvester_graph(0).unwrap(), Graph::from_edges(2, [(0, 1)]).unwrap());
        let s1 = sylvester_graph(1).unwrap();
        assert_eq!(s1, Graph::from_edges(4, [(0, 2), (0, 3), (1, 2)]).unwrap());
        for p in 0..=8 {
            let s = sylvester_graph(p).unwrap();
            assert_eq!(s.n(), 1 << (p + 1));
            assert!(s.bipartition().is_some());
        }
    }
}
