//! Linear orders, degeneracy, orientations and weak reachability.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A linear order on `0..n`; smaller rank means earlier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    position: Vec<usize>,
    sequence: Vec<usize>,
}

impl LinearOrder {
    pub fn identity(n: usize) -> Self {
        LinearOrder { position: (0..n).collect(), sequence: (0..n).collect() }
    }

    /// Builds the order listing `sequence` from earliest to latest.
    pub fn from_sequence(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (rank, &v) in sequence.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::invalid("order is not a permutation"));
            }
            position[v] = rank;
        }
        Ok(LinearOrder { position, sequence })
    }

    /// Parses a single line of space-separated vertices in increasing rank.
    pub fn parse(text: &str) -> Result<Self> {
        let seq = text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::invalid(format!("bad vertex `{t}` in order"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_sequence(seq)
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Vertices from earliest to latest.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.position[u] < self.position[v]
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sequence.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Each edge directed from its later endpoint to its earlier one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    out_neighbors: Vec<Vec<usize>>,
    max_out_degree: usize,
}

impl Orientation {
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_neighbors[v]
    }

    pub fn max_out_degree(&self) -> usize {
        self.max_out_degree
    }

    pub fn n(&self) -> usize {
        self.out_neighbors.len()
    }

    /// `N⁻(v)`: tails of arcs entering `v`.
    pub fn in_neighborhoods(&self) -> Vec<Vec<usize>> {
        let mut ins = vec![Vec::new(); self.n()];
        for (u, outs) in self.out_neighbors.iter().enumerate() {
            for &v in outs {
                ins[v].push(u);
            }
        }
        ins
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_neighbors.iter().enumerate().flat_map(|(u, o)| o.iter().map(move |&v| (u, v)))
    }
}

/// Smallest-last order and the degeneracy.
///
/// A minimum-degree vertex (lowest index on ties) is removed repeatedly; the
/// reversed removal sequence is the order, and the largest degree seen at
/// removal time is the degeneracy.
pub fn degeneracy_order(g: &Graph) -> (LinearOrder, usize) {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut removal = Vec::with_capacity(n);
    let mut degeneracy = 0;
    while let Some((d, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(d);
        removed[v] = true;
        removal.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    removal.reverse();
    (LinearOrder::from_sequence(removal).unwrap(), degeneracy)
}

pub fn degeneracy(g: &Graph) -> usize {
    degeneracy_order(g).1
}

/// Orients every edge from the later endpoint toward the earlier one.
pub fn orient_along(g: &Graph, order: &LinearOrder) -> Result<Orientation> {
    if order.len() != g.n() {
        return Err(Error::invalid(format!("order has {} vertices, graph has {}", order.len(), g.n())));
    }
    let out_neighbors: Vec<Vec<usize>> =
        (0..g.n()).map(|v| g.neighbors(v).iter().copied().filter(|&w| order.precedes(w, v)).collect()).collect();
    let max_out_degree = out_neighbors.iter().map(Vec::len).max().unwrap_or(0);
    Ok(Orientation { out_neighbors, max_out_degree })
}

/// `WReach_d[G, L, v]`, sorted.
///
/// Searches paths from `v` while tracking the running minimum; a step to a
/// vertex below the minimum records it as weakly reachable. States are
/// `(vertex, running minimum)` pairs visited at their first (shortest) depth.
pub fn weak_reach(g: &Graph, order: &LinearOrder, d: usize, v: usize) -> Vec<usize> {
    let mut reached = BTreeSet::from([v]);
    let mut seen = HashSet::from([(v, v)]);
    let mut queue = VecDeque::from([(v, v, 0usize)]);
    while let Some((w, min, depth)) = queue.pop_front() {
        if depth == d {
            continue;
        }
        for &x in g.neighbors(w) {
            let next_min = if order.precedes(x, min) {
                reached.insert(x);
                x
            } else {
                min
            };
            if seen.insert((x, next_min)) {
                queue.push_back((x, next_min, depth + 1));
            }
        }
    }
    reached.into_iter().collect()
}

/// All weak reachability sets at once.
///
/// For each `u`, a BFS of depth `d` inside the vertices ranked after `u`
/// finds exactly the vertices that weakly reach `u`.
pub fn weak_reach_all(g: &Graph, order: &LinearOrder, d: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut sets = vec![Vec::new(); n];
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for &u in order.sequence() {
        dist[u] = 0;
        touched.push(u);
        let mut queue = VecDeque::from([u]);
        while let Some(w) = queue.pop_front() {
            sets[w].push(u);
            if dist[w] == d {
                continue;
            }
            for &x in g.neighbors(w) {
                if dist[x] == usize::MAX && order.precedes(u, x) {
                    dist[x] = dist[w] + 1;
                    touched.push(x);
                    queue.push_back(x);
                }
            }
        }
        for w in touched.drain(..) {
            dist[w] = usize::MAX;
        }
    }
    for s in &mut sets {
        s.sort_unstable();
    }
    sets
}

/// `max_v |WReach_d[G, L, v]|` for a fixed order; 0 when the graph has no vertices.
pub fn wcol_from_order(g: &Graph, order: &LinearOrder, d: usize) -> usize {
    weak_reach_all(g, order, d).iter().map(Vec::len).max().unwrap_or(0)
}

/// Default cap for [`wcol_exact`]: all orders of 9 vertices.
pub const DEFAULT_MAX_ORDERINGS: u64 = 362_880;

/// `wcol_d(G)` by exhausting every linear order (at most 9 vertices).
pub fn wcol_exact(g: &Graph, d: usize) -> Result<usize> {
    wcol_exact_capped(g, d, DEFAULT_MAX_ORDERINGS)
}

pub fn wcol_exact_capped(g: &Graph, d: usize, max_orderings: u64) -> Result<usize> {
    let n = g.n();
    let count = (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k));
    if count.is_none_or(|c| c > max_orderings) {
        return Err(Error::limit(format!("{n}! orderings exceed cap {max_orderings}")));
    }
    if n == 0 {
        return Ok(0);
    }
    // the degeneracy order gives a starting upper bound for the pruning
    let mut best = wcol_from_order(g, &heuristic_order(g), d);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut i = 1;
    best = best.min(bounded_wcol(g, &perm, d, best));
    // Heap's algorithm
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(bounded_wcol(g, &perm, d, best));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

/// Max weak-reach size under `perm`, or `cap` as soon as some vertex reaches `cap`.
fn bounded_wcol(g: &Graph, perm: &[usize], d: usize, cap: usize) -> usize {
    let order = LinearOrder::from_sequence(perm.to_vec()).unwrap();
    let mut worst = 0;
    for v in 0..g.n() {
        worst = worst.max(weak_reach(g, &order, d, v).len());
        if worst >= cap {
            return cap;
        }
    }
    worst
}

fn heuristic_order(g: &Graph) -> LinearOrder {
    degeneracy_order(g).0
}

/// The order fed to the graph-power coloring pipeline when none is given.
///
/// This is the smallest-last order; it is optimal for `d = 1` and a
/// heuristic for larger radii.
pub fn wcol_heuristic_order(g: &Graph) -> LinearOrder {
    heuristic_order(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracies() {
        assert_eq!(degeneracy(&Graph::cycle(5)), 2);
        assert_eq!(degeneracy(&Graph::complete(6)), 5);
        assert_eq!(degeneracy(&Graph::grid(5, 5)), 2);
        assert_eq!(degeneracy(&Graph::empty(0)), 0);
        assert_eq!(degeneracy(&Graph::empty(3)), 0);
        assert_eq!(degeneracy(&Graph::petersen()), 3);
    }

    /// Max over induced subgraphs of the minimum degree, by exhaustion.
    fn brute_degeneracy(g: &Graph) -> usize {
        let n = g.n();
        (1u32..1 << n)
            .map(|mask| {
                (0..n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| g.neighbors(v).iter().filter(|&&w| mask >> w & 1 == 1).count())
                    .min()
                    .unwrap()
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn degeneracy_matches_exhaustion() {
        assert_eq!(brute_degeneracy(&Graph::grid(3, 3)), 2);
        for g in [Graph::grid(3, 3), Graph::petersen(), Graph::complete_bipartite(3, 4), Graph::cycle(7)] {
            assert_eq!(degeneracy(&g), brute_degeneracy(&g));
        }
    }

    #[test]
    fn orientations() {
        let p = Graph::path(3);
        let o = orient_along(&p, &LinearOrder::identity(3)).unwrap();
        assert_eq!(o.arcs().collect::<Vec<_>>(), vec![(1, 0), (2, 1)]);
        assert_eq!(o.max_out_degree(), 1);

        let k3 = Graph::complete(3);
        let o = orient_along(&k3, &LinearOrder::from_sequence(vec![2, 0, 1]).unwrap()).unwrap();
        let mut outs: Vec<usize> = (0..3).map(|v| o.out_neighbors(v).len()).collect();
        outs.sort();
        assert_eq!(outs, vec![0, 1, 2]);

        let grid = Graph::grid(4, 4);
        let (order, _) = degeneracy_order(&grid);
        assert_eq!(orient_along(&grid, &order).unwrap().max_out_degree(), 2);
        assert!(orient_along(&grid, &LinearOrder::identity(3)).is_err());
    }

    #[test]
    fn weak_reach_examples() {
        let id4 = LinearOrder::identity(4);
        assert_eq!(weak_reach(&Graph::petersen(), &LinearOrder::identity(10), 0, 7), vec![7]);
        assert_eq!(weak_reach(&Graph::path(4), &id4, 2, 3), vec![1, 2, 3]);
        assert_eq!(weak_reach(&Graph::complete(4), &id4, 1, 3), vec![0, 1, 2, 3]);
    }

    #[test]
    fn wcol_examples() {
        assert_eq!(wcol_from_order(&Graph::empty(1), &LinearOrder::identity(1), 3), 1);
        assert_eq!(wcol_from_order(&Graph::path(10), &LinearOrder::identity(10), 3), 4);
        for n in 1..=6 {
            let k = Graph::complete(n);
            assert_eq!(wcol_from_order(&k, &LinearOrder::identity(n), 1), n);
            for d in 1..=2 {
                assert_eq!(wcol_exact(&k, d).unwrap(), n);
            }
        }
        assert_eq!(wcol_exact(&Graph::path(5), 2).unwrap(), 3);
        assert!(matches!(wcol_exact(&Graph::path(10), 1), Err(Error::ResourceLimit(_))));
        assert_eq!(wcol_from_order(&Graph::empty(4), &LinearOrder::from_sequence(vec![3, 1, 0, 2]).unwrap(), 2), 1);
    }

    #[test]
    fn heuristic_on_grid() {
        let g = Graph::grid(4, 4);
        let w = wcol_from_order(&g, &wcol_heuristic_order(&g), 2);
        assert!(w <= 8, "wcol_2 from smallest-last on 4x4 grid was {w}");
    }

    #[test]
    fn order_text() {
        let o = LinearOrder::parse("2 0 1").unwrap();
        assert_eq!(o.rank(2), 0);
        assert_eq!(o.to_string(), "2 0 1");
        assert!(LinearOrder::parse("0 0").is_err());
        assert!(LinearOrder::parse("0 a").is_err());
    }
}
