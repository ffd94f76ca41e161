//! Simple undirected graphs on dense vertex indices `0..n`.

mod generators;
mod hadamard;
mod io;

pub use generators::{generate_family, random_degenerate, Family};
pub use hadamard::{hadamard, sylvester_graph, HadamardMatrix, MAX_HADAMARD_ORDER};
pub use io::{read_edge_list, write_edge_list};

use std::collections::VecDeque;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// A finite simple undirected graph.
///
/// Neighbor lists are kept sorted and duplicate-free, so two graphs with the
/// same edge set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list, symmetrizing and collapsing duplicates.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Graph { adj }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).unwrap()
    }

    /// Parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Self::from_edges(a + b, edges).unwrap()
    }

    /// Row-major `rows × cols` grid; vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Self::from_edges(rows * cols, edges).unwrap()
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The subgraph induced by deleting vertex `v`, with later vertices shifted down.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        let shift = |w: usize| if w > v { w - 1 } else { w };
        let edges = self.edges().filter(|&(a, b)| a != v && b != v).map(|(a, b)| (shift(a), shift(b)));
        Graph::from_edges(self.n() - 1, edges).unwrap()
    }

    /// Breadth-first distances from `source`, stopping at `limit` hops.
    pub fn bfs_distances(&self, source: usize, limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if du == limit {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Proper 2-coloring by BFS, or `None` if the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for s in 0..self.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n() {
            let mut dist = vec![usize::MAX; self.n()];
            let mut parent = vec![usize::MAX; self.n()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// The `d`-th power: an edge between every pair of distinct vertices at distance at most `d`.
pub fn graph_power(g: &Graph, d: usize) -> Result<Graph> {
    if d == 0 {
        return Err(Error::invalid("graph power needs d >= 1"));
    }
    let adj = (0..g.n())
        .map(|v| g.bfs_distances(v, d).into_iter().enumerate().filter(|&(u, dist)| u != v && dist.is_some()).map(|(u, _)| u).collect())
        .collect();
    Ok(Graph::from_sorted_adjacency(adj))
}

/// Replaces every edge by a path through `r` fresh vertices.
///
/// Fresh vertices are appended edge by edge in sorted edge order; along the
/// path from the smaller endpoint they are numbered consecutively.
pub fn subdivide(g: &Graph, r: usize) -> Graph {
    if r == 0 {
        return g.clone();
    }
    let mut next = g.n();
    let mut edges = Vec::with_capacity(g.edge_count() * (r + 1));
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..r {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::from_edges(next, edges).unwrap()
}

/// Largest vertex count for which [`graph_stats`] reports the clique number.
pub const CLIQUE_NUMBER_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub min_degree: usize,
    pub max_degree: usize,
    pub average_degree: Ratio<u64>,
    pub clique_number: Option<usize>,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    let n = g.n();
    let degrees = (0..n).map(|v| g.degree(v));
    let average_degree = if n == 0 { Ratio::from_integer(0) } else { Ratio::new(2 * g.edge_count() as u64, n as u64) };
    GraphStats {
        min_degree: degrees.clone().min().unwrap_or(0),
        max_degree: degrees.max().unwrap_or(0),
        average_degree,
        clique_number: (n <= CLIQUE_NUMBER_CAP).then(|| clique_number(g)),
    }
}

fn clique_number(g: &Graph) -> usize {
    fn extend(g: &Graph, size: usize, candidates: Vec<usize>, best: &mut usize) {
        if candidates.is_empty() {
            *best = (*best).max(size);
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if size + candidates.len() - i <= *best {
                return;
            }
            let next = candidates[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            extend(g, size + 1, next, best);
        }
    }
    let mut best = 0;
    extend(g, 0, (0..g.n()).collect(), &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_of_path() {
        let p = graph_power(&Graph::path(4), 2).unwrap();
        let expected = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)]).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn power_identity_and_zero() {
        let g = Graph::petersen();
        assert_eq!(graph_power(&g, 1).unwrap(), g);
        assert!(matches!(graph_power(&g, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn cube_of_six_cycle_is_complete() {
        assert_eq!(graph_power(&Graph::cycle(6), 3).unwrap(), Graph::complete(6));
    }

    #[test]
    fn subdivided_triangle_is_hexagon() {
        let s = subdivide(&Graph::complete(3), 1);
        assert_eq!(s.n(), 6);
        assert!((0..6).all(|v| s.degree(v) == 2));
        assert_eq!(s.girth(), Some(6));
        assert_eq!(subdivide(&Graph::petersen(), 0), Graph::petersen());
    }

    #[test]
    fn double_subdivision_of_k4() {
        let s = subdivide(&Graph::complete(4), 2);
        assert_eq!(s.n(), 16);
        assert_eq!(s.girth(), Some(9));
        // path vertices are consecutive from the smaller endpoint
        assert!(s.has_edge(0, 4) && s.has_edge(4, 5) && s.has_edge(5, 1));
    }

    #[test]
    fn stats() {
        let k4 = graph_stats(&Graph::complete(4));
        assert_eq!((k4.min_degree, k4.max_degree), (3, 3));
        assert_eq!(k4.average_degree, Ratio::from_integer(3));
        assert_eq!(k4.clique_number, Some(4));

        let p3 = graph_stats(&Graph::path(3));
        assert_eq!((p3.min_degree, p3.max_degree), (1, 2));
        assert_eq!(p3.average_degree, Ratio::new(4, 3));

        assert_eq!(graph_stats(&Graph::petersen()).clique_number, Some(2));

        let empty = graph_stats(&Graph::empty(0));
        assert_eq!((empty.min_degree, empty.max_degree), (0, 0));
        assert_eq!(graph_stats(&Graph::empty(41)).clique_number, None);
    }

    #[test]
    fn petersen_shape() {
        let g = Graph::petersen();
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert_eq!(g.girth(), Some(5));
    }
}
