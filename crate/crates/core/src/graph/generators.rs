use std::str::FromStr;

use rand::Rng as _;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng;

/// Named graph families understood by [`generate_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Grid,
    Complete,
    CompleteBipartite,
    Gnp,
    AllDSubsets,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "grid" => Family::Grid,
            "complete" => Family::Complete,
            "complete_bipartite" | "complete-bipartite" => Family::CompleteBipartite,
            "gnp" => Family::Gnp,
            "all_d_subsets" | "all-d-subsets" => Family::AllDSubsets,
            other => return Err(Error::invalid(format!("unknown graph family `{other}`"))),
        })
    }
}

const MAX_GENERATED_VERTICES: usize = 1 << 20;

/// Deterministic generator: the same `(family, params, seed)` always yields the same graph.
///
/// Parameters per family: `path [n]`, `cycle [n]`, `grid [rows, cols]`,
/// `complete [n]`, `complete_bipartite [a, b]`, `gnp [n, num, den]` (edge
/// probability `num/den`), `all_d_subsets [n, d]`. Only `gnp` reads the seed.
pub fn generate_family(family: Family, params: &[u64], seed: u64) -> Result<Graph> {
    let arity = match family {
        Family::Path | Family::Cycle | Family::Complete => 1,
        Family::Grid | Family::CompleteBipartite | Family::AllDSubsets => 2,
        Family::Gnp => 3,
    };
    if params.len() != arity {
        return Err(Error::invalid(format!("{family:?} takes {arity} parameter(s), got {}", params.len())));
    }
    let size = |x: u64| -> Result<usize> {
        usize::try_from(x).ok().filter(|&v| v <= MAX_GENERATED_VERTICES).ok_or_else(|| Error::invalid(format!("parameter {x} too large")))
    };
    match family {
        Family::Path => Ok(Graph::path(size(params[0])?)),
        Family::Cycle => {
            let n = size(params[0])?;
            if n < 3 {
                return Err(Error::invalid("cycle needs n >= 3"));
            }
            Ok(Graph::cycle(n))
        }
        Family::Complete => {
            let n = size(params[0])?;
            if n > 4096 {
                return Err(Error::invalid("complete graph capped at 4096 vertices"));
            }
            Ok(Graph::complete(n))
        }
        Family::Grid => {
            let (r, c) = (size(params[0])?, size(params[1])?);
            if r == 0 || c == 0 || r * c > MAX_GENERATED_VERTICES {
                return Err(Error::invalid("grid needs rows, cols >= 1"));
            }
            Ok(Graph::grid(r, c))
        }
        Family::CompleteBipartite => {
            let (a, b) = (size(params[0])?, size(params[1])?);
            if a * b > 1 << 24 {
                return Err(Error::invalid("complete bipartite graph too large"));
            }
            Ok(Graph::complete_bipartite(a, b))
        }
        Family::Gnp => {
            let n = size(params[0])?;
            let (num, den) = (params[1], params[2]);
            if den == 0 || num > den {
                return Err(Error::invalid("gnp probability must be num/den with 0 <= num <= den, den > 0"));
            }
            if n > 1 << 14 {
                return Err(Error::invalid("gnp capped at 16384 vertices"));
            }
            Ok(gnp(n, num, den, seed))
        }
        Family::AllDSubsets => {
            let (n, d) = (size(params[0])?, size(params[1])?);
            if d > n {
                return Err(Error::invalid("all_d_subsets needs d <= n"));
            }
            all_d_subsets(n, d)
        }
    }
}

/// `G(n, num/den)`: pairs are visited in lexicographic order, one draw each.
fn gnp(n: usize, num: u64, den: u64, seed: u64) -> Graph {
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..den) < num {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// A random `d`-degenerate graph: vertex `v` joins `min(v, d)` distinct
/// earlier vertices chosen uniformly.
pub fn random_degenerate(n: usize, d: usize, seed: u64) -> Graph {
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        for u in rand::seq::index::sample(&mut rng, v, d.min(v)) {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Bipartite incidence graph between `[n]` and its `d`-subsets (lexicographic).
fn all_d_subsets(n: usize, d: usize) -> Result<Graph> {
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..d).collect();
    loop {
        subsets.push(current.clone());
        if subsets.len() + n > MAX_GENERATED_VERTICES {
            return Err(Error::invalid("too many subsets"));
        }
        // advance to the next combination
        let Some(i) = (0..d).rev().find(|&i| current[i] < n - d + i) else { break };
        current[i] += 1;
        for j in i + 1..d {
            current[j] = current[j - 1] + 1;
        }
    }
    let edges: Vec<_> = subsets.iter().enumerate().flat_map(|(k, s)| s.iter().map(move |&u| (u, n + k))).collect();
    Graph::from_edges(n + subsets.len(), edges)
}
