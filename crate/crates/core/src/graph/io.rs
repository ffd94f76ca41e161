use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

/// Parses the edge-list text format.
///
/// ```text
/// # comment
/// n 3
/// 0 1
/// 1 2
/// ```
pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(count) = n else {
            match fields.as_slice() {
                ["n", c] => n = Some(c.parse().map_err(|_| err("bad vertex count"))?),
                _ => return Err(err("expected header `n <count>`")),
            }
            continue;
        };
        let [u, v] = fields.as_slice() else {
            return Err(err("expected `u v`"));
        };
        let u: usize = u.parse().map_err(|_| err("bad vertex index"))?;
        let v: usize = v.parse().map_err(|_| err("bad vertex index"))?;
        if u == v {
            return Err(Error::Parse { line: line_no, msg: format!("self-loop at line {line_no}") });
        }
        if u >= count || v >= count {
            return Err(err(&format!("vertex index out of range for n = {count}")));
        }
        edges.push((u, v));
    }
    let n = n.ok_or(Error::Parse { line: 0, msg: "missing header `n <count>`".into() })?;
    Graph::from_edges(n, edges)
}

/// Writes the canonical edge list: header, then `u v` with `u < v` in sorted order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = read_edge_list("n 2\n0 1").unwrap();
        assert_eq!(g, Graph::from_edges(2, [(0, 1)]).unwrap());
    }

    #[test]
    fn duplicates_collapse() {
        let g = read_edge_list("# a comment\nn 3\n0 1\n1 0\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.n(), 3);
    }

    #[test]
    fn self_loop_names_line() {
        let err = read_edge_list("n 2\n0 0").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, msg: "self-loop at line 2".into() });
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(read_edge_list("0 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_edge_list("n 2\n0 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_edge_list("n 2\n0 1 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_edge_list("n 2\n\n0 x"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(read_edge_list("# only comments"), Err(Error::Parse { .. })));
    }

    #[test]
    fn roundtrip_text() {
        let g = Graph::petersen();
        let text = write_edge_list(&g);
        assert!(text.starts_with("n 10\n"));
        assert_eq!(read_edge_list(&text).unwrap(), g);
    }
}
