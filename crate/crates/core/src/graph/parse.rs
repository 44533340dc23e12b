//! Graph file formats.
//!
//! Edge list: first line `n m`, then `m` lines `u v` with `0 <= u < v < n`,
//! whitespace-separated. JSON: `{"n": int, "edges": [[u, v], ...]}`.
//! Duplicate edges collapse in both formats; loops are rejected.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Json,
}

/// Serde image of the JSON format; also used when serializing graphs into
/// experiment reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::from_edges(j.n, j.edges)
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Json => parse_json(text),
    }
}

/// Detects the format by the first non-whitespace byte (`{` means JSON).
pub fn parse_graph_auto(text: &str) -> Result<Graph> {
    match text.trim_start().as_bytes().first() {
        Some(b'{') => parse_json(text),
        _ => parse_edge_list(text),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing 'n m' header".into(),
    })?;
    let mut it = header.split_whitespace();
    let n = parse_field(it.next(), header_line, "vertex count")?;
    let m = parse_field(it.next(), header_line, "edge count")?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: header_line,
            msg: "header must be exactly 'n m'".into(),
        });
    }

    let mut g = Graph::empty(n);
    let mut seen = 0usize;
    for (line, content) in lines {
        if seen == m {
            return Err(Error::Parse {
                line,
                msg: format!("more than {m} edge lines"),
            });
        }
        let mut it = content.split_whitespace();
        let u = parse_field(it.next(), line, "endpoint")?;
        let v = parse_field(it.next(), line, "endpoint")?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line,
                msg: "edge line must be exactly 'u v'".into(),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("loop at vertex {u}"),
            });
        }
        if u > v {
            return Err(Error::Parse {
                line,
                msg: format!("endpoints must satisfy u < v; got {u} {v}"),
            });
        }
        if v >= n {
            return Err(Error::VertexRange { vertex: v, n });
        }
        g.insert_edge(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("expected {m} edge lines, found {seen}"),
        });
    }
    Ok(g)
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let raw = field.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    raw.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid {what} '{raw}'"),
    })
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    // JSON edges may come in either endpoint order.
    let mut g = Graph::empty(j.n);
    for (u, v) in j.edges {
        if u >= j.n || v >= j.n {
            return Err(Error::VertexRange {
                vertex: u.max(v),
                n: j.n,
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: 0,
                msg: format!("loop at vertex {u}"),
            });
        }
        g.insert_edge(u.min(v), u.max(v));
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path_on_three_vertices() {
        let g = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 2));
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn rejects_loop_with_line_number() {
        match parse_edge_list("2 1\n0 0") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("loop"));
            }
            other => panic!("expected loop parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_four_cycle() {
        let g = parse_edge_list("4 4\n0 1\n1 2\n2 3\n0 3").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        assert!(matches!(
            parse_edge_list("3 1\n0 3"),
            Err(Error::VertexRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn rejects_wrong_edge_counts() {
        assert!(parse_edge_list("3 2\n0 1").is_err());
        assert!(parse_edge_list("3 1\n0 1\n1 2").is_err());
        assert!(parse_edge_list("3 1\n1 0").is_err()); // u < v required
    }

    #[test]
    fn json_roundtrip_and_auto_detect() {
        let g = parse_json(r#"{"n": 4, "edges": [[0,1],[2,1],[2,3],[3,0]]}"#).unwrap();
        assert_eq!(g.edge_count(), 4);
        let again = parse_graph_auto(&to_json(&g)).unwrap();
        assert_eq!(g, again);
        let third = parse_graph_auto(&to_edge_list(&g)).unwrap();
        assert_eq!(g, third);
    }

    #[test]
    fn json_rejects_loops() {
        assert!(parse_json(r#"{"n": 2, "edges": [[1,1]]}"#).is_err());
    }
}
