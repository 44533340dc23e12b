//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable after construction and safe to share across
//! threads. Constructors reject loops and out-of-range ids and collapse
//! duplicate edges, so the symmetry / no-loop / edge-count invariants hold
//! for every value of the type.

mod connectivity;
pub mod families;
mod maxcut;
mod parse;

pub use connectivity::{connected_components, is_connected, is_k_connected};
pub use families::{generate, min_degree_random, ring_lattice, FamilySpec};
pub use maxcut::{cut_size, heuristic_max_cut};
pub use parse::{
    parse_edge_list, parse_graph, parse_graph_auto, parse_json, to_edge_list, to_json, GraphFormat,
    GraphJson,
};

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Simple undirected graph: vertex ids `0..n`, adjacency sets, cached edge
/// count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl Graph {
    /// The empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are collapsed;
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Parameter(format!("loop at vertex {u}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.edge_count += 1;
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in self.adj[u].range((u + 1)..) {
                out.push((u, v));
            }
        }
        out
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of neighbours of `v` inside `set` (deg(v, A)).
    pub fn degree_into(&self, v: usize, set: &BTreeSet<usize>) -> usize {
        if self.adj[v].len() <= set.len() {
            self.adj[v].iter().filter(|u| set.contains(u)).count()
        } else {
            set.iter().filter(|u| self.adj[v].contains(u)).count()
        }
    }

    /// Number of edges with one endpoint in `a` and the other in `b`,
    /// for disjoint `a`, `b`.
    pub fn edges_between(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> usize {
        debug_assert!(a.is_disjoint(b));
        a.iter().map(|&v| self.degree_into(v, b)).sum()
    }

    /// External neighbourhood N(A): vertices outside `set` with a neighbour
    /// inside it.
    pub fn external_neighborhood(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &v in set {
            for &u in &self.adj[v] {
                if !set.contains(&u) {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// Whether `set` induces a clique.
    pub fn is_clique(&self, set: &BTreeSet<usize>) -> bool {
        let mut it = set.iter();
        while let Some(&u) = it.next() {
            for &v in it.clone() {
                if !self.adj[u].contains(&v) {
                    return false;
                }
            }
        }
        true
    }

    /// Returns a copy with the given extra edges inserted.
    pub fn with_edges<I>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (u, v) in extra {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Parameter(format!("loop at vertex {u}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// The subgraph G[A, B]: vertex set A ∪ B, keeping the edges that touch
    /// both sets. For A = B this is the induced subgraph G[A]. Vertices are
    /// relabelled to `0..|A ∪ B|` in ascending order of original id.
    pub fn subgraph_between(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Result<Graph> {
        Ok(self.subgraph_between_with_map(a, b)?.0)
    }

    /// As [`subgraph_between`](Self::subgraph_between), also returning the
    /// original id of each new vertex.
    pub fn subgraph_between_with_map(
        &self,
        a: &BTreeSet<usize>,
        b: &BTreeSet<usize>,
    ) -> Result<(Graph, Vec<usize>)> {
        for &v in a.iter().chain(b.iter()) {
            self.check_vertex(v)?;
        }
        let union: Vec<usize> = a.union(b).copied().collect();
        let index_of = |v: usize| union.binary_search(&v).expect("member of union");
        let mut g = Graph::empty(union.len());
        for (i, &u) in union.iter().enumerate() {
            for &v in self.adj[u].range((u + 1)..) {
                let in_both_sides =
                    (a.contains(&u) && b.contains(&v)) || (a.contains(&v) && b.contains(&u));
                if in_both_sides {
                    g.insert_edge(i, index_of(v));
                }
            }
        }
        Ok((g, union))
    }

    /// Panics (debug builds) if the representation invariants are broken.
    /// All constructors go through checked paths, so this is a test aid.
    pub fn debug_validate(&self) {
        let mut half_degrees = 0usize;
        for v in 0..self.n {
            debug_assert!(!self.adj[v].contains(&v), "loop at {v}");
            for &u in &self.adj[v] {
                debug_assert!(u < self.n);
                debug_assert!(self.adj[u].contains(&v), "asymmetry at ({v},{u})");
            }
            half_degrees += self.adj[v].len();
        }
        debug_assert_eq!(half_degrees, 2 * self.edge_count);
    }
}

/// Binomial coefficient C(n, 2) as usize.
pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
