//! Per-vertex neighbourhood clique audits: whether any neighbourhood spans a
//! clique, and whether two distinct maximal cliques inside a neighbourhood
//! can share more than d - 2 vertices. Maximal cliques are enumerated by
//! Bron-Kerbosch with a hard cap; a capped vertex is reported as such
//! instead of guessed at.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Per-neighbourhood maximal-clique enumeration cap.
pub const DEFAULT_CLIQUE_CAP: usize = 10_000;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DpuzVertexReport {
    pub vertex: usize,
    pub neighborhood_is_clique: bool,
    pub cap_exceeded: bool,
    /// Number of maximal cliques found in the neighbourhood (complete only
    /// when the cap was not hit).
    pub clique_count: usize,
    /// Largest pairwise intersection of two distinct maximal cliques.
    pub max_pairwise_intersection: Option<usize>,
    /// A pair of maximal cliques exceeding the d - 2 intersection bound.
    pub violating_pair: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DpuzReport {
    pub d: usize,
    pub min_degree: usize,
    /// Whether delta(G) >= d(d + 1).
    pub degree_hypothesis: bool,
    /// (a): no neighbourhood spans a clique (over non-capped vertices).
    pub no_neighborhood_clique: bool,
    /// (b): all pairwise maximal-clique intersections are <= d - 2
    /// (over non-capped vertices).
    pub intersections_ok: bool,
    pub capped_vertices: Vec<usize>,
    pub per_vertex: Vec<DpuzVertexReport>,
}

/// Checks the neighbourhood hypotheses vertex by vertex.
pub fn check_neighborhood_cliques(g: &Graph, d: usize, clique_cap: usize) -> DpuzReport {
    let mut per_vertex = Vec::with_capacity(g.n());
    let mut no_clique = true;
    let mut intersections_ok = true;
    let mut capped = Vec::new();

    for v in g.vertices() {
        let nbhd = g.neighbors(v);
        let is_clique = g.is_clique(nbhd);
        if is_clique {
            no_clique = false;
            per_vertex.push(DpuzVertexReport {
                vertex: v,
                neighborhood_is_clique: true,
                cap_exceeded: false,
                clique_count: if nbhd.is_empty() { 0 } else { 1 },
                max_pairwise_intersection: None,
                violating_pair: None,
            });
            continue;
        }
        let (cliques, cap_exceeded) = maximal_cliques_capped(g, nbhd, clique_cap);
        if cap_exceeded {
            capped.push(v);
        }
        let mut max_inter = None;
        let mut violating = None;
        if !cap_exceeded {
            for i in 0..cliques.len() {
                for j in (i + 1)..cliques.len() {
                    let inter = cliques[i].intersection(&cliques[j]).count();
                    if max_inter.is_none_or(|m| inter > m) {
                        max_inter = Some(inter);
                    }
                    let allowed = d.saturating_sub(2);
                    if inter > allowed && violating.is_none() {
                        violating = Some((
                            cliques[i].iter().copied().collect(),
                            cliques[j].iter().copied().collect(),
                        ));
                    }
                }
            }
            if violating.is_some() {
                intersections_ok = false;
            }
        }
        per_vertex.push(DpuzVertexReport {
            vertex: v,
            neighborhood_is_clique: false,
            cap_exceeded,
            clique_count: cliques.len(),
            max_pairwise_intersection: max_inter,
            violating_pair: violating,
        });
    }

    DpuzReport {
        d,
        min_degree: g.min_degree(),
        degree_hypothesis: g.min_degree() >= d * (d + 1),
        no_neighborhood_clique: no_clique,
        intersections_ok,
        capped_vertices: capped,
        per_vertex,
    }
}

/// Bron-Kerbosch with greedy pivoting over the induced subgraph on `within`;
/// stops collecting past `cap` and reports the overflow.
fn maximal_cliques_capped(
    g: &Graph,
    within: &BTreeSet<usize>,
    cap: usize,
) -> (Vec<BTreeSet<usize>>, bool) {
    fn extend(
        g: &Graph,
        r: &mut BTreeSet<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<BTreeSet<usize>>,
        cap: usize,
        overflow: &mut bool,
    ) {
        if *overflow {
            return;
        }
        if p.is_empty() && x.is_empty() {
            if out.len() >= cap {
                *overflow = true;
            } else {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| g.degree_into(u, &p))
            .expect("p or x nonempty");
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&u| !g.has_edge(pivot, u))
            .collect();
        for u in candidates {
            let np: BTreeSet<usize> = p.iter().copied().filter(|&w| g.has_edge(u, w)).collect();
            let nx: BTreeSet<usize> = x.iter().copied().filter(|&w| g.has_edge(u, w)).collect();
            r.insert(u);
            extend(g, r, np, nx, out, cap, overflow);
            r.remove(&u);
            p.remove(&u);
            x.insert(u);
            if *overflow {
                return;
            }
        }
    }

    let mut out = Vec::new();
    let mut overflow = false;
    if !within.is_empty() {
        let mut r = BTreeSet::new();
        extend(
            g,
            &mut r,
            within.clone(),
            BTreeSet::new(),
            &mut out,
            cap,
            &mut overflow,
        );
    }
    (out, overflow)
}
