//! Connectivity queries: components, and k-connectivity via unit-capacity
//! max-flow on the vertex-split digraph.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use super::Graph;

/// Breadth-first connected components, listed in order of smallest member.
pub fn connected_components(g: &Graph) -> Vec<BTreeSet<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for start in g.vertices() {
        if seen[start] {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            comp.insert(v);
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// The empty and one-vertex graphs count as connected.
pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// True iff `|V| > k` and no vertex cut of size `< k` exists.
///
/// Flow pairs: one fixed minimum-degree vertex against all its non-neighbours,
/// plus every non-adjacent pair of its neighbours. If a cut S of size `< k`
/// exists, either the fixed vertex avoids S (then some non-neighbour sits
/// across the cut), or it lies in S (then it has neighbours in two components
/// of G - S, a non-adjacent pair). Either way some tested pair has local
/// connectivity `< k`.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n <= k {
        return false;
    }
    if k == 0 {
        return true;
    }
    if !is_connected(g) {
        return false;
    }
    if g.min_degree() < k {
        return false;
    }
    let v0 = g
        .vertices()
        .min_by_key(|&v| (g.degree(v), v))
        .expect("nonempty");
    let mut flow = SplitFlow::new(g);
    for w in g.vertices() {
        if w != v0 && !g.has_edge(v0, w) && flow.local_connectivity(v0, w, k) < k {
            return false;
        }
    }
    let nbrs: Vec<usize> = g.neighbors(v0).iter().copied().collect();
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !g.has_edge(x, y) && flow.local_connectivity(x, y, k) < k {
                return false;
            }
        }
    }
    true
}

/// Unit-capacity flow network where every vertex v is split into
/// v_in = 2v and v_out = 2v + 1 joined by a capacity-1 arc. Each undirected
/// edge {u, v} becomes u_out -> v_in and v_out -> u_in with large capacity.
struct SplitFlow {
    to: Vec<usize>,
    cap_init: Vec<u32>,
    cap: Vec<u32>,
    head: Vec<Vec<usize>>,
}

const BIG: u32 = u32::MAX / 4;

impl SplitFlow {
    fn new(g: &Graph) -> Self {
        let nodes = 2 * g.n();
        let mut f = SplitFlow {
            to: Vec::new(),
            cap_init: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); nodes],
        };
        for v in g.vertices() {
            f.arc(2 * v, 2 * v + 1, 1);
        }
        for (u, v) in g.edges() {
            f.arc(2 * u + 1, 2 * v, BIG);
            f.arc(2 * v + 1, 2 * u, BIG);
        }
        f
    }

    fn arc(&mut self, from: usize, to: usize, cap: u32) {
        let id = self.to.len();
        self.to.push(to);
        self.cap_init.push(cap);
        self.head[from].push(id);
        self.to.push(from);
        self.cap_init.push(0);
        self.head[to].push(id + 1);
    }

    /// Max-flow from s_out to t_in, stopping as soon as `k` is reached.
    fn local_connectivity(&mut self, s: usize, t: usize, k: usize) -> usize {
        self.cap.clone_from(&self.cap_init);
        let (src, dst) = (2 * s + 1, 2 * t);
        let mut value = 0usize;
        let mut parent = vec![usize::MAX; self.head.len()];
        while value < k {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            parent[src] = usize::MAX - 1;
            let mut queue = VecDeque::from([src]);
            'bfs: while let Some(v) = queue.pop_front() {
                for &e in &self.head[v] {
                    let w = self.to[e];
                    if self.cap[e] > 0 && parent[w] == usize::MAX {
                        parent[w] = e;
                        if w == dst {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if parent[dst] == usize::MAX {
                break;
            }
            let mut v = dst;
            while v != src {
                let e = parent[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            value += 1;
        }
        value
    }
}
