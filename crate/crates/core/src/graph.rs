//! Immutable simple undirected graphs with stable edge indices.
//!
//! Vertices are `0..n`, edges are stored once as `(u, v)` with `u < v` and
//! keep the index position of the input list. Everything downstream
//! (labelings, conflict graphs, kernels) refers to edges by these indices.

use std::collections::BTreeSet;
use std::collections::HashMap;

use thiserror::Error;

/// Set of vertex indices. Iteration order is ascending, which all
/// deterministic tie-breaking in the solvers relies on.
pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingKind {
    Maximal,
    Maximum,
}

/// A set of pairwise vertex-disjoint edges, stored as sorted edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<usize>,
    pub kind: MatchingKind,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Endpoints of all matching edges.
    pub fn covered_vertices(&self, g: &Graph) -> VertexSet {
        let mut s = VertexSet::new();
        for &e in &self.edges {
            let (u, v) = g.endpoints(e);
            s.insert(u);
            s.insert(v);
        }
        s
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    adj_bits: Vec<Vec<u64>>,
    edge_ids: HashMap<(usize, usize), usize>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds the canonical graph from an edge list. Pairs may come in any
    /// orientation; they are normalized to `u < v`. Edge `i` of the result is
    /// the `i`-th input pair.
    pub fn from_edge_list(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let blocks = n.div_ceil(64);
        let mut edges = Vec::new();
        let mut adj = vec![Vec::new(); n];
        let mut adj_bits = vec![vec![0u64; blocks]; n];
        let mut edge_ids = HashMap::new();

        for (a, b) in pairs {
            if a >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if edge_ids.insert((u, v), edges.len()).is_some() {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
            adj_bits[u][v / 64] |= 1 << (v % 64);
            adj_bits[v][u / 64] |= 1 << (u % 64);
            edges.push((u, v));
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adj,
            adj_bits,
            edge_ids,
        })
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph::from_edge_list(n, []).unwrap()
    }

    /// Complete graph on `n` vertices, edges in lexicographic order.
    pub fn complete(n: usize) -> Graph {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edge_list(n, pairs).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj_bits[u][v / 64] & (1 << (v % 64)) != 0
    }

    /// Edge index of `{u, v}`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_ids.get(&key).copied()
    }

    /// Neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// All edge indices incident to `u`.
    pub fn incident_edges(&self, u: usize) -> Vec<usize> {
        self.adj[u]
            .iter()
            .map(|&v| self.edge_id(u, v).unwrap())
            .collect()
    }

    /// Every induced P3 of the graph, reported once as the unordered pair of
    /// its two edge indices (pair sorted ascending). A P3 is a path u-v-w
    /// with `{u, w}` not an edge; it is identified by its midpoint, so the
    /// scan over midpoints emits no duplicates.
    pub fn enumerate_p3(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.n {
            let nb = &self.adj[v];
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    let (u, w) = (nb[i], nb[j]);
                    if !self.has_edge(u, w) {
                        let a = self.edge_id(u, v).unwrap();
                        let b = self.edge_id(v, w).unwrap();
                        out.push((a.min(b), a.max(b)));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// First induced P3 as a vertex triple `(u, v, w)` with midpoint `v`,
    /// lowest edge-index pair first. `None` on cluster graphs.
    pub fn first_p3(&self) -> Option<(usize, usize, usize)> {
        let mut best: Option<((usize, usize), (usize, usize, usize))> = None;
        for v in 0..self.n {
            let nb = &self.adj[v];
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    let (u, w) = (nb[i], nb[j]);
                    if !self.has_edge(u, w) {
                        let a = self.edge_id(u, v).unwrap();
                        let b = self.edge_id(v, w).unwrap();
                        let key = (a.min(b), a.max(b));
                        let wit = if a < b { (u, v, w) } else { (w, v, u) };
                        if best.map_or(true, |(k, _)| key < k) {
                            best = Some((key, wit));
                        }
                    }
                }
            }
        }
        best.map(|(_, wit)| wit)
    }

    /// Induced subgraph on `s`, vertices relabeled `0..|s|`. The returned map
    /// sends new indices to the original ones.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().copied().collect();
        let mut back = HashMap::new();
        for (new, &old) in map.iter().enumerate() {
            back.insert(old, new);
        }
        let mut pairs = Vec::new();
        for &(u, v) in &self.edges {
            if let (Some(&nu), Some(&nv)) = (back.get(&u), back.get(&v)) {
                pairs.push((nu, nv));
            }
        }
        (Graph::from_edge_list(map.len(), pairs).unwrap(), map)
    }

    /// Greedy maximal matching over edges in ascending index order.
    pub fn maximal_matching(&self) -> Matching {
        let mut used = vec![false; self.n];
        let mut picked = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                picked.push(i);
            }
        }
        Matching {
            edges: picked,
            kind: MatchingKind::Maximal,
        }
    }

    /// Maximum-cardinality matching (Edmonds blossom, see `matching`).
    pub fn maximum_matching(&self) -> Matching {
        crate::matching::maximum_matching(self)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let vs: Vec<usize> = s.iter().copied().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !self.has_edge(vs[i], vs[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Complement graph; edges emitted in lexicographic order.
    pub fn complement(&self) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    pairs.push((u, v));
                }
            }
        }
        Graph::from_edge_list(self.n, pairs).unwrap()
    }

    /// Connected components, each as a vertex set, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// All vertices as a set.
    pub fn full_vertex_set(&self) -> VertexSet {
        (0..self.n).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{brute_p3_pairs, named};

    #[test]
    fn from_edge_list_builds_canonical_graphs() {
        let p3 = Graph::from_edge_list(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.vertex_count(), 3);
        assert_eq!(p3.edge_count(), 2);
        let k3 = Graph::from_edge_list(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        // orientation is normalized but index order kept
        let g = Graph::from_edge_list(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(g.endpoints(0), (1, 2));
        assert_eq!(g.endpoints(1), (0, 1));
    }

    #[test]
    fn from_edge_list_rejects_bad_input() {
        assert_eq!(
            Graph::from_edge_list(3, [(0, 1), (0, 1)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(
            Graph::from_edge_list(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(
            Graph::from_edge_list(3, [(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        assert_eq!(
            Graph::from_edge_list(2, [(0, 5)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 5, n: 2 }
        );
    }

    #[test]
    fn p3_enumeration_matches_examples() {
        assert!(named::k3().enumerate_p3().is_empty());

        let p3 = named::p3();
        assert_eq!(p3.enumerate_p3(), vec![(0, 1)]);

        // C4: four conflicts forming a cycle over the four edges
        // (expected count frozen from the triple-scan oracle below).
        let c4 = named::c4();
        let pairs = c4.enumerate_p3();
        assert_eq!(pairs.len(), 4);
        assert_eq!(pairs, brute_p3_pairs(&c4));
    }

    #[test]
    fn induced_subgraph_examples() {
        let (k2, map) = named::k3().induced_subgraph(&VertexSet::from([0, 1]));
        assert_eq!(k2.edge_count(), 1);
        assert_eq!(map, vec![0, 1]);

        let c4 = named::c4();
        let (same, _) = c4.induced_subgraph(&c4.full_vertex_set());
        assert_eq!(same, c4);

        // paw = triangle {0,1,2} plus pendant 3 on vertex 0
        let paw = named::paw();
        let (tri, map) = paw.induced_subgraph(&VertexSet::from([0, 1, 2]));
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(tri.edge_count(), 3);
        assert!(tri.is_clique(&tri.full_vertex_set()));
    }

    #[test]
    fn maximal_matching_is_greedy_in_index_order() {
        assert_eq!(named::p3().maximal_matching().edges, vec![0]);
        assert!(Graph::empty(4).maximal_matching().is_empty());
        // C4 listed (01,12,23,30): greedy picks 01 then 23
        let c4 = named::c4();
        assert_eq!(c4.maximal_matching().edges, vec![0, 2]);
    }

    #[test]
    fn clique_complement_components() {
        let k4 = Graph::complete(4);
        assert!(k4.is_clique(&k4.full_vertex_set()));
        let c7 = named::cycle(7);
        assert_eq!(c7.complement().edge_count(), 14); // C(7,2) - 7
        let two_k2 = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        let comps = two_k2.connected_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn complement_is_involutive_on_smalls() {
        for g in [named::paw(), named::c4(), named::claw(), named::cycle(5)] {
            // complement twice re-emits edges in lexicographic order, so
            // compare edge sets rather than the whole struct
            let cc = g.complement().complement();
            let mut a: Vec<_> = g.edges().to_vec();
            let mut b: Vec<_> = cc.edges().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
            assert_eq!(g.vertex_count(), cc.vertex_count());
        }
    }
}
