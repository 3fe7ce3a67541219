//! Brute-force ground truth for both problems on small instances.
//!
//! Two independent STC oracles: the primary one branches over the conflict
//! structure (feasible up to m ≈ 20-40 depending on density), the raw one
//! enumerates all 2^m edge subsets and re-derives P3s by a triple scan, so a
//! bug in the P3 machinery cannot hide in both. The CD oracle enumerates
//! vertex partitions into cliques by restricted growth.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::labeling::{DeletionSet, Labeling};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {m} edges, STC oracle budget is {max} (raise ORACLE_MAX_EDGES)")]
    EdgeBudget { m: usize, max: usize },
    #[error("graph has {n} vertices, CD oracle budget is {max} (raise ORACLE_MAX_VERTICES)")]
    VertexBudget { n: usize, max: usize },
}

/// Hard feasibility limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_edges: usize,
    pub max_vertices: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_edges: 20,
            max_vertices: 10,
        }
    }
}

impl OracleBudget {
    /// Budget with both limits raised; used by test sweeps.
    pub fn relaxed(max_edges: usize, max_vertices: usize) -> Self {
        OracleBudget {
            max_edges,
            max_vertices,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Correspondence {
    pub stc_opt: usize,
    pub cd_opt: usize,
    pub corresponds: bool,
}

/// Exact maximum independent set by branch and bound with degree-0/1
/// reductions. Nodes are 0..n with bitset adjacency.
struct MisSearch {
    adj: Vec<u128>,
    best: u128,
    best_size: u32,
}

impl MisSearch {
    fn pick_branch_vertex(&self, active: u128) -> (usize, u32) {
        let mut best_v = usize::MAX;
        let mut best_deg = 0;
        let mut rest = active;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let deg = (self.adj[v] & active).count_ones();
            if best_v == usize::MAX || deg > best_deg {
                best_v = v;
                best_deg = deg;
            }
        }
        (best_v, best_deg)
    }

    fn search(&mut self, mut active: u128, mut cur: u128) {
        loop {
            if cur.count_ones() + active.count_ones() <= self.best_size {
                return;
            }
            if active == 0 {
                // strict improvement keeps the first optimum found
                if cur.count_ones() > self.best_size {
                    self.best_size = cur.count_ones();
                    self.best = cur;
                }
                return;
            }
            let (v, deg) = self.pick_branch_vertex(active);
            if deg <= 1 {
                // a vertex of degree at most one is always in some MIS
                cur |= 1 << v;
                active &= !(self.adj[v] | (1 << v));
                continue;
            }
            self.search(active & !(self.adj[v] | (1 << v)), cur | (1 << v));
            active &= !(1u128 << v);
        }
    }
}

fn max_independent_set(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    assert!(n <= 128);
    let mut adj = vec![0u128; n];
    for &(a, b) in edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut s = MisSearch {
        adj,
        best: 0,
        best_size: 0,
    };
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    s.search(full, 0);
    (0..n).filter(|&i| s.best & (1 << i) != 0).collect()
}

/// Maximum number of strong edges and one optimal labeling, exact.
/// Strong sets are exactly the independent sets of the conflict structure,
/// so this is a MIS over edge indices.
pub fn brute_stc_optimum(
    g: &Graph,
    budget: &OracleBudget,
) -> Result<(usize, Labeling), OracleError> {
    let m = g.edge_count();
    if m > budget.max_edges || m > 128 {
        return Err(OracleError::EdgeBudget {
            m,
            max: budget.max_edges.min(128),
        });
    }
    let conflicts = g.enumerate_p3();
    let strong = max_independent_set(m, &conflicts);
    let opt = strong.len();
    Ok((opt, Labeling::from_strong(g, strong)))
}

/// Second-opinion STC oracle: raw enumeration of all 2^m subsets with its
/// own adjacency-based P3 scan. Only for m <= 16.
pub fn brute_stc_optimum_raw(g: &Graph) -> Result<usize, OracleError> {
    let m = g.edge_count();
    if m > 16 {
        return Err(OracleError::EdgeBudget { m, max: 16 });
    }
    let n = g.vertex_count();
    let mut conflicts = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in b + 1..n {
                if a != b && a != c && g.has_edge(a, b) && g.has_edge(a, c) && !g.has_edge(b, c) {
                    conflicts.push((g.edge_id(a, b).unwrap(), g.edge_id(a, c).unwrap()));
                }
            }
        }
    }
    let mut best = 0usize;
    for mask in 0u32..(1u32 << m) {
        if conflicts
            .iter()
            .all(|&(a, b)| mask & (1 << a) == 0 || mask & (1 << b) == 0)
        {
            best = best.max(mask.count_ones() as usize);
        }
    }
    Ok(best)
}

struct CdSearch<'a> {
    g: &'a Graph,
    // upper bounds on edges still assignable from vertex v on
    suffix_bound: Vec<usize>,
    parts: Vec<Vec<usize>>,
    best: usize,
    best_parts: Vec<Vec<usize>>,
}

impl<'a> CdSearch<'a> {
    fn assign(&mut self, v: usize, acc: usize) {
        let n = self.g.vertex_count();
        if v == n {
            if acc > self.best || self.best_parts.is_empty() {
                self.best = acc;
                self.best_parts = self.parts.clone();
            }
            return;
        }
        if acc + self.suffix_bound[v] < self.best {
            return;
        }
        // join an existing compatible clique, in creation order
        for i in 0..self.parts.len() {
            if self.parts[i].iter().all(|&u| self.g.has_edge(u, v)) {
                let gain = self.parts[i].len();
                self.parts[i].push(v);
                self.assign(v + 1, acc + gain);
                self.parts[i].pop();
            }
        }
        // or open a new one
        self.parts.push(vec![v]);
        self.assign(v + 1, acc);
        self.parts.pop();
    }
}

/// Maximum number of cluster edges and one optimal deletion set, exact.
pub fn brute_cd_optimum(
    g: &Graph,
    budget: &OracleBudget,
) -> Result<(usize, DeletionSet), OracleError> {
    let n = g.vertex_count();
    if n > budget.max_vertices {
        return Err(OracleError::VertexBudget {
            n,
            max: budget.max_vertices,
        });
    }
    // an edge can only be kept once its larger endpoint is assigned, so the
    // gain still reachable from vertex v on is bounded by the number of
    // edges whose larger endpoint is >= v
    let mut by_larger_endpoint = vec![0usize; n + 1];
    for &(_, b) in g.edges() {
        by_larger_endpoint[b] += 1;
    }
    let mut suffix_bound = vec![0usize; n + 1];
    for v in (0..n).rev() {
        suffix_bound[v] = suffix_bound[v + 1] + by_larger_endpoint[v];
    }
    let mut s = CdSearch {
        g,
        suffix_bound,
        parts: Vec::new(),
        best: 0,
        best_parts: Vec::new(),
    };
    s.assign(0, 0);

    let mut part_of = vec![usize::MAX; n];
    for (i, part) in s.best_parts.iter().enumerate() {
        for &v in part {
            part_of[v] = i;
        }
    }
    let deleted = (0..g.edge_count()).filter(|&e| {
        let (u, v) = g.endpoints(e);
        part_of[u] != part_of[v]
    });
    Ok((s.best, DeletionSet::new(deleted)))
}

/// Optimal objective values of both problems with the correspondence verdict.
pub fn correspondence_check(
    g: &Graph,
    budget: &OracleBudget,
) -> Result<Correspondence, OracleError> {
    let (stc_opt, _) = brute_stc_optimum(g, budget)?;
    let (cd_opt, _) = brute_cd_optimum(g, budget)?;
    debug_assert!(cd_opt <= stc_opt);
    Ok(Correspondence {
        stc_opt,
        cd_opt,
        corresponds: stc_opt == cd_opt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::fig3_graphs;
    use crate::labeling::is_stc_labeling;
    use crate::testutil::{brute_cd_cluster_opt, brute_stc_strong_opt, named, random_graphs};

    fn b() -> OracleBudget {
        OracleBudget::relaxed(24, 10)
    }

    #[test]
    fn stc_oracle_examples() {
        assert_eq!(brute_stc_optimum(&named::k3(), &b()).unwrap().0, 3);
        // frozen from the raw-enumeration oracle: C4 optimum is 2
        assert_eq!(brute_stc_strong_opt(&named::c4()), 2);
        assert_eq!(brute_stc_optimum(&named::c4(), &b()).unwrap().0, 2);
        let (fig3a, _) = fig3_graphs();
        assert_eq!(brute_stc_optimum(&fig3a, &b()).unwrap().0, 8);
    }

    #[test]
    fn cd_oracle_examples() {
        assert_eq!(brute_cd_optimum(&named::k3(), &b()).unwrap().0, 3);
        assert_eq!(brute_cd_cluster_opt(&named::c4()), 2);
        assert_eq!(brute_cd_optimum(&named::c4(), &b()).unwrap().0, 2);
        let co_c7 = named::cycle(7).complement();
        assert_eq!(brute_cd_optimum(&co_c7, &b()).unwrap().0, 6);
    }

    #[test]
    fn correspondence_examples() {
        let k3 = named::k3();
        assert_eq!(
            correspondence_check(&k3, &b()).unwrap(),
            Correspondence {
                stc_opt: 3,
                cd_opt: 3,
                corresponds: true
            }
        );
        let (fig3a, fig3b) = fig3_graphs();
        let ca = correspondence_check(&fig3a, &b()).unwrap();
        assert_eq!((ca.stc_opt, ca.cd_opt, ca.corresponds), (8, 7, false));
        let cb = correspondence_check(&fig3b, &b()).unwrap();
        assert_eq!((cb.stc_opt, cb.cd_opt, cb.corresponds), (7, 6, false));
    }

    #[test]
    fn budget_overruns_are_reported() {
        let big = Graph::complete(8); // 28 edges
        assert!(matches!(
            brute_stc_optimum(&big, &OracleBudget::default()),
            Err(OracleError::EdgeBudget { m: 28, max: 20 })
        ));
        let wide = Graph::empty(11);
        assert!(matches!(
            brute_cd_optimum(&wide, &OracleBudget::default()),
            Err(OracleError::VertexBudget { n: 11, max: 10 })
        ));
        assert!(brute_stc_optimum_raw(&big).is_err());
    }

    #[test]
    fn the_two_stc_oracles_agree() {
        for g in random_graphs(17, 120, 7) {
            if g.edge_count() > 16 {
                continue;
            }
            let a = brute_stc_optimum(&g, &b()).unwrap().0;
            let raw = brute_stc_optimum_raw(&g).unwrap();
            let third = brute_stc_strong_opt(&g);
            assert_eq!(a, raw, "{g:?}");
            assert_eq!(a, third, "{g:?}");
        }
    }

    #[test]
    fn oracle_invariants() {
        for g in random_graphs(29, 80, 8) {
            let (stc, lab) = brute_stc_optimum(&g, &OracleBudget::relaxed(30, 10)).unwrap();
            let (cd, del) = brute_cd_optimum(&g, &b()).unwrap();
            assert!(cd <= stc);
            assert!(stc >= g.maximum_matching().len());
            assert!(is_stc_labeling(&g, &lab).unwrap());
            assert_eq!(lab.strong_count(), stc);
            let residual = del.apply(&g);
            assert!(crate::labeling::is_cluster_graph(&residual));
            assert_eq!(g.edge_count() - del.len(), cd);
        }
    }

    #[test]
    fn oracle_is_order_independent() {
        // relabeling the vertices must not change the optimum
        for g in random_graphs(31, 40, 7) {
            let n = g.vertex_count();
            let perm: Vec<usize> = (0..n).rev().collect();
            let relabeled = Graph::from_edge_list(
                n,
                g.edges().iter().map(|&(u, v)| (perm[u], perm[v])),
            )
            .unwrap();
            assert_eq!(
                brute_stc_optimum(&g, &b()).unwrap().0,
                brute_stc_optimum(&relabeled, &b()).unwrap().0
            );
            assert_eq!(
                brute_cd_optimum(&g, &b()).unwrap().0,
                brute_cd_optimum(&relabeled, &b()).unwrap().0
            );
        }
    }

    use crate::graph::Graph;
}
