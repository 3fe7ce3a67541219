//! The conflict (Gallai) graph of a host graph and the parameter-k route
//! for STC: weak edge sets are exactly the vertex covers of the conflict
//! graph, strong sets its independent sets.

use std::time::Instant;

use crate::graph::Graph;
use crate::kernel::{self, ReducedInstance};
use crate::labeling::Labeling;
use crate::result::{Certificate, SolveResult, SolveStats};

/// One node per edge of the host graph; nodes are adjacent iff the two
/// edges form an induced P3.
#[derive(Debug, Clone)]
pub struct ConflictGraph<'a> {
    host: &'a Graph,
    conflicts: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl<'a> ConflictGraph<'a> {
    pub fn host(&self) -> &Graph {
        self.host
    }

    /// Node count equals the host's edge count.
    pub fn node_count(&self) -> usize {
        self.host.edge_count()
    }

    pub fn conflicts(&self) -> &[(usize, usize)] {
        &self.conflicts
    }

    pub fn neighbors(&self, e: usize) -> &[usize] {
        &self.adj[e]
    }

    /// Is the edge set independent (no two members in conflict)?
    pub fn is_independent(&self, edges: &[usize]) -> bool {
        self.conflicts
            .iter()
            .all(|&(a, b)| !(edges.contains(&a) && edges.contains(&b)))
    }
}

pub fn gallai_graph(g: &Graph) -> ConflictGraph<'_> {
    let conflicts = g.enumerate_p3();
    let mut adj = vec![Vec::new(); g.edge_count()];
    for &(a, b) in &conflicts {
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    ConflictGraph {
        host: g,
        conflicts,
        adj,
    }
}

/// Branch-and-bound vertex cover engine over an adjacency-list graph with a
/// node activity mask. Degree-0 nodes are dropped, degree-1 nodes take their
/// neighbor, otherwise branch on a maximum-degree node (take it, or take its
/// whole neighborhood). Lowest index wins every tie, so results are
/// deterministic.
struct VcEngine<'a> {
    adj: &'a [Vec<usize>],
    nodes: u64,
}

impl<'a> VcEngine<'a> {
    fn active_degree(&self, active: &[bool], v: usize) -> usize {
        self.adj[v].iter().filter(|&&u| active[u]).count()
    }

    fn search(&mut self, mut active: Vec<bool>, mut budget: usize, mut chosen: Vec<usize>) -> Option<Vec<usize>> {
        self.nodes += 1;
        loop {
            let mut deg1: Option<usize> = None;
            let mut max_v: Option<usize> = None;
            let mut max_deg = 0;
            for v in 0..self.adj.len() {
                if !active[v] {
                    continue;
                }
                let d = self.active_degree(&active, v);
                if d == 0 {
                    active[v] = false;
                } else if d == 1 && deg1.is_none() {
                    deg1 = Some(v);
                } else if d > max_deg {
                    max_deg = d;
                    max_v = Some(v);
                }
            }
            if let Some(v) = deg1 {
                // taking the unique neighbor of a degree-1 node is safe
                let u = *self.adj[v]
                    .iter()
                    .find(|&&u| active[u])
                    .expect("degree-1 node has an active neighbor");
                if budget == 0 {
                    return None;
                }
                budget -= 1;
                chosen.push(u);
                active[u] = false;
                active[v] = false;
                continue;
            }
            let Some(v) = max_v else {
                chosen.sort_unstable();
                return Some(chosen); // edgeless: cover complete
            };
            if budget == 0 {
                return None;
            }
            // branch 1: take v
            let mut a1 = active.clone();
            a1[v] = false;
            let mut c1 = chosen.clone();
            c1.push(v);
            if let Some(res) = self.search(a1, budget - 1, c1) {
                return Some(res);
            }
            // branch 2: exclude v, take all its active neighbors
            let nbs: Vec<usize> = self.adj[v].iter().copied().filter(|&u| active[u]).collect();
            if nbs.len() > budget {
                return None;
            }
            active[v] = false;
            for &u in &nbs {
                active[u] = false;
            }
            budget -= nbs.len();
            chosen.extend(nbs);
        }
    }
}

/// A vertex cover of size <= budget if one exists, restricted to nodes where
/// `allowed` is true and forced to contain `included` (already excluded from
/// `allowed`). Plain decision form used by the lexicographic extraction.
fn cover_within(adj: &[Vec<usize>], active: Vec<bool>, budget: usize, nodes: &mut u64) -> Option<Vec<usize>> {
    let mut eng = VcEngine { adj, nodes: 0 };
    let res = eng.search(active, budget, Vec::new());
    *nodes += eng.nodes;
    res
}

/// Minimum vertex cover of the conflict graph within budget `k`, or `None`
/// ("exceeds budget"). When a cover exists the returned one is minimum and,
/// among minimum covers, lexicographically smallest by edge index.
pub fn min_vertex_cover(cg: &ConflictGraph<'_>, k: usize) -> Option<Vec<usize>> {
    min_vertex_cover_counted(cg, k).0
}

pub(crate) fn min_vertex_cover_counted(
    cg: &ConflictGraph<'_>,
    k: usize,
) -> (Option<Vec<usize>>, u64) {
    let n = cg.node_count();
    let mut nodes = 0u64;
    let mut opt: Option<usize> = None;
    for budget in 0..=k.min(n) {
        if cover_within(&cg.adj, vec![true; n], budget, &mut nodes).is_some() {
            opt = Some(budget);
            break;
        }
    }
    let Some(size) = opt else {
        return (None, nodes);
    };
    (Some(lex_smallest_cover(cg, size, &mut nodes)), nodes)
}

/// Builds the lexicographically smallest cover of the given optimal size by
/// fixing indices one at a time: candidate c joins the prefix iff some
/// size-`size` cover contains exactly the prefix below c.
fn lex_smallest_cover(cg: &ConflictGraph<'_>, size: usize, nodes: &mut u64) -> Vec<usize> {
    let n = cg.node_count();
    let mut prefix: Vec<usize> = Vec::with_capacity(size);
    let mut candidate = 0usize;
    while prefix.len() < size {
        debug_assert!(candidate < n);
        if prefix_feasible(cg, &prefix, candidate, size, nodes) {
            prefix.push(candidate);
        }
        candidate += 1;
    }
    prefix
}

/// Is there a cover of exactly `size` whose members below `c` (inclusive)
/// are exactly `prefix + [c]`? Vertices below c outside the prefix are
/// excluded, which forces their neighborhoods into the cover.
fn prefix_feasible(
    cg: &ConflictGraph<'_>,
    prefix: &[usize],
    c: usize,
    size: usize,
    nodes: &mut u64,
) -> bool {
    let n = cg.node_count();
    let mut active = vec![true; n];
    let mut budget = size;
    let include = |v: usize, active: &mut Vec<bool>, budget: &mut usize| -> bool {
        if active[v] {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            active[v] = false;
        }
        true
    };
    for &v in prefix.iter().chain(std::iter::once(&c)) {
        if !include(v, &mut active, &mut budget) {
            return false;
        }
    }
    // everything below c not in the prefix is excluded: neighbors forced in
    for v in 0..c {
        if !active[v] {
            continue; // in the prefix
        }
        for &u in &cg.adj[v] {
            if u < c && active[u] && !prefix.contains(&u) {
                return false; // conflict between two excluded nodes
            }
            if active[u] && !include(u, &mut active, &mut budget) {
                return false;
            }
        }
        active[v] = false;
    }
    cover_within(&cg.adj, active, budget, nodes).is_some()
}

/// Exact STC for parameter k: kernelize (optional), cover the conflict graph
/// of the kernel, lift the labeling back to the input graph. Feasible
/// results carry a minimum-weak labeling of the input graph.
pub fn solve_stc_k(g: &Graph, k: usize, use_kernel: bool) -> SolveResult {
    let start = Instant::now();
    let ri = if use_kernel {
        kernel::kernelize_k(g, k)
    } else {
        ReducedInstance {
            graph: g.clone(),
            budget: k,
            trace: Vec::new(),
            vertex_map: (0..g.vertex_count()).collect(),
            verdict: None,
        }
    };
    let trace = use_kernel.then(|| ri.trace.clone());
    let rules_fired = ri.trace.len() as u64;

    if ri.verdict.is_some() {
        let mut res = SolveResult::infeasible(k);
        res.stats.rules_fired = rules_fired;
        res.stats.wall = start.elapsed();
        res.kernel_trace = trace;
        return res;
    }

    let cg = gallai_graph(&ri.graph);
    let (cover, nodes) = min_vertex_cover_counted(&cg, ri.budget);
    let stats = SolveStats {
        nodes,
        rules_fired,
        wall: start.elapsed(),
    };
    match cover {
        None => {
            let mut res = SolveResult::infeasible(k);
            res.stats = stats;
            res.kernel_trace = trace;
            res
        }
        Some(cover) => {
            let mut weak: Vec<usize> = cover.iter().map(|&e| ri.original_edge(g, e)).collect();
            for app in &ri.trace {
                weak.extend(app.lift.weak.iter().copied());
            }
            let labeling = Labeling::from_strong(
                g,
                (0..g.edge_count()).filter(|e| !weak.contains(e)),
            );
            debug_assert!(crate::labeling::is_stc_labeling(g, &labeling).unwrap());
            let objective = labeling.weak_count();
            debug_assert!(objective <= k);
            SolveResult {
                feasible: true,
                objective,
                certificate: Some(Certificate::Labeling(labeling)),
                stats,
                kernel_trace: trace,
            }
        }
    }
}

/// Minimum number of weak edges with certificate (always feasible at k = m).
pub fn solve_stc_optimal(g: &Graph, use_kernel: bool) -> SolveResult {
    solve_stc_k(g, g.edge_count(), use_kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::fig3_graphs;
    use crate::labeling::is_stc_labeling;
    use crate::testutil::{brute_stc_strong_opt, named, random_graphs};

    #[test]
    fn conflict_graph_examples() {
        let k3 = named::k3();
        let cg = gallai_graph(&k3);
        assert_eq!(cg.node_count(), 3);
        assert!(cg.conflicts().is_empty());

        let p3 = named::p3();
        let cg = gallai_graph(&p3);
        assert_eq!(cg.node_count(), 2);
        assert_eq!(cg.conflicts(), &[(0, 1)]);

        // C4 conflicts form a 4-cycle over the edges
        let c4 = named::c4();
        let cg = gallai_graph(&c4);
        assert_eq!(cg.conflicts().len(), 4);
        assert!(cg.adj.iter().all(|l| l.len() == 2));
        assert_eq!(cg.conflicts(), crate::testutil::brute_p3_pairs(&c4).as_slice());
    }

    #[test]
    fn vertex_cover_examples() {
        let p3 = named::p3();
        let cover = min_vertex_cover(&gallai_graph(&p3), 1).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(cover, vec![0]); // lexicographically smallest of {0},{1}

        let k3 = named::k3();
        assert_eq!(
            min_vertex_cover(&gallai_graph(&k3), 0).unwrap(),
            Vec::<usize>::new()
        );

        let c4 = named::c4();
        assert!(min_vertex_cover(&gallai_graph(&c4), 1).is_none());
        let cover = min_vertex_cover(&gallai_graph(&c4), 2).unwrap();
        assert_eq!(cover, vec![0, 2]);
    }

    #[test]
    fn solve_stc_k_examples() {
        let res = solve_stc_k(&named::p3(), 1, true);
        assert!(res.feasible);
        assert_eq!(res.objective, 1);

        let res = solve_stc_k(&named::c4(), 2, true);
        assert!(res.feasible);
        let strong = &res.labeling().unwrap().strong;
        assert_eq!(strong.len(), 2);
        // the strong set is a perfect matching of C4
        let edges: Vec<_> = strong.iter().map(|&e| named::c4().endpoints(e)).collect();
        assert!(edges == vec![(0, 1), (2, 3)] || edges == vec![(1, 2), (0, 3)]);

        let (fig3a, _) = fig3_graphs();
        let yes = solve_stc_k(&fig3a, 10, true);
        assert!(yes.feasible);
        assert_eq!(fig3a.edge_count() - yes.objective, 8); // 8 strong of 18
        assert!(!solve_stc_k(&fig3a, 9, true).feasible);
    }

    #[test]
    fn solver_matches_exhaustive_search() {
        for g in random_graphs(43, 80, 7) {
            if g.edge_count() > 16 {
                continue;
            }
            let opt_weak = g.edge_count() - brute_stc_strong_opt(&g);
            for use_kernel in [false, true] {
                let res = solve_stc_optimal(&g, use_kernel);
                assert_eq!(res.objective, opt_weak, "{g:?} kernel={use_kernel}");
                let l = res.labeling().unwrap();
                assert!(is_stc_labeling(&g, l).unwrap());
                // strong set independent in the conflict graph
                let cg = gallai_graph(&g);
                let strong: Vec<usize> = l.strong.iter().copied().collect();
                assert!(cg.is_independent(&strong));
            }
        }
    }

    #[test]
    fn yes_is_monotone_in_k() {
        for g in random_graphs(47, 30, 6) {
            let m = g.edge_count();
            let mut seen_yes = false;
            for k in 0..=m {
                let res = solve_stc_k(&g, k, true);
                if seen_yes {
                    assert!(res.feasible);
                }
                seen_yes |= res.feasible;
            }
            assert!(seen_yes); // all-weak is always a labeling
        }
    }

    #[test]
    fn kernel_and_direct_routes_agree() {
        for g in random_graphs(53, 60, 7) {
            for k in 0..=g.edge_count() {
                let a = solve_stc_k(&g, k, true);
                let b = solve_stc_k(&g, k, false);
                assert_eq!(a.feasible, b.feasible, "{g:?} k={k}");
                if a.feasible {
                    assert_eq!(a.objective, b.objective);
                }
            }
        }
    }
}
