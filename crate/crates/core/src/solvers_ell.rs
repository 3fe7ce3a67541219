//! Fixed-parameter algorithms for the strong/cluster-edge target ell.
//!
//! Both start from a maximal matching M: with |M| >= ell the matching itself
//! answers yes, otherwise its endpoints form a vertex cover C with |C| < 2ell
//! and the rest is an independent set I processed by dynamic programming
//! over subsets of C.
//!
//! CD: T[i, C'] is the maximum number of cluster edges in a clustering of
//! G[C' + {first i independent vertices}]; vertex i joins some clique
//! C'' + {i} with C'' inside C'.
//!
//! STC: for each STC-labeling S_C of G[C] with fewer than ell strong edges,
//! T[i, C'] is the best strong count when the strong neighbors of the first
//! i independent vertices come from C'. A strong neighbor set C'' of i must
//! be a clique and contain no vertex with an S_C-strong neighbor outside
//! N(i); disjointness across independent vertices comes from the recurrence.
//! Instead of enumerating the labelings S_C by size, the search walks an
//! include/exclude tree over the cover edges with a sound upper bound, which
//! answers identically and prunes hopeless labelings early.

use std::collections::HashMap;
use std::time::Instant;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::labeling::{DeletionSet, EdgeSet, Labeling};
use crate::result::{Certificate, SolveResult, SolveStats};

/// Beyond this many cover vertices the subset DP is hopeless on a desk.
pub const COVER_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EllSolveError {
    #[error("matching cover has {size} vertices: parameter too large for desk scale (cap {cap})")]
    CoverTooLarge { size: usize, cap: usize },
}

/// Subset DP table over a vertex cover; row i belongs to the i-th
/// independent vertex, row 0 is the base.
#[derive(Debug, Clone)]
pub struct DpTable {
    pub cover: Vec<usize>,
    pub independent: Vec<usize>,
    values: Vec<Vec<u32>>,
    choices: Vec<Vec<u32>>,
}

impl DpTable {
    pub fn value(&self, row: usize, mask: u32) -> u32 {
        self.values[row][mask as usize]
    }

    pub fn final_value(&self) -> u32 {
        let full = (1u32 << self.cover.len()) - 1;
        self.values[self.independent.len()][full as usize]
    }

    /// T[i, C'] never shrinks when C' grows.
    pub fn is_monotone(&self) -> bool {
        for row in &self.values {
            for mask in 0..row.len() {
                let mut rest = mask;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest ^= bit;
                    if row[mask ^ bit] > row[mask] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Shared bit machinery for DPs over subsets of the cover.
struct CoverContext {
    cover: Vec<usize>,
    independent: Vec<usize>,
    /// Position of a cover vertex inside `cover`.
    position: HashMap<usize, usize>,
    /// For every vertex of g: bitmask of its cover neighbors.
    nbr_mask: Vec<u32>,
    /// For every subset of the cover: does it induce a clique?
    clique: Vec<bool>,
}

impl CoverContext {
    fn new(g: &Graph, cover: &[usize]) -> Result<CoverContext, EllSolveError> {
        let c = cover.len();
        if c > COVER_CAP {
            return Err(EllSolveError::CoverTooLarge {
                size: c,
                cap: COVER_CAP,
            });
        }
        let position: HashMap<usize, usize> =
            cover.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = g.vertex_count();
        let mut nbr_mask = vec![0u32; n];
        for v in 0..n {
            for &u in g.neighbors(v) {
                if let Some(&p) = position.get(&u) {
                    nbr_mask[v] |= 1 << p;
                }
            }
        }
        let mut clique = vec![false; 1 << c];
        clique[0] = true;
        for mask in 1u32..(1 << c) as u32 {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            clique[mask as usize] = clique[rest as usize]
                && (rest & !nbr_mask[cover[low]]) == 0;
        }
        let independent = (0..n).filter(|v| !position.contains_key(v)).collect();
        Ok(CoverContext {
            cover: cover.to_vec(),
            independent,
            position,
            nbr_mask,
            clique,
        })
    }

    fn full(&self) -> u32 {
        ((1u64 << self.cover.len()) - 1) as u32
    }

    /// Maximum clique size inside each cover subset.
    fn max_clique_table(&self) -> Vec<u32> {
        let c = self.cover.len();
        let mut mc = vec![0u32; 1 << c];
        for mask in 1u32..(1 << c) as u32 {
            let low = mask.trailing_zeros() as usize;
            let without = mc[(mask & (mask - 1)) as usize];
            let with = 1 + mc[(mask & self.nbr_mask[self.cover[low]]) as usize];
            mc[mask as usize] = without.max(with);
        }
        mc
    }
}

fn pairs(k: u32) -> u32 {
    k * k.saturating_sub(1) / 2
}

/// The CD table: base row partitions cover subsets into cliques, row i adds
/// independent vertex i to some clique inside the remaining subset.
pub fn cd_dp_table(g: &Graph, cover: &[usize]) -> Result<DpTable, EllSolveError> {
    let ctx = CoverContext::new(g, cover)?;
    let c = ctx.cover.len();
    let size = 1usize << c;
    let mut values = vec![vec![0u32; size]];
    let mut choices = vec![vec![0u32; size]];
    for mask in 1..size as u32 {
        let low_bit = mask & mask.wrapping_neg();
        let mut best = 0;
        let mut best_choice = low_bit;
        // the clique containing the lowest vertex of the subset
        let mut sub = mask;
        while sub != 0 {
            if sub & low_bit != 0 && ctx.clique[sub as usize] {
                let cand = values[0][(mask ^ sub) as usize] + pairs(sub.count_ones());
                if cand > best {
                    best = cand;
                    best_choice = sub;
                }
            }
            sub = (sub - 1) & mask;
        }
        values[0][mask as usize] = best;
        choices[0][mask as usize] = best_choice;
    }
    for (row, &iv) in ctx.independent.iter().enumerate() {
        let prev = &values[row];
        let mut vals = vec![0u32; size];
        let mut chs = vec![0u32; size];
        for mask in 0..size as u32 {
            let mut best = prev[mask as usize]; // i forms a singleton clique
            let mut best_choice = 0u32;
            let lim = mask & ctx.nbr_mask[iv];
            let mut sub = lim;
            while sub != 0 {
                if ctx.clique[sub as usize] {
                    let cand = prev[(mask ^ sub) as usize] + pairs(sub.count_ones() + 1);
                    if cand > best {
                        best = cand;
                        best_choice = sub;
                    }
                }
                sub = (sub - 1) & lim;
            }
            vals[mask as usize] = best;
            chs[mask as usize] = best_choice;
        }
        values.push(vals);
        choices.push(chs);
    }
    Ok(DpTable {
        cover: ctx.cover,
        independent: ctx.independent,
        values,
        choices,
    })
}

fn cd_backtrace(table: &DpTable) -> Vec<Vec<usize>> {
    let mut parts = Vec::new();
    let mut mask = (1u32 << table.cover.len()) - 1;
    for row in (1..=table.independent.len()).rev() {
        let ch = table.choices[row][mask as usize];
        let mut part: Vec<usize> = bits(ch).map(|b| table.cover[b]).collect();
        part.push(table.independent[row - 1]);
        parts.push(part);
        mask ^= ch;
    }
    while mask != 0 {
        let ch = table.choices[0][mask as usize];
        parts.push(bits(ch).map(|b| table.cover[b]).collect());
        mask ^= ch;
    }
    parts
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask & (1 << b) != 0)
}

/// Is there a cluster subgraph with at least ell cluster edges?
pub fn solve_cd_ell(g: &Graph, ell: usize) -> Result<SolveResult, EllSolveError> {
    let start = Instant::now();
    let matching = g.maximal_matching();
    if matching.len() >= ell {
        let d = DeletionSet::new((0..g.edge_count()).filter(|e| !matching.edges.contains(e)));
        return Ok(SolveResult {
            feasible: true,
            objective: matching.len(),
            certificate: Some(Certificate::Deletions(d)),
            stats: SolveStats {
                wall: start.elapsed(),
                ..Default::default()
            },
            kernel_trace: None,
        });
    }
    let cover: Vec<usize> = matching.covered_vertices(g).into_iter().collect();
    let table = cd_dp_table(g, &cover)?;
    let best = table.final_value() as usize;
    let stats = SolveStats {
        nodes: (table.values.len() * table.values[0].len()) as u64,
        rules_fired: 0,
        wall: start.elapsed(),
    };
    if best < ell {
        let mut res = SolveResult::infeasible(ell);
        res.stats = stats;
        return Ok(res);
    }
    let parts = cd_backtrace(&table);
    let mut part_of = vec![usize::MAX; g.vertex_count()];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v] = i;
        }
    }
    let d = DeletionSet::new((0..g.edge_count()).filter(|&e| {
        let (u, v) = g.endpoints(e);
        part_of[u] != part_of[v]
    }));
    debug_assert_eq!(g.edge_count() - d.len(), best);
    Ok(SolveResult {
        feasible: true,
        objective: best,
        certificate: Some(Certificate::Deletions(d)),
        stats,
        kernel_trace: None,
    })
}

/// All valid strong-neighbor sets of independent vertex `i` against a fixed
/// cover labeling: subsets of N(i) inside the cover that are cliques and
/// contain no vertex with a strong neighbor outside N(i). (The third
/// property, exclusivity across independent vertices, lives in the DP.)
pub fn valid_strong_neighbor_sets(
    g: &Graph,
    cover: &[usize],
    strong_cover: &EdgeSet,
    i: usize,
) -> Vec<VertexSet> {
    let ctx = CoverContext::new(g, cover).expect("cover within cap");
    let bad = bad_mask(g, &ctx, strong_cover, i);
    let lim = ctx.nbr_mask[i] & !bad;
    let mut out = Vec::new();
    for mask in 0..=lim {
        if mask & !lim == 0 && ctx.clique[mask as usize] {
            out.push(bits(mask).map(|b| ctx.cover[b]).collect());
        }
    }
    out
}

/// Cover vertices that may not become strong neighbors of `i`: those with an
/// S_C-strong neighbor outside N(i).
fn bad_mask(g: &Graph, ctx: &CoverContext, strong_cover: &EdgeSet, i: usize) -> u32 {
    let mut bad = 0u32;
    for &e in strong_cover {
        let (u, v) = g.endpoints(e);
        let (pu, pv) = (ctx.position[&u], ctx.position[&v]);
        if ctx.nbr_mask[i] & (1 << pv) == 0 {
            bad |= 1 << pu;
        }
        if ctx.nbr_mask[i] & (1 << pu) == 0 {
            bad |= 1 << pv;
        }
    }
    bad
}

/// The STC table for one cover labeling.
pub fn stc_dp_table(
    g: &Graph,
    cover: &[usize],
    strong_cover: &EdgeSet,
) -> Result<DpTable, EllSolveError> {
    let ctx = CoverContext::new(g, cover)?;
    let c = ctx.cover.len();
    let size = 1usize << c;
    let mut values = vec![vec![strong_cover.len() as u32; size]];
    let mut choices = vec![vec![0u32; size]];
    for (row, &iv) in ctx.independent.iter().enumerate() {
        let bad = bad_mask(g, &ctx, strong_cover, iv);
        let prev = &values[row];
        let mut vals = vec![0u32; size];
        let mut chs = vec![0u32; size];
        for mask in 0..size as u32 {
            let mut best = prev[mask as usize]; // empty strong neighborhood
            let mut best_choice = 0u32;
            let lim = mask & ctx.nbr_mask[iv] & !bad;
            let mut sub = lim;
            while sub != 0 {
                if ctx.clique[sub as usize] {
                    let cand = prev[(mask ^ sub) as usize] + sub.count_ones();
                    if cand > best {
                        best = cand;
                        best_choice = sub;
                    }
                }
                sub = (sub - 1) & lim;
            }
            vals[mask as usize] = best;
            chs[mask as usize] = best_choice;
        }
        values.push(vals);
        choices.push(chs);
    }
    Ok(DpTable {
        cover: ctx.cover,
        independent: ctx.independent,
        values,
        choices,
    })
}

/// Search state for the include/exclude walk over the cover edges.
struct StcEllSearch<'a> {
    g: &'a Graph,
    ctx: CoverContext,
    ell: usize,
    /// Host edge ids of E(G[C]), ascending.
    cover_edges: Vec<usize>,
    /// Conflict lists between cover edges (local indices).
    conflicts: Vec<Vec<usize>>,
    chosen: Vec<bool>,
    blocked: Vec<u32>,
    chosen_count: usize,
    /// Static bound on what the independent side can ever contribute.
    ext_ub: usize,
    nodes: u64,
}

impl<'a> StcEllSearch<'a> {
    fn strong_set(&self) -> EdgeSet {
        self.cover_edges
            .iter()
            .enumerate()
            .filter(|(j, _)| self.chosen[*j])
            .map(|(_, &e)| e)
            .collect()
    }

    /// Completes the current labeling through the DP; `Some` on success.
    fn try_extend(&mut self) -> Option<Labeling> {
        let strong_cover = self.strong_set();
        let table = stc_dp_table(self.g, &self.ctx.cover, &strong_cover)
            .expect("cover already validated");
        if (table.final_value() as usize) < self.ell {
            return None;
        }
        let mut strong: Vec<usize> = strong_cover.iter().copied().collect();
        let mut mask = self.ctx.full();
        for row in (1..=table.independent.len()).rev() {
            let ch = table.choices[row][mask as usize];
            let iv = table.independent[row - 1];
            for b in bits(ch) {
                strong.push(self.g.edge_id(iv, table.cover[b]).expect("DP picks edges"));
            }
            mask ^= ch;
        }
        Some(Labeling::from_strong(self.g, strong))
    }

    fn dfs(&mut self, pos: usize) -> Option<Labeling> {
        self.nodes += 1;
        if self.chosen_count >= self.ell {
            // a valid cover labeling with ell strong edges is already a yes
            return Some(Labeling::from_strong(self.g, self.strong_set()));
        }
        let compatible = (pos..self.cover_edges.len())
            .filter(|&j| self.blocked[j] == 0)
            .count();
        if self.chosen_count + compatible + self.ext_ub < self.ell {
            return None;
        }
        if pos == self.cover_edges.len() {
            return self.try_extend();
        }
        if self.blocked[pos] == 0 {
            self.chosen[pos] = true;
            self.chosen_count += 1;
            for j in 0..self.conflicts[pos].len() {
                let f = self.conflicts[pos][j];
                self.blocked[f] += 1;
            }
            let found = self.dfs(pos + 1);
            self.chosen[pos] = false;
            self.chosen_count -= 1;
            for j in 0..self.conflicts[pos].len() {
                let f = self.conflicts[pos][j];
                self.blocked[f] -= 1;
            }
            if found.is_some() {
                return found;
            }
        }
        self.dfs(pos + 1)
    }
}

/// Is there an STC-labeling with at least ell strong edges?
pub fn solve_stc_ell(g: &Graph, ell: usize) -> Result<SolveResult, EllSolveError> {
    let start = Instant::now();
    let matching = g.maximal_matching();
    if matching.len() >= ell {
        let lab = Labeling::from_strong(g, matching.edges.iter().copied());
        debug_assert!(crate::labeling::is_stc_labeling(g, &lab).unwrap());
        return Ok(SolveResult {
            feasible: true,
            objective: matching.len(),
            certificate: Some(Certificate::Labeling(lab)),
            stats: SolveStats {
                wall: start.elapsed(),
                ..Default::default()
            },
            kernel_trace: None,
        });
    }
    let cover: Vec<usize> = matching.covered_vertices(g).into_iter().collect();
    let ctx = CoverContext::new(g, &cover)?;

    let cover_edges: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            ctx.position.contains_key(&u) && ctx.position.contains_key(&v)
        })
        .collect();
    let local: HashMap<usize, usize> = cover_edges
        .iter()
        .enumerate()
        .map(|(j, &e)| (e, j))
        .collect();
    let mut conflicts = vec![Vec::new(); cover_edges.len()];
    for &(a, b) in &g.enumerate_p3() {
        if let (Some(&la), Some(&lb)) = (local.get(&a), local.get(&b)) {
            conflicts[la].push(lb);
            conflicts[lb].push(la);
        }
    }
    let mc = ctx.max_clique_table();
    let ext_ub = ctx
        .independent
        .iter()
        .map(|&i| mc[ctx.nbr_mask[i] as usize] as usize)
        .sum();

    let blocked_len = cover_edges.len();
    let mut search = StcEllSearch {
        g,
        ctx,
        ell,
        cover_edges,
        conflicts,
        chosen: vec![false; blocked_len],
        blocked: vec![0; blocked_len],
        chosen_count: 0,
        ext_ub,
        nodes: 0,
    };
    let found = search.dfs(0);
    let stats = SolveStats {
        nodes: search.nodes,
        rules_fired: 0,
        wall: start.elapsed(),
    };
    match found {
        None => {
            let mut res = SolveResult::infeasible(ell);
            res.stats = stats;
            Ok(res)
        }
        Some(lab) => {
            debug_assert!(crate::labeling::is_stc_labeling(g, &lab).unwrap());
            debug_assert!(lab.strong_count() >= ell);
            Ok(SolveResult {
                feasible: true,
                objective: lab.strong_count(),
                certificate: Some(Certificate::Labeling(lab)),
                stats,
                kernel_trace: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::is_stc_labeling;
    use crate::testutil::{brute_cd_cluster_opt, brute_stc_strong_opt, named, random_graphs};

    #[test]
    fn cd_ell_examples() {
        assert!(solve_cd_ell(&named::k3(), 3).unwrap().feasible);
        assert!(!solve_cd_ell(&named::k3(), 4).unwrap().feasible);
        assert!(solve_cd_ell(&named::c4(), 2).unwrap().feasible);
        assert!(!solve_cd_ell(&named::c4(), 3).unwrap().feasible);
        assert!(solve_cd_ell(&named::p3(), 1).unwrap().feasible);
        assert!(!solve_cd_ell(&named::p3(), 2).unwrap().feasible);
    }

    #[test]
    fn stc_ell_examples() {
        let res = solve_stc_ell(&named::k3(), 3).unwrap();
        assert!(res.feasible);
        assert_eq!(res.labeling().unwrap().strong_count(), 3);
        assert!(solve_stc_ell(&named::c4(), 2).unwrap().feasible);
        assert!(!solve_stc_ell(&named::c4(), 3).unwrap().feasible);
        // complement of C7: optimum is 7 strong edges
        let co_c7 = named::cycle(7).complement();
        assert!(solve_stc_ell(&co_c7, 7).unwrap().feasible);
        assert!(!solve_stc_ell(&co_c7, 8).unwrap().feasible);
    }

    #[test]
    fn valid_neighbor_set_examples() {
        // cover edge c0-c1, pendant adjacent to c1 only
        let g = Graph::from_edge_list(3, [(0, 1), (1, 2)]).unwrap();
        let sets = valid_strong_neighbor_sets(&g, &[0, 1], &EdgeSet::new(), 2);
        assert_eq!(sets, vec![VertexSet::new(), VertexSet::from([1])]);

        // no cover neighbors: only the empty set
        let g2 = Graph::from_edge_list(3, [(0, 1)]).unwrap();
        let sets = valid_strong_neighbor_sets(&g2, &[0, 1], &EdgeSet::new(), 2);
        assert_eq!(sets, vec![VertexSet::new()]);

        // triangle cover {0,1} with {0,1} strong, pendant 2 adjacent to 0
        // only: {0} is invalid because 0 has strong neighbor 1 outside N(2)
        let g3 = Graph::from_edge_list(3, [(0, 1), (0, 2)]).unwrap();
        let sets = valid_strong_neighbor_sets(&g3, &[0, 1], &EdgeSet::from([0]), 2);
        assert_eq!(sets, vec![VertexSet::new()]);
    }

    #[test]
    fn oracle_equivalence_over_all_budgets() {
        for g in random_graphs(73, 60, 8) {
            let m = g.edge_count();
            let stc_opt = brute_stc_strong_opt(&g);
            let cd_opt = brute_cd_cluster_opt(&g);
            for ell in 0..=m + 1 {
                assert_eq!(
                    solve_stc_ell(&g, ell).unwrap().feasible,
                    ell <= stc_opt,
                    "stc {g:?} ell={ell}"
                );
                assert_eq!(
                    solve_cd_ell(&g, ell).unwrap().feasible,
                    ell <= cd_opt,
                    "cd {g:?} ell={ell}"
                );
            }
        }
    }

    #[test]
    fn duality_with_the_k_solvers() {
        for g in random_graphs(79, 40, 7) {
            let m = g.edge_count();
            for ell in 0..=m {
                let a = solve_stc_ell(&g, ell).unwrap().feasible;
                let b = crate::gallai::solve_stc_k(&g, m - ell, true).feasible;
                assert_eq!(a, b, "stc duality {g:?} ell={ell}");
                let c = solve_cd_ell(&g, ell).unwrap().feasible;
                let d = crate::solvers_k::solve_cd_k(&g, m - ell).feasible;
                assert_eq!(c, d, "cd duality {g:?} ell={ell}");
            }
        }
    }

    #[test]
    fn matching_lower_bound() {
        for g in random_graphs(83, 40, 8) {
            let mm = g.maximum_matching().len();
            for ell in 0..=mm {
                assert!(solve_stc_ell(&g, ell).unwrap().feasible, "{g:?} ell={ell}");
            }
        }
    }

    #[test]
    fn tables_are_monotone() {
        for g in random_graphs(89, 30, 7) {
            let cover: Vec<usize> = g.maximal_matching().covered_vertices(&g).into_iter().collect();
            let t = cd_dp_table(&g, &cover).unwrap();
            assert!(t.is_monotone(), "cd table {g:?}");
            let strong = EdgeSet::new();
            let t = stc_dp_table(&g, &cover, &strong).unwrap();
            assert!(t.is_monotone(), "stc table {g:?}");
        }
    }

    #[test]
    fn certificates_validate() {
        for g in random_graphs(97, 50, 8) {
            let m = g.edge_count();
            for ell in [0, m / 2, m] {
                let res = solve_stc_ell(&g, ell).unwrap();
                if res.feasible {
                    let l = res.labeling().unwrap();
                    assert!(is_stc_labeling(&g, l).unwrap());
                    assert!(l.strong_count() >= ell);
                }
                let res = solve_cd_ell(&g, ell).unwrap();
                if res.feasible {
                    let d = res.deletions().unwrap();
                    assert!(crate::labeling::is_cluster_graph(&d.apply(&g)));
                    assert!(m - d.len() >= ell);
                }
            }
        }
    }

    #[test]
    fn cover_cap_is_enforced() {
        // a big matching forces a big cover; ell above the matching size
        let path: Vec<(usize, usize)> = (0..60).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edge_list(61, path).unwrap();
        // maximal matching has 30 edges, so covers reach 60 vertices only
        // when ell exceeds 30
        match solve_stc_ell(&g, 31) {
            Err(EllSolveError::CoverTooLarge { size, cap }) => {
                assert_eq!(cap, COVER_CAP);
                assert!(size > COVER_CAP);
            }
            other => panic!("expected cover cap, got {other:?}"),
        }
    }

    use crate::graph::Graph;
}
