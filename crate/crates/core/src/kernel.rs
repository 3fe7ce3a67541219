//! The two kernelizations: critical-clique removal for parameter k and
//! family reduction in the matching-free independent set for parameter ell.
//!
//! Both rules only ever delete vertices, so every intermediate graph is an
//! induced subgraph of the input and certificates lift back by edge-id
//! translation recorded per rule application.

use std::collections::HashMap;

use serde::Serialize;

use crate::graph::{Graph, Matching, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuleId {
    #[serde(rename = "rule1")]
    Rule1,
    #[serde(rename = "rule2")]
    Rule2,
}

/// Certificate-lifting payload of one application: how the removed edges are
/// labeled when a kernel solution is translated back to the input graph.
/// Edge ids refer to the original input graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LiftEdges {
    pub strong: Vec<usize>,
    pub weak: Vec<usize>,
}

/// One fired reduction rule. `removed` and the lift payload are in original
/// vertex/edge indices; `budget_delta` is the amount k shrinks by.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub removed: Vec<usize>,
    pub budget_delta: usize,
    #[serde(skip)]
    pub lift: LiftEdges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NoVerdict {
    /// Accumulated budget deltas exceed the budget.
    BudgetExhausted,
    /// The reduced graph has more than 4k vertices (parameter k only).
    SizeBound,
}

/// Output of a kernelization: reduced graph, adjusted budget, the trace of
/// rule applications, and the reduced-to-original vertex translation.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub budget: usize,
    pub trace: Vec<RuleApplication>,
    pub vertex_map: Vec<usize>,
    pub verdict: Option<NoVerdict>,
}

impl ReducedInstance {
    /// Wraps a graph as its own (empty-trace) instance; handy for feeding
    /// unreduced graphs to the size-bound check.
    pub fn unreduced(g: &Graph, budget: usize) -> ReducedInstance {
        ReducedInstance {
            graph: g.clone(),
            budget,
            trace: Vec::new(),
            vertex_map: (0..g.vertex_count()).collect(),
            verdict: None,
        }
    }

    /// Original edge id of reduced edge `e`.
    pub fn original_edge(&self, original: &Graph, e: usize) -> usize {
        let (u, v) = self.graph.endpoints(e);
        original
            .edge_id(self.vertex_map[u], self.vertex_map[v])
            .expect("reduced graphs are induced subgraphs")
    }

    /// Serializes the trace as JSON lines (rule, removed vertices, delta).
    pub fn trace_json_lines(&self) -> String {
        self.trace
            .iter()
            .map(|app| serde_json::to_string(app).expect("trace serializes"))
            .map(|s| s + "\n")
            .collect()
    }
}

/// Partition of V into critical cliques plus the critical clique graph.
#[derive(Debug, Clone)]
pub struct CriticalCliqueDecomposition {
    /// Each part sorted ascending; parts ordered by smallest member.
    pub cliques: Vec<Vec<usize>>,
    /// Adjacency among clique indices: every cross pair is an edge of G.
    pub cc_adj: Vec<Vec<usize>>,
    /// Whether the clique's neighborhood union forms a clique in G.
    pub closed: Vec<bool>,
    pub clique_of: Vec<usize>,
}

impl CriticalCliqueDecomposition {
    /// Union of the neighbor cliques of clique `i`.
    pub fn neighborhood(&self, i: usize) -> VertexSet {
        self.cc_adj[i]
            .iter()
            .flat_map(|&j| self.cliques[j].iter().copied())
            .collect()
    }
}

/// Groups vertices by identical closed neighborhoods; each group is a
/// critical clique and the grouping is the unique critical clique partition.
pub fn critical_cliques(g: &Graph) -> CriticalCliqueDecomposition {
    let n = g.vertex_count();
    let mut groups: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for v in 0..n {
        let mut key = g.neighbors(v).to_vec();
        let pos = key.partition_point(|&u| u < v);
        key.insert(pos, v);
        groups.entry(key).or_default().push(v);
    }
    let mut cliques: Vec<Vec<usize>> = groups.into_values().collect();
    cliques.sort_by_key(|c| c[0]);

    let mut clique_of = vec![0usize; n];
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            clique_of[v] = i;
        }
    }
    // members of a critical clique share closed neighborhoods, so one
    // representative decides adjacency for the whole pair of cliques
    let k = cliques.len();
    let mut cc_adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(cliques[i][0], cliques[j][0]) {
                cc_adj[i].push(j);
                cc_adj[j].push(i);
            }
        }
    }
    let mut closed = Vec::with_capacity(k);
    for i in 0..k {
        let nb: VertexSet = cc_adj[i]
            .iter()
            .flat_map(|&j| cliques[j].iter().copied())
            .collect();
        closed.push(g.is_clique(&nb));
    }
    CriticalCliqueDecomposition {
        cliques,
        cc_adj,
        closed,
        clique_of,
    }
}

/// Number of edges leaving N(K) towards the second neighborhood.
fn boundary_edge_count(g: &Graph, clique: &[usize], nbhd: &VertexSet) -> usize {
    let inside = |v: usize| nbhd.contains(&v) || clique.contains(&v);
    nbhd.iter()
        .map(|&u| g.neighbors(u).iter().filter(|&&w| !inside(w)).count())
        .sum()
}

struct KernelState<'a> {
    original: &'a Graph,
    graph: Graph,
    map: Vec<usize>,
    budget: usize,
    trace: Vec<RuleApplication>,
    verdict: Option<NoVerdict>,
}

impl<'a> KernelState<'a> {
    fn new(g: &'a Graph, budget: usize) -> Self {
        KernelState {
            original: g,
            graph: g.clone(),
            map: (0..g.vertex_count()).collect(),
            budget,
            trace: Vec::new(),
            verdict: None,
        }
    }

    fn original_edge(&self, u: usize, v: usize) -> usize {
        self.original
            .edge_id(self.map[u], self.map[v])
            .expect("induced subgraph edge maps back")
    }

    /// One Rule 1 step: returns false when no clique qualifies or a verdict
    /// was reached.
    fn rule1_step(&mut self) -> bool {
        let g = &self.graph;
        let dec = critical_cliques(g);
        let mut pick: Option<(usize, usize, VertexSet)> = None; // (orig-min, clique idx, nbhd)
        for (i, clique) in dec.cliques.iter().enumerate() {
            if !dec.closed[i] {
                continue;
            }
            let nbhd = dec.neighborhood(i);
            if clique.len() > boundary_edge_count(g, clique, &nbhd) {
                let orig_min = clique.iter().map(|&v| self.map[v]).min().unwrap();
                if pick.as_ref().map_or(true, |(m, _, _)| orig_min < *m) {
                    pick = Some((orig_min, i, nbhd));
                }
            }
        }
        let Some((_, i, nbhd)) = pick else {
            return false;
        };

        let clique = &dec.cliques[i];
        let removed_set: VertexSet = clique.iter().chain(nbhd.iter()).copied().collect();
        let delta = boundary_edge_count(g, clique, &nbhd);
        if delta > self.budget {
            self.verdict = Some(NoVerdict::BudgetExhausted);
            return false;
        }

        let mut lift = LiftEdges::default();
        for e in 0..g.edge_count() {
            let (u, v) = g.endpoints(e);
            match (removed_set.contains(&u), removed_set.contains(&v)) {
                (true, true) => lift.strong.push(self.original_edge(u, v)),
                (true, false) | (false, true) => lift.weak.push(self.original_edge(u, v)),
                (false, false) => {}
            }
        }
        debug_assert_eq!(lift.weak.len(), delta);

        let removed: Vec<usize> = removed_set.iter().map(|&v| self.map[v]).collect();
        let keep: VertexSet = (0..g.vertex_count())
            .filter(|v| !removed_set.contains(v))
            .collect();
        let (next, sub_map) = g.induced_subgraph(&keep);
        self.map = sub_map.into_iter().map(|v| self.map[v]).collect();
        self.graph = next;
        self.budget -= delta;
        self.trace.push(RuleApplication {
            rule: RuleId::Rule1,
            removed,
            budget_delta: delta,
            lift,
        });
        true
    }

    fn into_instance(self) -> ReducedInstance {
        ReducedInstance {
            graph: self.graph,
            budget: self.budget,
            trace: self.trace,
            vertex_map: self.map,
            verdict: self.verdict,
        }
    }
}

/// Applies Rule 1 once. `None` means no closed critical clique qualifies.
/// A returned instance with a verdict is a definite no (the single
/// application already overruns the budget).
pub fn rule1_apply_once(g: &Graph, k: usize) -> Option<ReducedInstance> {
    let mut state = KernelState::new(g, k);
    let progressed = state.rule1_step();
    if progressed || state.verdict.is_some() {
        Some(state.into_instance())
    } else {
        None
    }
}

/// Exhaustive Rule 1. The result never claims "yes": it either reduces, or
/// reports a definite no via budget exhaustion or the 4k vertex bound.
pub fn kernelize_k(g: &Graph, k: usize) -> ReducedInstance {
    let mut state = KernelState::new(g, k);
    while state.verdict.is_none() && state.rule1_step() {}
    let mut ri = state.into_instance();
    if ri.verdict.is_none() && ri.graph.vertex_count() > 4 * ri.budget {
        ri.verdict = Some(NoVerdict::SizeBound);
    }
    ri
}

/// Outcome of the parameter-ell kernelization.
#[derive(Debug, Clone)]
pub enum Rule2Outcome {
    /// The maximum matching already has >= ell edges; labeling it strong is
    /// a valid STC-labeling, so the instance is a yes.
    ShortCircuitYes { matching: Matching },
    Reduced(Rule2Reduction),
}

#[derive(Debug, Clone)]
pub struct Rule2Reduction {
    /// Budget field carries ell, which Rule 2 never changes.
    pub instance: ReducedInstance,
    /// The maximum matching used for the partition (original edge ids).
    pub matching: Matching,
    /// V_M: endpoints of the matching (original ids).
    pub matched_vertices: Vec<usize>,
    /// I_2: unmatched vertices adjacent to both endpoints of some
    /// matching edge (original ids).
    pub tied_to_edge: Vec<usize>,
    /// I_1 vertices that survive the reduction (original ids).
    pub independent_kept: Vec<usize>,
}

/// Rule 2 for parameter ell: short-circuits on a large matching, otherwise
/// shrinks every family of I_1 vertices with identical neighborhoods down to
/// the size of that neighborhood. The parameter ell is unchanged; each trace
/// entry records the implied k decrease (deleted edge count).
pub fn rule2_apply(g: &Graph, ell: usize) -> Rule2Outcome {
    let matching = g.maximum_matching();
    if matching.len() >= ell {
        return Rule2Outcome::ShortCircuitYes { matching };
    }
    let n = g.vertex_count();
    let covered = matching.covered_vertices(g);
    let mut in_i2 = vec![false; n];
    for v in 0..n {
        if covered.contains(&v) {
            continue;
        }
        in_i2[v] = matching.edges.iter().any(|&e| {
            let (a, b) = g.endpoints(e);
            g.has_edge(v, a) && g.has_edge(v, b)
        });
    }
    let i1: Vec<usize> = (0..n)
        .filter(|v| !covered.contains(v) && !in_i2[*v])
        .collect();

    // families: identical (open) neighborhoods inside I_1
    let mut families: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for &v in &i1 {
        families.entry(g.neighbors(v).to_vec()).or_default().push(v);
    }
    let mut ordered: Vec<(Vec<usize>, Vec<usize>)> = families.into_iter().collect();
    ordered.sort_by_key(|(_, members)| members[0]);

    let mut trace = Vec::new();
    let mut drop = vec![false; n];
    for (nbhd, members) in &ordered {
        if members.len() > nbhd.len() {
            let excess = members.len() - nbhd.len();
            // delete the members with the largest vertex indices
            let removed: Vec<usize> = members[members.len() - excess..].to_vec();
            for &v in &removed {
                drop[v] = true;
            }
            let weak: Vec<usize> = removed
                .iter()
                .flat_map(|&v| g.incident_edges(v))
                .collect();
            trace.push(RuleApplication {
                rule: RuleId::Rule2,
                removed,
                budget_delta: excess * nbhd.len(),
                lift: LiftEdges {
                    strong: Vec::new(),
                    weak,
                },
            });
        }
    }

    let keep: VertexSet = (0..n).filter(|&v| !drop[v]).collect();
    let (reduced, map) = g.induced_subgraph(&keep);
    let instance = ReducedInstance {
        graph: reduced,
        budget: ell,
        trace,
        vertex_map: map,
        verdict: None,
    };
    Rule2Outcome::Reduced(Rule2Reduction {
        instance,
        matched_vertices: covered.iter().copied().collect(),
        tied_to_edge: (0..n).filter(|&v| in_i2[v]).collect(),
        independent_kept: i1.iter().copied().filter(|&v| !drop[v]).collect(),
        matching,
    })
}

/// Vertex bound of the ell-kernel: |V| <= 2*ell + ell + ell * 2^ell.
pub fn kernel_size_bound_check(ri: &ReducedInstance, ell: usize) -> bool {
    let n = ri.graph.vertex_count() as u128;
    let pow = if ell >= 100 {
        u128::MAX
    } else {
        1u128 << ell
    };
    let bound = (3 * ell as u128).saturating_add((ell as u128).saturating_mul(pow));
    n <= bound
}
