//! Polynomial special cases: dedicated solvers for triangle-free, P3-free,
//! P4-free and paw-free inputs, the solver dispatch, and the
//! correspondence/complexity classification of all catalog patterns.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::labeling::Labeling;
use crate::patterns::{find_induced, Pattern};
use crate::result::{Certificate, SolveResult, SolveStats};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecialCaseError {
    #[error("input contains an induced {pattern}: witness {witness:?}")]
    PatternPresent {
        pattern: Pattern,
        witness: Vec<usize>,
    },
    #[error("paw-free component {0:?} is neither triangle-free nor complete multipartite")]
    NotCompleteMultipartite(Vec<usize>),
}

fn require_free(g: &Graph, pattern: Pattern) -> Result<(), SpecialCaseError> {
    match find_induced(g, pattern) {
        None => Ok(()),
        Some(witness) => Err(SpecialCaseError::PatternPresent { pattern, witness }),
    }
}

fn labeling_result(g: &Graph, strong: Vec<usize>, start: Instant) -> SolveResult {
    let lab = Labeling::from_strong(g, strong);
    debug_assert!(crate::labeling::is_stc_labeling(g, &lab).unwrap());
    SolveResult {
        feasible: true,
        objective: lab.strong_count(),
        certificate: Some(Certificate::Labeling(lab)),
        stats: SolveStats {
            wall: start.elapsed(),
            ..Default::default()
        },
        kernel_trace: None,
    }
}

/// Triangle-free inputs: a maximum matching is simultaneously an optimal
/// STC strong set and an optimal cluster labeling.
pub fn solve_triangle_free(g: &Graph) -> Result<SolveResult, SpecialCaseError> {
    let start = Instant::now();
    require_free(g, Pattern::K3)?;
    Ok(labeling_result(g, g.maximum_matching().edges, start))
}

/// P3-free inputs are cluster graphs: everything is strong.
pub fn solve_p3_free(g: &Graph) -> Result<SolveResult, SpecialCaseError> {
    let start = Instant::now();
    require_free(g, Pattern::P3)?;
    Ok(labeling_result(g, (0..g.edge_count()).collect(), start))
}

/// Cotree of a cograph: leaves are vertices, inner nodes disjoint unions or
/// joins of their children.
#[derive(Debug, Clone)]
pub enum Cotree {
    Leaf(usize),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

impl Cotree {
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            Cotree::Leaf(v) => vec![*v],
            Cotree::Union(ch) | Cotree::Join(ch) => {
                ch.iter().flat_map(|c| c.vertices()).collect()
            }
        }
    }

    /// Largest clique under the node: best child at unions, concatenation
    /// of all children at joins.
    pub fn max_clique(&self) -> Vec<usize> {
        match self {
            Cotree::Leaf(v) => vec![*v],
            Cotree::Union(ch) => ch
                .iter()
                .map(|c| c.max_clique())
                .max_by_key(|c| c.len())
                .unwrap_or_default(),
            Cotree::Join(ch) => ch.iter().flat_map(|c| c.max_clique()).collect(),
        }
    }
}

/// Recursive modular decomposition: disconnected -> union over components,
/// co-disconnected -> join over co-components, otherwise not a cograph.
pub fn build_cotree(g: &Graph) -> Option<Cotree> {
    fn on_set(g: &Graph, verts: &[usize]) -> Option<Cotree> {
        if verts.len() == 1 {
            return Some(Cotree::Leaf(verts[0]));
        }
        let set: VertexSet = verts.iter().copied().collect();
        let (sub, map) = g.induced_subgraph(&set);
        let comps = sub.connected_components();
        if comps.len() > 1 {
            let children = comps
                .iter()
                .map(|c| {
                    let orig: Vec<usize> = c.iter().map(|&v| map[v]).collect();
                    on_set(g, &orig)
                })
                .collect::<Option<Vec<_>>>()?;
            return Some(Cotree::Union(children));
        }
        let co_comps = sub.complement().connected_components();
        if co_comps.len() > 1 {
            let children = co_comps
                .iter()
                .map(|c| {
                    let orig: Vec<usize> = c.iter().map(|&v| map[v]).collect();
                    on_set(g, &orig)
                })
                .collect::<Option<Vec<_>>>()?;
            return Some(Cotree::Join(children));
        }
        None // connected and co-connected on >= 2 vertices: induced P4 exists
    }
    let verts: Vec<usize> = (0..g.vertex_count()).collect();
    if verts.is_empty() {
        return Some(Cotree::Union(Vec::new()));
    }
    on_set(g, &verts)
}

/// P4-free inputs: repeatedly peel a maximum clique (found by cotree
/// dynamic programming) and keep its edges; the resulting cluster labeling
/// is optimal for CD and STC.
pub fn solve_cograph(g: &Graph) -> Result<SolveResult, SpecialCaseError> {
    let start = Instant::now();
    require_free(g, Pattern::P4)?;
    let mut remaining: Vec<usize> = (0..g.vertex_count()).collect();
    let mut part_of = vec![usize::MAX; g.vertex_count()];
    let mut part = 0;
    while !remaining.is_empty() {
        let set: VertexSet = remaining.iter().copied().collect();
        let (sub, map) = g.induced_subgraph(&set);
        let tree = build_cotree(&sub).expect("P4-free graphs are cographs");
        let clique: Vec<usize> = tree.max_clique().into_iter().map(|v| map[v]).collect();
        for &v in &clique {
            part_of[v] = part;
        }
        part += 1;
        remaining.retain(|v| !clique.contains(v));
    }
    let strong: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            part_of[u] == part_of[v]
        })
        .collect();
    Ok(labeling_result(g, strong, start))
}

/// Paw-free inputs: every component is triangle-free (matching) or complete
/// multipartite (cograph peeling); certificates are merged per component.
pub fn solve_paw_free(g: &Graph) -> Result<SolveResult, SpecialCaseError> {
    let start = Instant::now();
    require_free(g, Pattern::Paw)?;
    let mut strong = Vec::new();
    for comp in g.connected_components() {
        let (sub, map) = g.induced_subgraph(&comp);
        let res = if find_induced(&sub, Pattern::K3).is_none() {
            solve_triangle_free(&sub)?
        } else {
            // complete multipartite: the complement splits into cliques
            if !crate::labeling::is_cluster_graph(&sub.complement()) {
                return Err(SpecialCaseError::NotCompleteMultipartite(
                    comp.iter().copied().collect(),
                ));
            }
            solve_cograph(&sub)?
        };
        for &e in &res.labeling().unwrap().strong {
            let (u, v) = sub.endpoints(e);
            strong.push(g.edge_id(map[u], map[v]).unwrap());
        }
    }
    Ok(labeling_result(g, strong, start))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverTag {
    P3Free,
    TriangleFree,
    Cograph,
    PawFree,
    Exponential,
}

/// First applicable polynomial solver in the fixed order P3-free,
/// triangle-free, P4-free, paw-free; everything else goes exponential.
/// (K2+K1-free inputs are paw-free, so they are caught by an earlier tag.)
pub fn dispatch(g: &Graph) -> SolverTag {
    if find_induced(g, Pattern::P3).is_none() {
        SolverTag::P3Free
    } else if find_induced(g, Pattern::K3).is_none() {
        SolverTag::TriangleFree
    } else if find_induced(g, Pattern::P4).is_none() {
        SolverTag::Cograph
    } else if find_induced(g, Pattern::Paw).is_none() {
        SolverTag::PawFree
    } else {
        SolverTag::Exponential
    }
}

/// Runs the dispatched polynomial solver, if any.
pub fn solve_special(g: &Graph) -> Option<Result<SolveResult, SpecialCaseError>> {
    match dispatch(g) {
        SolverTag::P3Free => Some(solve_p3_free(g)),
        SolverTag::TriangleFree => Some(solve_triangle_free(g)),
        SolverTag::Cograph => Some(solve_cograph(g)),
        SolverTag::PawFree => Some(solve_paw_free(g)),
        SolverTag::Exponential => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Complexity {
    P,
    NpHard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorrespondenceEntry {
    pub corresponds: bool,
    pub complexity: Complexity,
}

/// The dichotomy over H-free graph classes: whether STC and CD always share
/// an optimal cluster labeling there, and whether they stay NP-hard.
pub fn correspondence_table(pattern: Pattern) -> CorrespondenceEntry {
    use Pattern::*;
    match pattern {
        K3 | P3 | K2K1 | P4 | Paw => CorrespondenceEntry {
            corresponds: true,
            complexity: Complexity::P,
        },
        Diamond => CorrespondenceEntry {
            corresponds: true,
            complexity: Complexity::NpHard,
        },
        ThreeK1 | K4 | FourK1 | C4 | TwoK2 | Claw | CoClaw | CoDiamond | CoPaw => {
            CorrespondenceEntry {
                corresponds: false,
                complexity: Complexity::NpHard,
            }
        }
    }
}
