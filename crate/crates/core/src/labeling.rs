//! Strong/weak edge labelings, cluster graphs, and the bridge from edge
//! deletion sets to labelings.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;

/// Set of edge indices.
pub type EdgeSet = BTreeSet<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("strong/weak sets do not partition the {m} edges of the host graph")]
    NotAPartition { m: usize },
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("residual graph is not a cluster graph: witness P3 ({0}, {1}, {2})")]
    NotClusterGraph(usize, usize, usize),
}

/// A partition of the host graph's edge set into strong and weak edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub strong: EdgeSet,
    pub weak: EdgeSet,
}

impl Labeling {
    /// Labeling with the given strong set; every other edge becomes weak.
    pub fn from_strong(g: &Graph, strong: impl IntoIterator<Item = usize>) -> Labeling {
        let strong: EdgeSet = strong.into_iter().collect();
        let weak = (0..g.edge_count()).filter(|e| !strong.contains(e)).collect();
        Labeling { strong, weak }
    }

    pub fn all_weak(g: &Graph) -> Labeling {
        Labeling::from_strong(g, [])
    }

    /// Validates both halves against the host graph.
    pub fn from_parts(g: &Graph, strong: EdgeSet, weak: EdgeSet) -> Result<Labeling, LabelingError> {
        let l = Labeling { strong, weak };
        l.check_partition(g)?;
        Ok(l)
    }

    pub fn check_partition(&self, g: &Graph) -> Result<(), LabelingError> {
        let m = g.edge_count();
        if let Some(&e) = self.strong.iter().chain(self.weak.iter()).find(|&&e| e >= m) {
            return Err(LabelingError::EdgeOutOfRange(e));
        }
        if self.strong.len() + self.weak.len() != m
            || self.strong.intersection(&self.weak).next().is_some()
        {
            return Err(LabelingError::NotAPartition { m });
        }
        Ok(())
    }

    pub fn strong_count(&self) -> usize {
        self.strong.len()
    }

    pub fn weak_count(&self) -> usize {
        self.weak.len()
    }
}

/// A set of edges to delete (the CD certificate).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeletionSet {
    pub deleted: EdgeSet,
}

impl DeletionSet {
    pub fn new(deleted: impl IntoIterator<Item = usize>) -> DeletionSet {
        DeletionSet {
            deleted: deleted.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.deleted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deleted.is_empty()
    }

    /// The graph left after deleting the edges. Surviving edges keep their
    /// relative order but get fresh indices, so callers that need to refer
    /// back use original indices throughout.
    pub fn apply(&self, g: &Graph) -> Graph {
        let pairs = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.deleted.contains(i))
            .map(|(_, &e)| e);
        Graph::from_edge_list(g.vertex_count(), pairs).unwrap()
    }
}

/// Does `l` satisfy the strong triadic closure property on `g`? True iff no
/// induced P3 has both of its edges strong.
pub fn is_stc_labeling(g: &Graph, l: &Labeling) -> Result<bool, LabelingError> {
    l.check_partition(g)?;
    Ok(first_conflict(g, l).is_none())
}

/// First violated P3 in deterministic edge-index order, as the pair of
/// strong edge indices, or `None` if the labeling satisfies STC.
pub fn first_conflict(g: &Graph, l: &Labeling) -> Option<(usize, usize)> {
    all_conflicts(g, l, true).into_iter().next()
}

/// Every violated P3 (`stop_at_first` makes it a cheap existence check).
pub fn all_conflicts(g: &Graph, l: &Labeling, stop_at_first: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &(a, b) in &g.enumerate_p3() {
        if l.strong.contains(&a) && l.strong.contains(&b) {
            out.push((a, b));
            if stop_at_first {
                break;
            }
        }
    }
    out
}

/// True iff the graph is a disjoint union of cliques (equivalently P3-free).
pub fn is_cluster_graph(g: &Graph) -> bool {
    g.first_p3().is_none()
}

/// The cluster labeling induced by a deletion set: deleted edges weak, kept
/// edges strong. Errors with a witness P3 if the residual graph is not a
/// cluster graph. A successful result always satisfies STC.
pub fn cluster_labeling(g: &Graph, d: &DeletionSet) -> Result<Labeling, LabelingError> {
    let residual = d.apply(g);
    if let Some((u, v, w)) = residual.first_p3() {
        return Err(LabelingError::NotClusterGraph(u, v, w));
    }
    Ok(Labeling::from_strong(
        g,
        (0..g.edge_count()).filter(|e| !d.deleted.contains(e)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{named, random_graphs};

    #[test]
    fn stc_check_examples() {
        let p3 = named::p3();
        let both_strong = Labeling::from_strong(&p3, [0, 1]);
        assert!(!is_stc_labeling(&p3, &both_strong).unwrap());

        for g in [named::p3(), named::c4(), named::paw()] {
            assert!(is_stc_labeling(&g, &Labeling::all_weak(&g)).unwrap());
        }

        // C4 with the perfect matching {01, 23} strong: all four P3s have
        // one strong and one weak edge
        let c4 = named::c4();
        let matching_strong = Labeling::from_strong(&c4, [0, 2]);
        assert!(is_stc_labeling(&c4, &matching_strong).unwrap());
    }

    #[test]
    fn malformed_partition_is_a_contract_error() {
        let p3 = named::p3();
        let l = Labeling {
            strong: EdgeSet::from([0]),
            weak: EdgeSet::from([0, 1]),
        };
        assert!(is_stc_labeling(&p3, &l).is_err());
        let short = Labeling {
            strong: EdgeSet::from([0]),
            weak: EdgeSet::new(),
        };
        assert!(matches!(
            is_stc_labeling(&p3, &short),
            Err(LabelingError::NotAPartition { m: 2 })
        ));
    }

    #[test]
    fn cluster_graph_recognition() {
        let k3_plus_k2 = Graph::from_edge_list(5, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        assert!(is_cluster_graph(&k3_plus_k2));
        assert!(!is_cluster_graph(&named::p3()));
        assert!(!is_cluster_graph(&named::paw())); // pendant creates a P3
    }

    #[test]
    fn cluster_labeling_examples() {
        let p3 = named::p3();
        let l = cluster_labeling(&p3, &DeletionSet::new([0])).unwrap();
        assert_eq!(l.strong, EdgeSet::from([1]));
        assert_eq!(l.weak, EdgeSet::from([0]));

        let c4 = named::c4();
        let ok = cluster_labeling(&c4, &DeletionSet::new([0, 2])).unwrap();
        assert_eq!(ok.strong_count(), 2);
        assert!(is_stc_labeling(&c4, &ok).unwrap());

        // deleting a single C4 edge leaves a P4, which still has P3s
        let err = cluster_labeling(&c4, &DeletionSet::new([0]));
        assert!(matches!(err, Err(LabelingError::NotClusterGraph(..))));
    }

    #[test]
    fn cluster_labelings_always_satisfy_stc() {
        // subsets of a valid strong set stay valid as well
        for g in random_graphs(3, 40, 7) {
            let comps = g.connected_components();
            // delete everything except edges inside the first component if
            // that component is a clique; otherwise delete all edges
            let keep: Vec<usize> = if comps.first().map_or(false, |c| g.is_clique(c)) {
                g.edges()
                    .iter()
                    .enumerate()
                    .filter(|(_, &(u, _))| comps[0].contains(&u))
                    .map(|(i, _)| i)
                    .collect()
            } else {
                Vec::new()
            };
            let d = DeletionSet::new((0..g.edge_count()).filter(|e| !keep.contains(e)));
            let l = cluster_labeling(&g, &d).unwrap();
            assert!(is_stc_labeling(&g, &l).unwrap());

            // drop strong edges one by one; validity must be preserved
            let mut strong: Vec<usize> = l.strong.iter().copied().collect();
            while strong.pop().is_some() {
                let sub = Labeling::from_strong(&g, strong.iter().copied());
                assert!(is_stc_labeling(&g, &sub).unwrap());
            }
        }
    }

    use crate::graph::Graph;
}
