//! Solver outcome types shared by every exact solver in the crate.

use std::time::Duration;

use crate::graph::Graph;
use crate::kernel::RuleApplication;
use crate::labeling::{self, DeletionSet, Labeling};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Labeling(Labeling),
    Deletions(DeletionSet),
}

impl Certificate {
    pub fn as_labeling(&self) -> Option<&Labeling> {
        match self {
            Certificate::Labeling(l) => Some(l),
            Certificate::Deletions(_) => None,
        }
    }

    pub fn as_deletions(&self) -> Option<&DeletionSet> {
        match self {
            Certificate::Deletions(d) => Some(d),
            Certificate::Labeling(_) => None,
        }
    }

    /// Re-validates the certificate against its host graph.
    pub fn validates(&self, g: &Graph) -> bool {
        match self {
            Certificate::Labeling(l) => labeling::is_stc_labeling(g, l).unwrap_or(false),
            Certificate::Deletions(d) => {
                d.deleted.iter().all(|&e| e < g.edge_count())
                    && labeling::is_cluster_graph(&d.apply(g))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Search-tree nodes explored (0 for closed-form solvers).
    pub nodes: u64,
    /// Reduction-rule applications.
    pub rules_fired: u64,
    pub wall: Duration,
}

/// Outcome of one exact solve. When `feasible`, the certificate validates
/// and `objective` matches its size (weak/deleted edges for parameter k,
/// strong/cluster edges for parameter ell).
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub feasible: bool,
    pub objective: usize,
    pub certificate: Option<Certificate>,
    pub stats: SolveStats,
    pub kernel_trace: Option<Vec<RuleApplication>>,
}

impl SolveResult {
    pub fn infeasible(requested: usize) -> SolveResult {
        SolveResult {
            feasible: false,
            objective: requested,
            certificate: None,
            stats: SolveStats::default(),
            kernel_trace: None,
        }
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        self.certificate.as_ref().and_then(|c| c.as_labeling())
    }

    pub fn deletions(&self) -> Option<&DeletionSet> {
        self.certificate.as_ref().and_then(|c| c.as_deletions())
    }
}
