//! Instance factories: the two counterexample graphs where no cluster
//! labeling is STC-optimal, the hardness-gadget constructions, and seeded
//! random corpora.
//!
//! All constructions place original vertices first and gadget groups after
//! them in construction order, so metadata indices stay stable.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::labeling::Labeling;
use crate::patterns::{Pattern, PatternTester};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("set is not a vertex cover: edge {{{0}, {1}}} is uncovered")]
    NotAVertexCover(usize, usize),
    #[error("clique target {t} exceeds cover size + 1 = {max}")]
    CliqueTargetTooLarge { t: usize, max: usize },
    #[error("color classes 1..t-1 must have equal sizes")]
    UnequalClassSizes,
    #[error("classes are not a proper coloring: edge {{{0}, {1}}} inside a class")]
    ImproperColoring(usize, usize),
    #[error("classes must partition the vertex set")]
    NotAPartitionOfV,
    #[error("all-labeled enumeration capped at n <= 7, got n = {0}")]
    AllLabeledTooLarge(usize),
    #[error("could not sample a {0}-free graph (witness breaking did not converge)")]
    SamplingFailed(Pattern),
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VertexGroup {
    pub name: String,
    pub vertices: Vec<usize>,
}

/// Output of a reduction construction: the produced graph, its budget when
/// the construction fixes one, and named vertex groups partitioning V.
#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub graph: Graph,
    /// Deletion/weak-edge budget k of the produced instance, when defined.
    pub budget: Option<usize>,
    /// Strong/cluster-edge target ell, when defined.
    pub ell: Option<usize>,
    pub groups: Vec<VertexGroup>,
    /// False when a padding override makes the artifact structurally valid
    /// but not equivalence-preserving.
    pub faithful: bool,
}

impl ReductionArtifact {
    pub fn group(&self, name: &str) -> Option<&[usize]> {
        self.groups
            .iter()
            .find(|g| g.name == name)
            .map(|g| g.vertices.as_slice())
    }

    pub fn metadata_json(&self) -> serde_json::Value {
        serde_json::json!({
            "budget": self.budget,
            "ell": self.ell,
            "faithful": self.faithful,
            "groups": self.groups,
        })
    }
}

/// The two graphs where the optimal STC-labeling beats every cluster
/// labeling: (a) a K4 core with four outer vertices, each adjacent to a
/// distinct triangle of the core (18 edges), and (b) the complement of C7.
pub fn fig3_graphs() -> (Graph, Graph) {
    let mut pairs = Vec::new();
    for u in 0..4usize {
        for v in u + 1..4 {
            pairs.push((u, v));
        }
    }
    for i in 0..4usize {
        for c in 0..4usize {
            if c != i {
                pairs.push((4 + i, c));
            }
        }
    }
    let a = Graph::from_edge_list(8, pairs).unwrap();

    let c7 = Graph::from_edge_list(7, (0..7).map(|i| (i, (i + 1) % 7))).unwrap();
    let b = c7.complement();
    debug_assert_eq!(a.edge_count(), 18);
    debug_assert_eq!(b.edge_count(), 14);
    (a, b)
}

/// Adds a universal clique of `padding` vertices (default |V|^3) adjacent to
/// every original vertex. Faithful as a Clique reduction only at the default
/// padding; smaller padding exercises the construction structurally.
pub fn expanded_graph(g: &Graph, padding: Option<usize>) -> ReductionArtifact {
    let n = g.vertex_count();
    let pad = padding.unwrap_or(n * n * n);
    assert!(pad >= 1, "padding must be positive");
    let mut pairs: Vec<(usize, usize)> = g.edges().to_vec();
    for a in 0..pad {
        for b in a + 1..pad {
            pairs.push((n + a, n + b));
        }
    }
    for v in 0..n {
        for a in 0..pad {
            pairs.push((v, n + a));
        }
    }
    ReductionArtifact {
        graph: Graph::from_edge_list(n + pad, pairs).unwrap(),
        budget: None,
        ell: None,
        groups: vec![
            VertexGroup {
                name: "original".into(),
                vertices: (0..n).collect(),
            },
            VertexGroup {
                name: "padding_clique".into(),
                vertices: (n..n + pad).collect(),
            },
        ],
        faithful: padding.map_or(true, |p| p == n * n * n),
    }
}

/// Budget of the expanded graph as an STC/CD instance asking for a clique of
/// size `t` in the source: k = m_hat - (C(padding, 2) + t * padding).
pub fn expanded_budget(artifact: &ReductionArtifact, t: usize) -> usize {
    let padding = artifact
        .group("padding_clique")
        .expect("expanded artifact")
        .len();
    let m_hat = artifact.graph.edge_count();
    m_hat - (padding * (padding - 1) / 2 + t * padding)
}

/// Replaces each cover vertex with t copies spread over t color classes and
/// appends the independent set to the last class, yielding a properly
/// t-colored instance whose first t-1 classes all have size |cover|.
pub fn clique_vc_to_rmc(
    g: &Graph,
    cover: &VertexSet,
    t: usize,
) -> Result<ReductionArtifact, GenerateError> {
    for &(u, v) in g.edges() {
        if !cover.contains(&u) && !cover.contains(&v) {
            return Err(GenerateError::NotAVertexCover(u, v));
        }
    }
    let s = cover.len();
    if t > s + 1 {
        return Err(GenerateError::CliqueTargetTooLarge { t, max: s + 1 });
    }
    let cover_vec: Vec<usize> = cover.iter().copied().collect();
    let indep: Vec<usize> = (0..g.vertex_count())
        .filter(|v| !cover.contains(v))
        .collect();

    // class r in 0..t-1 holds copy r of every cover vertex; the independent
    // set joins the last class
    let copy_id = |r: usize, i: usize| r * s + i;
    let indep_id = |j: usize| t * s + j;
    let total = t * s + indep.len();

    let mut pairs = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            if g.has_edge(cover_vec[i], cover_vec[j]) {
                for r1 in 0..t {
                    for r2 in 0..t {
                        if r1 != r2 {
                            let (a, b) = (copy_id(r1, i), copy_id(r2, j));
                            if a < b {
                                pairs.push((a, b));
                            } else {
                                pairs.push((b, a));
                            }
                        }
                    }
                }
            }
        }
    }
    for (j, &w) in indep.iter().enumerate() {
        for (i, &v) in cover_vec.iter().enumerate() {
            if g.has_edge(v, w) {
                // only copies in the first t-1 classes; the last class also
                // hosts the independent set and must stay independent
                for r in 0..t - 1 {
                    pairs.push((copy_id(r, i), indep_id(j)));
                }
            }
        }
    }

    let mut groups = Vec::new();
    for r in 0..t {
        let mut vertices: Vec<usize> = (0..s).map(|i| copy_id(r, i)).collect();
        if r == t - 1 {
            vertices.extend(indep.iter().enumerate().map(|(j, _)| indep_id(j)));
        }
        groups.push(VertexGroup {
            name: format!("class_{}", r + 1),
            vertices,
        });
    }
    Ok(ReductionArtifact {
        graph: Graph::from_edge_list(total, pairs).unwrap(),
        budget: None,
        ell: None,
        groups,
        faithful: true,
    })
}

/// Attaches, per equal-size color class, one size-t clique for every class
/// vertex but one, fully wired to the whole class. Produces the STC instance
/// with ell = C(t,2) + (t-1)(z-1)C(t+1,2) and k = |E'| - ell.
pub fn rmc_to_stc(g: &Graph, classes: &[Vec<usize>]) -> Result<ReductionArtifact, GenerateError> {
    let n = g.vertex_count();
    let t = classes.len();
    let mut seen = vec![false; n];
    for class in classes {
        for &v in class {
            if v >= n || seen[v] {
                return Err(GenerateError::NotAPartitionOfV);
            }
            seen[v] = true;
        }
    }
    if !seen.iter().all(|&b| b) {
        return Err(GenerateError::NotAPartitionOfV);
    }
    for class in classes {
        for i in 0..class.len() {
            for j in i + 1..class.len() {
                if g.has_edge(class[i], class[j]) {
                    return Err(GenerateError::ImproperColoring(class[i], class[j]));
                }
            }
        }
    }
    let z = classes[0].len();
    if classes[..t.saturating_sub(1)].iter().any(|c| c.len() != z) {
        return Err(GenerateError::UnequalClassSizes);
    }

    let mut pairs: Vec<(usize, usize)> = g.edges().to_vec();
    let mut groups = vec![VertexGroup {
        name: "original".into(),
        vertices: (0..n).collect(),
    }];
    let mut next = n;
    for (r, class) in classes.iter().take(t.saturating_sub(1)).enumerate() {
        for i in 0..z.saturating_sub(1) {
            let members: Vec<usize> = (0..t).map(|j| next + j).collect();
            next += t;
            for a in 0..t {
                for b in a + 1..t {
                    pairs.push((members[a], members[b]));
                }
            }
            for &u in &members {
                for &v in class {
                    pairs.push((v, u));
                }
            }
            groups.push(VertexGroup {
                name: format!("attached_{}_{}", i + 1, r + 1),
                vertices: members,
            });
        }
    }
    let graph = Graph::from_edge_list(next, pairs).unwrap();
    let ell = t * (t - 1) / 2 + (t - 1) * z.saturating_sub(1) * (t + 1) * t / 2;
    let k = graph.edge_count() - ell;
    Ok(ReductionArtifact {
        graph,
        budget: Some(k),
        ell: Some(ell),
        groups,
        faithful: true,
    })
}

/// The forward-direction labeling of the attached-clique construction: given
/// a multicolored clique (one original vertex per class), the clique edges,
/// all attached-clique edges, and a pairing of each non-clique class vertex
/// with its own attached clique are strong. Reaches exactly ell strong edges.
pub fn rmc_clique_labeling(
    artifact: &ReductionArtifact,
    classes: &[Vec<usize>],
    clique: &[usize],
) -> Labeling {
    let g = &artifact.graph;
    let mut strong = Vec::new();
    for i in 0..clique.len() {
        for j in i + 1..clique.len() {
            strong.push(g.edge_id(clique[i], clique[j]).expect("clique edge"));
        }
    }
    let t = classes.len();
    let z = classes[0].len();
    for (r, class) in classes.iter().take(t.saturating_sub(1)).enumerate() {
        let others: Vec<usize> = class
            .iter()
            .copied()
            .filter(|v| !clique.contains(v))
            .collect();
        debug_assert_eq!(others.len(), z - 1);
        for (i, &v) in others.iter().enumerate() {
            let attached = artifact
                .group(&format!("attached_{}_{}", i + 1, r + 1))
                .expect("attached clique group");
            for a in 0..attached.len() {
                for b in a + 1..attached.len() {
                    strong.push(g.edge_id(attached[a], attached[b]).unwrap());
                }
                strong.push(g.edge_id(v, attached[a]).unwrap());
            }
        }
    }
    Labeling::from_strong(g, strong)
}

/// The co-claw-free construction: three universal cliques of size |V|^3 with
/// cross edges between distinct ranks, and k = |E'| - (3 C(n^3, 2) + n^4).
pub fn three_clique_cover_to_coclaw(g: &Graph) -> ReductionArtifact {
    let n = g.vertex_count();
    let pad = n * n * n;
    let id = |i: usize, c: usize| n + i * pad + c; // clique i, rank c
    let mut pairs: Vec<(usize, usize)> = g.edges().to_vec();
    // every gadget vertex is adjacent to all of V
    for i in 0..3 {
        for c in 0..pad {
            for v in 0..n {
                pairs.push((v, id(i, c)));
            }
        }
    }
    // gadget vertices are adjacent iff their ranks differ
    for i in 0..3 {
        for j in i..3 {
            for c in 0..pad {
                let d0 = if i == j { c + 1 } else { 0 };
                for d in d0..pad {
                    if c != d {
                        pairs.push((id(i, c), id(j, d)));
                    }
                }
            }
        }
    }
    let graph = Graph::from_edge_list(n + 3 * pad, pairs).unwrap();
    let target = 3 * (pad * pad.saturating_sub(1) / 2) + n * n * n * n;
    let budget = graph.edge_count() - target;
    let groups = vec![
        VertexGroup {
            name: "original".into(),
            vertices: (0..n).collect(),
        },
        VertexGroup {
            name: "k1".into(),
            vertices: (0..pad).map(|c| id(0, c)).collect(),
        },
        VertexGroup {
            name: "k2".into(),
            vertices: (0..pad).map(|c| id(1, c)).collect(),
        },
        VertexGroup {
            name: "k3".into(),
            vertices: (0..pad).map(|c| id(2, c)).collect(),
        },
    ];
    ReductionArtifact {
        graph,
        budget: Some(budget),
        ell: Some(target),
        groups,
        faithful: true,
    }
}

/// A corpus family. Generation is deterministic: graph `i` of a family is
/// produced by an rng seeded with `seed + i`, so corpora can be split.
#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSpec {
    Gnp { n: usize, p: f64, count: usize },
    HFree { pattern: Pattern, n: usize, p: f64, count: usize },
    AllLabeled { n: usize },
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, pairs).unwrap()
}

fn hfree(rng: &mut ChaCha8Rng, tester: &PatternTester, n: usize, p: f64) -> Option<Graph> {
    'resample: for _ in 0..64 {
        let mut adj = vec![vec![false; n]; n];
        let g = gnp(rng, n, p);
        for &(u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let rebuild = |adj: &Vec<Vec<bool>>| {
            let pairs = (0..n).flat_map(|u| {
                (u + 1..n).filter_map(move |v| adj[u][v].then_some((u, v)))
            });
            Graph::from_edge_list(n, pairs).unwrap()
        };
        let mut current = rebuild(&adj);
        for _ in 0..(50 * n * n + 50) {
            match tester.find(&current) {
                None => return Some(current),
                Some(witness) => {
                    // toggle a random pair inside the witness; this always
                    // destroys the found occurrence
                    let i = rng.random_range(0..witness.len());
                    let j = {
                        let mut j = rng.random_range(0..witness.len() - 1);
                        if j >= i {
                            j += 1;
                        }
                        j
                    };
                    let (u, v) = (witness[i], witness[j]);
                    adj[u][v] = !adj[u][v];
                    adj[v][u] = adj[u][v];
                    current = rebuild(&adj);
                }
            }
        }
        continue 'resample;
    }
    None
}

pub fn corpus(seed: u64, spec: &CorpusSpec) -> Result<Vec<Graph>, GenerateError> {
    match spec {
        CorpusSpec::Gnp { n, p, count } => Ok((0..*count)
            .map(|i| gnp(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64)), *n, *p))
            .collect()),
        CorpusSpec::HFree {
            pattern,
            n,
            p,
            count,
        } => {
            let tester = PatternTester::new(*pattern);
            (0..*count)
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                    hfree(&mut rng, &tester, *n, *p).ok_or(GenerateError::SamplingFailed(*pattern))
                })
                .collect()
        }
        CorpusSpec::AllLabeled { n } => {
            if *n > 7 {
                return Err(GenerateError::AllLabeledTooLarge(*n));
            }
            let all_pairs: Vec<(usize, usize)> = (0..*n)
                .flat_map(|u| (u + 1..*n).map(move |v| (u, v)))
                .collect();
            let m = all_pairs.len();
            Ok((0u32..(1 << m))
                .map(|mask| {
                    let pairs = all_pairs
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask & (1 << b) != 0)
                        .map(|(_, &p)| p);
                    Graph::from_edge_list(*n, pairs).unwrap()
                })
                .collect())
        }
    }
}
