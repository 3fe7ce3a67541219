//! The catalog of small graphs on three and four vertices and brute-force
//! induced-subgraph detection for them.
//!
//! Detection enumerates vertex subsets in lexicographic order and classifies
//! the induced adjacency bitmask against a precomputed table of all masks
//! isomorphic to the pattern, so a witness query is O(n^3) / O(n^4) with a
//! constant-time check per tuple.

use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown pattern name: {0}")]
pub struct UnknownPattern(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    K3,
    P3,
    K2K1,
    ThreeK1,
    P4,
    K4,
    Diamond,
    C4,
    Paw,
    Claw,
    CoDiamond,
    TwoK2,
    CoPaw,
    CoClaw,
    FourK1,
}

impl Pattern {
    pub const ALL: [Pattern; 15] = [
        Pattern::K3,
        Pattern::P3,
        Pattern::K2K1,
        Pattern::ThreeK1,
        Pattern::P4,
        Pattern::K4,
        Pattern::Diamond,
        Pattern::C4,
        Pattern::Paw,
        Pattern::Claw,
        Pattern::CoDiamond,
        Pattern::TwoK2,
        Pattern::CoPaw,
        Pattern::CoClaw,
        Pattern::FourK1,
    ];

    /// Stable lowercase token used in file formats and CLI output.
    pub fn token(self) -> &'static str {
        match self {
            Pattern::K3 => "k3",
            Pattern::P3 => "p3",
            Pattern::K2K1 => "k2k1",
            Pattern::ThreeK1 => "3k1",
            Pattern::P4 => "p4",
            Pattern::K4 => "k4",
            Pattern::Diamond => "diamond",
            Pattern::C4 => "c4",
            Pattern::Paw => "paw",
            Pattern::Claw => "claw",
            Pattern::CoDiamond => "co-diamond",
            Pattern::TwoK2 => "2k2",
            Pattern::CoPaw => "co-paw",
            Pattern::CoClaw => "co-claw",
            Pattern::FourK1 => "4k1",
        }
    }

    pub fn order(self) -> usize {
        match self {
            Pattern::K3 | Pattern::P3 | Pattern::K2K1 | Pattern::ThreeK1 => 3,
            _ => 4,
        }
    }

    fn edge_pairs(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::K3 => &[(0, 1), (1, 2), (0, 2)],
            Pattern::P3 => &[(0, 1), (1, 2)],
            Pattern::K2K1 => &[(0, 1)],
            Pattern::ThreeK1 => &[],
            Pattern::P4 => &[(0, 1), (1, 2), (2, 3)],
            Pattern::K4 => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            Pattern::Diamond => &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)],
            Pattern::C4 => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            Pattern::Paw => &[(0, 1), (1, 2), (0, 2), (0, 3)],
            Pattern::Claw => &[(0, 1), (0, 2), (0, 3)],
            Pattern::CoDiamond => &[(0, 1)],
            Pattern::TwoK2 => &[(0, 1), (2, 3)],
            Pattern::CoPaw => &[(0, 1), (1, 2)],
            Pattern::CoClaw => &[(0, 1), (1, 2), (0, 2)],
            Pattern::FourK1 => &[],
        }
    }

    /// Canonical pattern graph.
    pub fn graph(self) -> Graph {
        Graph::from_edge_list(self.order(), self.edge_pairs().iter().copied()).unwrap()
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Pattern {
    type Err = UnknownPattern;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.token() == s)
            .ok_or_else(|| UnknownPattern(s.to_string()))
    }
}

/// Pair-to-bit order for tuples (a<b<c): ab, ac, bc.
/// For (a<b<c<d): ab, ac, ad, bc, bd, cd.
fn pair_bit(order: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    match order {
        3 => match (i, j) {
            (0, 1) => 0,
            (0, 2) => 1,
            (1, 2) => 2,
            _ => unreachable!(),
        },
        4 => match (i, j) {
            (0, 1) => 0,
            (0, 2) => 1,
            (0, 3) => 2,
            (1, 2) => 3,
            (1, 3) => 4,
            (2, 3) => 5,
            _ => unreachable!(),
        },
        _ => unreachable!(),
    }
}

fn permutations(order: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            rec(cur, rest, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..order).collect(), &mut out);
    out
}

/// Precomputed recognizer for one pattern.
pub struct PatternTester {
    pattern: Pattern,
    iso_mask: [bool; 64],
}

impl PatternTester {
    pub fn new(pattern: Pattern) -> PatternTester {
        let order = pattern.order();
        let mut iso_mask = [false; 64];
        for perm in permutations(order) {
            let mut mask = 0usize;
            for &(i, j) in pattern.edge_pairs() {
                mask |= 1 << pair_bit(order, perm[i], perm[j]);
            }
            iso_mask[mask] = true;
        }
        PatternTester { pattern, iso_mask }
    }

    pub fn pattern(&self) -> Pattern {
        self.pattern
    }

    fn tuple_mask(&self, g: &Graph, t: &[usize]) -> usize {
        let mut mask = 0usize;
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                if g.has_edge(t[i], t[j]) {
                    mask |= 1 << pair_bit(t.len(), i, j);
                }
            }
        }
        mask
    }

    /// First witness tuple in lexicographic vertex order, or `None`.
    pub fn find(&self, g: &Graph) -> Option<Vec<usize>> {
        let n = g.vertex_count();
        match self.pattern.order() {
            3 => {
                for a in 0..n {
                    for b in a + 1..n {
                        for c in b + 1..n {
                            let t = [a, b, c];
                            if self.iso_mask[self.tuple_mask(g, &t)] {
                                return Some(t.to_vec());
                            }
                        }
                    }
                }
                None
            }
            _ => {
                for a in 0..n {
                    for b in a + 1..n {
                        for c in b + 1..n {
                            for d in c + 1..n {
                                let t = [a, b, c, d];
                                if self.iso_mask[self.tuple_mask(g, &t)] {
                                    return Some(t.to_vec());
                                }
                            }
                        }
                    }
                }
                None
            }
        }
    }

    pub fn is_free(&self, g: &Graph) -> bool {
        self.find(g).is_none()
    }
}

/// One-shot witness query; builds the recognizer fresh each call.
pub fn find_induced(g: &Graph, pattern: Pattern) -> Option<Vec<usize>> {
    PatternTester::new(pattern).find(g)
}

pub fn is_free(g: &Graph, pattern: Pattern) -> bool {
    find_induced(g, pattern).is_none()
}
