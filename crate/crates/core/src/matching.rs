//! Maximum-cardinality matching in general graphs.
//!
//! Edmonds' blossom algorithm in its plain O(n^3) form: repeatedly grow an
//! alternating BFS tree from each unmatched vertex, contracting odd cycles
//! (blossoms) onto their base as they appear. No dual variables, no
//! sqrt-decomposition; inputs here are desk-sized.

use std::collections::VecDeque;

use crate::graph::{Graph, Matching, MatchingKind};

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        let mut mate = vec![NONE; n];
        // greedy seed; the augmenting phase below makes the result maximum
        for &(u, v) in g.edges() {
            if mate[u] == NONE && mate[v] == NONE {
                mate[u] = v;
                mate[v] = u;
            }
        }
        Blossom {
            g,
            mate,
            parent: vec![NONE; n],
            base: vec![NONE; n],
            used: vec![false; n],
        }
    }

    fn lowest_common_base(&self, mut a: usize, mut b: usize) -> usize {
        let n = self.g.vertex_count();
        let mut on_path = vec![false; n];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, in_blossom: &mut [bool]) {
        while self.base[v] != b {
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grows the alternating tree from `root`; returns the free endpoint of
    /// an augmenting path if one exists.
    fn find_augmenting_path(&mut self, root: usize) -> usize {
        let n = self.g.vertex_count();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in self.g.neighbors(u) {
                if self.base[u] == self.base[v] || self.mate[u] == v {
                    continue;
                }
                if v == root || (self.mate[v] != NONE && self.parent[self.mate[v]] != NONE) {
                    // odd cycle: contract the blossom onto its base
                    let cur_base = self.lowest_common_base(u, v);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(u, cur_base, v, &mut in_blossom);
                    self.mark_path(v, cur_base, u, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[v] == NONE {
                    self.parent[v] = u;
                    if self.mate[v] == NONE {
                        return v;
                    }
                    self.used[self.mate[v]] = true;
                    queue.push_back(self.mate[v]);
                }
            }
        }
        NONE
    }

    fn augment_along(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn run(mut self) -> Vec<usize> {
        for v in 0..self.g.vertex_count() {
            if self.mate[v] == NONE {
                let end = self.find_augmenting_path(v);
                if end != NONE {
                    self.augment_along(end);
                }
            }
        }
        self.mate
    }
}

pub fn maximum_matching(g: &Graph) -> Matching {
    let mate = Blossom::new(g).run();
    let mut edges: Vec<usize> = (0..g.vertex_count())
        .filter(|&u| mate[u] != NONE && u < mate[u])
        .map(|u| g.edge_id(u, mate[u]).unwrap())
        .collect();
    edges.sort_unstable();
    Matching {
        edges,
        kind: MatchingKind::Maximum,
    }
}

#[cfg(test)]
mod tests {
    use crate::graph::Graph;
    use crate::testutil::{brute_max_matching, named, random_graphs};

    #[test]
    fn matching_examples() {
        assert_eq!(named::c4().maximum_matching().len(), 2);
        assert_eq!(named::k3().maximum_matching().len(), 1);
        // frozen from the exhaustive search oracle
        let petersen = named::petersen();
        assert_eq!(brute_max_matching(&petersen), 5);
        assert_eq!(petersen.maximum_matching().len(), 5);
    }

    #[test]
    fn matching_edges_are_disjoint() {
        for g in random_graphs(11, 60, 9) {
            let m = g.maximum_matching();
            let mut used = vec![false; g.vertex_count()];
            for &e in &m.edges {
                let (u, v) = g.endpoints(e);
                assert!(!used[u] && !used[v]);
                used[u] = true;
                used[v] = true;
            }
        }
    }

    #[test]
    fn blossom_agrees_with_brute_force() {
        // odd cycles and random graphs; C5, C7 force blossom contractions
        for n in [5, 7, 9] {
            let c = named::cycle(n);
            assert_eq!(c.maximum_matching().len(), n / 2);
        }
        for g in random_graphs(7, 80, 8) {
            assert_eq!(g.maximum_matching().len(), brute_max_matching(&g), "{g:?}");
        }
    }

    #[test]
    fn maximal_vs_maximum_bounds() {
        for g in random_graphs(23, 60, 9) {
            let maximal = g.maximal_matching().len();
            let maximum = g.maximum_matching().len();
            assert!(maximum >= maximal);
            assert!(maximal * 2 >= maximum);
        }
        // greedy maximal can genuinely be smaller: P4 takes the middle edge
        let p4 = Graph::from_edge_list(4, [(1, 2), (0, 1), (2, 3)]).unwrap();
        assert_eq!(p4.maximal_matching().len(), 1);
        assert_eq!(p4.maximum_matching().len(), 2);
    }
}
