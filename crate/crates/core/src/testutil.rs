//! Shared helpers for unit tests: small named graphs and independent
//! brute-force reference computations. Everything here is deliberately
//! naive; it is the yardstick the real implementations are measured against.

use crate::graph::Graph;

pub mod named {
    use super::*;

    pub fn p3() -> Graph {
        Graph::from_edge_list(3, [(0, 1), (1, 2)]).unwrap()
    }

    pub fn k3() -> Graph {
        Graph::from_edge_list(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    /// Cycle 0-1-...-(n-1)-0 with edges listed along the cycle.
    pub fn cycle(n: usize) -> Graph {
        let pairs = (0..n).map(|i| (i, (i + 1) % n));
        Graph::from_edge_list(n, pairs).unwrap()
    }

    pub fn c4() -> Graph {
        cycle(4)
    }

    /// Triangle {0,1,2} plus pendant vertex 3 attached to 0.
    pub fn paw() -> Graph {
        Graph::from_edge_list(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap()
    }

    /// Center 0, leaves 1..=3.
    pub fn claw() -> Graph {
        Graph::from_edge_list(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    /// Star with `leaves` leaves, center 0.
    pub fn star(leaves: usize) -> Graph {
        let pairs = (1..=leaves).map(|i| (0, i));
        Graph::from_edge_list(leaves + 1, pairs).unwrap()
    }

    /// Outer C5, inner pentagram, five spokes.
    pub fn petersen() -> Graph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
        }
        for i in 0..5 {
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        for i in 0..5 {
            pairs.push((i, i + 5));
        }
        Graph::from_edge_list(10, pairs).unwrap()
    }
}

/// All induced P3s by exhaustive scan over vertex triples, as sorted pairs of
/// edge indices. Independent of `Graph::enumerate_p3`'s midpoint scan.
pub fn brute_p3_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let ab = g.has_edge(a, b);
                let bc = g.has_edge(b, c);
                let ac = g.has_edge(a, c);
                let (e1, e2) = match (ab, bc, ac) {
                    (true, true, false) => (g.edge_id(a, b).unwrap(), g.edge_id(b, c).unwrap()),
                    (true, false, true) => (g.edge_id(a, b).unwrap(), g.edge_id(a, c).unwrap()),
                    (false, true, true) => (g.edge_id(b, c).unwrap(), g.edge_id(a, c).unwrap()),
                    _ => continue,
                };
                out.push((e1.min(e2), e1.max(e2)));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Maximum matching size by exhaustive search over edge subsets.
pub fn brute_max_matching(g: &Graph) -> usize {
    fn rec(g: &Graph, from: usize, used: &mut Vec<bool>) -> usize {
        let mut best = 0;
        for e in from..g.edge_count() {
            let (u, v) = g.endpoints(e);
            if used[u] || used[v] {
                continue;
            }
            used[u] = true;
            used[v] = true;
            best = best.max(1 + rec(g, e + 1, used));
            used[u] = false;
            used[v] = false;
        }
        best
    }
    rec(g, 0, &mut vec![false; g.vertex_count()])
}

/// Maximum number of strong edges over all edge subsets, straight from the
/// definition: a subset is feasible if no induced P3 has both edges in it.
/// Exponential in m; keep m small.
pub fn brute_stc_strong_opt(g: &Graph) -> usize {
    let m = g.edge_count();
    assert!(m <= 22, "brute_stc_strong_opt is 2^m");
    let conflicts = brute_p3_pairs(g);
    let mut best = 0;
    for mask in 0u64..(1 << m) {
        if conflicts
            .iter()
            .all(|&(a, b)| mask & (1 << a) == 0 || mask & (1 << b) == 0)
        {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Maximum number of intra-clique edges over all partitions of V into
/// cliques, by restricted-growth enumeration.
pub fn brute_cd_cluster_opt(g: &Graph) -> usize {
    fn rec(g: &Graph, v: usize, parts: &mut Vec<Vec<usize>>, best: &mut usize, acc: usize) {
        if v == g.vertex_count() {
            *best = (*best).max(acc);
            return;
        }
        for i in 0..parts.len() {
            if parts[i].iter().all(|&u| g.has_edge(u, v)) {
                let gain = parts[i].len();
                parts[i].push(v);
                rec(g, v + 1, parts, best, acc + gain);
                parts[i].pop();
            }
        }
        parts.push(vec![v]);
        rec(g, v + 1, parts, best, acc);
        parts.pop();
    }
    let mut best = 0;
    rec(g, 0, &mut Vec::new(), &mut best, 0);
    best
}

/// Deterministic stream of small random graphs for property-style sweeps.
pub fn random_graphs(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = rng.random_range(1..=max_n);
        let p = *[0.2, 0.35, 0.5, 0.7].choose(&mut rng).unwrap();
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    pairs.push((u, v));
                }
            }
        }
        out.push(Graph::from_edge_list(n, pairs).unwrap());
    }
    out
}
