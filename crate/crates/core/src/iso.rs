//! Backtracking isomorphism search for small vertex-colored simple graphs.
//!
//! Sized for the maps this crate produces (tens of vertices): a color
//! refinement pass shrinks the candidate classes, then a depth-first search
//! with adjacency-consistency pruning finds an explicit bijection.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf2::BitVec;

#[derive(Debug, Clone)]
pub(crate) struct ColoredGraph {
    n: usize,
    adj: Vec<BitVec>,
    colors: Vec<u64>,
}

impl ColoredGraph {
    pub(crate) fn new(n: usize, colors: Vec<u64>) -> Self {
        assert_eq!(colors.len(), n);
        Self {
            n,
            adj: vec![BitVec::zeros(n); n],
            colors,
        }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "simple graph cannot carry a loop");
        self.adj[u].set(v, true);
        self.adj[v].set(u, true);
    }

    pub(crate) fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].get(v)
    }

    pub(crate) fn degree(&self, v: usize) -> usize {
        self.adj[v].weight()
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.n >= 2 && (0..self.n).all(|v| self.degree(v) == self.n - 1)
    }
}

/// Refines vertex colors of both graphs together until stable: two vertices
/// keep equal colors only while their (color, multiset of neighbor colors)
/// signatures agree. Shared color ids keep the classes comparable.
fn joint_refine(a: &ColoredGraph, b: &ColoredGraph) -> (Vec<u64>, Vec<u64>) {
    let mut ca = a.colors.clone();
    let mut cb = b.colors.clone();
    loop {
        let signature = |g: &ColoredGraph, c: &[u64], v: usize| {
            let mut nbr: Vec<u64> = (0..g.n).filter(|&w| g.adjacent(v, w)).map(|w| c[w]).collect();
            nbr.sort_unstable();
            (c[v], nbr)
        };
        let mut table: BTreeMap<(u64, Vec<u64>), u64> = BTreeMap::new();
        let next = |sig: (u64, Vec<u64>), table: &mut BTreeMap<(u64, Vec<u64>), u64>| {
            let id = table.len() as u64;
            *table.entry(sig).or_insert(id)
        };
        let na: Vec<u64> = (0..a.n)
            .map(|v| next(signature(a, &ca, v), &mut table))
            .collect();
        let nb: Vec<u64> = (0..b.n)
            .map(|v| next(signature(b, &cb, v), &mut table))
            .collect();
        let classes = |c: &[u64]| {
            let mut s = c.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        let stable = classes(&na) == classes(&ca) && classes(&nb) == classes(&cb);
        ca = na;
        cb = nb;
        if stable {
            return (ca, cb);
        }
    }
}

/// Finds a color- and adjacency-preserving bijection from `a` to `b`.
pub(crate) fn find_isomorphism(a: &ColoredGraph, b: &ColoredGraph) -> Option<Vec<usize>> {
    if a.n != b.n {
        return None;
    }
    if a.n == 0 {
        return Some(Vec::new());
    }
    let (ca, cb) = joint_refine(a, b);
    let multiset = |c: &[u64]| {
        let mut s = c.to_vec();
        s.sort_unstable();
        s
    };
    if multiset(&ca) != multiset(&cb) {
        return None;
    }

    let mut mapping = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    if assign(a, b, &ca, &cb, &mut mapping, &mut used, 0) {
        Some(mapping)
    } else {
        None
    }
}

fn assign(
    a: &ColoredGraph,
    b: &ColoredGraph,
    ca: &[u64],
    cb: &[u64],
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
    depth: usize,
) -> bool {
    if depth == a.n {
        return true;
    }
    // Most-constrained next vertex: maximize already-mapped neighbors,
    // breaking ties toward lower index for determinism.
    let next = (0..a.n)
        .filter(|&v| mapping[v] == usize::MAX)
        .max_by_key(|&v| {
            let mapped_nbrs = (0..a.n)
                .filter(|&w| mapping[w] != usize::MAX && a.adjacent(v, w))
                .count();
            (mapped_nbrs, core::cmp::Reverse(v))
        })
        .expect("some vertex is unmapped below full depth");
    'candidates: for cand in 0..b.n {
        if used[cand] || cb[cand] != ca[next] || b.degree(cand) != a.degree(next) {
            continue;
        }
        for w in (0..a.n).filter(|&w| mapping[w] != usize::MAX) {
            if a.adjacent(next, w) != b.adjacent(cand, mapping[w]) {
                continue 'candidates;
            }
        }
        mapping[next] = cand;
        used[cand] = true;
        if assign(a, b, ca, cb, mapping, used, depth + 1) {
            return true;
        }
        mapping[next] = usize::MAX;
        used[cand] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> ColoredGraph {
        let mut g = ColoredGraph::new(n, vec![0; n]);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    #[test]
    fn cycle_is_isomorphic_to_relabeled_cycle() {
        let a = cycle(6);
        let mut b = ColoredGraph::new(6, vec![0; 6]);
        // Same 6-cycle under the relabeling v -> 5 - v.
        for v in 0..6 {
            let (x, y) = (5 - v, 5 - ((v + 1) % 6));
            if !b.adjacent(x, y) {
                b.add_edge(x, y);
            }
        }
        let m = find_isomorphism(&a, &b).unwrap();
        for v in 0..6 {
            assert!(b.adjacent(m[v], m[(v + 1) % 6]));
        }
    }

    #[test]
    fn cycle_vs_path_is_not_isomorphic() {
        let a = cycle(5);
        let mut b = ColoredGraph::new(5, vec![0; 5]);
        for v in 0..4 {
            b.add_edge(v, v + 1);
        }
        assert!(find_isomorphism(&a, &b).is_none());
    }

    #[test]
    fn colors_constrain_the_mapping() {
        let mut a = ColoredGraph::new(2, vec![7, 9]);
        a.add_edge(0, 1);
        let mut b = ColoredGraph::new(2, vec![9, 7]);
        b.add_edge(0, 1);
        assert_eq!(find_isomorphism(&a, &b).unwrap(), vec![1, 0]);
        let mut c = ColoredGraph::new(2, vec![7, 7]);
        c.add_edge(0, 1);
        assert!(find_isomorphism(&a, &c).is_none());
    }

    #[test]
    fn complete_bipartite_self_isomorphism() {
        let mut a = ColoredGraph::new(8, vec![0; 8]);
        for u in 0..4 {
            for v in 4..8 {
                a.add_edge(u, v);
            }
        }
        assert!(find_isomorphism(&a, &a.clone()).is_some());
    }
}
