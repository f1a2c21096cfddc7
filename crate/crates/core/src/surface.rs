//! 2-cell embeddings recovered from rotation systems: face tracing, Euler
//! characteristic and genus, dual maps, self-duality.
//!
//! Internally a map is stored as darts: edge `e` contributes darts `2e`
//! (running tail to head of the stored pair) and `2e+1` (the reverse). The
//! face-tracing permutation sends a directed edge `(a, b)` to
//! `(b, p_b(a))`, where `p_b` is the rotation at `b`; its orbits are the
//! face boundaries. Darts let dual maps carry parallel edges and loops that
//! a neighbor-list rotation system cannot express.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::iso::{self, ColoredGraph};
use crate::rotation::RotationSystem;

/// An edge of the underlying graph with a chosen direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedEdge {
    pub tail: usize,
    pub head: usize,
}

/// A closed face boundary: directed edges chained head-to-tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    boundary: Vec<DirectedEdge>,
    edge_ids: Vec<usize>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn boundary(&self) -> &[DirectedEdge] {
        &self.boundary
    }

    /// Edge index underlying each boundary step, parallel to [`boundary`](Self::boundary).
    pub fn edge_ids(&self) -> &[usize] {
        &self.edge_ids
    }

    /// The tails of the boundary walk, in order.
    pub fn vertex_sequence(&self) -> Vec<usize> {
        self.boundary.iter().map(|d| d.tail).collect()
    }
}

/// A 2-cell embedding: graph, rotations, traced faces, and the surface
/// invariants they determine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceMap {
    vertex_count: usize,
    /// Edge `e` runs `edges[e].0 -> edges[e].1` as dart `2e`.
    edges: Vec<(usize, usize)>,
    /// Cyclic dart order at each vertex; every dart appears exactly once.
    rotations: Vec<Vec<usize>>,
    faces: Vec<FaceWalk>,
    euler_char: i64,
    genus: usize,
}

/// Traces the faces of the embedding determined by a rotation system.
///
/// Faces are the orbits of the permutation `(a, b) -> (b, p_b(a))` on
/// directed edges; each new orbit starts from the lexicographically smallest
/// unused directed edge, so the face order is deterministic.
pub fn trace_faces(rot: &RotationSystem) -> SurfaceMap {
    let n = rot.vertex_count();
    let edges = rot.edges();
    let mut edge_index = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        edge_index.insert(e, i);
    }
    let mut rotations = vec![Vec::new(); n];
    for (v, rotation) in rot.rotations().iter().enumerate() {
        rotations[v] = rotation
            .iter()
            .map(|&w| {
                let e = edge_index[&(v.min(w), v.max(w))];
                2 * e + usize::from(v > w)
            })
            .collect();
    }
    SurfaceMap::from_darts(n, edges, rotations)
}

impl SurfaceMap {
    /// Assembles a map from dart-level data and traces its faces.
    /// Every dart `0..2*edges.len()` must appear exactly once across the
    /// rotations, at its tail vertex.
    pub(crate) fn from_darts(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        rotations: Vec<Vec<usize>>,
    ) -> Self {
        let dart_count = 2 * edges.len();
        let tail = |d: usize| {
            if d % 2 == 0 {
                edges[d / 2].0
            } else {
                edges[d / 2].1
            }
        };
        let head = |d: usize| {
            if d % 2 == 0 {
                edges[d / 2].1
            } else {
                edges[d / 2].0
            }
        };
        let mut succ = vec![usize::MAX; dart_count];
        for (v, rotation) in rotations.iter().enumerate() {
            for (i, &d) in rotation.iter().enumerate() {
                debug_assert_eq!(tail(d), v, "dart listed at a vertex other than its tail");
                debug_assert_eq!(succ[d], usize::MAX, "dart listed twice");
                succ[d] = rotation[(i + 1) % rotation.len()];
            }
        }
        debug_assert!(succ.iter().all(|&d| d != usize::MAX));

        // Deterministic orbit order: start each new face from the smallest
        // unused directed edge.
        let mut order: Vec<usize> = (0..dart_count).collect();
        order.sort_unstable_by_key(|&d| (tail(d), head(d), d));
        let mut used = vec![false; dart_count];
        let mut faces = Vec::new();
        for &start in &order {
            if used[start] {
                continue;
            }
            let mut boundary = Vec::new();
            let mut edge_ids = Vec::new();
            let mut d = start;
            loop {
                used[d] = true;
                boundary.push(DirectedEdge {
                    tail: tail(d),
                    head: head(d),
                });
                edge_ids.push(d / 2);
                d = succ[d ^ 1];
                if d == start {
                    break;
                }
                debug_assert!(!used[d], "face permutation orbit revisited a dart");
            }
            faces.push(FaceWalk { boundary, edge_ids });
        }
        debug_assert_eq!(
            faces.iter().map(FaceWalk::len).sum::<usize>(),
            dart_count,
            "face walks must partition the directed edges"
        );

        let euler_char = vertex_count as i64 - edges.len() as i64 + faces.len() as i64;
        assert!(
            euler_char % 2 == 0 && euler_char <= 2,
            "rotation system traced to a non-orientable characteristic {euler_char}"
        );
        let genus = ((2 - euler_char) / 2) as usize;
        Self {
            vertex_count,
            edges,
            rotations,
            faces,
            euler_char,
            genus,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Edge endpoints indexed by edge id. For maps traced from a rotation
    /// system these are `(low, high)` pairs in lexicographic order; a dual
    /// map instead inherits the ids of the primal edges it crosses.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler_char
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    /// True when the underlying graph has no loops or parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeMap::new();
        for &(u, v) in &self.edges {
            if u == v || seen.insert((u.min(v), u.max(v)), ()).is_some() {
                return false;
            }
        }
        true
    }

    /// Recovers the neighbor-list rotation system for simple maps.
    pub fn rotation_system(&self) -> Option<RotationSystem> {
        if !self.is_simple() {
            return None;
        }
        let rotations = self
            .rotations
            .iter()
            .map(|rotation| rotation.iter().map(|&d| self.dart_head(d)).collect())
            .collect();
        RotationSystem::new(rotations).ok()
    }

    fn dart_tail(&self, d: usize) -> usize {
        let (u, v) = self.edges[d / 2];
        if d % 2 == 0 {
            u
        } else {
            v
        }
    }

    fn dart_head(&self, d: usize) -> usize {
        self.dart_tail(d ^ 1)
    }

    /// The dart sequence of face `f`'s boundary walk.
    fn face_darts(&self, f: usize) -> Vec<usize> {
        let face = &self.faces[f];
        face.boundary
            .iter()
            .zip(&face.edge_ids)
            .map(|(de, &e)| 2 * e + usize::from(de.tail != self.edges[e].0))
            .collect()
    }

    /// Loop-free deduplicated adjacency as a colored graph with all colors 0.
    pub(crate) fn simple_graph(&self) -> ColoredGraph {
        let mut g = ColoredGraph::new(self.vertex_count, vec![0; self.vertex_count]);
        for &(u, v) in &self.edges {
            if u != v {
                g.add_edge(u, v);
            }
        }
        g
    }
}

/// Builds the dual map: one vertex per face, one edge per primal edge
/// (sharing its index), with rotations read off the face walks. The dual of
/// the dual has the primal's vertex, edge, and face counts, and dualizing
/// preserves the genus.
pub fn dual_map(m: &SurfaceMap) -> SurfaceMap {
    let mut face_of = vec![usize::MAX; 2 * m.edge_count()];
    for f in 0..m.face_count() {
        for d in m.face_darts(f) {
            face_of[d] = f;
        }
    }
    let dual_edges: Vec<(usize, usize)> = (0..m.edge_count())
        .map(|e| (face_of[2 * e], face_of[2 * e + 1]))
        .collect();
    // The rotation at dual vertex f is the dart sequence along face f: a
    // dart's dual tail is the face it lies on, so each dart lands at its
    // own position in the walk.
    let dual_rotations: Vec<Vec<usize>> = (0..m.face_count()).map(|f| m.face_darts(f)).collect();
    SurfaceMap::from_darts(m.face_count(), dual_edges, dual_rotations)
}

/// The genus of the surface carrying the map, `(2 - chi) / 2`.
pub fn genus_of(m: &SurfaceMap) -> usize {
    m.genus()
}

/// Tests whether the dual's underlying simple graph is isomorphic to the
/// primal's, returning a vertex-to-face bijection as witness.
///
/// For a complete-graph map with as many faces as vertices the check
/// reduces to every pair of distinct faces sharing exactly one edge, in
/// which case any bijection is a witness.
pub fn self_dual_witness(m: &SurfaceMap) -> Option<Vec<usize>> {
    if m.is_simple()
        && m.simple_graph().is_complete()
        && m.face_count() == m.vertex_count()
    {
        let masks: Vec<crate::gf2::BitVec> = m
            .faces
            .iter()
            .map(|f| crate::gf2::BitVec::from_support(m.edge_count(), f.edge_ids()))
            .collect();
        for i in 0..masks.len() {
            for j in i + 1..masks.len() {
                let shared = (0..m.edge_count())
                    .filter(|&e| masks[i].get(e) && masks[j].get(e))
                    .count();
                if shared != 1 {
                    return None;
                }
            }
        }
        return Some((0..m.vertex_count()).collect());
    }
    let dual = dual_map(m);
    iso::find_isomorphism(&m.simple_graph(), &dual.simple_graph())
}

pub fn is_self_dual(m: &SurfaceMap) -> bool {
    self_dual_witness(m).is_some()
}
