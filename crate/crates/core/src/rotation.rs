//! Rotation systems: a cyclic order of neighbors at every vertex.
//!
//! A rotation system on a connected simple graph determines a unique 2-cell
//! embedding of the graph in an orientable surface; see [`crate::surface`]
//! for the face tracing that recovers it.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RotationError {
    #[error("vertex {vertex}: neighbor {neighbor} out of range for {vertex_count} vertices")]
    NeighborOutOfRange {
        vertex: usize,
        neighbor: usize,
        vertex_count: usize,
    },
    #[error("vertex {vertex}: listed as its own neighbor")]
    SelfAdjacent { vertex: usize },
    #[error("vertex {vertex}: neighbor {neighbor} repeated")]
    RepeatedNeighbor { vertex: usize, neighbor: usize },
    #[error("vertex {vertex}: lists neighbor {neighbor}, but vertex {neighbor} does not list {vertex}")]
    AsymmetricAdjacency { vertex: usize, neighbor: usize },
    #[error("vertex {vertex}: empty rotation")]
    EmptyRotation { vertex: usize },
    #[error("vertex {vertex} is unreachable from vertex 0")]
    Disconnected { vertex: usize },
}

/// Per-vertex cyclic neighbor orders over a connected simple graph.
///
/// Vertices are labeled `0..vertex_count`. Entry order within a rotation is
/// the cyclic order; rotations that differ by a cyclic shift are distinct
/// values here but describe the same embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(rotations: Vec<Vec<usize>>) -> Result<Self, RotationError> {
        let n = rotations.len();
        if n == 0 {
            return Err(RotationError::EmptyRotation { vertex: 0 });
        }
        let mut adjacency = vec![vec![false; n]; n];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(RotationError::EmptyRotation { vertex: v });
            }
            for &w in rot {
                if w >= n {
                    return Err(RotationError::NeighborOutOfRange {
                        vertex: v,
                        neighbor: w,
                        vertex_count: n,
                    });
                }
                if w == v {
                    return Err(RotationError::SelfAdjacent { vertex: v });
                }
                if adjacency[v][w] {
                    return Err(RotationError::RepeatedNeighbor {
                        vertex: v,
                        neighbor: w,
                    });
                }
                adjacency[v][w] = true;
            }
        }
        for v in 0..n {
            for w in 0..n {
                if adjacency[v][w] && !adjacency[w][v] {
                    return Err(RotationError::AsymmetricAdjacency {
                        vertex: v,
                        neighbor: w,
                    });
                }
            }
        }
        // Connectivity from vertex 0.
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &w in &rotations[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(RotationError::Disconnected { vertex: v });
        }
        Ok(Self { rotations })
    }

    /// Construction path for callers that generate rotations known to be
    /// valid (complete-graph schemes, exhaustive search leaves).
    pub(crate) fn new_unchecked(rotations: Vec<Vec<usize>>) -> Self {
        Self { rotations }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn edge_count(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Undirected edges as `(low, high)` pairs, sorted lexicographically.
    /// This ordering fixes edge indices everywhere downstream.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.edge_count());
        for (v, rot) in self.rotations.iter().enumerate() {
            for &w in rot {
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        edges.sort_unstable();
        edges
    }
}
