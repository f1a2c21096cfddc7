//! CSS codes cut from embedded maps: incidence matrices over GF(2), exact
//! code parameters, and minimum distance by bounded support enumeration.
//!
//! The X checks are the rows of the vertex-edge incidence matrix, the Z
//! checks the rows of the face-edge incidence matrix (both mod 2). Every
//! face boundary meets every vertex star in an even number of edges, so the
//! two matrices are orthogonal, and the logical dimension equals twice the
//! genus of the carrying surface.

use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

use crate::gf2::{BinaryMatrix, BitVec, RowSpace};
use crate::iso::{self, ColoredGraph};
use crate::surface::SurfaceMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CssError {
    #[error("X check of vertex {vertex} anticommutes with Z check of face {face}")]
    Orthogonality { vertex: usize, face: usize },
    #[error("logical dimension k={k} disagrees with 2*genus={twice_genus}; the map is not a consistent cellular embedding")]
    LogicalDimMismatch { k: usize, twice_genus: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("minimum distance is undefined for a code with no logical qubits")]
    ZeroLogicalDim,
    #[error("weight cap must be at least 1")]
    CapTooSmall,
}

/// Result of a bounded distance search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceBound {
    /// The exact minimum distance; every smaller weight was exhausted.
    Certified(usize),
    /// No logical operator of weight up to `cap` exists.
    ExceedsCap { cap: usize },
}

impl DistanceBound {
    pub fn certified(&self) -> Option<usize> {
        match *self {
            DistanceBound::Certified(d) => Some(d),
            DistanceBound::ExceedsCap { .. } => None,
        }
    }
}

/// Vertex-edge incidence of the map, mod 2: entry `(v, e)` flips once per
/// endpoint of `e` at `v`, so an ordinary edge contributes a weight-2
/// column and a loop cancels to zero.
pub fn vertex_edge_matrix(m: &SurfaceMap) -> BinaryMatrix {
    let mut hx = BinaryMatrix::zeros(m.vertex_count(), m.edge_count());
    for (e, &(u, v)) in m.edges().iter().enumerate() {
        hx.toggle(u, e);
        hx.toggle(v, e);
    }
    hx
}

/// Face-edge incidence of the map, mod 2: entry `(f, e)` counts how often
/// `e` lies on the boundary walk of `f`; an edge traversed twice by the
/// same face cancels to zero.
pub fn face_edge_matrix(m: &SurfaceMap) -> BinaryMatrix {
    let mut hz = BinaryMatrix::zeros(m.face_count(), m.edge_count());
    for (f, face) in m.faces().iter().enumerate() {
        for &e in face.edge_ids() {
            hz.toggle(f, e);
        }
    }
    hz
}

/// A CSS code given by an orthogonal pair of GF(2) check matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    hx: BinaryMatrix,
    hz: BinaryMatrix,
    n: usize,
    k: usize,
    distance: Option<DistanceBound>,
    distance_cap: Option<usize>,
}

impl CssCode {
    /// Assembles a code directly from an orthogonal matrix pair.
    pub fn from_checks(hx: BinaryMatrix, hz: BinaryMatrix) -> Result<Self, CssError> {
        assert_eq!(hx.cols(), hz.cols(), "check matrices must share qubits");
        let product = hx.mul_transpose(&hz);
        for v in 0..product.rows() {
            for f in 0..product.cols() {
                if product.get(v, f) {
                    return Err(CssError::Orthogonality { vertex: v, face: f });
                }
            }
        }
        let n = hx.cols();
        let k = n - hx.rank() - hz.rank();
        Ok(Self {
            hx,
            hz,
            n,
            k,
            distance: None,
            distance_cap: None,
        })
    }

    pub fn hx(&self) -> &BinaryMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BinaryMatrix {
        &self.hz
    }

    /// Block length: one physical qubit per edge.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Logical dimension `n - rank(H_X) - rank(H_Z)`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The last computed distance bound, if any.
    pub fn distance(&self) -> Option<DistanceBound> {
        self.distance
    }

    /// The weight cap used by the last distance search.
    pub fn distance_cap(&self) -> Option<usize> {
        self.distance_cap
    }

    /// Exact minimum distance searched up to weight `cap`: the smaller of
    /// the minimum weights of Z-type logicals (kernel of `H_X` outside the
    /// row space of `H_Z`) and X-type logicals (roles swapped).
    pub fn min_distance(&self, cap: usize) -> Result<DistanceBound, DistanceError> {
        if self.k == 0 {
            return Err(DistanceError::ZeroLogicalDim);
        }
        if cap < 1 {
            return Err(DistanceError::CapTooSmall);
        }
        let dz = side_min_weight_stripe(&self.hx, &self.hz, cap, 0, 1);
        let dx = side_min_weight_stripe(&self.hz, &self.hx, cap, 0, 1);
        Ok(match (dz, dx) {
            (Some(a), Some(b)) => DistanceBound::Certified(a.min(b)),
            (Some(a), None) => DistanceBound::Certified(a),
            (None, Some(b)) => DistanceBound::Certified(b),
            (None, None) => DistanceBound::ExceedsCap { cap },
        })
    }

    /// Runs [`Self::min_distance`] and records the result on the code.
    pub fn compute_distance(&mut self, cap: usize) -> Result<DistanceBound, DistanceError> {
        let bound = self.min_distance(cap)?;
        self.distance = Some(bound);
        self.distance_cap = Some(cap);
        Ok(bound)
    }

    /// Records an externally computed bound (e.g. from a striped parallel
    /// run merged with [`merge_side_minima`]).
    pub fn set_distance(&mut self, bound: DistanceBound, cap: usize) {
        self.distance = Some(bound);
        self.distance_cap = Some(cap);
    }
}

/// Builds the surface code of a map and cross-checks its logical dimension
/// against the homology of the carrying surface (`k = 2g`).
pub fn build_css(m: &SurfaceMap) -> Result<CssCode, CssError> {
    let code = CssCode::from_checks(vertex_edge_matrix(m), face_edge_matrix(m))?;
    let twice_genus = 2 * m.genus();
    if code.k != twice_genus {
        return Err(CssError::LogicalDimMismatch {
            k: code.k,
            twice_genus,
        });
    }
    Ok(code)
}

/// Free-function form of [`CssCode::min_distance`].
pub fn min_distance(code: &CssCode, cap: usize) -> Result<DistanceBound, DistanceError> {
    code.min_distance(cap)
}

/// Minimum weight of a vector in the kernel of `kernel_of` but outside the
/// row space of `boundary_of`, scanning supports of weight `1..=cap` whose
/// smallest index is congruent to `stripe` mod `stripe_count`. Weights
/// ascend, so the first hit in a stripe is that stripe's minimum; merging
/// stripes with [`merge_side_minima`] recovers the global minimum.
pub fn side_min_weight_stripe(
    kernel_of: &BinaryMatrix,
    boundary_of: &BinaryMatrix,
    cap: usize,
    stripe: usize,
    stripe_count: usize,
) -> Option<usize> {
    assert_eq!(kernel_of.cols(), boundary_of.cols());
    assert!(stripe_count >= 1 && stripe < stripe_count);
    let cols = kernel_of.cols();
    let syndromes: Vec<BitVec> = (0..cols).map(|c| kernel_of.column(c)).collect();
    let boundary = boundary_of.row_space();
    let mut support = Vec::with_capacity(cap);
    for w in 1..=cap.min(cols) {
        for first in (stripe..cols).step_by(stripe_count) {
            support.clear();
            support.push(first);
            let mut syndrome = syndromes[first].clone();
            if extend_support(
                &syndromes,
                &boundary,
                cols,
                w,
                &mut support,
                &mut syndrome,
            ) {
                return Some(w);
            }
        }
    }
    None
}

/// Depth-first extension of a fixed-size support; true when some completion
/// has zero syndrome and escapes the boundary row space.
fn extend_support(
    syndromes: &[BitVec],
    boundary: &RowSpace,
    cols: usize,
    target: usize,
    support: &mut Vec<usize>,
    syndrome: &mut BitVec,
) -> bool {
    if support.len() == target {
        if !syndrome.is_zero() {
            return false;
        }
        let v = BitVec::from_support(cols, support);
        return !boundary.contains(&v).expect("support vector has matrix width");
    }
    let start = support.last().map_or(0, |&i| i + 1);
    // Leave room for the remaining picks.
    let remaining = target - support.len();
    for next in start..=cols.saturating_sub(remaining) {
        support.push(next);
        syndrome.xor_assign(&syndromes[next]);
        if extend_support(syndromes, boundary, cols, target, support, syndrome) {
            return true;
        }
        syndrome.xor_assign(&syndromes[next]);
        support.pop();
    }
    false
}

/// Combines per-stripe side minima into the side minimum.
pub fn merge_side_minima(minima: impl IntoIterator<Item = Option<usize>>) -> Option<usize> {
    minima.into_iter().flatten().min()
}

/// Whether the check pairs describe the same code up to a row permutation
/// of each matrix and one shared column permutation.
///
/// Encoded as colored-graph isomorphism on the incidence structure: one
/// node per X check, column, and Z check, colored by kind, with edges for
/// the 1 entries.
pub fn pair_equal_up_to_permutation(
    ax: &BinaryMatrix,
    az: &BinaryMatrix,
    bx: &BinaryMatrix,
    bz: &BinaryMatrix,
) -> bool {
    if ax.rows() != bx.rows()
        || az.rows() != bz.rows()
        || ax.cols() != bx.cols()
        || ax.cols() != az.cols()
        || bx.cols() != bz.cols()
    {
        return false;
    }
    let build = |x: &BinaryMatrix, z: &BinaryMatrix| {
        let (v, e, f) = (x.rows(), x.cols(), z.rows());
        let mut colors = vec![0u64; v + e + f];
        colors[v..v + e].fill(1);
        colors[v + e..].fill(2);
        let mut g = ColoredGraph::new(v + e + f, colors);
        for i in 0..v {
            for c in 0..e {
                if x.get(i, c) {
                    g.add_edge(i, v + c);
                }
            }
        }
        for j in 0..f {
            for c in 0..e {
                if z.get(j, c) {
                    g.add_edge(v + e + j, v + c);
                }
            }
        }
        g
    };
    iso::find_isomorphism(&build(ax, az), &build(bx, bz)).is_some()
}
