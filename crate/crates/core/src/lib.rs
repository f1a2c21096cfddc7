//! Rotation-system embeddings of graphs in orientable surfaces and the CSS
//! codes they induce.
//!
//! The pipeline: a [`RotationSystem`] (cyclic neighbor order at every vertex)
//! determines a unique 2-cell embedding, recovered by [`trace_faces`] as a
//! [`SurfaceMap`]. Maps can be dualized and tested for self-duality. From a
//! map, [`build_css`] cuts the vertex-edge and face-edge incidence matrices
//! over GF(2) and packages them as a [`CssCode`] whose exact minimum distance
//! is found by bounded support enumeration.
//!
//! [`scheme`] generates the explicit self-dual schemes for complete graphs on
//! 4r+1 and 4s vertices and evaluates the four code-family parameter
//! formulas; [`search`] finds self-dual bipartite embeddings exhaustively.
//!
//! The crate is `no_std` (with `alloc`). All values are immutable after
//! construction and every operation is a pure function.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod css;
pub mod gf2;
mod iso;
pub mod rotation;
pub mod scheme;
pub mod search;
pub mod surface;

pub use css::{
    build_css, face_edge_matrix, merge_side_minima, min_distance, pair_equal_up_to_permutation,
    vertex_edge_matrix, CssCode, CssError, DistanceBound, DistanceError,
};
pub use gf2::{BinaryMatrix, BitVec, Gf2Error, RowSpace};
pub use rotation::{RotationError, RotationSystem};
pub use scheme::{
    expected_faces_k4r1, faces_match_cyclically, predicted_params, scheme_k4r1, scheme_k4s,
    self_dual_bipartite_exists, FamilyError, FamilySpec, K4sScheme, PredictedParams, SchemeError,
};
pub use search::{
    merge_block_outcomes, search_self_dual_bipartite, search_self_dual_bipartite_block,
    SearchError, SearchOutcome,
};
pub use surface::{
    dual_map, genus_of, is_self_dual, self_dual_witness, trace_faces, DirectedEdge, FaceWalk,
    SurfaceMap,
};
