//! Finite `G`-spaces as ordered semi-simplicial sets: isotropy strata,
//! equivariance and isovariance, products, map search.
//!
//! Ordered simplices have the convenient property that a group element
//! fixing a simplex fixes it pointwise, so simplex stabilizers are point
//! stabilizers of the open cells.

mod build;
mod json;
mod map;
mod product;
mod search;
mod set;
mod strata;

pub use build::{disk, from_complex, sphere, standard_simplex, BuiltComplex};
pub use json::{ComplexJson, ImageJson, MapJson};
pub use map::{GSimplicialMap, IsovarianceFailure, SimplexImage};
pub use product::{
    g_set, interval_with_negation, isovariant_product_discrete, isovariant_product_membership, product, ComplexPoint,
    ProductComplex,
};
pub use search::{enumerate_isovariant_maps, EnumerateOptions};
pub use set::{GSemiSimplicialSet, Simplex};
pub use strata::{
    components_of, exact_stratum, fixed_subset, simplex_stabilizer, strata_are_permuted, stratum_pi0, we_obstruction,
    IsotropyStratum, StratumComparison, StratumPi0, WeObstructionReport,
};

use crate::group::GroupError;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("simplex {simplex} names a face {face} that does not exist")]
    FaceOutOfRange { simplex: Simplex, face: usize },
    #[error("simplicial identity d_{i} d_{j} = d_{{j-1}} d_{i} fails on simplex {simplex}")]
    SimplicialIdentity { simplex: Simplex, i: usize, j: usize },
    #[error("element {element} does not permute level {dim}")]
    NotAPermutation { dim: usize, element: usize },
    #[error("level {dim} is not a group action")]
    NotAnAction { dim: usize },
    #[error("action of element {element} does not commute with the faces of simplex {simplex}")]
    ActionFaceMismatch { simplex: Simplex, element: usize },
    #[error("simplex list is not closed under the group action")]
    NotClosedUnderAction,
    #[error("simplex list is not closed under taking faces")]
    NotClosedUnderFaces,
    #[error("map does not commute with face {face} of simplex {simplex}")]
    FaceMismatch { simplex: Simplex, face: usize },
    #[error("complexes live over different groups")]
    GroupMismatch,
    #[error("maps are not composable")]
    NotComposable,
    #[error("expected a discrete G-set")]
    NotDiscrete,
    #[error("bad barycentric coordinates: {0}")]
    BadCoordinates(String),
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("invalid complex JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
