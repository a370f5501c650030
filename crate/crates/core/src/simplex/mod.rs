//! Linking simplices `Δ^H_G = (G × Δⁿ)/∼` with exact rational coordinates,
//! the induced maps `Δ^(ι,γ)`, and their cell structure.
//!
//! Points of stratum `k` are fixed by the conjugate `gH_kg⁻¹`, which is what
//! the action `g′·(g, x) = (g′g, x)` forces; it equals `H_k` when `g`
//! normalizes `H_k`.

mod cells;
mod classify;
mod functor;
mod point;

pub use cells::{
    cell_model, classify_link_map, realize_morphism, to_semisimplicial, LinkingRealization, StratifiedCell,
};
pub use classify::{verify_classification, ClassificationReport};
pub use functor::{sample_points, verify_functor, verify_functor_on, FunctorReport};
pub use point::{induced_map, iota_star, parse_rational, PointJson, SimplexPoint};

use crate::category::CategoryError;
use crate::complex::ComplexError;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SimplexError {
    #[error("bad barycentric coordinates: {0}")]
    BadCoordinates(String),
    #[error("ι is not an order-preserving inclusion of the right size")]
    BadInclusion,
    #[error("point or map lives on a different chain")]
    ChainMismatch,
    #[error("not the realization of a link orbit map: {0}")]
    NotALinkMap(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
