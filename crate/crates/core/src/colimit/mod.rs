//! Colimits of finite `G`-complexes, all computed degreewise by union-find:
//! pushouts, double mapping cylinders, telescopes, cell attachment, and the
//! coend `Δ^• ⊗_{ℒ_G} T`. Also a `G`-isomorphism search used to certify the
//! results.

mod cell;
mod coend;
mod cylinder;
mod hocolim;
mod iso;
mod pushout;
mod quotient;

pub use cell::{attach_cell, flip_disk, generating_cell, generating_sets, Attached, Cell, FlipDisk, GeneratingEntry};
pub use coend::{coend, coend_with_order, constant_diagram, representable_diagram, CoendResult, Diagram, DiagramJson};
pub use cylinder::{double_mapping_cylinder, mapping_telescope, CylinderPart, CylinderSpace, Telescope};
pub use hocolim::{compare_pi0, hocolim_pi0_property_test, random_pushout_data, HocolimReport};
pub use iso::{g_isomorphic, g_isomorphic_with_budget, GIsomorphism};
pub use pushout::{pushout, Pushout, PushoutData};
pub use quotient::{quotient, Quotient};

use crate::category::CategoryError;
use crate::complex::ComplexError;
use crate::simplex::SimplexError;

/// Stand-in for the terminal object that the isovariant category lacks.
/// It only ever appears in reports.
pub const FORMAL_TERMINAL: &str = "*_formal";

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ColimitError {
    #[error("malformed colimit input: {0}")]
    Malformed(String),
    #[error("leg {leg} is not isovariant: {reason}")]
    NotIsovariantLeg { leg: &'static str, reason: String },
    #[error("leg {leg} collapses simplices; gluing needs nondegenerate maps")]
    DegenerateLeg { leg: &'static str },
    #[error("attaching map is not isovariant: {0}")]
    NotIsovariantAttachment(String),
    #[error("diagram is not a contravariant functor: {0}")]
    NonFunctorialDiagram(String),
    #[error("maps do not form a cocone: {0}")]
    NotACocone(String),
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("bad diagram json: {0}")]
    Json(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}
