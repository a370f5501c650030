//! Computable scaffolding for isovariant homotopy theory over finite groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`group`]: finite groups as Cayley tables, subgroups, cosets, normalizers.
//! - [`category`]: the link orbit category of subgroup chains, plus the
//!   classical orbit category for comparison.
//! - [`simplex`]: linking simplices with exact rational coordinates, their
//!   induced maps and cell structure.
//! - [`complex`]: finite G-spaces as ordered semi-simplicial sets, isotropy
//!   strata, equivariance and isovariance checks.
//! - [`colimit`]: pushouts, mapping cylinders, cell attachment, coends and
//!   G-isomorphism search.

pub mod category;
pub mod colimit;
pub mod complex;
pub mod group;
pub mod simplex;

pub use category::{LinkMorphism, LinkOrbitCategory, SubgroupChain};
pub use complex::{GSemiSimplicialSet, GSimplicialMap, Simplex};
pub use group::{Coset, Element, FiniteGroup, Subgroup, SubgroupLattice};
