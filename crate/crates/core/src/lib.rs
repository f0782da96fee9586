//! Equivariant homotopy colimits of right G-functors over finite
//! G-categories, computed on truncated simplicial sets.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod homology;
pub mod par;
pub mod report;
pub mod simplicial;

pub use error::{Error, Result};
pub use report::{ValidationReport, Violation};
