//! Normalized chain complexes, homology over the integers and over fields,
//! induced maps on homology, and fixed-point homology witnesses for
//! equivariant maps.
//!
//! Sign convention: `∂σ = Σ (−1)^i d_i σ`, degenerate faces dropped.
//! Homology is reported in degrees `0..top`, one below the truncation.

pub mod complex;
pub mod field;
pub mod snf;
pub mod witness;

pub use complex::ChainComplex;
pub use field::{homology, induced_iso, Coefficients, DegreeHomology, HomologyProfile};
pub use witness::{g_equivalence_witness, EquivalenceWitnessReport, SubgroupWitness};
