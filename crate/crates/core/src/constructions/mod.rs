//! Nerves, comma categories, colimits, coends, bar constructions,
//! homotopy colimits, the Grothendieck construction and the canonical maps
//! between them.

pub mod comma;
pub mod nerve;
pub mod quotient;
pub mod bimodule;
pub mod coend;
pub mod bar;
pub mod hom;
pub mod hocolim;
pub mod canonical;
pub mod grothendieck;
