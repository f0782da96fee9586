//! Truncated simplicial sets, their maps, group actions on them and
//! bisimplicial sets.

pub mod bisset;
pub mod gsset;
pub mod ops;
pub mod sset;

pub use bisset::{BiSSet, BiSSetSpec};
pub use gsset::GSSet;
pub use ops::{
    coproduct, coproduct_g, fixed_map, fixed_subcomplex, is_isomorphism, nondegenerate, product, product_g,
    product_map, IsoFailure, IsoVerdict,
};
pub use sset::{LevelMap, SSet, SimplicialMap, DEFAULT_TRUNCATION};
