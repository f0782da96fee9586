//! Finite groups, finite categories, group actions on categories, functors
//! and right G-functors.

pub mod action;
pub mod category;
pub mod functor;
pub mod gfunctor;
pub mod group;

pub use action::{morphism_stabilizer, orbits, stabilizer, CatAction, GCategory};
pub use category::{CatMap, FinCategory};
pub use functor::Functor;
pub use gfunctor::{CatGFunctor, GFunctorMorphism, ProductWith, SFunctor, ValueFunctor};
pub use group::{subgroups, FinGroup, Subgroup};
