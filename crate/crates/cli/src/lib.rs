//! Text formats, instance generation and verification for equivariant
//! homotopy colimits.

pub mod document;
pub mod emit;
pub mod build;
pub mod cli;
pub mod error;
pub mod generate;
pub mod report;
pub mod resolve;
pub mod verify;

pub use document::{parse, serialize, Block, Document, Entry, Kind};
pub use error::InputError;
