//! Finite, filtered A∞ categories over GF(2).
//!
//! The crate covers structure constants and their relations, functors and
//! homotopies, Hochschild chains with action filtrations, quotient categories by
//! full subcategories, the retraction onto the zero-weight part of a quotient,
//! and the homotopy-limit category of the identity map.

pub mod category;
pub mod chain;
pub mod cli;
pub mod error;
pub mod f2linalg;
pub mod filtration;
pub mod fixtures;
pub mod functors;
pub mod hochschild;
pub mod quotient;
pub mod report;
pub mod retraction;
pub mod words;

pub use category::{AInfty, AInftyStructure, GenId, Generator, ObjIdx, StructureBuilder};
pub use chain::Chain;
pub use error::{Error, Result};
