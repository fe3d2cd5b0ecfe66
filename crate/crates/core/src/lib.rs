//! Finite category computations behind a regularity obstruction.
//!
//! The crate models the category of finite sets and functions, finite
//! preorders and posets, the coslice `A/FinSet` of functions out of a fixed
//! finite set, and the comma category of poset-indexed families of such
//! functions. Every universal property is checked by brute-force enumeration
//! up to an explicit bound; nothing here claims unbounded truth.

pub mod comma;
pub mod enumcat;
pub mod error;
pub mod finset;
pub mod nogo;
pub mod order;
pub mod ran;
pub mod tables;

pub use error::{Error, Result};
