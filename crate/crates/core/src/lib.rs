//! Exact symbolic computation with Hopf algebras and their Ore extensions.
//!
//! Algebras are given by generators and oriented rewrite rules; elements are
//! exact rational combinations of normal-form words. On top of that kernel the
//! crate checks Hopf axioms, validates Ore data `(σ, σ⁻¹, δ)`, normalizes the
//! coproduct of the adjoined variable and verifies Hopf Ore extension data
//! against the full relation-preservation and axiom suite.

pub mod cli;
pub mod error;
pub mod freealg;
pub mod hoe;
pub mod hopf;
pub mod ore;
pub mod report;
pub mod rewrite;
pub mod tensor;
pub mod zoo;

pub use error::{Error, Result};
pub use freealg::{NCPoly, Scalar, Word};
pub use report::{Check, Report};
pub use rewrite::{Algebra, Presentation};
pub use tensor::TensorElem;
