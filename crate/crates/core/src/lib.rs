//! Exact structure-constant toolkit for quadratic Malcev superalgebras.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod extensions;
pub mod identities;
pub mod ideals;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod quadratic;
pub mod scalar;
pub mod subspace;
