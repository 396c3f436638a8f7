//! Symbolic engine for the Hopf algebra of renormalization.
//!
//! Feynman-graph forest structures are encoded as parenthesized words
//! ([`parenword`]). Exact rational linear combinations of words form the
//! algebra ([`qalgebra`]); [`hopf`] adds the counit, coproduct and antipode;
//! [`toymodel`] evaluates words in a one-dimensional integral model, builds
//! counter terms through the twisted antipode and checks that renormalized
//! values are finite as the regulator goes to zero.

pub mod check;
pub mod cli;
pub mod config;
pub mod hopf;
pub mod parenword;
pub mod qalgebra;
pub mod toymodel;

pub use hopf::HopfContext;
pub use parenword::{Alphabet, IrreducibleWord, Letter, ParseError, Word};
pub use qalgebra::{LinComb, Rational, Tensor2, Tensor3};
