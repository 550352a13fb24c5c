//! Operator spaces over finite fields: reflexive closures, minimal ranks,
//! incidence counting on closure cosets, and exhaustive verification of the
//! rank bound `mrk(S) <= 2 dim(S) - 2` for non-reflexive spaces.
//!
//! Runnable examples live in `examples/`; `cargo run --example <name>`.

pub mod census;
mod decimal;
pub mod cli;
pub mod error;
pub mod ffla;
pub mod opspace;
pub mod search;

pub use error::{Error, Result};
pub use ffla::{Elem, FieldSpec, Matrix};
pub use opspace::{AnalysisReport, OperatorSpace};
