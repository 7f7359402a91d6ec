//! Brute-force checkers, independent of the reasoner they check.
//!
//! - [`dates`]: day-by-day enumeration of date concepts in a window.
//! - [`models`]: countermodel search over small finite interpretations.
//! - [`replay`]: fresh-state replay of a command sequence.

pub mod dates;
pub mod models;
pub mod replay;

pub use dates::{date_denotation, DateWindow};
pub use models::{bounded_model_refutes_subsumption, Countermodel, Interpretation, ModelParams};
pub use replay::{replay_batch, replay_with, ReplayError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("outside the oracle's fragment: {0}")]
    Fragment(String),
}
