//! An extensible description-logic knowledge base in the normalize-compare
//! style.
//!
//! Concepts are brought into a canonical conjunctive [`NormalizedConcept`]
//! by per-constructor plugins registered with the [`Kernel`]; subsumption
//! then compares normal forms component by component. A [`Tbox`] classifies
//! named concepts, and a [`KnowledgeBase`] reasons incrementally about
//! individuals with transactional rollback.

pub mod abox;
pub mod constructors;
pub mod dates;
pub mod kernel;
pub mod oracle;
pub mod sameas;
pub mod syntax;
pub mod tbox;

pub use abox::{KbError, KnowledgeBase, Outcome, Propagation, UpdateReport};
pub use kernel::{ConstructorHooks, Kernel, NormalizedConcept, Registry, Signal};
pub use syntax::{parse_command, parse_description, render_description, Description, Ident, Individual, KbCommand};
pub use tbox::Tbox;
