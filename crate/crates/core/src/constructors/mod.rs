//! Hook bundles for the role and set constructors: `all`, `some`,
//! `at-least`/`at-most`, `fills` and `one-of`.

mod all;
mod bounds;
mod fills;
mod oneof;
mod some;

use std::sync::Arc;

use crate::kernel::{ConstructorHooks, NormalizedConcept, Slot, ValueKind};
use crate::syntax::{Ident, Individual};

pub use bounds::Bounds;
pub use some::antichain_insert;

pub fn all_hooks() -> Arc<dyn ConstructorHooks> {
    Arc::new(all::AllHooks)
}

pub fn some_hooks() -> Arc<dyn ConstructorHooks> {
    Arc::new(some::SomeHooks)
}

pub fn bounds_hooks() -> Arc<dyn ConstructorHooks> {
    Arc::new(bounds::BoundsHooks)
}

pub fn fills_hooks() -> Arc<dyn ConstructorHooks> {
    Arc::new(fills::FillsHooks)
}

pub fn oneof_hooks() -> Arc<dyn ConstructorHooks> {
    Arc::new(oneof::OneOfHooks)
}

fn role(slot: &Slot) -> &Ident {
    slot.role.as_ref().expect("branch constructors are stored under a role")
}

/// `b` certainly lies outside `c`, judged from `c` alone.
///
/// Only one-of membership, value kind and date containment are consulted;
/// anything else would need A-box reasoning about `b`.
pub(crate) fn filler_excluded(b: &Individual, c: &NormalizedConcept) -> bool {
    if c.is_incoherent() {
        return true;
    }
    match b {
        Individual::Named(_) => {
            c.kind() == ValueKind::Date || c.one_of().is_some_and(|s| !s.contains(b))
        }
        Individual::Date(d) => {
            c.kind() == ValueKind::Object
                || c.date_range().is_some_and(|r| !r.contains(*d))
                || c.period().is_some_and(|p| !p.contains(*d))
        }
    }
}
