//! Per-individual state.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::kernel::individual::base_descriptor;
use crate::kernel::NormalizedConcept;
use crate::syntax::{Ident, Individual};

/// Which pending check a dependency link re-runs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LinkKind {
    Recognize,
    Consistent,
    Infer,
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkKind::Recognize => "recognize",
            LinkKind::Consistent => "consistent",
            LinkKind::Infer => "infer",
        })
    }
}

/// Stored on the blocking individual: news about it may settle a pending
/// check on `target`. `context` names the concept or constructor involved.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Link {
    pub kind: LinkKind,
    pub target: Individual,
    pub context: String,
}

#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct RoleState {
    pub fillers: BTreeSet<Individual>,
    pub closed: bool,
}

impl RoleState {
    pub fn is_empty(&self) -> bool {
        self.fillers.is_empty() && !self.closed
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Record {
    pub descriptor: NormalizedConcept,
    pub roles: BTreeMap<Ident, RoleState>,
    /// Most specific named concepts.
    pub classes: BTreeSet<Ident>,
    pub links: BTreeSet<Link>,
}

impl Record {
    pub fn new(b: &Individual) -> Record {
        Record {
            descriptor: base_descriptor(b),
            roles: BTreeMap::new(),
            classes: BTreeSet::new(),
            links: BTreeSet::new(),
        }
    }
}
