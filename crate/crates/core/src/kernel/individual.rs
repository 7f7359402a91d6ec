//! Read-only view of A-box state handed to individual-level hooks.
//!
//! Hooks never mutate the knowledge base directly. They post [`Update`]s and
//! record which other individuals blocked a check ("waits"); the A-box engine
//! applies the updates and turns waits into dependency links.

use std::borrow::Cow;
use std::collections::BTreeSet;

use super::{Kernel, NormalizedConcept, Tag, ValueKind};
use crate::dates::DateRangeNF;
use crate::kernel::{tags, Slot, Term};
use crate::syntax::{Ident, Individual};

/// A primitive change request produced by reasoning.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Update {
    Member { ind: Individual, concept: NormalizedConcept },
    Fills { ind: Individual, role: Ident, filler: Individual },
    Close { ind: Individual, role: Ident },
}

impl Update {
    pub fn subject(&self) -> &Individual {
        match self {
            Update::Member { ind, .. } | Update::Fills { ind, .. } | Update::Close { ind, .. } => ind,
        }
    }
}

/// What individual-level hooks may read.
pub trait KbView {
    fn kernel(&self) -> &Kernel;
    fn descriptor(&self, b: &Individual) -> Option<&NormalizedConcept>;
    fn fillers(&self, b: &Individual, role: &Ident) -> Option<&BTreeSet<Individual>>;
    fn is_closed(&self, b: &Individual, role: &Ident) -> bool;
    fn is_attribute(&self, role: &Ident) -> bool;
}

/// Initial descriptor of an individual before anything is asserted.
pub fn base_descriptor(b: &Individual) -> NormalizedConcept {
    let mut nc = NormalizedConcept::thing();
    match b {
        Individual::Named(_) => {
            nc.kind = ValueKind::Object;
            nc.components.insert(Slot::global(tags::ONE_OF), Term::OneOf([b.clone()].into()));
        }
        Individual::Date(d) => {
            nc.kind = ValueKind::Date;
            nc.components.insert(Slot::global(tags::DATE_RANGE), Term::DateRange(DateRangeNF::single(*d)));
        }
    }
    nc
}

/// Scratch state for one batch of hook calls.
pub struct IndividualCx<'a> {
    view: &'a dyn KbView,
    updates: Vec<Update>,
    waits: BTreeSet<(Individual, Tag)>,
}

impl<'a> IndividualCx<'a> {
    pub fn new(view: &'a dyn KbView) -> IndividualCx<'a> {
        IndividualCx { view, updates: Vec::new(), waits: BTreeSet::new() }
    }

    pub fn kernel(&self) -> &'a Kernel {
        self.view.kernel()
    }

    pub fn post(&mut self, u: Update) {
        self.updates.push(u);
    }

    /// Records that a pending check may be unblocked by news about `e`.
    pub fn wait_on(&mut self, e: &Individual, context: Tag) {
        self.waits.insert((e.clone(), context));
    }

    pub fn take_updates(&mut self) -> Vec<Update> {
        std::mem::take(&mut self.updates)
    }

    pub fn take_waits(&mut self) -> BTreeSet<(Individual, Tag)> {
        std::mem::take(&mut self.waits)
    }

    pub fn descriptor(&self, b: &Individual) -> Cow<'a, NormalizedConcept> {
        match self.view.descriptor(b) {
            Some(d) => Cow::Borrowed(d),
            None => Cow::Owned(base_descriptor(b)),
        }
    }

    /// Known fillers, sorted.
    pub fn fillers(&self, b: &Individual, role: &Ident) -> Vec<Individual> {
        self.view.fillers(b, role).map(|s| s.iter().cloned().collect()).unwrap_or_default()
    }

    pub fn filler_count(&self, b: &Individual, role: &Ident) -> usize {
        self.view.fillers(b, role).map_or(0, BTreeSet::len)
    }

    pub fn is_closed(&self, b: &Individual, role: &Ident) -> bool {
        self.view.is_closed(b, role)
    }

    pub fn is_attribute(&self, role: &Ident) -> bool {
        self.view.is_attribute(role)
    }

    /// The single filler of an attribute, if known.
    pub fn attribute_value(&self, b: &Individual, f: &Ident) -> Option<Individual> {
        self.view.fillers(b, f).and_then(|s| s.iter().next().cloned())
    }

    /// Is `e` provably in `c`? A failed proof waits on `e`.
    pub fn is_member(&mut self, e: &Individual, c: &NormalizedConcept, context: Tag) -> bool {
        let desc = self.descriptor(e);
        if self.kernel().subsumes(c, &desc) || self.recognizes_concept(e, c) {
            return true;
        }
        self.wait_on(e, context);
        false
    }

    /// Conjunction recognition: every component of `c` must be implied by
    /// the descriptor of `b` or recognized from its fillers. Non-branch
    /// components go first, then branch components role by role.
    pub fn recognizes_concept(&mut self, b: &Individual, c: &NormalizedConcept) -> bool {
        if c.is_incoherent() {
            return false;
        }
        let desc = self.descriptor(b);
        if c.kind() != ValueKind::Unknown && c.kind() != desc.kind() {
            return false;
        }
        if !c.atoms().is_subset(desc.atoms()) {
            return false;
        }
        let k = self.kernel();
        let mut ordered: Vec<(&Slot, &Term)> = c.components().filter(|(s, _)| s.role.is_none()).collect();
        ordered.extend(c.components().filter(|(s, _)| s.role.is_some()));
        for (slot, term) in ordered {
            if k.component_subsumed(slot, term, &desc) {
                continue;
            }
            let Ok(h) = k.hooks(slot.tag) else { return false };
            if !h.recognizes(self, b, slot, term) {
                return false;
            }
        }
        true
    }
}
