//! Enumerations `(one-of b1 ... bn)` over named individuals.

use std::collections::BTreeSet;

use crate::kernel::{tags, ConstructorHooks, IndividualCx, Item, Kernel, Scope, Signal, Slot, Term, ValueKind};
use crate::syntax::{Description, Individual};

pub(super) struct OneOfHooks;

fn members(t: &Term) -> &BTreeSet<Individual> {
    match t {
        Term::OneOf(s) => s,
        _ => unreachable!("one-of slot holds a one-of term"),
    }
}

impl ConstructorHooks for OneOfHooks {
    fn tag(&self) -> &'static str {
        tags::ONE_OF
    }

    fn is_branch(&self) -> bool {
        false
    }

    fn value_kind(&self) -> ValueKind {
        ValueKind::Object
    }

    fn normalize_args(&self, _: &Kernel, d: &Description, _: &dyn Scope) -> Result<Vec<Item>, Signal> {
        let Description::OneOf(bs) = d else { unreachable!("dispatched on tag") };
        if let Some(date) = bs.iter().find(|b| b.as_date().is_some()) {
            return Err(Signal::Unsupported(format!("one-of lists named individuals, not the date {date}")));
        }
        Ok(vec![Item::new(Slot::global(tags::ONE_OF), Term::OneOf(bs.iter().cloned().collect()))])
    }

    fn describe(&self, _: &Kernel, _: &Slot, t: &Term) -> Vec<Description> {
        vec![Description::OneOf(members(t).iter().cloned().collect())]
    }

    fn incoherent(&self, _: &Slot, t: &Term) -> bool {
        members(t).is_empty()
    }

    fn subsumes_same(&self, _: &Kernel, hi: &Term, low: &Term) -> bool {
        members(low).is_subset(members(hi))
    }

    fn conjoin_to_same(&self, _: &Kernel, t: Term, old: &Term) -> Result<Term, Signal> {
        Ok(Term::OneOf(members(&t).intersection(members(old)).cloned().collect()))
    }

    fn recognizes(&self, _: &mut IndividualCx<'_>, b: &Individual, _: &Slot, t: &Term) -> bool {
        members(t).contains(b)
    }
}
