//! Filler constraints `(fills p b)`, merged into one set per role.

use std::collections::BTreeSet;

use crate::kernel::{
    tags, ConstructorHooks, ImplicationsToDoList, IndividualCx, Item, Kernel, NormalizedConcept, Scope,
    Signal, Slot, Term, Update, ValueKind,
};
use crate::syntax::{Description, Individual};

use super::{filler_excluded, role, Bounds};

pub(super) struct FillsHooks;

fn fillers(t: &Term) -> &BTreeSet<Individual> {
    match t {
        Term::Fills(s) => s,
        _ => unreachable!("fills slot holds a fills term"),
    }
}

impl ConstructorHooks for FillsHooks {
    fn tag(&self) -> &'static str {
        tags::FILLS
    }

    fn is_branch(&self) -> bool {
        true
    }

    fn value_kind(&self) -> ValueKind {
        ValueKind::Object
    }

    fn normalize_args(&self, _: &Kernel, d: &Description, _: &dyn Scope) -> Result<Vec<Item>, Signal> {
        let Description::Fills(p, b) = d else { unreachable!("dispatched on tag") };
        Ok(vec![Item::new(Slot::on(tags::FILLS, p), Term::Fills([b.clone()].into()))])
    }

    fn describe(&self, _: &Kernel, slot: &Slot, t: &Term) -> Vec<Description> {
        let p = role(slot);
        fillers(t).iter().map(|b| Description::Fills(p.clone(), b.clone())).collect()
    }

    fn incoherent(&self, _: &Slot, t: &Term) -> bool {
        fillers(t).is_empty()
    }

    fn subsumes_same(&self, _: &Kernel, hi: &Term, low: &Term) -> bool {
        fillers(hi).is_subset(fillers(low))
    }

    fn conjoin_to_same(&self, _: &Kernel, t: Term, old: &Term) -> Result<Term, Signal> {
        Ok(Term::Fills(fillers(&t).union(fillers(old)).cloned().collect()))
    }

    fn consistent_with_different(
        &self,
        _: &Kernel,
        slot: &Slot,
        t: &Term,
        this: &NormalizedConcept,
    ) -> Result<(), Signal> {
        let p = role(slot);
        let s = fillers(t);
        if let Some(r) = this.restriction(p) {
            if s.iter().any(|b| filler_excluded(b, r)) {
                return Err(Signal::Incoherent);
            }
        }
        if this.bounds(p).upper.is_some_and(|u| s.len() as u64 > u64::from(u)) {
            return Err(Signal::Incoherent);
        }
        Ok(())
    }

    /// Distinct names denote distinct fillers.
    fn find_other_implications(
        &self,
        _: &Kernel,
        slot: &Slot,
        t: &Term,
        _: &NormalizedConcept,
        todo: &mut ImplicationsToDoList,
    ) {
        let n = u32::try_from(fillers(t).len()).unwrap_or(u32::MAX);
        todo.post(Item::new(Slot::on(tags::BOUNDS, role(slot)), Term::Bounds(Bounds::at_least(n))));
    }

    fn recognizes(&self, cx: &mut IndividualCx<'_>, b: &Individual, slot: &Slot, t: &Term) -> bool {
        let known = cx.fillers(b, role(slot));
        fillers(t).iter().all(|e| known.contains(e))
    }

    fn consistent_w_asserting(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
    ) -> Result<bool, Signal> {
        let p = role(slot);
        if cx.is_closed(b, p) {
            let known = cx.fillers(b, p);
            if let Some(e) = fillers(t).iter().find(|e| !known.contains(e)) {
                return Err(Signal::Inconsistent(format!("{b}: {p} is closed without {e}")));
            }
        }
        Ok(true)
    }

    fn infer_from_asserting(&self, cx: &mut IndividualCx<'_>, b: &Individual, slot: &Slot, t: &Term) {
        let p = role(slot);
        let known = cx.fillers(b, p);
        for e in fillers(t) {
            if !known.contains(e) {
                cx.post(Update::Fills { ind: b.clone(), role: p.clone(), filler: e.clone() });
            }
        }
    }
}
