//! Value restrictions `(all p C)`.

use crate::kernel::{
    tags, ConstructorHooks, ImplicationsToDoList, IndividualCx, Item, Kernel, NormalizedConcept, Scope,
    Signal, Slot, Term, Update, ValueKind,
};
use crate::syntax::{Description, Ident, Individual};

use super::{filler_excluded, role, Bounds};

pub(super) struct AllHooks;

fn restriction(t: &Term) -> &NormalizedConcept {
    match t {
        Term::All(c) => c,
        _ => unreachable!("all slot holds an all term"),
    }
}

/// Lori's rule: a one-of restriction of size n together with at-least n
/// pins down the complete filler set. Both the `all` and the bounds
/// component can complete the premise, so both hooks call this.
pub(super) fn complete_from_one_of(cx: &mut IndividualCx<'_>, b: &Individual, p: &Ident) {
    let desc = cx.descriptor(b);
    let Some(members) = desc.restriction(p).and_then(NormalizedConcept::one_of) else { return };
    if (desc.bounds(p).lower_or_zero() as usize) < members.len() {
        return;
    }
    let known = cx.fillers(b, p);
    for m in members {
        if !known.contains(m) {
            cx.post(Update::Fills { ind: b.clone(), role: p.clone(), filler: m.clone() });
        }
    }
    if !cx.is_closed(b, p) {
        cx.post(Update::Close { ind: b.clone(), role: p.clone() });
    }
}

impl AllHooks {
    fn check_filler(&self, b: &Individual, p: &Ident, e: &Individual, r: &NormalizedConcept) -> Result<bool, Signal> {
        if filler_excluded(e, r) {
            return Err(Signal::Inconsistent(format!("{b}: {p} filler {e} violates (all {p} ...)")));
        }
        Ok(false)
    }
}

impl ConstructorHooks for AllHooks {
    fn tag(&self) -> &'static str {
        tags::ALL
    }

    fn is_branch(&self) -> bool {
        true
    }

    fn value_kind(&self) -> ValueKind {
        ValueKind::Object
    }

    fn normalize_args(&self, k: &Kernel, d: &Description, scope: &dyn Scope) -> Result<Vec<Item>, Signal> {
        let Description::All(p, c) = d else { unreachable!("dispatched on tag") };
        let r = k.normalize_or_nothing(c, scope)?;
        Ok(vec![Item::new(Slot::on(tags::ALL, p), Term::All(Box::new(r)))])
    }

    fn describe(&self, k: &Kernel, slot: &Slot, t: &Term) -> Vec<Description> {
        vec![Description::All(role(slot).clone(), Box::new(k.describe(restriction(t))))]
    }

    fn universal(&self, _: &Slot, t: &Term) -> bool {
        restriction(t).is_thing()
    }

    fn subsumes_same(&self, k: &Kernel, hi: &Term, low: &Term) -> bool {
        k.subsumes(restriction(hi), restriction(low))
    }

    fn conjoin_to_same(&self, k: &Kernel, t: Term, old: &Term) -> Result<Term, Signal> {
        Ok(Term::All(Box::new(k.meet(restriction(&t), restriction(old))?)))
    }

    fn consistent_with_different(
        &self,
        _: &Kernel,
        slot: &Slot,
        t: &Term,
        this: &NormalizedConcept,
    ) -> Result<(), Signal> {
        let r = restriction(t);
        match this.fills(role(slot)) {
            Some(fs) if fs.iter().any(|e| filler_excluded(e, r)) => Err(Signal::Incoherent),
            _ => Ok(()),
        }
    }

    fn find_other_implications(
        &self,
        k: &Kernel,
        slot: &Slot,
        t: &Term,
        this: &NormalizedConcept,
        todo: &mut ImplicationsToDoList,
    ) {
        let p = role(slot);
        let r = restriction(t);
        if let Some(n) = r.finite_extent() {
            let n = u32::try_from(n).unwrap_or(u32::MAX);
            todo.post(Item::new(Slot::on(tags::BOUNDS, p), Term::Bounds(Bounds::at_most(n))));
        }
        // Existing some-members must see the new restriction too.
        let mut members: std::collections::BTreeSet<NormalizedConcept> = this
            .somes(p)
            .into_iter()
            .flatten()
            .map(|m| k.meet(m, r).unwrap_or_else(|_| NormalizedConcept::nothing()))
            .collect();
        if this.bounds(p).lower_or_zero() >= 1 {
            members.insert(r.clone());
        }
        if !members.is_empty() {
            todo.post(Item::new(Slot::on(tags::SOME, p), Term::Some(members)));
        }
    }

    fn recognizes(&self, cx: &mut IndividualCx<'_>, b: &Individual, slot: &Slot, t: &Term) -> bool {
        let p = role(slot);
        if !cx.is_closed(b, p) {
            return false;
        }
        let r = restriction(t);
        cx.fillers(b, p).iter().all(|e| cx.is_member(e, r, tags::ALL))
    }

    fn consistent_w_asserting(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
    ) -> Result<bool, Signal> {
        let p = role(slot);
        for e in cx.fillers(b, p) {
            self.check_filler(b, p, &e, restriction(t))?;
        }
        Ok(true)
    }

    fn consistent_w_filling(
        &self,
        _: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
        _: &Ident,
        filler: &Individual,
    ) -> Result<bool, Signal> {
        self.check_filler(b, role(slot), filler, restriction(t))
    }

    fn consistent_w_closing(
        &self,
        _: &mut IndividualCx<'_>,
        _: &Individual,
        _: &Slot,
        _: &Term,
        _: &Ident,
    ) -> Result<bool, Signal> {
        Ok(true)
    }

    fn infer_from_asserting(&self, cx: &mut IndividualCx<'_>, b: &Individual, slot: &Slot, t: &Term) {
        let p = role(slot);
        let r = restriction(t);
        for e in cx.fillers(b, p) {
            cx.post(Update::Member { ind: e, concept: r.clone() });
        }
        complete_from_one_of(cx, b, p);
    }

    fn infer_from_filling(
        &self,
        cx: &mut IndividualCx<'_>,
        _: &Individual,
        _: &Slot,
        t: &Term,
        _: &Ident,
        filler: &Individual,
    ) {
        cx.post(Update::Member { ind: filler.clone(), concept: restriction(t).clone() });
    }
}
