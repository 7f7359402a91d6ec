//! Existential restrictions `(some p C)`, kept as an antichain per role.

use std::collections::BTreeSet;

use crate::kernel::{
    tags, ConstructorHooks, ImplicationsToDoList, IndividualCx, Item, Kernel, NormalizedConcept, Scope,
    Signal, Slot, Term, ValueKind,
};
use crate::syntax::{Description, Individual};

use super::{role, Bounds};

pub(super) struct SomeHooks;

fn members(t: &Term) -> &BTreeSet<NormalizedConcept> {
    match t {
        Term::Some(m) => m,
        _ => unreachable!("some slot holds a some term"),
    }
}

/// Adds `c` to a set of most specific concepts. A member that `c` is below
/// is replaced; `c` is dropped if some member is already below it. Between
/// equivalent concepts the smaller in `Ord` order wins, so the result does
/// not depend on insertion order.
pub fn antichain_insert(k: &Kernel, set: &mut BTreeSet<NormalizedConcept>, c: NormalizedConcept) {
    let mut replaced = Vec::new();
    for m in set.iter() {
        let m_below_c = k.subsumes(&c, m);
        let c_below_m = k.subsumes(m, &c);
        match (m_below_c, c_below_m) {
            (true, true) if *m <= c => return,
            (true, true) => replaced.push(m.clone()),
            (true, false) => return,
            (false, true) => replaced.push(m.clone()),
            (false, false) => {}
        }
    }
    for m in replaced {
        set.remove(&m);
    }
    set.insert(c);
}

impl ConstructorHooks for SomeHooks {
    fn tag(&self) -> &'static str {
        tags::SOME
    }

    fn is_branch(&self) -> bool {
        true
    }

    fn value_kind(&self) -> ValueKind {
        ValueKind::Object
    }

    fn normalize_args(&self, k: &Kernel, d: &Description, scope: &dyn Scope) -> Result<Vec<Item>, Signal> {
        let Description::Some(p, c) = d else { unreachable!("dispatched on tag") };
        let c = k.normalize_or_nothing(c, scope)?;
        Ok(vec![Item::new(Slot::on(tags::SOME, p), Term::Some([c].into()))])
    }

    fn describe(&self, k: &Kernel, slot: &Slot, t: &Term) -> Vec<Description> {
        let p = role(slot);
        members(t).iter().map(|m| Description::Some(p.clone(), Box::new(k.describe(m)))).collect()
    }

    fn incoherent(&self, _: &Slot, t: &Term) -> bool {
        members(t).iter().any(NormalizedConcept::is_incoherent)
    }

    fn subsumes_same(&self, k: &Kernel, hi: &Term, low: &Term) -> bool {
        members(hi).iter().all(|d| members(low).iter().any(|c| k.subsumes(d, c)))
    }

    fn conjoin_to_same(&self, k: &Kernel, t: Term, old: &Term) -> Result<Term, Signal> {
        let mut set = members(old).clone();
        for c in members(&t) {
            antichain_insert(k, &mut set, c.clone());
        }
        Ok(Term::Some(set))
    }

    fn conjoin_to_different(
        &self,
        k: &Kernel,
        slot: Slot,
        t: Term,
        this: &NormalizedConcept,
    ) -> Result<Item, Signal> {
        let p = role(&slot).clone();
        let strengthened: Vec<NormalizedConcept> = match this.restriction(&p) {
            Some(r) => members(&t).iter().map(|m| k.meet(m, r)).collect::<Result<_, _>>()?,
            None => members(&t).iter().cloned().collect(),
        };
        let mut set = BTreeSet::new();
        for c in strengthened {
            antichain_insert(k, &mut set, c);
        }
        if set.len() == 1 && set.iter().next().is_some_and(NormalizedConcept::is_thing) {
            return Ok(Item::new(Slot::on(tags::BOUNDS, &p), Term::Bounds(Bounds::at_least(1))));
        }
        Ok(Item::new(slot, Term::Some(set)))
    }

    fn consistent_with_different(
        &self,
        _: &Kernel,
        slot: &Slot,
        _: &Term,
        this: &NormalizedConcept,
    ) -> Result<(), Signal> {
        if this.bounds(role(slot)).upper == Some(0) {
            return Err(Signal::Incoherent);
        }
        Ok(())
    }

    fn find_other_implications(
        &self,
        _: &Kernel,
        slot: &Slot,
        _: &Term,
        _: &NormalizedConcept,
        todo: &mut ImplicationsToDoList,
    ) {
        todo.post(Item::new(Slot::on(tags::BOUNDS, role(slot)), Term::Bounds(Bounds::at_least(1))));
    }

    fn recognizes(&self, cx: &mut IndividualCx<'_>, b: &Individual, slot: &Slot, t: &Term) -> bool {
        let fillers = cx.fillers(b, role(slot));
        members(t).iter().all(|c| fillers.iter().any(|e| cx.is_member(e, c, tags::SOME)))
    }
}
