//! `at-least` and `at-most`, stored jointly as one interval per role.
//!
//! Bounds implied by other components (a `some`, a `fills` set, a finite
//! value restriction) are materialized into this term by the other hooks
//! instead of being recovered through `subsumes_different`. Keeping the
//! implied bound stored is what lets `(all p NOTHING)` and `(at-most 0 p)`
//! share one normal form regardless of conjunction order.

use crate::kernel::{
    tags, ConstructorHooks, ImplicationsToDoList, IndividualCx, Item, Kernel, NormalizedConcept, Scope,
    Signal, Slot, Term, Update, ValueKind,
};
use crate::syntax::{Description, Ident, Individual};

use super::role;

/// Cardinality interval. A lower bound of zero is stored as `None`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Bounds {
    pub lower: Option<u32>,
    pub upper: Option<u32>,
}

impl Bounds {
    pub fn at_least(n: u32) -> Bounds {
        Bounds { lower: (n > 0).then_some(n), upper: None }
    }

    pub fn at_most(n: u32) -> Bounds {
        Bounds { lower: None, upper: Some(n) }
    }

    pub fn lower_or_zero(&self) -> u32 {
        self.lower.unwrap_or(0)
    }

    pub fn meet(&self, other: &Bounds) -> Bounds {
        let lower = self.lower.max(other.lower);
        let upper = match (self.upper, other.upper) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Bounds { lower, upper }
    }

    pub fn is_universal(&self) -> bool {
        self.lower.is_none() && self.upper.is_none()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_some_and(|u| self.lower_or_zero() > u)
    }

    /// Does every count allowed by `low` lie within `self`?
    pub fn contains(&self, low: &Bounds) -> bool {
        self.lower_or_zero() <= low.lower_or_zero()
            && match (self.upper, low.upper) {
                (None, _) => true,
                (Some(h), Some(l)) => l <= h,
                (Some(_), None) => false,
            }
    }

    pub fn admits(&self, count: usize) -> bool {
        let count = count as u64;
        u64::from(self.lower_or_zero()) <= count && self.upper.is_none_or(|u| count <= u64::from(u))
    }
}

pub(super) struct BoundsHooks;

fn bounds(t: &Term) -> &Bounds {
    match t {
        Term::Bounds(b) => b,
        _ => unreachable!("bounds slot holds a bounds term"),
    }
}

impl ConstructorHooks for BoundsHooks {
    fn tag(&self) -> &'static str {
        tags::BOUNDS
    }

    fn is_branch(&self) -> bool {
        true
    }

    fn value_kind(&self) -> ValueKind {
        ValueKind::Object
    }

    fn normalize_args(&self, _: &Kernel, d: &Description, _: &dyn Scope) -> Result<Vec<Item>, Signal> {
        let (b, r) = match d {
            Description::AtLeast(n, r) => (Bounds::at_least(*n), r),
            Description::AtMost(n, r) => (Bounds::at_most(*n), r),
            _ => unreachable!("dispatched on tag"),
        };
        Ok(vec![Item::new(Slot::on(tags::BOUNDS, r), Term::Bounds(b))])
    }

    fn describe(&self, _: &Kernel, slot: &Slot, t: &Term) -> Vec<Description> {
        let b = bounds(t);
        let r = role(slot).clone();
        let mut out = Vec::new();
        if let Some(n) = b.lower {
            out.push(Description::AtLeast(n, r.clone()));
        }
        if let Some(n) = b.upper {
            out.push(Description::AtMost(n, r));
        }
        out
    }

    fn universal(&self, _: &Slot, t: &Term) -> bool {
        bounds(t).is_universal()
    }

    fn incoherent(&self, _: &Slot, t: &Term) -> bool {
        bounds(t).is_empty()
    }

    fn subsumes_same(&self, _: &Kernel, hi: &Term, low: &Term) -> bool {
        bounds(hi).contains(bounds(low))
    }

    fn conjoin_to_same(&self, _: &Kernel, t: Term, old: &Term) -> Result<Term, Signal> {
        Ok(Term::Bounds(bounds(&t).meet(bounds(old))))
    }

    fn consistent_with_different(
        &self,
        _: &Kernel,
        slot: &Slot,
        t: &Term,
        this: &NormalizedConcept,
    ) -> Result<(), Signal> {
        let known = this.fills(role(slot)).map_or(0, |s| s.len());
        if bounds(t).upper.is_some_and(|u| known as u64 > u64::from(u)) {
            return Err(Signal::Incoherent);
        }
        Ok(())
    }

    fn find_other_implications(
        &self,
        _: &Kernel,
        slot: &Slot,
        t: &Term,
        this: &NormalizedConcept,
        todo: &mut ImplicationsToDoList,
    ) {
        let b = bounds(t);
        let p = role(slot);
        if b.upper == Some(0) {
            todo.post(Item::new(Slot::on(tags::ALL, p), Term::All(Box::new(NormalizedConcept::nothing()))));
        }
        if b.lower_or_zero() >= 1 {
            if let Some(r) = this.restriction(p) {
                todo.post(Item::new(Slot::on(tags::SOME, p), Term::Some([r.clone()].into())));
            }
        }
    }

    fn recognizes(&self, cx: &mut IndividualCx<'_>, b: &Individual, slot: &Slot, t: &Term) -> bool {
        let p = role(slot);
        let bd = bounds(t);
        let n = cx.filler_count(b, p);
        if (n as u64) < u64::from(bd.lower_or_zero()) {
            return false;
        }
        match bd.upper {
            None => true,
            Some(u) => cx.is_closed(b, p) && n as u64 <= u64::from(u),
        }
    }

    fn consistent_w_asserting(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
    ) -> Result<bool, Signal> {
        let p = role(slot);
        let bd = bounds(t);
        let n = cx.filler_count(b, p);
        if bd.upper.is_some_and(|u| n as u64 > u64::from(u)) {
            return Err(Signal::Inconsistent(format!("{b}: more than {} {p} fillers", bd.upper.unwrap())));
        }
        if cx.is_closed(b, p) && (n as u64) < u64::from(bd.lower_or_zero()) {
            return Err(Signal::Inconsistent(format!("{b}: {p} closed below at-least {}", bd.lower_or_zero())));
        }
        Ok(true)
    }

    fn consistent_w_filling(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
        _: &Ident,
        _: &Individual,
    ) -> Result<bool, Signal> {
        self.consistent_w_asserting(cx, b, slot, t)
    }

    fn consistent_w_closing(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
        _: &Ident,
    ) -> Result<bool, Signal> {
        self.consistent_w_asserting(cx, b, slot, t)
    }

    fn infer_from_asserting(&self, cx: &mut IndividualCx<'_>, b: &Individual, slot: &Slot, t: &Term) {
        let p = role(slot);
        if bounds(t).upper.is_some_and(|u| cx.filler_count(b, p) as u64 == u64::from(u)) && !cx.is_closed(b, p) {
            cx.post(Update::Close { ind: b.clone(), role: p.clone() });
        }
        super::all::complete_from_one_of(cx, b, p);
    }

    fn infer_from_filling(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
        _: &Ident,
        _: &Individual,
    ) {
        self.infer_from_asserting(cx, b, slot, t);
    }

    fn count_only(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_arithmetic() {
        let a = Bounds::at_least(2).meet(&Bounds::at_least(4));
        assert_eq!(a.lower, Some(4));
        let b = a.meet(&Bounds::at_most(5)).meet(&Bounds::at_most(7));
        assert_eq!(b, Bounds { lower: Some(4), upper: Some(5) });
        assert!(Bounds::at_least(3).meet(&Bounds::at_most(1)).is_empty());
        assert!(Bounds::at_least(0).is_universal());
        assert!(Bounds::at_least(1).contains(&Bounds::at_least(2)));
        assert!(!Bounds::at_least(2).contains(&Bounds::at_least(1)));
        assert!(Bounds::at_most(2).contains(&Bounds::at_most(0)));
        assert!(!Bounds::at_most(2).contains(&Bounds::at_least(0)));
        assert!(b.admits(4) && !b.admits(6) && !b.admits(3));
    }
}
