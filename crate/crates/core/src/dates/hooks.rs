//! `dateRange` and `period` hooks.
//!
//! Whenever a concept holds both, the period is applied to the range as a
//! cookie cutter and then pruned, so a stored period always means "no range
//! present".

use std::sync::Arc;

use super::{DateRangeNF, PeriodNF};
use crate::kernel::{
    tags, ConstructorHooks, ImplicationsToDoList, IndividualCx, Item, Kernel, NormalizedConcept, Scope,
    Signal, Slot, Term, ValueKind,
};
use crate::syntax::{Description, Individual};

pub fn range_hooks() -> Arc<dyn ConstructorHooks> {
    Arc::new(RangeHooks)
}

pub fn period_hooks() -> Arc<dyn ConstructorHooks> {
    Arc::new(PeriodHooks)
}

struct RangeHooks;
struct PeriodHooks;

fn range(t: &Term) -> &DateRangeNF {
    match t {
        Term::DateRange(r) => r,
        _ => unreachable!("dateRange slot holds a range"),
    }
}

fn period(t: &Term) -> &PeriodNF {
    match t {
        Term::Period(p) => p,
        _ => unreachable!("period slot holds a period"),
    }
}

impl ConstructorHooks for RangeHooks {
    fn tag(&self) -> &'static str {
        tags::DATE_RANGE
    }

    fn is_branch(&self) -> bool {
        false
    }

    fn value_kind(&self) -> ValueKind {
        ValueKind::Date
    }

    fn normalize_args(&self, _: &Kernel, d: &Description, _: &dyn Scope) -> Result<Vec<Item>, Signal> {
        let Description::DateRangeLit(pairs) = d else { unreachable!("dispatched on tag") };
        let r = DateRangeNF::normalize(pairs).ok_or(Signal::Incoherent)?;
        Ok(vec![Item::new(Slot::global(tags::DATE_RANGE), Term::DateRange(r))])
    }

    fn describe(&self, _: &Kernel, _: &Slot, t: &Term) -> Vec<Description> {
        vec![Description::DateRangeLit(range(t).intervals().to_vec())]
    }

    fn universal(&self, _: &Slot, t: &Term) -> bool {
        range(t).is_universal()
    }

    fn subsumes_same(&self, _: &Kernel, hi: &Term, low: &Term) -> bool {
        range(hi).subsumes(range(low))
    }

    fn conjoin_to_same(&self, _: &Kernel, t: Term, old: &Term) -> Result<Term, Signal> {
        range(&t).intersect(range(old)).map(Term::DateRange).ok_or(Signal::Incoherent)
    }

    fn conjoin_to_different(
        &self,
        _: &Kernel,
        slot: Slot,
        t: Term,
        this: &NormalizedConcept,
    ) -> Result<Item, Signal> {
        match this.period() {
            Some(p) => {
                let cut = p.cut(range(&t)).ok_or(Signal::Incoherent)?;
                Ok(Item::new(slot, Term::DateRange(cut)))
            }
            None => Ok(Item::new(slot, t)),
        }
    }

    fn recognizes(&self, _: &mut IndividualCx<'_>, b: &Individual, _: &Slot, t: &Term) -> bool {
        b.as_date().is_some_and(|d| range(t).contains(d))
    }
}

impl ConstructorHooks for PeriodHooks {
    fn tag(&self) -> &'static str {
        tags::PERIOD
    }

    fn is_branch(&self) -> bool {
        false
    }

    fn value_kind(&self) -> ValueKind {
        ValueKind::Date
    }

    fn normalize_args(&self, _: &Kernel, d: &Description, _: &dyn Scope) -> Result<Vec<Item>, Signal> {
        let Description::PeriodLit { month_lo, month_hi, day_lo, day_hi } = *d else {
            unreachable!("dispatched on tag")
        };
        let p = PeriodNF::normalize(month_lo, month_hi, day_lo, day_hi).ok_or(Signal::Incoherent)?;
        Ok(vec![Item::new(Slot::global(tags::PERIOD), Term::Period(p))])
    }

    fn describe(&self, _: &Kernel, _: &Slot, t: &Term) -> Vec<Description> {
        let (month_lo, month_hi, day_lo, day_hi) = period(t).bounds();
        vec![Description::PeriodLit { month_lo, month_hi, day_lo, day_hi }]
    }

    fn universal(&self, _: &Slot, t: &Term) -> bool {
        period(t).is_universal()
    }

    fn subsumes_same(&self, _: &Kernel, hi: &Term, low: &Term) -> bool {
        period(hi).subsumes(period(low))
    }

    fn conjoin_to_same(&self, _: &Kernel, t: Term, old: &Term) -> Result<Term, Signal> {
        period(&t).intersect(period(old)).map(Term::Period).ok_or(Signal::Incoherent)
    }

    /// Exact: the range is a fixed point of the cutter.
    fn subsumes_different(&self, _: &Kernel, _: &Slot, t: &Term, this: &NormalizedConcept) -> bool {
        this.date_range().is_some_and(|r| period(t).cut(r).as_ref() == Some(r))
    }

    fn consistent_with_different(
        &self,
        _: &Kernel,
        _: &Slot,
        t: &Term,
        this: &NormalizedConcept,
    ) -> Result<(), Signal> {
        match this.date_range() {
            Some(r) if period(t).cut(r).is_none() => Err(Signal::Incoherent),
            _ => Ok(()),
        }
    }

    fn find_other_implications(
        &self,
        _: &Kernel,
        _: &Slot,
        t: &Term,
        this: &NormalizedConcept,
        todo: &mut ImplicationsToDoList,
    ) {
        if let Some(cut) = this.date_range().and_then(|r| period(t).cut(r)) {
            todo.post(Item::new(Slot::global(tags::DATE_RANGE), Term::DateRange(cut)));
        }
    }

    fn recognizes(&self, _: &mut IndividualCx<'_>, b: &Individual, _: &Slot, t: &Term) -> bool {
        b.as_date().is_some_and(|d| period(t).contains(d))
    }
}

#[cfg(test)]
mod tests {
    use crate::kernel::{EmptyScope, Kernel, NormalizedConcept, Signal};
    use crate::syntax::parse_description;

    fn norm(text: &str) -> Result<NormalizedConcept, Signal> {
        Kernel::default().normalize(&parse_description(text).unwrap(), &EmptyScope)
    }

    #[test]
    fn period_subsumes_ranges_inside_it() {
        let k = Kernel::default();
        let april = norm("(period (4 4) (1 31))").unwrap();
        assert!(k.subsumes(&april, &norm("(dateRange (1988/4/1 1988/4/21))").unwrap()));
        assert!(!k.subsumes(&april, &norm("(dateRange (1990/4/1 1992/4/1))").unwrap()));
    }

    #[test]
    fn cutter_applies_in_both_orders() {
        let a = norm("(and (period (6 8) (1 31)) (dateRange (1996/5/15 1996/9/15)))").unwrap();
        let b = norm("(and (dateRange (1996/5/15 1996/9/15)) (period (6 8) (1 31)))").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, norm("(dateRange (1996/6/1 1996/8/31))").unwrap());
        assert_eq!(
            norm("(and (period (6 8) (1 31)) (dateRange (1996/1/1 1996/5/31)))"),
            Err(Signal::Incoherent)
        );
    }

    #[test]
    fn universal_forms_are_any_date() {
        let any = norm("ANY-DATE").unwrap();
        assert_eq!(norm("(period (1 12) (1 31))").unwrap(), any);
        assert_eq!(norm("(dateRange (0001/1/1 9999/12/31))").unwrap(), any);
    }

    #[test]
    fn pure_period_is_not_below_a_range() {
        let k = Kernel::default();
        let range = norm("(dateRange (1996/1/1 1996/12/31))").unwrap();
        assert!(!k.subsumes(&range, &norm("(period (6 8) (1 31))").unwrap()));
    }
}
