//! The update engine: blackboard lists, undo log, dependency links.
//!
//! Every transaction drains five FIFO task lists to quiescence, in this
//! priority: pending updates, inference reruns, reclassification, role
//! closures, consistency rechecks. Closures wait so that a role is closed
//! over every filler the transaction entails, not just those found so far.
//! Any contradiction rolls the undo log back, leaving the state exactly as
//! it was.
//!
//! Dependency links are kept canonical: whenever a check of some kind is
//! re-run for an individual, all links of that kind pointing at it are
//! dropped and re-added from the waits of the new run. The link sets are
//! therefore a function of the state alone, which is what makes link-driven
//! and rescan-driven propagation end in identical states.

use std::collections::{BTreeSet, VecDeque};

use super::record::{Link, LinkKind, Record};
use super::{KnowledgeBase, Propagation};
use crate::kernel::{IndividualCx, NormalizedConcept, Signal, Slot, Tag, Term, Update};
use crate::syntax::{Ident, Individual};
use crate::tbox::NOTHING;

/// FIFO queue that ignores an item already waiting in it.
#[derive(Debug)]
pub(super) struct FifoSet<T: Ord + Clone> {
    queue: VecDeque<T>,
    waiting: BTreeSet<T>,
}

impl<T: Ord + Clone> Default for FifoSet<T> {
    fn default() -> Self {
        FifoSet { queue: VecDeque::new(), waiting: BTreeSet::new() }
    }
}

impl<T: Ord + Clone> FifoSet<T> {
    pub(super) fn push(&mut self, t: T) {
        if self.waiting.insert(t.clone()) {
            self.queue.push_back(t);
        }
    }

    fn pop(&mut self) -> Option<T> {
        let t = self.queue.pop_front()?;
        self.waiting.remove(&t);
        Some(t)
    }
}

/// Inverse of one primitive mutation.
#[derive(Debug)]
enum Undo {
    Created(Individual),
    Descriptor(Individual, NormalizedConcept),
    Filler(Individual, Ident, Individual),
    Closed(Individual, Ident),
    Classes(Individual, BTreeSet<Ident>),
    LinkAdded(Individual, Link),
    LinkRemoved(Individual, Link),
}

#[derive(Default, Debug)]
pub(super) struct Txn {
    undo: Vec<Undo>,
    pub(super) perform: FifoSet<Update>,
    /// Closures wait until every filler derivable so far is in place.
    closing: FifoSet<Update>,
    pub(super) redo_infer: FifoSet<Individual>,
    pub(super) reclassify: FifoSet<Individual>,
    pub(super) recheck: FifoSet<Individual>,
    /// Updates the caller asked for; everything else is derived.
    pub(super) asserted: BTreeSet<Update>,
    pub(super) derived: BTreeSet<String>,
    /// Count of descriptor, filler and closure changes.
    pub(super) changes: usize,
    steps: usize,
}

type Waits = BTreeSet<(Individual, String)>;

fn with_context(waits: BTreeSet<(Individual, Tag)>) -> Waits {
    waits.into_iter().map(|(e, t)| (e, t.to_string())).collect()
}

impl KnowledgeBase {
    pub(super) fn rollback(&mut self, txn: Txn) {
        for u in txn.undo.into_iter().rev() {
            match u {
                Undo::Created(b) => {
                    self.records.remove(&b);
                }
                Undo::Descriptor(b, d) => self.record_mut(&b).descriptor = d,
                Undo::Filler(b, p, e) => {
                    let rec = self.record_mut(&b);
                    let rs = rec.roles.get_mut(&p).expect("role state exists while undoing");
                    rs.fillers.remove(&e);
                    if rs.is_empty() {
                        rec.roles.remove(&p);
                    }
                }
                Undo::Closed(b, p) => {
                    let rec = self.record_mut(&b);
                    let rs = rec.roles.get_mut(&p).expect("role state exists while undoing");
                    rs.closed = false;
                    if rs.is_empty() {
                        rec.roles.remove(&p);
                    }
                }
                Undo::Classes(b, c) => self.record_mut(&b).classes = c,
                Undo::LinkAdded(b, l) => {
                    self.record_mut(&b).links.remove(&l);
                }
                Undo::LinkRemoved(b, l) => {
                    self.record_mut(&b).links.insert(l);
                }
            }
        }
    }

    fn record_mut(&mut self, b: &Individual) -> &mut Record {
        self.records.get_mut(b).expect("individual has a record")
    }

    pub(super) fn ensure(&mut self, txn: &mut Txn, b: &Individual) {
        if !self.records.contains_key(b) {
            self.records.insert(b.clone(), Record::new(b));
            txn.undo.push(Undo::Created(b.clone()));
            txn.reclassify.push(b.clone());
        }
    }

    pub(super) fn enqueue(&mut self, txn: &mut Txn, updates: Vec<Update>) {
        for u in updates {
            if let Update::Member { ind, .. } = &u {
                *self.stats.member_posts.entry(ind.clone()).or_default() += 1;
            }
            if matches!(u, Update::Close { .. }) {
                txn.closing.push(u);
            } else {
                txn.perform.push(u);
            }
        }
    }

    /// Drains the task lists to quiescence.
    pub(super) fn process(&mut self, txn: &mut Txn) -> Result<(), Signal> {
        loop {
            txn.steps += 1;
            if txn.steps > self.budget {
                return Err(Signal::ResourceLimit(self.budget));
            }
            if let Some(u) = txn.perform.pop() {
                self.perform(txn, u)?;
            } else if let Some(b) = txn.redo_infer.pop() {
                self.redo_infer(txn, &b)?;
            } else if let Some(b) = txn.reclassify.pop() {
                self.reclassify(txn, &b)?;
            } else if let Some(u) = txn.closing.pop() {
                self.perform(txn, u)?;
            } else if let Some(b) = txn.recheck.pop() {
                self.recheck(txn, &b)?;
            } else {
                return Ok(());
            }
        }
    }

    fn perform(&mut self, txn: &mut Txn, u: Update) -> Result<(), Signal> {
        let top = txn.asserted.contains(&u);
        let line = self.render_update(&u);
        if self.apply(txn, u)? && !top {
            txn.derived.insert(line);
        }
        Ok(())
    }

    /// Re-runs every individual until a whole round changes nothing.
    pub(super) fn rescan(&mut self, txn: &mut Txn) -> Result<(), Signal> {
        loop {
            let before = txn.changes;
            let all: Vec<Individual> = self.records.keys().cloned().collect();
            for b in all {
                txn.redo_infer.push(b.clone());
                txn.reclassify.push(b.clone());
                txn.recheck.push(b);
            }
            self.process(txn)?;
            if txn.changes == before {
                return Ok(());
            }
        }
    }

    fn render_update(&self, u: &Update) -> String {
        match u {
            Update::Member { ind, concept } => {
                format!("(assert-member {ind} {})", self.kernel().render(concept))
            }
            Update::Fills { ind, role, filler } => format!("(assert-fills {ind} {role} {filler})"),
            Update::Close { ind, role } => format!("(assert-closed {ind} {role})"),
        }
    }

    /// Applies one update; `Ok(false)` when it changed nothing.
    fn apply(&mut self, txn: &mut Txn, u: Update) -> Result<bool, Signal> {
        match u {
            Update::Member { ind, concept } => self.apply_member(txn, &ind, &concept),
            Update::Fills { ind, role, filler } => self.apply_fills(txn, &ind, &role, &filler),
            Update::Close { ind, role } => self.apply_close(txn, &ind, &role),
        }
    }

    fn apply_member(&mut self, txn: &mut Txn, b: &Individual, c: &NormalizedConcept) -> Result<bool, Signal> {
        self.ensure(txn, b);
        let k = self.kernel().clone();
        let old = self.records[b].descriptor.clone();
        let mut new = old.clone();
        match k.conjoin(c, &mut new) {
            Ok(()) => {}
            Err(Signal::Incoherent) if c.is_incoherent() => {
                return Err(Signal::Inconsistent(format!("{b} cannot be an incoherent concept")));
            }
            Err(Signal::Incoherent) => {
                return Err(Signal::Inconsistent(format!("{b} cannot be {}", k.render(c))));
            }
            Err(e) => return Err(e),
        }
        if new == old {
            return Ok(false);
        }
        txn.undo.push(Undo::Descriptor(b.clone(), old.clone()));
        self.record_mut(b).descriptor = new.clone();
        self.recheck(txn, b)?;
        let changed: Vec<(&Slot, &Term)> = new.components().filter(|(s, t)| old.get(s) != Some(*t)).collect();
        let mut cx = IndividualCx::new(self);
        for (slot, term) in changed {
            k.hooks(slot.tag)?.infer_from_asserting(&mut cx, b, slot, term);
        }
        let posted = cx.take_updates();
        self.enqueue(txn, posted);
        self.after_change(txn, b);
        Ok(true)
    }

    fn apply_fills(&mut self, txn: &mut Txn, b: &Individual, p: &Ident, e: &Individual) -> Result<bool, Signal> {
        if b.as_date().is_some() {
            return Err(Signal::Inconsistent(format!("the date {b} has no {p}")));
        }
        self.ensure(txn, b);
        self.ensure(txn, e);
        let attribute = self.tbox.is_attribute(p);
        let rs = self.records[b].roles.get(p).cloned().unwrap_or_default();
        if rs.fillers.contains(e) {
            return Ok(false);
        }
        if rs.closed {
            return Err(Signal::Inconsistent(format!("{b}: {p} is closed, cannot add {e}")));
        }
        if attribute {
            if let Some(x) = rs.fillers.iter().next() {
                return Err(Signal::Inconsistent(format!("{b}: attribute {p} already has {x}, cannot add {e}")));
            }
        }
        self.record_mut(b).roles.entry(p.clone()).or_default().fillers.insert(e.clone());
        txn.undo.push(Undo::Filler(b.clone(), p.clone(), e.clone()));
        txn.changes += 1;

        let k = self.kernel().clone();
        let desc = self.records[b].descriptor.clone();
        let mut cx = IndividualCx::new(self);
        for (slot, term) in desc.components() {
            let h = k.hooks(slot.tag)?;
            if slot.role.as_ref() == Some(p) || !h.is_branch() {
                h.consistent_w_filling(&mut cx, b, slot, term, p, e)?;
                h.infer_from_filling(&mut cx, b, slot, term, p, e);
            }
        }
        let mut posted = cx.take_updates();
        if attribute {
            posted.push(Update::Close { ind: b.clone(), role: p.clone() });
        }
        self.enqueue(txn, posted);
        self.recheck(txn, b)?;
        self.after_change(txn, b);
        Ok(true)
    }

    fn apply_close(&mut self, txn: &mut Txn, b: &Individual, p: &Ident) -> Result<bool, Signal> {
        if b.as_date().is_some() {
            return Err(Signal::Inconsistent(format!("the date {b} has no {p}")));
        }
        self.ensure(txn, b);
        if self.records[b].roles.get(p).is_some_and(|rs| rs.closed) {
            return Ok(false);
        }
        self.record_mut(b).roles.entry(p.clone()).or_default().closed = true;
        txn.undo.push(Undo::Closed(b.clone(), p.clone()));
        txn.changes += 1;

        let k = self.kernel().clone();
        let desc = self.records[b].descriptor.clone();
        let mut cx = IndividualCx::new(self);
        for (slot, term) in desc.components() {
            if slot.role.as_ref() == Some(p) {
                let h = k.hooks(slot.tag)?;
                h.consistent_w_closing(&mut cx, b, slot, term, p)?;
                h.infer_from_closing(&mut cx, b, slot, term, p);
            }
        }
        let n = cx.filler_count(b, p);
        let mut posted = cx.take_updates();
        let at_most = closure_concept(&k, p, n)?;
        posted.push(Update::Member { ind: b.clone(), concept: at_most });
        self.enqueue(txn, posted);
        self.recheck(txn, b)?;
        self.after_change(txn, b);
        Ok(true)
    }

    /// Bookkeeping shared by every change to `b`.
    fn after_change(&mut self, txn: &mut Txn, b: &Individual) {
        txn.changes += 1;
        self.refresh_infer_links(txn, b);
        self.fire_links(txn, b);
        txn.reclassify.push(b.clone());
    }

    fn fire_links(&mut self, txn: &mut Txn, b: &Individual) {
        if self.propagation == Propagation::Rescan {
            return;
        }
        let links = std::mem::take(&mut self.record_mut(b).links);
        for l in links {
            match l.kind {
                LinkKind::Recognize => txn.reclassify.push(l.target.clone()),
                LinkKind::Consistent => txn.recheck.push(l.target.clone()),
                LinkKind::Infer => txn.redo_infer.push(l.target.clone()),
            }
            txn.undo.push(Undo::LinkRemoved(b.clone(), l));
        }
    }

    /// Replaces all `kind` links pointing at `target` by ones from `waits`.
    fn set_links(&mut self, txn: &mut Txn, target: &Individual, kind: LinkKind, waits: Waits) {
        let holders: Vec<Individual> = self.records.keys().cloned().collect();
        for h in holders {
            let stale: Vec<Link> = self.records[&h]
                .links
                .iter()
                .filter(|l| l.kind == kind && l.target == *target)
                .filter(|l| !waits.contains(&(h.clone(), l.context.clone())))
                .cloned()
                .collect();
            for l in stale {
                self.record_mut(&h).links.remove(&l);
                txn.undo.push(Undo::LinkRemoved(h.clone(), l));
            }
        }
        for (e, context) in waits {
            if e == *target {
                continue;
            }
            self.ensure(txn, &e);
            let l = Link { kind, target: target.clone(), context };
            if self.record_mut(&e).links.insert(l.clone()) {
                txn.undo.push(Undo::LinkAdded(e, l));
            }
        }
    }

    /// Full consistency check of `b`'s descriptor against its fillers.
    fn recheck(&mut self, txn: &mut Txn, b: &Individual) -> Result<(), Signal> {
        let k = self.kernel().clone();
        let desc = self.records[b].descriptor.clone();
        let mut cx = IndividualCx::new(self);
        for (slot, term) in desc.components() {
            k.hooks(slot.tag)?.consistent_w_asserting(&mut cx, b, slot, term)?;
        }
        let waits = with_context(cx.take_waits());
        self.set_links(txn, b, LinkKind::Consistent, waits);
        Ok(())
    }

    /// Waits of the inference hooks, recomputed without posting anything.
    fn refresh_infer_links(&mut self, txn: &mut Txn, b: &Individual) {
        let k = self.kernel().clone();
        let desc = self.records[b].descriptor.clone();
        let mut cx = IndividualCx::new(self);
        for (slot, term) in desc.components() {
            if let Ok(h) = k.hooks(slot.tag) {
                h.infer_from_asserting(&mut cx, b, slot, term);
            }
        }
        let waits = with_context(cx.take_waits());
        self.set_links(txn, b, LinkKind::Infer, waits);
    }

    /// Re-runs inference for `b` after something it waited on changed.
    /// Count-only constructors are skipped unless rescanning.
    fn redo_infer(&mut self, txn: &mut Txn, b: &Individual) -> Result<(), Signal> {
        let k = self.kernel().clone();
        let rescan = self.propagation == Propagation::Rescan;
        let desc = self.records[b].descriptor.clone();
        let mut cx = IndividualCx::new(self);
        for (slot, term) in desc.components() {
            let h = k.hooks(slot.tag)?;
            if rescan || !h.count_only() {
                h.infer_from_asserting(&mut cx, b, slot, term);
            }
        }
        let posted = cx.take_updates();
        let waits = with_context(cx.take_waits());
        self.enqueue(txn, posted);
        self.set_links(txn, b, LinkKind::Infer, waits);
        Ok(())
    }

    /// Finds the most specific named concepts `b` provably belongs to.
    /// Concepts recognized but not yet implied by the descriptor are
    /// conjoined onto it.
    fn reclassify(&mut self, txn: &mut Txn, b: &Individual) -> Result<(), Signal> {
        let k = self.kernel().clone();
        let desc = self.records[b].descriptor.clone();
        let mut members: BTreeSet<Ident> = BTreeSet::new();
        let mut recognized: Vec<NormalizedConcept> = Vec::new();
        let mut waits: Waits = BTreeSet::new();
        {
            let mut cx = IndividualCx::new(self);
            for (name, entry) in self.tbox.concepts() {
                if name.as_str() == NOTHING {
                    continue;
                }
                if k.subsumes(&entry.nf, &desc) {
                    members.insert(name.clone());
                } else if cx.recognizes_concept(b, &entry.nf) {
                    members.insert(name.clone());
                    recognized.push(entry.nf.clone());
                    cx.take_waits();
                } else {
                    waits.extend(cx.take_waits().into_iter().map(|(e, _)| (e, name.to_string())));
                }
            }
        }
        let classes: BTreeSet<Ident> = members
            .iter()
            .filter(|m| !members.iter().any(|o| self.tbox.strictly_above(m, o)))
            .cloned()
            .collect();
        let old = &self.records[b].classes;
        if *old != classes {
            txn.undo.push(Undo::Classes(b.clone(), old.clone()));
            let names: Vec<&str> = classes.iter().map(Ident::as_str).collect();
            txn.derived.insert(format!("(classified {b} ({}))", names.join(" ")));
            self.record_mut(b).classes = classes;
        }
        self.set_links(txn, b, LinkKind::Recognize, waits);
        let posted = recognized.into_iter().map(|c| Update::Member { ind: b.clone(), concept: c }).collect();
        self.enqueue(txn, posted);
        Ok(())
    }
}

/// `(at-most n p)` as a normal form.
fn closure_concept(k: &crate::kernel::Kernel, p: &Ident, n: usize) -> Result<NormalizedConcept, Signal> {
    let d = crate::syntax::Description::AtMost(u32::try_from(n).unwrap_or(u32::MAX), p.clone());
    k.normalize(&d, &crate::kernel::EmptyScope)
}
