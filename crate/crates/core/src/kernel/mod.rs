//! Normal forms, the constructor registry, and the conjunction engine.
//!
//! A concept is normalized by starting from THING and conjoining each conjunct
//! through its constructor's hooks. Hooks may post further implied terms to an
//! [`ImplicationsToDoList`], which is drained to a fixpoint under a step budget.
//! Subsumption compares normal forms component by component.

pub mod individual;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::constructors::Bounds;
use crate::dates::{DateRangeNF, PeriodNF};
use crate::sameas::SameAsNF;
use crate::syntax::{Description, Ident, Individual};

pub use individual::{IndividualCx, KbView, Update};

/// Constructor tags. Slots sort by tag first, so these strings fix the
/// iteration order of every normal form.
pub mod tags {
    pub const ALL: &str = "all";
    pub const SOME: &str = "some";
    pub const BOUNDS: &str = "bounds";
    pub const FILLS: &str = "fills";
    pub const ONE_OF: &str = "one-of";
    pub const SAME_AS: &str = "same-as";
    pub const DATE_RANGE: &str = "dateRange";
    pub const PERIOD: &str = "period";
}

pub type Tag = &'static str;

pub const DEFAULT_BUDGET: usize = 10_000;

/// Which sort of value a concept ranges over.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ValueKind {
    Unknown,
    Object,
    Date,
}

/// Where a term lives inside a normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Slot {
    pub tag: Tag,
    pub role: Option<Ident>,
}

impl Slot {
    pub fn global(tag: Tag) -> Slot {
        Slot { tag, role: None }
    }

    pub fn on(tag: Tag, role: &Ident) -> Slot {
        Slot { tag, role: Some(role.clone()) }
    }
}

/// Normalized argument of one constructor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    All(Box<NormalizedConcept>),
    Some(BTreeSet<NormalizedConcept>),
    Bounds(Bounds),
    Fills(BTreeSet<Individual>),
    OneOf(BTreeSet<Individual>),
    SameAs(SameAsNF),
    DateRange(DateRangeNF),
    Period(PeriodNF),
}

/// A term addressed to its slot.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Item {
    pub slot: Slot,
    pub term: Term,
}

impl Item {
    pub fn new(slot: Slot, term: Term) -> Item {
        Item { slot, term }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Signal {
    #[error("incoherent concept")]
    Incoherent,
    #[error("redundant")]
    Redundant,
    #[error("inconsistent: {0}")]
    Inconsistent(String),
    #[error("step budget of {0} exceeded")]
    ResourceLimit(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Conjunction store with one slot per constructor (and role).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NormalizedConcept {
    incoherent: bool,
    kind: ValueKind,
    atoms: BTreeSet<Ident>,
    components: BTreeMap<Slot, Term>,
}

impl Default for NormalizedConcept {
    fn default() -> Self {
        NormalizedConcept::thing()
    }
}

impl NormalizedConcept {
    pub fn thing() -> NormalizedConcept {
        NormalizedConcept {
            incoherent: false,
            kind: ValueKind::Unknown,
            atoms: BTreeSet::new(),
            components: BTreeMap::new(),
        }
    }

    pub fn nothing() -> NormalizedConcept {
        NormalizedConcept { incoherent: true, ..NormalizedConcept::thing() }
    }

    pub fn of_kind(kind: ValueKind) -> NormalizedConcept {
        NormalizedConcept { kind, ..NormalizedConcept::thing() }
    }

    pub fn is_thing(&self) -> bool {
        !self.incoherent
            && self.kind == ValueKind::Unknown
            && self.atoms.is_empty()
            && self.components.is_empty()
    }

    pub fn is_incoherent(&self) -> bool {
        self.incoherent
    }

    pub fn kind(&self) -> ValueKind {
        self.kind
    }

    pub fn atoms(&self) -> &BTreeSet<Ident> {
        &self.atoms
    }

    pub fn components(&self) -> impl Iterator<Item = (&Slot, &Term)> {
        self.components.iter()
    }

    pub fn get(&self, slot: &Slot) -> Option<&Term> {
        self.components.get(slot)
    }

    pub fn restriction(&self, role: &Ident) -> Option<&NormalizedConcept> {
        match self.get(&Slot::on(tags::ALL, role)) {
            Some(Term::All(c)) => Some(c),
            _ => None,
        }
    }

    pub fn bounds(&self, role: &Ident) -> Bounds {
        match self.get(&Slot::on(tags::BOUNDS, role)) {
            Some(Term::Bounds(b)) => *b,
            _ => Bounds::default(),
        }
    }

    pub fn fills(&self, role: &Ident) -> Option<&BTreeSet<Individual>> {
        match self.get(&Slot::on(tags::FILLS, role)) {
            Some(Term::Fills(s)) => Some(s),
            _ => None,
        }
    }

    pub fn somes(&self, role: &Ident) -> Option<&BTreeSet<NormalizedConcept>> {
        match self.get(&Slot::on(tags::SOME, role)) {
            Some(Term::Some(s)) => Some(s),
            _ => None,
        }
    }

    pub fn one_of(&self) -> Option<&BTreeSet<Individual>> {
        match self.get(&Slot::global(tags::ONE_OF)) {
            Some(Term::OneOf(s)) => Some(s),
            _ => None,
        }
    }

    pub fn date_range(&self) -> Option<&DateRangeNF> {
        match self.get(&Slot::global(tags::DATE_RANGE)) {
            Some(Term::DateRange(r)) => Some(r),
            _ => None,
        }
    }

    pub fn period(&self) -> Option<&PeriodNF> {
        match self.get(&Slot::global(tags::PERIOD)) {
            Some(Term::Period(p)) => Some(p),
            _ => None,
        }
    }

    /// Roles carrying at least one role-bound component.
    pub fn restricted_roles(&self) -> BTreeSet<&Ident> {
        self.components.keys().filter_map(|s| s.role.as_ref()).collect()
    }

    /// Exact size of the value space when it is finite and known.
    pub fn finite_extent(&self) -> Option<u64> {
        if self.incoherent {
            return Some(0);
        }
        let from_one_of = self.one_of().map(|s| s.len() as u64);
        let from_range = self.date_range().map(DateRangeNF::count_days);
        match (from_one_of, from_range) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn merge_kind(&mut self, kind: ValueKind) -> Result<(), Signal> {
        match (self.kind, kind) {
            (_, ValueKind::Unknown) => Ok(()),
            (ValueKind::Unknown, k) => {
                self.kind = k;
                Ok(())
            }
            (a, b) if a == b => Ok(()),
            _ => Err(Signal::Incoherent),
        }
    }

    pub(crate) fn add_atom(&mut self, atom: Ident) {
        self.atoms.insert(atom);
    }
}

/// Pending implied terms for one concept under construction.
#[derive(Default, Debug)]
pub struct ImplicationsToDoList {
    queue: VecDeque<Item>,
    queued: BTreeSet<Item>,
}

impl ImplicationsToDoList {
    pub fn post(&mut self, item: Item) {
        if self.queued.insert(item.clone()) {
            self.queue.push_back(item);
        }
    }

    fn pop(&mut self) -> Option<Item> {
        let item = self.queue.pop_front()?;
        self.queued.remove(&item);
        Some(item)
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }
}

/// Resolves concept names to their stored normal forms.
pub trait Scope {
    fn concept(&self, name: &Ident) -> Option<&NormalizedConcept>;
}

/// A scope with no names in it.
pub struct EmptyScope;

impl Scope for EmptyScope {
    fn concept(&self, _: &Ident) -> Option<&NormalizedConcept> {
        None
    }
}

/// The reasoning procedures of one constructor.
///
/// Concept-level hooks work on normal forms; individual-level hooks run inside
/// an A-box transaction. `consistent_w_*` return `Ok(false)` for "unable to
/// prove" and signal `Inconsistent` for a definite contradiction.
#[allow(unused_variables)]
pub trait ConstructorHooks: Send + Sync {
    fn tag(&self) -> Tag;

    /// Bound to a single role.
    fn is_branch(&self) -> bool;

    /// Kind of value every term of this constructor forces.
    fn value_kind(&self) -> ValueKind;

    fn normalize_args(&self, k: &Kernel, d: &Description, scope: &dyn Scope) -> Result<Vec<Item>, Signal>;

    /// Surface form of a stored term.
    fn describe(&self, k: &Kernel, slot: &Slot, term: &Term) -> Vec<Description>;

    fn universal(&self, slot: &Slot, term: &Term) -> bool {
        false
    }

    fn incoherent(&self, slot: &Slot, term: &Term) -> bool {
        false
    }

    /// `low` implies `hi`, both of this constructor and slot.
    fn subsumes_same(&self, k: &Kernel, hi: &Term, low: &Term) -> bool;

    fn conjoin_to_same(&self, k: &Kernel, t: Term, old: &Term) -> Result<Term, Signal>;

    /// The other components of `this` already imply `t`.
    fn subsumes_different(&self, k: &Kernel, slot: &Slot, t: &Term, this: &NormalizedConcept) -> bool {
        false
    }

    fn conjoin_to_different(
        &self,
        k: &Kernel,
        slot: Slot,
        t: Term,
        this: &NormalizedConcept,
    ) -> Result<Item, Signal> {
        Ok(Item::new(slot, t))
    }

    fn consistent_with_different(
        &self,
        k: &Kernel,
        slot: &Slot,
        t: &Term,
        this: &NormalizedConcept,
    ) -> Result<(), Signal> {
        Ok(())
    }

    fn find_other_implications(
        &self,
        k: &Kernel,
        slot: &Slot,
        t: &Term,
        this: &NormalizedConcept,
        todo: &mut ImplicationsToDoList,
    ) {
    }

    fn recognizes(&self, cx: &mut IndividualCx<'_>, b: &Individual, slot: &Slot, t: &Term) -> bool {
        false
    }

    fn consistent_w_asserting(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
    ) -> Result<bool, Signal> {
        Ok(false)
    }

    fn consistent_w_filling(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
        role: &Ident,
        filler: &Individual,
    ) -> Result<bool, Signal> {
        Ok(false)
    }

    fn consistent_w_closing(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
        role: &Ident,
    ) -> Result<bool, Signal> {
        Ok(false)
    }

    fn infer_from_asserting(&self, cx: &mut IndividualCx<'_>, b: &Individual, slot: &Slot, t: &Term) {}

    fn infer_from_filling(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
        role: &Ident,
        filler: &Individual,
    ) {
    }

    fn infer_from_closing(&self, cx: &mut IndividualCx<'_>, b: &Individual, slot: &Slot, t: &Term, role: &Ident) {}

    /// Depends only on filler counts, so re-running it after another
    /// individual changes is pointless.
    fn count_only(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("constructor `{0}` is already registered")]
pub struct DuplicateConstructor(pub Tag);

/// Tag-indexed set of constructor hook bundles.
#[derive(Clone, Default)]
pub struct Registry {
    hooks: BTreeMap<Tag, Arc<dyn ConstructorHooks>>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    /// Every constructor shipped with the crate.
    pub fn with_builtins() -> Registry {
        let mut r = Registry::new();
        let bundles: Vec<Arc<dyn ConstructorHooks>> = vec![
            crate::constructors::all_hooks(),
            crate::constructors::some_hooks(),
            crate::constructors::bounds_hooks(),
            crate::constructors::fills_hooks(),
            crate::constructors::oneof_hooks(),
            crate::sameas::sameas_hooks(),
            crate::dates::range_hooks(),
            crate::dates::period_hooks(),
        ];
        for h in bundles {
            r.register(h).expect("built-in tags are distinct");
        }
        r
    }

    pub fn register(&mut self, h: Arc<dyn ConstructorHooks>) -> Result<(), DuplicateConstructor> {
        let tag = h.tag();
        if self.hooks.contains_key(tag) {
            return Err(DuplicateConstructor(tag));
        }
        self.hooks.insert(tag, h);
        Ok(())
    }

    pub fn get(&self, tag: &str) -> Option<&dyn ConstructorHooks> {
        self.hooks.get(tag).map(|h| h.as_ref())
    }

    pub fn tags(&self) -> impl Iterator<Item = Tag> + '_ {
        self.hooks.keys().copied()
    }
}

/// What happened to one term offered to a concept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjoined {
    Stored,
    Redundant,
    Posted,
}

/// The conjunction engine over a frozen registry.
#[derive(Clone)]
pub struct Kernel {
    registry: Arc<Registry>,
    budget: usize,
}

impl Default for Kernel {
    fn default() -> Self {
        Kernel::new(Registry::with_builtins())
    }
}

impl Kernel {
    pub fn new(registry: Registry) -> Kernel {
        Kernel { registry: Arc::new(registry), budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: usize) -> Kernel {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn hooks(&self, tag: &str) -> Result<&dyn ConstructorHooks, Signal> {
        self.registry
            .get(tag)
            .ok_or_else(|| Signal::Unsupported(format!("no constructor registered for `{tag}`")))
    }

    pub fn normalize(&self, d: &Description, scope: &dyn Scope) -> Result<NormalizedConcept, Signal> {
        let mut nc = NormalizedConcept::thing();
        let mut todo = ImplicationsToDoList::default();
        self.add_description(d, scope, &mut nc, &mut todo)?;
        self.drain(&mut nc, &mut todo)?;
        self.prune(&mut nc);
        Ok(nc)
    }

    /// Like [`Kernel::normalize`] but maps incoherence to NOTHING.
    pub fn normalize_or_nothing(&self, d: &Description, scope: &dyn Scope) -> Result<NormalizedConcept, Signal> {
        match self.normalize(d, scope) {
            Err(Signal::Incoherent) => Ok(NormalizedConcept::nothing()),
            other => other,
        }
    }

    fn add_description(
        &self,
        d: &Description,
        scope: &dyn Scope,
        nc: &mut NormalizedConcept,
        todo: &mut ImplicationsToDoList,
    ) -> Result<(), Signal> {
        match d {
            Description::ThingRef => Ok(()),
            Description::NothingRef => Err(Signal::Incoherent),
            Description::AnyDate => nc.merge_kind(ValueKind::Date),
            Description::NameRef(n) => {
                let stored = scope
                    .concept(n)
                    .ok_or_else(|| Signal::Unsupported(format!("undeclared concept `{n}`")))?;
                self.add_concept(stored, nc, todo)
            }
            Description::And(parts) => {
                parts.iter().try_for_each(|p| self.add_description(p, scope, nc, todo))
            }
            other => {
                let tag = other.constructor_tag().expect("every other variant has a constructor");
                let h = self.hooks(tag)?;
                for item in h.normalize_args(self, other, scope)? {
                    self.conjoin_item(item, nc, todo)?;
                }
                Ok(())
            }
        }
    }

    fn add_concept(
        &self,
        from: &NormalizedConcept,
        onto: &mut NormalizedConcept,
        todo: &mut ImplicationsToDoList,
    ) -> Result<(), Signal> {
        if from.incoherent {
            return Err(Signal::Incoherent);
        }
        onto.merge_kind(from.kind)?;
        onto.atoms.extend(from.atoms.iter().cloned());
        for (slot, term) in &from.components {
            self.conjoin_item(Item::new(slot.clone(), term.clone()), onto, todo)?;
        }
        Ok(())
    }

    /// Conjoins `from` onto `onto`. On `Incoherent`, `onto` is left in an
    /// unspecified state and must be discarded.
    pub fn conjoin(&self, from: &NormalizedConcept, onto: &mut NormalizedConcept) -> Result<(), Signal> {
        if onto.incoherent {
            return Err(Signal::Incoherent);
        }
        let mut todo = ImplicationsToDoList::default();
        self.add_concept(from, onto, &mut todo)?;
        self.drain(onto, &mut todo)?;
        self.prune(onto);
        Ok(())
    }

    /// Conjunction of two normal forms, NOTHING when incoherent.
    pub fn meet(&self, a: &NormalizedConcept, b: &NormalizedConcept) -> Result<NormalizedConcept, Signal> {
        let mut out = a.clone();
        match self.conjoin(b, &mut out) {
            Ok(()) => Ok(out),
            Err(Signal::Incoherent) => Ok(NormalizedConcept::nothing()),
            Err(e) => Err(e),
        }
    }

    /// One term through the generic conjoin skeleton.
    pub fn conjoin_item(
        &self,
        item: Item,
        onto: &mut NormalizedConcept,
        todo: &mut ImplicationsToDoList,
    ) -> Result<Conjoined, Signal> {
        let h = self.hooks(item.slot.tag)?;
        onto.merge_kind(h.value_kind())?;
        let Item { slot, mut term } = item;
        if h.universal(&slot, &term) {
            return Ok(Conjoined::Redundant);
        }
        if h.incoherent(&slot, &term) {
            return Err(Signal::Incoherent);
        }
        if let Some(old) = onto.components.get(&slot) {
            if h.subsumes_same(self, &term, old) {
                return Ok(Conjoined::Redundant);
            }
            term = h.conjoin_to_same(self, term, old)?;
            if h.incoherent(&slot, &term) {
                return Err(Signal::Incoherent);
            }
        }
        if h.subsumes_different(self, &slot, &term, onto) {
            return Ok(Conjoined::Redundant);
        }
        let stronger = h.conjoin_to_different(self, slot, term, onto)?;
        if stronger.slot.tag != h.tag() {
            todo.post(stronger);
            return Ok(Conjoined::Posted);
        }
        let Item { slot, term } = stronger;
        if h.incoherent(&slot, &term) {
            return Err(Signal::Incoherent);
        }
        h.consistent_with_different(self, &slot, &term, onto)?;
        onto.components.insert(slot.clone(), term);
        let stored = &onto.components[&slot];
        h.find_other_implications(self, &slot, stored, onto, todo);
        Ok(Conjoined::Stored)
    }

    fn drain(&self, nc: &mut NormalizedConcept, todo: &mut ImplicationsToDoList) -> Result<(), Signal> {
        let mut steps = 0;
        while let Some(item) = todo.pop() {
            steps += 1;
            if steps > self.budget {
                return Err(Signal::ResourceLimit(self.budget));
            }
            self.conjoin_item(item, nc, todo)?;
        }
        Ok(())
    }

    /// Drops components the rest of the concept already implies, so the
    /// stored form does not depend on conjunction order.
    fn prune(&self, nc: &mut NormalizedConcept) {
        let slots: Vec<Slot> = nc.components.keys().cloned().collect();
        for slot in slots {
            let Some(h) = self.registry.get(slot.tag) else { continue };
            let term = nc.components.remove(&slot).expect("slot listed above");
            if !h.subsumes_different(self, &slot, &term, nc) {
                nc.components.insert(slot, term);
            }
        }
    }

    /// Does `hi` subsume `low`?
    pub fn subsumes(&self, hi: &NormalizedConcept, low: &NormalizedConcept) -> bool {
        if low.incoherent {
            return true;
        }
        if hi.incoherent {
            return false;
        }
        if hi.is_thing() {
            return true;
        }
        if hi.kind != ValueKind::Unknown && hi.kind != low.kind {
            return false;
        }
        if !hi.atoms.is_subset(&low.atoms) {
            return false;
        }
        hi.components.iter().all(|(slot, t)| self.component_subsumed(slot, t, low))
    }

    /// `low` implies the single component `t` stored at `slot`.
    pub fn component_subsumed(&self, slot: &Slot, t: &Term, low: &NormalizedConcept) -> bool {
        let Some(h) = self.registry.get(slot.tag) else { return false };
        low.components.get(slot).is_some_and(|lt| h.subsumes_same(self, t, lt))
            || h.subsumes_different(self, slot, t, low)
    }

    pub fn equivalent(&self, a: &NormalizedConcept, b: &NormalizedConcept) -> bool {
        self.subsumes(a, b) && self.subsumes(b, a)
    }

    /// A description that normalizes back to an equivalent concept.
    pub fn describe(&self, nc: &NormalizedConcept) -> Description {
        if nc.incoherent {
            return Description::NothingRef;
        }
        let mut parts: Vec<Description> =
            nc.atoms.iter().map(|a| Description::NameRef(a.clone())).collect();
        for (slot, term) in &nc.components {
            if let Some(h) = self.registry.get(slot.tag) {
                parts.extend(h.describe(self, slot, term));
            }
        }
        match parts.len() {
            0 => match nc.kind {
                ValueKind::Unknown => Description::ThingRef,
                ValueKind::Object => Description::name(crate::tbox::ANY_OBJECT),
                ValueKind::Date => Description::AnyDate,
            },
            1 => parts.pop().unwrap(),
            _ => Description::And(parts),
        }
    }

    pub fn render(&self, nc: &NormalizedConcept) -> String {
        self.describe(nc).to_string()
    }
}
