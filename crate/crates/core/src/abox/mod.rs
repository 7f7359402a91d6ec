//! Individuals and the incremental update engine.
//!
//! A [`KnowledgeBase`] couples a [`Tbox`] with one [`Record`] per individual.
//! Every assertion runs as a transaction: it either commits with all of its
//! consequences or is rolled back without a trace.

mod engine;
mod record;
mod report;

use std::collections::{BTreeMap, BTreeSet};

pub use record::{Link, LinkKind, Record, RoleState};
pub use report::{rejection_line, KbError, UpdateReport};

use crate::kernel::{IndividualCx, KbView, Kernel, NormalizedConcept, Signal, Update, DEFAULT_BUDGET};
use crate::syntax::{Description, Ident, Individual, KbCommand};
use crate::tbox::{ClassificationReport, Tbox, TboxError};
use engine::Txn;

/// How news about one individual reaches checks pending on others.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Propagation {
    /// Dependency links fire the affected checks only.
    #[default]
    Links,
    /// Links are ignored; every individual is re-run until nothing changes.
    Rescan,
}

/// Hook-call counters, for observing how far propagation reached.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Membership updates queued per target individual.
    pub member_posts: BTreeMap<Individual, usize>,
}

/// What executing one command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Declared,
    Classified(ClassificationReport),
    Updated(UpdateReport),
    Answer(bool),
    Names(Vec<String>),
}

#[derive(Clone)]
pub struct KnowledgeBase {
    tbox: Tbox,
    records: BTreeMap<Individual, Record>,
    propagation: Propagation,
    budget: usize,
    stats: Stats,
}

impl Default for KnowledgeBase {
    fn default() -> Self {
        KnowledgeBase::new(Tbox::default())
    }
}

impl KbView for KnowledgeBase {
    fn kernel(&self) -> &Kernel {
        self.tbox.kernel()
    }

    fn descriptor(&self, b: &Individual) -> Option<&NormalizedConcept> {
        self.records.get(b).map(|r| &r.descriptor)
    }

    fn fillers(&self, b: &Individual, role: &Ident) -> Option<&BTreeSet<Individual>> {
        self.records.get(b)?.roles.get(role).map(|r| &r.fillers)
    }

    fn is_closed(&self, b: &Individual, role: &Ident) -> bool {
        self.records.get(b).and_then(|r| r.roles.get(role)).is_some_and(|r| r.closed)
    }

    fn is_attribute(&self, role: &Ident) -> bool {
        self.tbox.is_attribute(role)
    }
}

impl KnowledgeBase {
    pub fn new(tbox: Tbox) -> KnowledgeBase {
        KnowledgeBase {
            tbox,
            records: BTreeMap::new(),
            propagation: Propagation::Links,
            budget: DEFAULT_BUDGET,
            stats: Stats::default(),
        }
    }

    pub fn with_propagation(mut self, p: Propagation) -> KnowledgeBase {
        self.propagation = p;
        self
    }

    /// Step budget of one transaction.
    pub fn with_budget(mut self, budget: usize) -> KnowledgeBase {
        self.budget = budget;
        self
    }

    pub fn tbox(&self) -> &Tbox {
        &self.tbox
    }

    pub fn kernel(&self) -> &Kernel {
        self.tbox.kernel()
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn member_posts(&self, b: &Individual) -> usize {
        self.stats.member_posts.get(b).copied().unwrap_or(0)
    }

    pub fn record(&self, b: &Individual) -> Option<&Record> {
        self.records.get(b)
    }

    pub fn individuals(&self) -> impl Iterator<Item = &Individual> {
        self.records.keys()
    }

    // ----- declarations -----

    pub fn declare_role(&mut self, name: &Ident) -> Result<(), KbError> {
        Ok(self.tbox.declare_role(name)?)
    }

    pub fn declare_attribute(&mut self, name: &Ident) -> Result<(), KbError> {
        Ok(self.tbox.declare_attribute(name)?)
    }

    pub fn declare_individual(&mut self, name: &Ident) -> Result<(), KbError> {
        self.tbox.declare_individual(name)?;
        let b = Individual::Named(name.clone());
        let mut txn = Txn::default();
        self.ensure(&mut txn, &b);
        self.finish(txn).map(|_| ())
    }

    pub fn declare_primitive_concept(&mut self, name: &Ident, d: &Description) -> Result<ClassificationReport, KbError> {
        self.declare_concept(|t| t.declare_primitive_concept(name, d))
    }

    pub fn declare_defined_concept(&mut self, name: &Ident, d: &Description) -> Result<ClassificationReport, KbError> {
        self.declare_concept(|t| t.declare_defined_concept(name, d))
    }

    /// A new concept may be recognized in existing individuals, so all of
    /// them are reclassified.
    fn declare_concept(
        &mut self,
        declare: impl FnOnce(&mut Tbox) -> Result<ClassificationReport, TboxError>,
    ) -> Result<ClassificationReport, KbError> {
        let saved = self.tbox.clone();
        let report = declare(&mut self.tbox)?;
        let mut txn = Txn::default();
        for b in self.records.keys() {
            txn.reclassify.push(b.clone());
        }
        if let Err(e) = self.finish(txn) {
            self.tbox = saved;
            return Err(e);
        }
        Ok(report)
    }

    // ----- assertions -----

    pub fn assert_member(&mut self, b: &Individual, c: &Description) -> Result<UpdateReport, KbError> {
        let u = self.member_update(b, c)?;
        self.transact(vec![u])
    }

    pub fn assert_fills(&mut self, b: &Individual, p: &Ident, e: &Individual) -> Result<UpdateReport, KbError> {
        let u = self.fills_update(b, p, e)?;
        self.transact(vec![u])
    }

    pub fn assert_closed(&mut self, b: &Individual, p: &Ident) -> Result<UpdateReport, KbError> {
        let u = self.close_update(b, p)?;
        self.transact(vec![u])
    }

    /// Several assertions as one transaction.
    pub fn assert_all(&mut self, cmds: &[KbCommand]) -> Result<UpdateReport, KbError> {
        let mut updates = Vec::with_capacity(cmds.len());
        for c in cmds {
            updates.push(match c {
                KbCommand::AssertMember(b, d) => self.member_update(b, d)?,
                KbCommand::AssertFills(b, p, e) => self.fills_update(b, p, e)?,
                KbCommand::AssertClosed(b, p) => self.close_update(b, p)?,
                other => {
                    return Err(KbError::Rejected(Signal::Unsupported(format!(
                        "{} is not an assertion",
                        other.keyword()
                    ))))
                }
            });
        }
        self.transact(updates)
    }

    fn member_update(&self, b: &Individual, c: &Description) -> Result<Update, KbError> {
        self.tbox.check_individual(b)?;
        let concept = self.tbox.normalize(c)?;
        Ok(Update::Member { ind: b.clone(), concept })
    }

    fn fills_update(&self, b: &Individual, p: &Ident, e: &Individual) -> Result<Update, KbError> {
        self.tbox.check_individual(b)?;
        self.check_role(p)?;
        self.tbox.check_individual(e)?;
        Ok(Update::Fills { ind: b.clone(), role: p.clone(), filler: e.clone() })
    }

    fn close_update(&self, b: &Individual, p: &Ident) -> Result<Update, KbError> {
        self.tbox.check_individual(b)?;
        self.check_role(p)?;
        Ok(Update::Close { ind: b.clone(), role: p.clone() })
    }

    fn check_role(&self, p: &Ident) -> Result<(), KbError> {
        if self.tbox.is_role(p) {
            Ok(())
        } else {
            Err(TboxError::Undeclared { name: p.to_string(), expected: "role" }.into())
        }
    }

    fn transact(&mut self, updates: Vec<Update>) -> Result<UpdateReport, KbError> {
        let mut txn = Txn::default();
        txn.asserted = updates.iter().cloned().collect();
        for u in &updates {
            self.ensure(&mut txn, u.subject());
        }
        self.enqueue(&mut txn, updates);
        self.finish(txn)
    }

    /// Runs a transaction to quiescence, then commits or rolls back.
    fn finish(&mut self, mut txn: Txn) -> Result<UpdateReport, KbError> {
        let run = self.process(&mut txn).and_then(|()| match self.propagation {
            Propagation::Links => Ok(()),
            Propagation::Rescan => self.rescan(&mut txn),
        });
        match run {
            Ok(()) => Ok(UpdateReport { redundant: txn.changes == 0, derived: txn.derived.iter().cloned().collect() }),
            Err(s) => {
                self.rollback(txn);
                Err(KbError::Rejected(s))
            }
        }
    }

    // ----- queries -----

    pub fn descriptor(&self, b: &Individual) -> NormalizedConcept {
        IndividualCx::new(self).descriptor(b).into_owned()
    }

    /// Most specific named concepts of `b`.
    pub fn classes(&self, b: &Individual) -> BTreeSet<Ident> {
        self.records.get(b).map(|r| r.classes.clone()).unwrap_or_default()
    }

    pub fn ask_member(&self, b: &Individual, c: &Description) -> Result<bool, KbError> {
        self.tbox.check_individual(b)?;
        let nf = self.tbox.normalize(c)?;
        Ok(self.is_member(b, &nf))
    }

    fn is_member(&self, b: &Individual, nf: &NormalizedConcept) -> bool {
        let mut cx = IndividualCx::new(self);
        self.kernel().subsumes(nf, &cx.descriptor(b)) || cx.recognizes_concept(b, nf)
    }

    /// Provable non-membership: asserting `c` would be rejected, or `c`
    /// restricts a role with a filler provably outside the restriction.
    pub fn ask_non_member(&self, b: &Individual, c: &Description) -> Result<bool, KbError> {
        self.tbox.check_individual(b)?;
        self.tbox.check_scope(c)?;
        Ok(self.non_member(b, c))
    }

    fn non_member(&self, b: &Individual, c: &Description) -> bool {
        let hypothetical = match self.member_update(b, c) {
            Ok(u) => {
                let mut probe = self.clone();
                matches!(probe.transact(vec![u]), Err(KbError::Rejected(Signal::Inconsistent(_))))
            }
            Err(_) => false,
        };
        hypothetical || self.non_member_by_parts(b, c)
    }

    fn non_member_by_parts(&self, b: &Individual, c: &Description) -> bool {
        match c {
            Description::And(ds) => ds.iter().any(|d| self.non_member_by_parts(b, d)),
            Description::All(p, r) => self.fillers_of(b, p).iter().any(|e| self.non_member(e, r)),
            _ => false,
        }
    }

    fn fillers_of(&self, b: &Individual, p: &Ident) -> Vec<Individual> {
        KbView::fillers(self, b, p).map(|s| s.iter().cloned().collect()).unwrap_or_default()
    }

    pub fn ask_for_fillers(&self, b: &Individual, p: &Ident) -> Result<Vec<Individual>, KbError> {
        self.tbox.check_individual(b)?;
        self.check_role(p)?;
        Ok(self.fillers_of(b, p))
    }

    pub fn ask_closed(&self, b: &Individual, p: &Ident) -> Result<bool, KbError> {
        self.tbox.check_individual(b)?;
        self.check_role(p)?;
        Ok(KbView::is_closed(self, b, p))
    }

    /// Canonical text of the whole state: equal states give equal text.
    pub fn fingerprint(&self) -> String {
        let mut out = self.tbox.fingerprint();
        let k = self.kernel();
        for (b, r) in &self.records {
            out.push_str(&format!("individual {b}\n  is {}\n", k.render(&r.descriptor)));
            for (p, rs) in &r.roles {
                let fillers: Vec<String> = rs.fillers.iter().map(ToString::to_string).collect();
                let closed = if rs.closed { " closed" } else { "" };
                out.push_str(&format!("  {p} ({}){closed}\n", fillers.join(" ")));
            }
            let classes: Vec<&str> = r.classes.iter().map(Ident::as_str).collect();
            out.push_str(&format!("  classes ({})\n", classes.join(" ")));
            for l in &r.links {
                out.push_str(&format!("  link {} -> {} [{}]\n", l.kind, l.target, l.context));
            }
        }
        out
    }

    /// Executes one command of the surface language.
    pub fn execute(&mut self, cmd: &KbCommand) -> Result<Outcome, KbError> {
        let names = |v: Vec<Ident>| Outcome::Names(v.into_iter().map(|n| n.to_string()).collect());
        Ok(match cmd {
            KbCommand::DeclarePrimitiveRole(n) => self.declare_role(n).map(|()| Outcome::Declared)?,
            KbCommand::DeclarePrimitiveAttribute(n) => self.declare_attribute(n).map(|()| Outcome::Declared)?,
            KbCommand::DeclareIndividual(n) => self.declare_individual(n).map(|()| Outcome::Declared)?,
            KbCommand::DeclarePrimitiveConcept(n, d) => Outcome::Classified(self.declare_primitive_concept(n, d)?),
            KbCommand::DeclareDefinedConcept(n, d) => Outcome::Classified(self.declare_defined_concept(n, d)?),
            KbCommand::AssertMember(b, d) => Outcome::Updated(self.assert_member(b, d)?),
            KbCommand::AssertFills(b, p, e) => Outcome::Updated(self.assert_fills(b, p, e)?),
            KbCommand::AssertClosed(b, p) => Outcome::Updated(self.assert_closed(b, p)?),
            KbCommand::AskSubsumes(hi, low) => Outcome::Answer(self.tbox.ask_subsumes(hi, low)?),
            KbCommand::AskAncestors(c) => names(self.tbox.ask_ancestors(c)?),
            KbCommand::AskIsIncoherent(c) => Outcome::Answer(self.tbox.ask_is_incoherent(c)?),
            KbCommand::AskMember(b, c) => Outcome::Answer(self.ask_member(b, c)?),
            KbCommand::AskNonMember(b, c) => Outcome::Answer(self.ask_non_member(b, c)?),
            KbCommand::AskForFillers(b, p) => {
                Outcome::Names(self.ask_for_fillers(b, p)?.iter().map(ToString::to_string).collect())
            }
            KbCommand::AskClosed(b, p) => Outcome::Answer(self.ask_closed(b, p)?),
        })
    }
}
