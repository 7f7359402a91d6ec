//! Symbol tables, concept declarations and the classified IsA hierarchy.
//!
//! Named concepts live in one namespace with roles, attributes and
//! individuals. Every description is scope-checked before it is normalized,
//! so names always refer to earlier declarations and the terminology cannot
//! be recursive.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::kernel::{Kernel, NormalizedConcept, Scope, Signal, ValueKind};
use crate::syntax::{Description, Ident, Individual};

pub const THING: &str = "THING";
pub const NOTHING: &str = "NOTHING";
pub const ANY_OBJECT: &str = "ANY-OBJECT";
pub const ANY_DATE: &str = "ANY-DATE";

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConceptKind {
    Builtin,
    Primitive,
    Defined,
}

#[derive(Clone, Debug)]
pub struct ConceptEntry {
    pub kind: ConceptKind,
    pub source: Description,
    pub nf: NormalizedConcept,
}

/// What sort of symbol a name was declared as.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sort {
    Role,
    Attribute,
    Individual,
    Concept,
}

impl Sort {
    fn noun(self) -> &'static str {
        match self {
            Sort::Role => "role",
            Sort::Attribute => "attribute",
            Sort::Individual => "individual",
            Sort::Concept => "concept",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TboxError {
    #[error("`{0}` is already declared as a {1}")]
    Redeclared(Ident, &'static str),
    #[error("`{name}` is not a declared {expected}")]
    Undeclared { name: String, expected: &'static str },
    #[error(transparent)]
    Signal(#[from] Signal),
}

/// Outcome of classifying one new concept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub name: Ident,
    pub parents: BTreeSet<Ident>,
    pub children: BTreeSet<Ident>,
    /// Earlier names with the same denotation.
    pub equivalent: BTreeSet<Ident>,
    pub incoherent: bool,
}

impl ClassificationReport {
    pub fn is_redundant(&self) -> bool {
        !self.incoherent && !self.equivalent.is_empty()
    }
}

type NodeId = usize;

/// One equivalence class of named concepts.
#[derive(Clone, Debug)]
struct Node {
    names: BTreeSet<Ident>,
    nf: NormalizedConcept,
    parents: BTreeSet<NodeId>,
    children: BTreeSet<NodeId>,
}

/// Transitively reduced subsumption order over equivalence classes.
#[derive(Clone, Debug)]
struct Dag {
    nodes: Vec<Node>,
    of: BTreeMap<Ident, NodeId>,
}

const TOP: NodeId = 0;
const BOTTOM: NodeId = 1;

impl Dag {
    fn new() -> Dag {
        let node = |name: &str, nf: NormalizedConcept| Node {
            names: [Ident::new(name)].into(),
            nf,
            parents: BTreeSet::new(),
            children: BTreeSet::new(),
        };
        let mut dag = Dag {
            nodes: vec![node(THING, NormalizedConcept::thing()), node(NOTHING, NormalizedConcept::nothing())],
            of: BTreeMap::new(),
        };
        dag.of.insert(Ident::new(THING), TOP);
        dag.of.insert(Ident::new(NOTHING), BOTTOM);
        dag.link(TOP, BOTTOM);
        dag
    }

    fn link(&mut self, parent: NodeId, child: NodeId) {
        self.nodes[parent].children.insert(child);
        self.nodes[child].parents.insert(parent);
    }

    fn unlink(&mut self, parent: NodeId, child: NodeId) {
        self.nodes[parent].children.remove(&child);
        self.nodes[child].parents.remove(&parent);
    }

    fn descendants(&self, n: NodeId) -> BTreeSet<NodeId> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<NodeId> = self.nodes[n].children.iter().copied().collect();
        while let Some(m) = queue.pop_front() {
            if seen.insert(m) {
                queue.extend(self.nodes[m].children.iter().copied());
            }
        }
        seen
    }

    fn ancestors(&self, n: NodeId) -> BTreeSet<NodeId> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<NodeId> = self.nodes[n].parents.iter().copied().collect();
        while let Some(m) = queue.pop_front() {
            if seen.insert(m) {
                queue.extend(self.nodes[m].parents.iter().copied());
            }
        }
        seen
    }

    fn names(&self, ids: &BTreeSet<NodeId>) -> BTreeSet<Ident> {
        ids.iter().flat_map(|&i| self.nodes[i].names.iter().cloned()).collect()
    }

    /// Places `name` and returns (parents, children, equivalent names).
    fn insert(&mut self, k: &Kernel, name: Ident, nf: &NormalizedConcept) -> (BTreeSet<NodeId>, BTreeSet<NodeId>, BTreeSet<Ident>) {
        if nf.is_incoherent() {
            return self.join(BOTTOM, name);
        }
        // Top-down: the most specific classes above `nf`.
        let mut above: BTreeMap<NodeId, bool> = BTreeMap::new();
        let mut test = |dag: &Dag, n: NodeId| *above.entry(n).or_insert_with(|| k.subsumes(&dag.nodes[n].nf, nf));
        let mut parents = BTreeSet::new();
        let mut visited = BTreeSet::new();
        let mut queue = VecDeque::from([TOP]);
        while let Some(n) = queue.pop_front() {
            if !visited.insert(n) {
                continue;
            }
            let lower: Vec<NodeId> =
                self.nodes[n].children.iter().copied().filter(|&c| c != BOTTOM && test(self, c)).collect();
            if lower.is_empty() {
                parents.insert(n);
            }
            queue.extend(lower);
        }
        // A parent it also subsumes is an equivalent class.
        if let Some(&same) = parents.iter().find(|&&p| k.subsumes(nf, &self.nodes[p].nf)) {
            return self.join(same, name);
        }
        // Bottom-up among the common descendants of the parents.
        let mut candidates: Option<BTreeSet<NodeId>> = None;
        for &p in &parents {
            let d = self.descendants(p);
            candidates = Some(match candidates {
                None => d,
                Some(c) => c.intersection(&d).copied().collect(),
            });
        }
        let below: BTreeSet<NodeId> = candidates
            .unwrap_or_default()
            .into_iter()
            .filter(|&m| m != BOTTOM && k.subsumes(nf, &self.nodes[m].nf))
            .collect();
        let mut children: BTreeSet<NodeId> =
            below.iter().copied().filter(|&m| self.ancestors(m).is_disjoint(&below)).collect();
        if children.is_empty() {
            children.insert(BOTTOM);
        }
        let id = self.nodes.len();
        self.nodes.push(Node {
            names: [name.clone()].into(),
            nf: nf.clone(),
            parents: BTreeSet::new(),
            children: BTreeSet::new(),
        });
        self.of.insert(name, id);
        for &p in &parents {
            for &c in &children {
                self.unlink(p, c);
            }
            self.link(p, id);
        }
        for &c in &children {
            self.link(id, c);
        }
        (parents, children, BTreeSet::new())
    }

    fn join(&mut self, n: NodeId, name: Ident) -> (BTreeSet<NodeId>, BTreeSet<NodeId>, BTreeSet<Ident>) {
        let equivalent = self.nodes[n].names.clone();
        self.nodes[n].names.insert(name.clone());
        self.of.insert(name, n);
        (self.nodes[n].parents.clone(), self.nodes[n].children.clone(), equivalent)
    }
}

/// The terminological component.
#[derive(Clone)]
pub struct Tbox {
    kernel: Kernel,
    sorts: BTreeMap<Ident, Sort>,
    concepts: BTreeMap<Ident, ConceptEntry>,
    dag: Dag,
}

impl Default for Tbox {
    fn default() -> Self {
        Tbox::new(Kernel::default())
    }
}

impl Scope for Tbox {
    fn concept(&self, name: &Ident) -> Option<&NormalizedConcept> {
        self.concepts.get(name).map(|e| &e.nf)
    }
}

impl Tbox {
    pub fn new(kernel: Kernel) -> Tbox {
        let mut t = Tbox { kernel, sorts: BTreeMap::new(), concepts: BTreeMap::new(), dag: Dag::new() };
        let builtins = [
            (THING, Description::ThingRef, NormalizedConcept::thing()),
            (NOTHING, Description::NothingRef, NormalizedConcept::nothing()),
            (ANY_OBJECT, Description::name(ANY_OBJECT), NormalizedConcept::of_kind(ValueKind::Object)),
            (ANY_DATE, Description::AnyDate, NormalizedConcept::of_kind(ValueKind::Date)),
        ];
        for (name, source, nf) in builtins {
            let name = Ident::new(name);
            t.sorts.insert(name.clone(), Sort::Concept);
            if name.as_str() == ANY_OBJECT || name.as_str() == ANY_DATE {
                let k = t.kernel.clone();
                t.dag.insert(&k, name.clone(), &nf);
            }
            t.concepts.insert(name, ConceptEntry { kind: ConceptKind::Builtin, source, nf });
        }
        t
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn sort_of(&self, name: &Ident) -> Option<Sort> {
        self.sorts.get(name).copied()
    }

    pub fn is_role(&self, name: &Ident) -> bool {
        matches!(self.sort_of(name), Some(Sort::Role | Sort::Attribute))
    }

    pub fn is_attribute(&self, name: &Ident) -> bool {
        self.sort_of(name) == Some(Sort::Attribute)
    }

    pub fn is_individual(&self, name: &Ident) -> bool {
        self.sort_of(name) == Some(Sort::Individual)
    }

    pub fn entry(&self, name: &Ident) -> Option<&ConceptEntry> {
        self.concepts.get(name)
    }

    /// Named concepts in name order.
    pub fn concepts(&self) -> impl Iterator<Item = (&Ident, &ConceptEntry)> {
        self.concepts.iter()
    }

    pub fn individuals(&self) -> impl Iterator<Item = &Ident> {
        self.sorts.iter().filter(|(_, s)| **s == Sort::Individual).map(|(n, _)| n)
    }

    fn declare(&mut self, name: &Ident, sort: Sort) -> Result<(), TboxError> {
        if let Some(s) = self.sorts.get(name) {
            return Err(TboxError::Redeclared(name.clone(), s.noun()));
        }
        self.sorts.insert(name.clone(), sort);
        Ok(())
    }

    pub fn declare_role(&mut self, name: &Ident) -> Result<(), TboxError> {
        self.declare(name, Sort::Role)
    }

    pub fn declare_attribute(&mut self, name: &Ident) -> Result<(), TboxError> {
        self.declare(name, Sort::Attribute)
    }

    pub fn declare_individual(&mut self, name: &Ident) -> Result<(), TboxError> {
        self.declare(name, Sort::Individual)
    }

    fn expect(&self, name: &Ident, ok: bool, expected: &'static str) -> Result<(), TboxError> {
        if ok {
            Ok(())
        } else {
            Err(TboxError::Undeclared { name: name.to_string(), expected })
        }
    }

    /// Every name in `d` must already be declared with the right sort.
    pub fn check_scope(&self, d: &Description) -> Result<(), TboxError> {
        match d {
            Description::ThingRef | Description::NothingRef | Description::AnyDate => Ok(()),
            Description::DateRangeLit(_) | Description::PeriodLit { .. } => Ok(()),
            Description::NameRef(n) => self.expect(n, self.concepts.contains_key(n), "concept"),
            Description::And(ds) => ds.iter().try_for_each(|d| self.check_scope(d)),
            Description::All(p, c) | Description::Some(p, c) => {
                self.expect(p, self.is_role(p), "role")?;
                self.check_scope(c)
            }
            Description::AtLeast(_, p) | Description::AtMost(_, p) => self.expect(p, self.is_role(p), "role"),
            Description::Fills(p, b) => {
                self.expect(p, self.is_role(p), "role")?;
                self.check_individual(b)
            }
            Description::OneOf(bs) => bs.iter().try_for_each(|b| match b {
                Individual::Named(n) => self.expect(n, self.is_individual(n), "individual"),
                Individual::Date(d) => {
                    Err(TboxError::Undeclared { name: d.to_string(), expected: "named individual" })
                }
            }),
            Description::SameAs(a, b) => {
                a.iter().chain(b).try_for_each(|f| self.expect(f, self.is_attribute(f), "attribute"))
            }
        }
    }

    pub fn check_individual(&self, b: &Individual) -> Result<(), TboxError> {
        match b {
            Individual::Named(n) => self.expect(n, self.is_individual(n), "individual"),
            Individual::Date(_) => Ok(()),
        }
    }

    /// Scope-checked normal form; incoherence yields NOTHING.
    pub fn normalize(&self, d: &Description) -> Result<NormalizedConcept, TboxError> {
        self.check_scope(d)?;
        Ok(self.kernel.normalize_or_nothing(d, self)?)
    }

    pub fn declare_primitive_concept(&mut self, name: &Ident, d: &Description) -> Result<ClassificationReport, TboxError> {
        self.check_fresh(name)?;
        let mut nf = self.normalize(d)?;
        if !nf.is_incoherent() {
            let mut atom = NormalizedConcept::of_kind(match nf.kind() {
                ValueKind::Unknown => ValueKind::Object,
                k => k,
            });
            atom.add_atom(name.clone());
            nf = self.kernel.meet(&nf, &atom)?;
        }
        Ok(self.add_concept(name, ConceptKind::Primitive, d, nf))
    }

    pub fn declare_defined_concept(&mut self, name: &Ident, d: &Description) -> Result<ClassificationReport, TboxError> {
        self.check_fresh(name)?;
        let nf = self.normalize(d)?;
        Ok(self.add_concept(name, ConceptKind::Defined, d, nf))
    }

    fn check_fresh(&self, name: &Ident) -> Result<(), TboxError> {
        match self.sorts.get(name) {
            Some(s) => Err(TboxError::Redeclared(name.clone(), s.noun())),
            None => Ok(()),
        }
    }

    fn add_concept(&mut self, name: &Ident, kind: ConceptKind, d: &Description, nf: NormalizedConcept) -> ClassificationReport {
        let (parents, children, equivalent) = self.dag.insert(&self.kernel, name.clone(), &nf);
        self.sorts.insert(name.clone(), Sort::Concept);
        let incoherent = nf.is_incoherent();
        self.concepts.insert(name.clone(), ConceptEntry { kind, source: d.clone(), nf });
        ClassificationReport {
            name: name.clone(),
            parents: self.dag.names(&parents),
            children: self.dag.names(&children),
            equivalent,
            incoherent,
        }
    }

    /// Does `hi` subsume `low`?
    pub fn ask_subsumes(&self, hi: &Description, low: &Description) -> Result<bool, TboxError> {
        Ok(self.kernel.subsumes(&self.normalize(hi)?, &self.normalize(low)?))
    }

    /// Every declared name whose concept subsumes `c`, sorted.
    pub fn ask_ancestors(&self, c: &Description) -> Result<Vec<Ident>, TboxError> {
        let nf = self.normalize(c)?;
        Ok(self.concepts.iter().filter(|(_, e)| self.kernel.subsumes(&e.nf, &nf)).map(|(n, _)| n.clone()).collect())
    }

    pub fn ask_is_incoherent(&self, c: &Description) -> Result<bool, TboxError> {
        Ok(self.normalize(c)?.is_incoherent())
    }

    /// Names in the classes directly above `name`.
    pub fn parents(&self, name: &Ident) -> BTreeSet<Ident> {
        self.dag.of.get(name).map_or_else(BTreeSet::new, |&n| self.dag.names(&self.dag.nodes[n].parents))
    }

    pub fn children(&self, name: &Ident) -> BTreeSet<Ident> {
        self.dag.of.get(name).map_or_else(BTreeSet::new, |&n| self.dag.names(&self.dag.nodes[n].children))
    }

    /// Names sharing `name`'s class, including itself.
    pub fn equivalents(&self, name: &Ident) -> BTreeSet<Ident> {
        self.dag.of.get(name).map_or_else(BTreeSet::new, |&n| self.dag.nodes[n].names.clone())
    }

    /// Is `hi` strictly above `low` in the hierarchy?
    pub fn strictly_above(&self, hi: &Ident, low: &Ident) -> bool {
        match (self.dag.of.get(hi), self.dag.of.get(low)) {
            (Some(&h), Some(&l)) => h != l && self.dag.ancestors(l).contains(&h),
            _ => false,
        }
    }

    /// Every (parent, child) name pair of the hierarchy, class by class.
    pub fn edges(&self) -> BTreeSet<(Ident, Ident)> {
        let mut out = BTreeSet::new();
        for node in &self.dag.nodes {
            for &c in &node.children {
                for p in &node.names {
                    for n in &self.dag.nodes[c].names {
                        out.insert((p.clone(), n.clone()));
                    }
                }
            }
        }
        out
    }

    /// Canonical text of all declarations and the hierarchy.
    pub fn fingerprint(&self) -> String {
        let mut out = String::new();
        for (n, s) in &self.sorts {
            if *s != Sort::Concept {
                out.push_str(&format!("{} {n}\n", s.noun()));
            }
        }
        for (n, e) in &self.concepts {
            out.push_str(&format!(
                "concept {n} = {} parents ({})\n",
                self.kernel.render(&e.nf),
                join(&self.parents(n))
            ));
        }
        out
    }
}

fn join<'a>(names: impl IntoIterator<Item = &'a Ident>) -> String {
    names.into_iter().map(Ident::as_str).collect::<Vec<_>>().join(" ")
}
