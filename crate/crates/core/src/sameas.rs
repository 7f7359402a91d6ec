//! Attribute-chain equality `(same-as (f1 ... fn) (g1 ... gm))`.
//!
//! At concept level chains are compared only through the equivalence closure
//! of the pairs actually mentioned. At individual level chains are followed
//! through attribute fillers, which also honors composition: a chain that
//! reaches an individual with further equalities is checked there.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::constructors::Bounds;
use crate::kernel::{
    tags, ConstructorHooks, ImplicationsToDoList, IndividualCx, Item, Kernel, NormalizedConcept, Scope,
    Signal, Slot, Term, Update, ValueKind,
};
use crate::syntax::{Description, Ident, Individual};

pub type Chain = Vec<Ident>;

/// Disjoint-set forest over dense indices, with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// The equivalence classes of all mentioned chains.
///
/// A chain equated only with itself forms a singleton class; it still says
/// that the chain is defined.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SameAsNF {
    groups: BTreeSet<BTreeSet<Chain>>,
}

impl SameAsNF {
    /// Reflexive, symmetric, transitive closure of `pairs`. `None` if a chain
    /// is empty.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a Chain, &'a Chain)>) -> Option<SameAsNF> {
        let pairs: Vec<(&Chain, &Chain)> = pairs.into_iter().collect();
        let mut index: BTreeMap<&Chain, usize> = BTreeMap::new();
        for (a, b) in &pairs {
            if a.is_empty() || b.is_empty() {
                return None;
            }
            for c in [*a, *b] {
                let next = index.len();
                index.entry(c).or_insert(next);
            }
        }
        let mut uf = UnionFind::new(index.len());
        for (a, b) in &pairs {
            uf.union(index[a], index[b]);
        }
        let mut by_root: BTreeMap<usize, BTreeSet<Chain>> = BTreeMap::new();
        for (c, i) in &index {
            by_root.entry(uf.find(*i)).or_default().insert((*c).clone());
        }
        Some(SameAsNF { groups: by_root.into_values().collect() })
    }

    pub fn groups(&self) -> &BTreeSet<BTreeSet<Chain>> {
        &self.groups
    }

    /// Canonical pairs: each class as a star around its least chain.
    pub fn pairs(&self) -> Vec<(Chain, Chain)> {
        let mut out = Vec::new();
        for g in &self.groups {
            let mut it = g.iter();
            let head = it.next().expect("classes are non-empty");
            if g.len() == 1 {
                out.push((head.clone(), head.clone()));
            }
            out.extend(it.map(|c| (head.clone(), c.clone())));
        }
        out
    }

    pub fn merge(&self, other: &SameAsNF) -> SameAsNF {
        let pairs: Vec<(Chain, Chain)> = self.pairs().into_iter().chain(other.pairs()).collect();
        SameAsNF::from_pairs(pairs.iter().map(|(a, b)| (a, b))).expect("stored chains are non-empty")
    }

    /// Every class of `low` refines into one class of `self`.
    pub fn subsumes(&self, low: &SameAsNF) -> bool {
        self.groups.iter().all(|g| low.groups.iter().any(|lg| g.is_subset(lg)))
    }

    pub fn mentions(&self, f: &Ident) -> bool {
        self.groups.iter().flatten().any(|c| c.contains(f))
    }
}

/// Where following a chain from an individual ends up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Traversal {
    End(Individual),
    /// Stuck at `at` with `remaining` attributes still to follow.
    Blocked { at: Individual, remaining: usize },
}

pub fn traverse(cx: &IndividualCx<'_>, b: &Individual, chain: &[Ident]) -> Traversal {
    let mut cur = b.clone();
    for (i, f) in chain.iter().enumerate() {
        match cx.attribute_value(&cur, f) {
            Some(next) => cur = next,
            None => return Traversal::Blocked { at: cur, remaining: chain.len() - i },
        }
    }
    Traversal::End(cur)
}

pub fn sameas_hooks() -> Arc<dyn ConstructorHooks> {
    Arc::new(SameAsHooks)
}

struct SameAsHooks;

fn nf(t: &Term) -> &SameAsNF {
    match t {
        Term::SameAs(s) => s,
        _ => unreachable!("same-as slot holds a same-as term"),
    }
}

/// Follows every chain of one class from `b`.
fn walk(cx: &IndividualCx<'_>, b: &Individual, group: &BTreeSet<Chain>) -> Vec<(Chain, Traversal)> {
    group.iter().map(|c| (c.clone(), traverse(cx, b, c))).collect()
}

impl ConstructorHooks for SameAsHooks {
    fn tag(&self) -> &'static str {
        tags::SAME_AS
    }

    fn is_branch(&self) -> bool {
        false
    }

    fn value_kind(&self) -> ValueKind {
        ValueKind::Object
    }

    fn normalize_args(&self, _: &Kernel, d: &Description, _: &dyn Scope) -> Result<Vec<Item>, Signal> {
        let Description::SameAs(a, b) = d else { unreachable!("dispatched on tag") };
        let s = SameAsNF::from_pairs([(a, b)])
            .ok_or_else(|| Signal::Unsupported("same-as chains must be non-empty".into()))?;
        Ok(vec![Item::new(Slot::global(tags::SAME_AS), Term::SameAs(s))])
    }

    fn describe(&self, _: &Kernel, _: &Slot, t: &Term) -> Vec<Description> {
        nf(t).pairs().into_iter().map(|(a, b)| Description::SameAs(a, b)).collect()
    }

    fn subsumes_same(&self, _: &Kernel, hi: &Term, low: &Term) -> bool {
        nf(hi).subsumes(nf(low))
    }

    fn conjoin_to_same(&self, _: &Kernel, t: Term, old: &Term) -> Result<Term, Signal> {
        Ok(Term::SameAs(nf(&t).merge(nf(old))))
    }

    /// Every mentioned chain is defined, so its first attribute has a filler.
    fn find_other_implications(
        &self,
        _: &Kernel,
        _: &Slot,
        t: &Term,
        _: &NormalizedConcept,
        todo: &mut ImplicationsToDoList,
    ) {
        let heads: BTreeSet<&Ident> = nf(t).groups.iter().flatten().map(|c| &c[0]).collect();
        for f in heads {
            todo.post(Item::new(Slot::on(tags::BOUNDS, f), Term::Bounds(Bounds::at_least(1))));
        }
    }

    fn recognizes(&self, cx: &mut IndividualCx<'_>, b: &Individual, _: &Slot, t: &Term) -> bool {
        for group in &nf(t).groups {
            let mut end: Option<Individual> = None;
            for (_, tr) in walk(cx, b, group) {
                match tr {
                    Traversal::Blocked { at, .. } => {
                        cx.wait_on(&at, tags::SAME_AS);
                        return false;
                    }
                    Traversal::End(v) => match &end {
                        Some(e) if *e != v => return false,
                        Some(_) => {}
                        None => end = Some(v),
                    },
                }
            }
        }
        true
    }

    fn consistent_w_asserting(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        _: &Slot,
        t: &Term,
    ) -> Result<bool, Signal> {
        let mut proven = true;
        for group in &nf(t).groups {
            let mut end: Option<(Chain, Individual)> = None;
            for (c, tr) in walk(cx, b, group) {
                match tr {
                    Traversal::Blocked { at, .. } => {
                        cx.wait_on(&at, tags::SAME_AS);
                        proven = false;
                    }
                    Traversal::End(v) => match &end {
                        Some((c0, e)) if *e != v => {
                            return Err(Signal::Inconsistent(format!(
                                "{b}: ({}) reaches {e} but ({}) reaches {v}",
                                join(c0),
                                join(&c)
                            )));
                        }
                        Some(_) => {}
                        None => end = Some((c, v)),
                    },
                }
            }
        }
        Ok(proven)
    }

    fn consistent_w_filling(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
        role: &Ident,
        _: &Individual,
    ) -> Result<bool, Signal> {
        if !nf(t).mentions(role) {
            return Ok(true);
        }
        self.consistent_w_asserting(cx, b, slot, t)
    }

    /// A chain stuck one attribute short of an endpoint another chain of the
    /// same class reaches gets that last filler.
    fn infer_from_asserting(&self, cx: &mut IndividualCx<'_>, b: &Individual, _: &Slot, t: &Term) {
        for group in &nf(t).groups {
            let walked = walk(cx, b, group);
            let end = walked.iter().find_map(|(_, tr)| match tr {
                Traversal::End(v) => Some(v.clone()),
                Traversal::Blocked { .. } => None,
            });
            for (c, tr) in &walked {
                let Traversal::Blocked { at, remaining } = tr else { continue };
                match (&end, remaining) {
                    (Some(v), 1) => cx.post(Update::Fills {
                        ind: at.clone(),
                        role: c.last().expect("chains are non-empty").clone(),
                        filler: v.clone(),
                    }),
                    _ => cx.wait_on(at, tags::SAME_AS),
                }
            }
        }
    }

    fn infer_from_filling(
        &self,
        cx: &mut IndividualCx<'_>,
        b: &Individual,
        slot: &Slot,
        t: &Term,
        role: &Ident,
        _: &Individual,
    ) {
        if nf(t).mentions(role) {
            self.infer_from_asserting(cx, b, slot, t);
        }
    }
}

fn join(c: &[Ident]) -> String {
    c.iter().map(Ident::as_str).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(s: &str) -> Chain {
        s.split_whitespace().map(Ident::new).collect()
    }

    #[test]
    fn closure_groups_transitively() {
        let (a, b, c, d) = (chain("f"), chain("g h"), chain("k"), chain("m"));
        let s = SameAsNF::from_pairs([(&a, &b), (&c, &b), (&d, &d)]).unwrap();
        assert_eq!(s.groups().len(), 2);
        assert_eq!(s.pairs(), vec![(a.clone(), b.clone()), (a.clone(), c.clone()), (d.clone(), d.clone())]);
        let hi = SameAsNF::from_pairs([(&a, &c)]).unwrap();
        assert!(hi.subsumes(&s));
        assert!(!s.subsumes(&hi));
    }

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(4);
        assert!(uf.union(0, 1));
        assert!(!uf.union(1, 0));
        assert!(uf.union(2, 3));
        assert_ne!(uf.find(0), uf.find(3));
        uf.union(1, 2);
        assert_eq!(uf.find(0), uf.find(3));
    }
}
