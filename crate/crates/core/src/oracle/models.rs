//! Countermodel search over small finite interpretations.
//!
//! Concept names are read as unconstrained primitive atoms, named
//! individuals denote pairwise distinct elements, and attributes are
//! functional. Small signatures are enumerated exhaustively; larger ones are
//! sampled from a seeded generator, so a miss is evidence, not proof.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::OracleError;
use crate::syntax::{Description, Ident, Individual};
use crate::tbox::{ANY_OBJECT, NOTHING, THING};

/// Limits of the finite fragment and of the search.
#[derive(Clone, Debug)]
pub struct ModelParams {
    pub max_bound: u32,
    pub max_roles: usize,
    pub max_depth: usize,
    /// Anonymous elements added to the named ones.
    pub max_anonymous: usize,
    /// Signatures needing at most this many bits are enumerated in full.
    pub exhaustive_bits: u32,
    /// Random interpretations tried per domain size otherwise.
    pub samples: usize,
    pub seed: u64,
    /// Roles interpreted as functional.
    pub attributes: BTreeSet<Ident>,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            max_bound: 3,
            max_roles: 2,
            max_depth: 2,
            max_anonymous: 4,
            exhaustive_bits: 16,
            samples: 1500,
            seed: 0x5eed,
            attributes: BTreeSet::new(),
        }
    }
}

/// A finite interpretation over elements `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub size: usize,
    pub named: BTreeMap<Individual, usize>,
    /// Per role, the successor set of each element as a bit mask.
    pub roles: BTreeMap<Ident, Vec<u64>>,
    /// Extension of each concept name as a bit mask.
    pub concepts: BTreeMap<Ident, u64>,
}

/// An element in `low` but not in `hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub interpretation: Interpretation,
    pub element: usize,
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = &self.interpretation;
        writeln!(f, "element {} of {}", self.element, i.size)?;
        for (b, e) in &i.named {
            writeln!(f, "  {b} = {e}")?;
        }
        for (p, succ) in &i.roles {
            let pairs: Vec<String> = (0..i.size)
                .flat_map(|x| (0..i.size).filter(move |y| succ[x] >> y & 1 == 1).map(move |y| format!("{x}->{y}")))
                .collect();
            writeln!(f, "  {p}: {}", pairs.join(" "))?;
        }
        for (c, ext) in &i.concepts {
            let members: Vec<String> = (0..i.size).filter(|x| ext >> x & 1 == 1).map(|x| x.to_string()).collect();
            writeln!(f, "  {c}: {}", members.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Signature {
    roles: BTreeSet<Ident>,
    concepts: BTreeSet<Ident>,
    individuals: BTreeSet<Individual>,
}

fn collect(d: &Description, depth: usize, p: &ModelParams, sig: &mut Signature) -> Result<(), OracleError> {
    let bound = |n: u32| {
        if n > p.max_bound {
            Err(OracleError::Fragment(format!("bound {n} exceeds {}", p.max_bound)))
        } else {
            Ok(())
        }
    };
    match d {
        Description::ThingRef | Description::NothingRef => {}
        Description::NameRef(n) if n.as_str() == ANY_OBJECT => {}
        Description::NameRef(n) => {
            sig.concepts.insert(n.clone());
        }
        Description::And(ds) => {
            for d in ds {
                collect(d, depth, p, sig)?;
            }
        }
        Description::All(r, c) | Description::Some(r, c) => {
            if depth >= p.max_depth {
                return Err(OracleError::Fragment(format!("nesting deeper than {}", p.max_depth)));
            }
            sig.roles.insert(r.clone());
            collect(c, depth + 1, p, sig)?;
        }
        Description::AtLeast(n, r) | Description::AtMost(n, r) => {
            bound(*n)?;
            sig.roles.insert(r.clone());
        }
        Description::Fills(r, b) => {
            sig.roles.insert(r.clone());
            sig.individuals.insert(b.clone());
        }
        Description::OneOf(bs) => sig.individuals.extend(bs.iter().cloned()),
        other => return Err(OracleError::Fragment(format!("outside the finite fragment: {other:?}"))),
    }
    if sig.roles.len() > p.max_roles {
        return Err(OracleError::Fragment(format!("more than {} roles", p.max_roles)));
    }
    if let Some(b) = sig.individuals.iter().find(|b| b.as_date().is_some()) {
        return Err(OracleError::Fragment(format!("date individual {b}")));
    }
    Ok(())
}

impl Interpretation {
    fn successors(&self, r: &Ident, x: usize) -> u64 {
        self.roles.get(r).map_or(0, |s| s[x])
    }

    /// Is element `x` in the denotation of `d`?
    pub fn satisfies(&self, d: &Description, x: usize) -> bool {
        match d {
            Description::ThingRef => true,
            Description::NothingRef => false,
            Description::NameRef(n) if n.as_str() == THING || n.as_str() == ANY_OBJECT => true,
            Description::NameRef(n) if n.as_str() == NOTHING => false,
            Description::NameRef(n) => self.concepts.get(n).is_some_and(|ext| ext >> x & 1 == 1),
            Description::And(ds) => ds.iter().all(|d| self.satisfies(d, x)),
            Description::All(r, c) => self.elements(self.successors(r, x)).all(|y| self.satisfies(c, y)),
            Description::Some(r, c) => self.elements(self.successors(r, x)).any(|y| self.satisfies(c, y)),
            Description::AtLeast(n, r) => self.successors(r, x).count_ones() >= *n,
            Description::AtMost(n, r) => self.successors(r, x).count_ones() <= *n,
            Description::Fills(r, b) => self.named.get(b).is_some_and(|&e| self.successors(r, x) >> e & 1 == 1),
            Description::OneOf(bs) => bs.iter().any(|b| self.named.get(b) == Some(&x)),
            _ => false,
        }
    }

    fn elements(&self, mask: u64) -> impl Iterator<Item = usize> {
        (0..self.size).filter(move |y| mask >> y & 1 == 1)
    }
}

/// Builds an interpretation drawing one bit per relation entry from `bit`.
/// `None` when an attribute would get two fillers.
fn build(
    sig: &Signature,
    size: usize,
    attributes: &BTreeSet<Ident>,
    mut bit: impl FnMut() -> bool,
) -> Option<Interpretation> {
    let named = sig.individuals.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let mut roles = BTreeMap::new();
    for r in &sig.roles {
        let mut succ = vec![0u64; size];
        for s in succ.iter_mut() {
            for y in 0..size {
                if bit() {
                    *s |= 1 << y;
                }
            }
            if attributes.contains(r) && s.count_ones() > 1 {
                return None;
            }
        }
        roles.insert(r.clone(), succ);
    }
    let mut concepts = BTreeMap::new();
    for c in &sig.concepts {
        let mut ext = 0u64;
        for x in 0..size {
            if bit() {
                ext |= 1 << x;
            }
        }
        concepts.insert(c.clone(), ext);
    }
    Some(Interpretation { size, named, roles, concepts })
}

fn refute_in(i: &Interpretation, hi: &Description, low: &Description) -> Option<Countermodel> {
    (0..i.size)
        .find(|&x| i.satisfies(low, x) && !i.satisfies(hi, x))
        .map(|element| Countermodel { interpretation: i.clone(), element })
}

/// Searches for an interpretation with an element of `low` outside `hi`.
pub fn bounded_model_refutes_subsumption(
    hi: &Description,
    low: &Description,
    params: &ModelParams,
) -> Result<Option<Countermodel>, OracleError> {
    let mut sig = Signature::default();
    collect(hi, 0, params, &mut sig)?;
    collect(low, 0, params, &mut sig)?;
    let named = sig.individuals.len();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for anonymous in 0..=params.max_anonymous {
        let size = named + anonymous;
        if size == 0 {
            continue;
        }
        if size > 64 {
            return Err(OracleError::Fragment("more than 64 elements".into()));
        }
        let bits = sig.roles.len() * size * size + sig.concepts.len() * size;
        if bits as u32 <= params.exhaustive_bits {
            for code in 0u64..(1u64 << bits) {
                let mut k = 0;
                let next = || {
                    let b = code >> k & 1 == 1;
                    k += 1;
                    b
                };
                let Some(i) = build(&sig, size, &params.attributes, next) else { continue };
                if let Some(cm) = refute_in(&i, hi, low) {
                    return Ok(Some(cm));
                }
            }
        } else {
            for _ in 0..params.samples {
                // Sparse and dense models both matter: vary the edge density.
                let density: f64 = rng.gen_range(0.05..0.7);
                let mut draw = || rng.gen_bool(density);
                let Some(i) = build(&sig, size, &params.attributes, &mut draw) else { continue };
                if let Some(cm) = refute_in(&i, hi, low) {
                    return Ok(Some(cm));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn refutes(hi: Description, low: Description) -> bool {
        bounded_model_refutes_subsumption(&hi, &low, &ModelParams::default()).unwrap().is_some()
    }

    #[test]
    fn at_least_examples() {
        assert!(!refutes(Description::at_least(1, "p"), Description::at_least(2, "p")));
        assert!(refutes(Description::at_least(2, "p"), Description::at_least(1, "p")));
    }

    #[test]
    fn value_restriction_needs_a_successor_to_imply_some() {
        let all = Description::all("p", Description::name("A"));
        let some = Description::some("p", Description::name("A"));
        assert!(refutes(some.clone(), all.clone()));
        let low = Description::And(vec![all, Description::at_least(1, "p")]);
        assert!(!refutes(some, low));
    }

    #[test]
    fn unique_names() {
        let ab = Description::OneOf(vec![Individual::named("a"), Individual::named("b")]);
        let a = Description::OneOf(vec![Individual::named("a")]);
        assert!(!refutes(ab.clone(), a.clone()));
        assert!(refutes(a, ab));
    }

    #[test]
    fn fragment_limits_are_enforced() {
        let deep = Description::all("p", Description::all("p", Description::all("p", Description::ThingRef)));
        let r = bounded_model_refutes_subsumption(&deep, &Description::ThingRef, &ModelParams::default());
        assert!(r.is_err());
    }
}
