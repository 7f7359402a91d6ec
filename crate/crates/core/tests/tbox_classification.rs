mod common;

use std::collections::BTreeSet;

use common::checks::{classification, random_ontology};
use common::gen::{commands, FRAGMENT_DECLS};
use common::*;
use dlkb::{Ident, KnowledgeBase};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn hierarchy_is_the_transitive_reduction() {
    for seed in 0..8 {
        classification(30, 5, seed).unwrap();
    }
}

fn edges_of(decls: &[String]) -> BTreeSet<(Ident, Ident)> {
    let mut kb = KnowledgeBase::default();
    for c in commands(FRAGMENT_DECLS).into_iter().chain(decls.iter().flat_map(|d| commands(d))) {
        kb.execute(&c).unwrap();
    }
    kb.tbox().edges()
}

#[test]
fn hierarchy_does_not_depend_on_declaration_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let decls = random_ontology(20, &mut rng);
        let want = edges_of(&decls);
        // Declarations naming no other K concept can move freely; the rest
        // keep their dependency order.
        let (mut free, rest): (Vec<String>, Vec<String>) =
            decls.iter().cloned().partition(|d| !d.split_once("concept K").unwrap().1.contains('K'));
        free.shuffle(&mut rng);
        let reordered: Vec<String> = free.into_iter().chain(rest).collect();
        assert_eq!(edges_of(&reordered), want);
    }
}

#[test]
fn equivalent_declaration_is_reported() {
    let mut kb = load("(declare-primitive-role p) (declare-defined-concept X (at-least 1 p))");
    let out = run(&mut kb, "(declare-defined-concept Y (some p THING))");
    let dlkb::Outcome::Classified(r) = &out[0] else { panic!("not classified") };
    assert!(r.is_redundant());
    assert_eq!(r.equivalent, [id("X")].into());
    assert_eq!(kb.tbox().equivalents(&id("Y")), [id("X"), id("Y")].into());
}

#[test]
fn incoherent_declaration_joins_nothing() {
    let mut kb = load("(declare-primitive-role p)");
    let out = run(&mut kb, "(declare-defined-concept Z (and (at-least 2 p) (at-most 1 p)))");
    let dlkb::Outcome::Classified(r) = &out[0] else { panic!("not classified") };
    assert!(r.incoherent && !r.is_redundant());
    assert!(kb.tbox().equivalents(&id("NOTHING")).contains(&id("Z")));
}

#[test]
fn primitive_concepts_are_strictly_below_their_bodies() {
    let kb = load(
        "(declare-primitive-role p)
         (declare-defined-concept D (at-least 1 p))
         (declare-primitive-concept P (at-least 1 p))",
    );
    assert!(kb.tbox().strictly_above(&id("D"), &id("P")));
    assert_eq!(kb.tbox().parents(&id("P")), [id("D")].into());
}
