//! Whole-criterion checks shared by the acceptance target and topical tests.
//! Each returns a one-line summary on success and the first mismatch on
//! failure.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dlkb::oracle::{bounded_model_refutes_subsumption, date_denotation, replay_batch, replay_with, DateWindow, ModelParams};
use dlkb::syntax::KbCommand;
use dlkb::{Ident, KbError, KnowledgeBase, NormalizedConcept, Propagation, Signal, Tbox};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gen::*;
use super::*;

pub type Check = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

// ----- 1. golden subsumption -----

pub const BOOKS: &str = "
    (declare-primitive-role authoredBy)
    (declare-primitive-role publishedIn)
    (declare-primitive-role marriedTo)
    (declare-primitive-role address)
    (declare-primitive-attribute planet)
    (declare-individual Venus)
    (declare-individual Usa)
    (declare-individual France)
    (declare-individual Germany)
    (declare-individual Italy)
    (declare-primitive-concept BOOK (at-least 1 authoredBy))
    (declare-primitive-concept BEING THING)
    (declare-primitive-concept TERRESTRIAL BEING)
    (declare-defined-concept VENUSIAN (and BEING (all address (fills planet Venus))))
";

pub const VENUSIAN_CO_AUTHORS: &str = "(and BOOK (at-least 2 authoredBy) (all authoredBy VENUSIAN))";

pub const MARRIED_AUTHORS: &str = "(and BOOK
    (all publishedIn (one-of Usa France Germany Italy))
    (at-least 3 authoredBy)
    (all authoredBy (and VENUSIAN (all marriedTo TERRESTRIAL))))";

pub fn golden_subsumption() -> Check {
    let kb = load(BOOKS);
    let t = kb.tbox();
    let fwd = t.ask_subsumes(&d(VENUSIAN_CO_AUTHORS), &d(MARRIED_AUTHORS)).map_err(|e| e.to_string())?;
    let back = t.ask_subsumes(&d(MARRIED_AUTHORS), &d(VENUSIAN_CO_AUTHORS)).map_err(|e| e.to_string())?;
    ensure(fwd && !back, || format!("forward {fwd}, converse {back}"))?;
    Ok("venusian co-author concept subsumes the married-authors concept; converse false".into())
}

// ----- 2. normal-form equivalences -----

pub fn normal_form_equivalences() -> Check {
    let kb = load(
        "(declare-primitive-role pet) (declare-primitive-role p) (declare-primitive-role players)
         (declare-primitive-concept GENTLEMAN THING) (declare-primitive-concept SCHOLAR THING)",
    );
    let t = kb.tbox();
    let k = t.kernel();
    let n = |s: &str| t.normalize(&d(s)).expect("in scope");
    let (all_nothing, at_most_0) = (n("(all pet NOTHING)"), n("(at-most 0 pet)"));
    ensure(k.subsumes(&all_nothing, &at_most_0) && k.subsumes(&at_most_0, &all_nothing), || {
        "all(pet,NOTHING) and at-most(0,pet) are not mutually subsuming".into()
    })?;
    ensure(all_nothing == at_most_0, || "all(pet,NOTHING) and at-most(0,pet) differ structurally".into())?;
    ensure(n("(and (at-least 3 p) (at-most 1 p))").is_incoherent(), || "at-least 3 with at-most 1 is coherent".into())?;
    let split = n("(and (all players GENTLEMAN) (all players SCHOLAR))");
    let merged = n("(all players (and GENTLEMAN SCHOLAR))");
    ensure(k.equivalent(&split, &merged), || "all-merging failed".into())?;
    Ok("all/at-most-0 mutual, 3>1 incoherent, all-restrictions merge".into())
}

// ----- 3. date examples -----

pub fn date_examples() -> Check {
    let kb = load("(declare-primitive-role freeForMeeting)");
    let t = kb.tbox();
    let k = t.kernel();
    let n = |s: &str| t.normalize(&d(s)).expect("in scope");
    let merged = n("(dateRange (1996/1/2 1996/1/4) (1996/1/5 1996/1/6))");
    ensure(merged == n("(dateRange (1996/1/2 1996/1/6))"), || format!("merge gave {}", k.render(&merged)))?;
    let april = n("(period (4 4) (1 31))");
    ensure(k.subsumes(&april, &n("(dateRange (1988/4/1 1988/4/21))")), || "April misses 1988/4/1-21".into())?;
    ensure(!k.subsumes(&april, &n("(dateRange (1990/4/1 1992/4/1))")), || "April covers 1990/4/1-1992/4/1".into())?;
    let five = n("(all freeForMeeting (dateRange (1996/6/1 1996/6/5)))");
    let role = Ident::new("freeForMeeting");
    ensure(five.bounds(&role).upper == Some(5), || format!("posted bound {:?}", five.bounds(&role)))?;
    ensure(k.subsumes(&n("(at-most 5 freeForMeeting)"), &five), || "at-most 5 not implied".into())?;
    Ok("interval merge, April period examples, countDays posts at-most(5)".into())
}

// ----- 4. date oracle sweep -----

fn days(c: &dlkb::Description, w: &DateWindow) -> BTreeSet<chrono::NaiveDate> {
    date_denotation(c, w).expect("date concept")
}

pub fn date_sweep(cases: usize, seed: u64) -> Check {
    let kb = KnowledgeBase::default();
    let t = kb.tbox();
    let k = t.kernel();
    let (w, pw) = (DateWindow::default(), DateWindow::period_years());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = |s: &str| t.normalize(&d(s)).expect("date concepts need no declarations");
    let den_nf = |x: &NormalizedConcept, w: &DateWindow| days(&k.describe(x), w);
    let (mut subsumed, mut comparisons) = (0, 0);
    for case in 0..cases {
        let cs = date_concept(&mut rng, true);
        let ranged = rng.gen_bool(0.5);
        let ds = date_concept(&mut rng, ranged);
        let (c, dd) = (d(&cs), d(&ds));
        let (nc, nd) = (n(&cs), n(&ds));
        let den_c = days(&c, &w);
        let fail = |what: &str| format!("case {case}: {what}\n  c = {cs}\n  d = {ds}");
        // Normalization preserves the denotation.
        let got = if nc.is_incoherent() { BTreeSet::new() } else { den_nf(&nc, &w) };
        ensure(got == den_c, || fail("normalization changed the day set"))?;
        // countDays is exact.
        if let Some(r) = nc.date_range() {
            ensure(r.count_days() == den_c.len() as u64, || fail("countDays disagrees"))?;
        }
        // Conjunction is intersection.
        let met = k.meet(&nc, &nd).map_err(|e| fail(&e.to_string()))?;
        let den_d = days(&dd, &w);
        let want: BTreeSet<_> = den_c.intersection(&den_d).cloned().collect();
        let got = if met.is_incoherent() { BTreeSet::new() } else { den_nf(&met, &w) };
        ensure(got == want, || fail("conjunction is not intersection"))?;
        // Subsumption with a ranged `low` is exact.
        comparisons += 1;
        let claim = k.subsumes(&nd, &nc);
        ensure(claim == den_c.is_subset(&den_d), || fail(&format!("subsumes(d, c) = {claim}")))?;
        subsumed += usize::from(claim);
        // With a pure-period `low` only soundness is claimed.
        let claim = k.subsumes(&nc, &nd);
        let low_window = if nd.date_range().is_some() || nd.is_incoherent() { &w } else { &pw };
        if claim {
            ensure(days(&dd, low_window).is_subset(&days(&c, low_window)), || fail("unsound subsumes(c, d)"))?;
        } else if nd.date_range().is_some() {
            ensure(!den_d.is_subset(&den_c), || fail("incomplete subsumes(c, d)"))?;
        }
        comparisons += 1;
        // Periods against periods are exact over a leap and a common year.
        let (p1, p2) = (period_literal(&mut rng), period_literal(&mut rng));
        let claim = k.subsumes(&n(&p1), &n(&p2));
        let truth = days(&d(&p2), &pw).is_subset(&days(&d(&p1), &pw));
        ensure(claim == truth, || format!("case {case}: subsumes({p1}, {p2}) = {claim}"))?;
        comparisons += 1;
    }
    Ok(format!("{cases} concepts, {comparisons} subsumption checks ({subsumed} positive), 0 mismatches"))
}

// ----- 5. bounded-model soundness -----

pub fn soundness_sweep(pairs: usize, seed: u64) -> Check {
    let kb = load(FRAGMENT_DECLS);
    let t = kb.tbox();
    let k = t.kernel();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = ModelParams::default();
    let (mut positive, mut refuted) = (0, 0);
    for i in 0..pairs {
        let (hi, low) = fragment_pair(&mut rng);
        let claim = k.subsumes(&t.normalize(&hi).unwrap(), &t.normalize(&low).unwrap());
        let cm = bounded_model_refutes_subsumption(&hi, &low, &params).map_err(|e| format!("pair {i}: {e}"))?;
        match (claim, cm) {
            (true, Some(cm)) => {
                return Err(format!("pair {i}: {hi} claimed to subsume {low}, countermodel:\n{cm}"));
            }
            (true, None) => positive += 1,
            (false, Some(_)) => refuted += 1,
            (false, None) => {}
        }
    }
    Ok(format!("{pairs} pairs: {positive} subsumptions unrefuted, {refuted} non-subsumptions refuted, 0 violations"))
}

// ----- 6. A-box golden scenarios -----

pub fn abox_scenarios() -> Check {
    let toys = "(declare-primitive-role hasToys)
        (declare-individual Anni) (declare-individual Lori)
        (declare-individual Lego) (declare-individual Barbie) (declare-individual Lego45)";
    let mut kb = load(toys);
    run(&mut kb, "(assert-fills Anni hasToys Lego)");
    ensure(member(&kb, "Anni", "(at-least 1 hasToys)"), || "Anni: filler does not give at-least 1".into())?;
    run(&mut kb, "(assert-fills Anni hasToys Barbie) (assert-closed Anni hasToys)");
    ensure(member(&kb, "Anni", "(at-most 2 hasToys)"), || "Anni: closure does not give at-most 2".into())?;
    ensure(non_member(&kb, "Anni", "(at-least 3 hasToys)"), || "Anni: at-least 3 not refuted".into())?;

    run(&mut kb, "(assert-member Lori (and (all hasToys (one-of Lego45)) (at-least 1 hasToys)))");
    ensure(fillers(&kb, "Lori", "hasToys") == ["Lego45"], || "Lori: Lego45 not derived".into())?;
    ensure(kb.ask_closed(&ind("Lori"), &id("hasToys")) == Ok(true), || "Lori: hasToys not closed".into())?;

    let mut kb = load(
        "(declare-primitive-role pet) (declare-primitive-concept DOG THING)
         (declare-individual Tintin) (declare-individual d1) (declare-individual d2) (declare-individual Fido)
         (assert-fills Tintin pet d1) (assert-fills Tintin pet d2) (assert-member Tintin (all pet DOG))",
    );
    let before = (kb.member_posts(&ind("d1")), kb.member_posts(&ind("d2")));
    run(&mut kb, "(assert-fills Tintin pet Fido)");
    ensure(member(&kb, "Fido", "DOG"), || "Tintin: Fido not a DOG".into())?;
    let after = (kb.member_posts(&ind("d1")), kb.member_posts(&ind("d2")));
    ensure(before == after, || format!("Tintin: old pets re-propagated {before:?} -> {after:?}"))?;

    let mut kb = load(
        "(declare-primitive-role friends) (declare-primitive-concept MARRIED THING)
         (declare-defined-concept ALL-FRIENDS-MARRIED (all friends MARRIED))
         (declare-individual Bob) (declare-individual Ann) (declare-individual Larry)
         (assert-fills Bob friends Ann) (assert-fills Bob friends Larry) (assert-closed Bob friends)
         (assert-member Ann MARRIED)",
    );
    let target = id("ALL-FRIENDS-MARRIED");
    ensure(!kb.classes(&ind("Bob")).contains(&target), || "Bob classified too early".into())?;
    let linked = kb.record(&ind("Larry")).is_some_and(|r| r.links.iter().any(|l| l.target == ind("Bob")));
    ensure(linked, || "Bob: no dependency link from Larry".into())?;
    run(&mut kb, "(assert-member Larry MARRIED)");
    ensure(kb.classes(&ind("Bob")).contains(&target), || "Bob not reclassified".into())?;

    let kb = load(
        "(declare-primitive-attribute q) (declare-primitive-attribute p) (declare-primitive-attribute r)
         (declare-individual a) (declare-individual b) (declare-individual e)
         (assert-member a (same-as (q) (p r))) (assert-fills a q e) (assert-fills a p b)",
    );
    ensure(fillers(&kb, "b", "r") == ["e"], || format!("same-as: fillers(b, r) = {:?}", fillers(&kb, "b", "r")))?;
    Ok("Anni, Lori, Tintin (counters unchanged), Bob/Larry, same-as".into())
}

// ----- 7 and 9. replay equivalences -----

fn with_decls(updates: &[KbCommand]) -> Vec<KbCommand> {
    let mut all = commands(ABOX_DECLS);
    all.extend(updates.iter().cloned());
    all
}

fn listing(cmds: &[KbCommand]) -> String {
    cmds.iter().map(|c| format!("  {c}\n")).collect()
}

/// The shared workload of the replay criteria.
pub struct Sequence {
    pub kb: KnowledgeBase,
    pub accepted: Vec<KbCommand>,
}

pub fn sequences(count: usize, seed: u64) -> Vec<Sequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (kb, accepted) = accepted_sequence(&mut rng, 20, Propagation::Links);
            Sequence { kb, accepted }
        })
        .collect()
}

pub fn incremental_equals_batch(seqs: &[Sequence], seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut accepted_total, mut permuted_total) = (0, 0);
    for (round, Sequence { kb, accepted }) in seqs.iter().enumerate() {
        accepted_total += accepted.len();
        let fail = |what: &str, cmds: &[KbCommand]| format!("sequence {round}: {what}\n{}", listing(cmds));
        let batch = replay_batch(&with_decls(accepted)).map_err(|e| fail(&e.to_string(), accepted))?;
        ensure(batch == kb.fingerprint(), || fail("batch replay differs", accepted))?;
        let permuted = permute_independent(&mut rng, accepted);
        permuted_total += usize::from(permuted != *accepted);
        let mut other = KnowledgeBase::default();
        for c in with_decls(&permuted) {
            other.execute(&c).map_err(|e| fail(&e.to_string(), &permuted))?;
        }
        ensure(other.fingerprint() == kb.fingerprint(), || fail("permuted replay differs", &permuted))?;
    }
    Ok(format!(
        "{} sequences ({accepted_total} accepted updates), {permuted_total} reordered, 0 mismatches",
        seqs.len()
    ))
}

pub fn links_equal_rescans(seqs: &[Sequence]) -> Check {
    let mut links = 0;
    for (round, Sequence { kb, accepted }) in seqs.iter().enumerate() {
        let fail = |what: &str| format!("sequence {round}: {what}\n{}", listing(accepted));
        links += kb.individuals().filter_map(|b| kb.record(b)).map(|r| r.links.len()).sum::<usize>();
        let mut slow = KnowledgeBase::default().with_propagation(Propagation::Rescan);
        for c in with_decls(accepted) {
            slow.execute(&c).map_err(|e| fail(&e.to_string()))?;
        }
        ensure(slow.fingerprint() == kb.fingerprint(), || fail("incremental rescans differ"))?;
        let batch = replay_with(&with_decls(accepted), Propagation::Rescan).map_err(|e| fail(&e.to_string()))?;
        ensure(batch == kb.fingerprint(), || fail("batch rescan differs"))?;
    }
    Ok(format!("{} sequences ({links} live links at the end), 0 mismatches", seqs.len()))
}

// ----- 8. rollback -----

type Template = fn(&KnowledgeBase, &mut ChaCha8Rng) -> Option<(Vec<String>, String)>;

fn fresh_filler(kb: &KnowledgeBase, b: &str, p: &str, rng: &mut ChaCha8Rng) -> Option<String> {
    let have = fillers(kb, b, p);
    let mut pool: Vec<&str> = ["i0", "i1", "i2", "i3", "i4", "i5"].into_iter().filter(|x| !have.iter().any(|h| h == x)).collect();
    pool.shuffle(rng);
    pool.first().map(|s| s.to_string())
}

const TEMPLATES: &[(&str, Template)] = &[
    ("at-most 0 over a filler", |kb, rng| {
        let b = pick_ind(rng);
        let x = fresh_filler(kb, &b, "p", rng)?;
        Some((vec![format!("(assert-fills {b} p {x})")], format!("(assert-member {b} (at-most 0 p))")))
    }),
    ("filler on a closed role", |kb, rng| {
        let b = pick_ind(rng);
        let x = fresh_filler(kb, &b, "q", rng)?;
        Some((vec![format!("(assert-closed {b} q)")], format!("(assert-fills {b} q {x})")))
    }),
    ("second attribute value", |kb, rng| {
        let b = pick_ind(rng);
        let have = fillers(kb, &b, "f");
        let x = have.first().cloned().unwrap_or_else(|| "i0".into());
        let y = ["i0", "i1", "i2"].into_iter().find(|y| *y != x)?.to_string();
        Some((vec![format!("(assert-fills {b} f {x})")], format!("(assert-fills {b} f {y})")))
    }),
    ("contradictory bounds", |_, rng| {
        Some((vec![], format!("(assert-member {} (and (at-least 3 p) (at-most 1 p)))", pick_ind(rng))))
    }),
    ("filler outside one-of", |kb, rng| {
        let b = pick_ind(rng);
        let x = fresh_filler(kb, &b, "p", rng)?;
        let y = ["i0", "i1", "i2", "i3"].into_iter().find(|y| *y != x)?;
        Some((vec![format!("(assert-fills {b} p {x})")], format!("(assert-member {b} (all p (one-of {y})))")))
    }),
    ("same-as with distinct ends", |kb, rng| {
        let b = pick_ind(rng);
        let fx = fillers(kb, &b, "f").first().cloned().unwrap_or_else(|| "i1".into());
        let gy = fillers(kb, &b, "g").first().cloned().unwrap_or_else(|| "i2".into());
        (fx != gy).then(|| {
            (
                vec![format!("(assert-fills {b} f {fx})"), format!("(assert-fills {b} g {gy})")],
                format!("(assert-member {b} (same-as (f) (g)))"),
            )
        })
    }),
    ("roles on a date", |_, rng| Some((vec![], format!("(assert-fills 1996/01/03 p {})", pick_ind(rng))))),
    ("object filler for a date attribute", |kb, rng| {
        let b = pick_ind(rng);
        fillers(kb, &b, "f").is_empty().then(|| {
            (vec![format!("(assert-member {b} EARLY)")], format!("(assert-fills {b} f {})", pick_ind(rng)))
        })
    }),
    ("closing below at-least", |kb, rng| {
        let b = pick_ind(rng);
        let n = fillers(kb, &b, "q").len();
        (n < 3).then(|| (vec![format!("(assert-member {b} (at-least {} q))", n + 1)], format!("(assert-closed {b} q)")))
    }),
    ("propagated contradiction", |kb, rng| {
        let b = pick_ind(rng);
        let x = fresh_filler(kb, &b, "p", rng)?;
        Some((
            vec![format!("(assert-fills {b} p {x})"), format!("(assert-member {x} (at-most 0 q))")],
            format!("(assert-member {b} (all p (some q THING)))"),
        ))
    }),
];

fn pick_ind(rng: &mut ChaCha8Rng) -> String {
    format!("i{}", rng.gen_range(0..6))
}

pub fn rollback_exactness(updates: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut per_template = BTreeMap::new();
    let mut attempts = 0;
    while done < updates {
        attempts += 1;
        if attempts > updates * 50 {
            return Err(format!("only {done} inconsistent updates could be constructed"));
        }
        let len = rng.gen_range(0..12);
        let (mut kb, _) = accepted_sequence(&mut rng, len, Propagation::Links);
        let (name, template) = TEMPLATES[done % TEMPLATES.len()];
        let Some((setup, bad)) = template(&kb, &mut rng) else { continue };
        if setup.iter().any(|s| try_run(&mut kb, s).is_err()) {
            continue;
        }
        let before = kb.fingerprint();
        match try_run(&mut kb, &bad) {
            Err(KbError::Rejected(Signal::Inconsistent(_))) => {}
            other => return Err(format!("{name}: {bad} was not rejected as inconsistent: {other:?}")),
        }
        ensure(kb.fingerprint() == before, || format!("{name}: {bad} left traces"))?;
        *per_template.entry(name).or_insert(0) += 1;
        done += 1;
    }
    Ok(format!("{done} rejected updates over {} templates, fingerprints identical", per_template.len()))
}

// ----- 10. classification -----

/// Declarations of a random acyclic ontology of `n` concepts.
pub fn random_ontology(n: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut bodies: Vec<String> = Vec::new();
    let mut out = Vec::new();
    for i in 0..n {
        let earlier = |rng: &mut ChaCha8Rng| if i == 0 { "A".to_string() } else { format!("K{}", rng.gen_range(0..i)) };
        let body = match rng.gen_range(0..6) {
            0 => fragment_concept(rng, 0),
            1 => format!("(and {} {})", earlier(rng), fragment_concept(rng, 1)),
            2 => format!("(and {} {})", earlier(rng), earlier(rng)),
            3 => format!("(all p {})", earlier(rng)),
            // Restating an earlier body exercises redundancy warnings.
            4 if i > 0 => bodies[rng.gen_range(0..i)].clone(),
            _ => format!("(and {} (at-least {} q))", earlier(rng), rng.gen_range(0..3)),
        };
        let kind = if rng.gen_bool(0.3) { "primitive" } else { "defined" };
        out.push(format!("(declare-{kind}-concept K{i} {body})"));
        bodies.push(body);
    }
    out
}

/// Named classes and the transitive reduction of strict subsumption among them.
fn expected_hierarchy(t: &Tbox) -> BTreeSet<(Ident, Ident)> {
    let k = t.kernel();
    let names: Vec<(Ident, NormalizedConcept)> = t.concepts().map(|(n, e)| (n.clone(), e.nf.clone())).collect();
    let sub = |i: usize, j: usize| k.subsumes(&names[i].1, &names[j].1);
    let strictly = |i: usize, j: usize| sub(i, j) && !sub(j, i);
    let mut edges = BTreeSet::new();
    for i in 0..names.len() {
        for j in 0..names.len() {
            if strictly(i, j) && !(0..names.len()).any(|m| strictly(i, m) && strictly(m, j)) {
                edges.insert((names[i].0.clone(), names[j].0.clone()));
            }
        }
    }
    edges
}

pub fn classification(concepts: usize, ontologies: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut warnings, mut edges_total) = (0, 0);
    for o in 0..ontologies {
        let mut kb = load(FRAGMENT_DECLS);
        for decl in random_ontology(concepts, &mut rng) {
            let cmd = commands(&decl).remove(0);
            let outcome = kb.execute(&cmd).map_err(|e| format!("ontology {o}: {decl}: {e}"))?;
            let dlkb::Outcome::Classified(report) = outcome else { return Err(format!("{decl} not classified")) };
            let t = kb.tbox();
            let k = t.kernel();
            let nf = &t.entry(&report.name).expect("just declared").nf;
            let equivalent: BTreeSet<Ident> = t
                .concepts()
                .filter(|(n, e)| **n != report.name && k.equivalent(&e.nf, nf))
                .map(|(n, _)| n.clone())
                .collect();
            ensure(report.equivalent == equivalent, || {
                format!("ontology {o}: {decl}: warned {:?}, equivalent {equivalent:?}", report.equivalent)
            })?;
            warnings += usize::from(report.is_redundant());
        }
        let t = kb.tbox();
        let want = expected_hierarchy(t);
        let got = t.edges();
        ensure(got == want, || {
            let missing: Vec<_> = want.difference(&got).collect();
            let extra: Vec<_> = got.difference(&want).collect();
            format!("ontology {o}: missing edges {missing:?}, extra edges {extra:?}")
        })?;
        edges_total += got.len();
    }
    Ok(format!(
        "{ontologies} ontologies of {concepts} concepts: {edges_total} edges match the reduction, {warnings} redundancy warnings all justified"
    ))
}

