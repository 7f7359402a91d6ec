//! Seeded generators for random concepts and update sequences.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dlkb::dates::Date;
use dlkb::syntax::{parse_program, KbCommand};
use dlkb::{parse_description, Description, Individual, KnowledgeBase, Propagation};
use rand::seq::SliceRandom;
use rand::Rng;

// ----- finite fragment -----

pub const FRAGMENT_DECLS: &str = "
    (declare-primitive-role p)
    (declare-primitive-role q)
    (declare-primitive-concept A THING)
    (declare-primitive-concept B THING)
    (declare-individual a)
    (declare-individual b)
    (declare-individual c)
";

fn pick<'a, R: Rng>(rng: &mut R, xs: &[&'a str]) -> &'a str {
    xs[rng.gen_range(0..xs.len())]
}

/// A concept of the finite fragment: nesting depth at most `2 - depth`,
/// bounds at most 3, roles `p` and `q`.
pub fn fragment_concept<R: Rng>(rng: &mut R, depth: usize) -> String {
    let role = pick(rng, &["p", "q"]);
    let choice = if depth >= 2 { rng.gen_range(0..6) } else { rng.gen_range(0..9) };
    match choice {
        0 => pick(rng, &["A", "B", "THING"]).to_string(),
        1 => format!("(at-least {} {role})", rng.gen_range(0..=3)),
        2 => format!("(at-most {} {role})", rng.gen_range(0..=3)),
        3 => format!("(fills {role} {})", pick(rng, &["a", "b", "c"])),
        4 => {
            let mut inds = vec!["a", "b", "c"];
            inds.shuffle(rng);
            format!("(one-of {})", inds[..rng.gen_range(1..=3)].join(" "))
        }
        5 => pick(rng, &["A", "B"]).to_string(),
        6 => format!("(all {role} {})", fragment_concept(rng, depth + 1)),
        7 => format!("(some {role} {})", fragment_concept(rng, depth + 1)),
        _ => {
            let n = rng.gen_range(2..=3);
            let parts: Vec<String> = (0..n).map(|_| fragment_concept(rng, depth)).collect();
            format!("(and {})", parts.join(" "))
        }
    }
}

/// A pair in which `low` is often, but not always, below `hi`.
pub fn fragment_pair<R: Rng>(rng: &mut R) -> (Description, Description) {
    let hi = fragment_concept(rng, 0);
    let low = match rng.gen_range(0..3) {
        0 => fragment_concept(rng, 0),
        1 => format!("(and {hi} {})", fragment_concept(rng, 0)),
        _ => strengthen(rng, &hi),
    };
    (parse_description(&hi).unwrap(), parse_description(&low).unwrap())
}

/// Rewrites some numbers and names in `c` so the result tends to lie below it.
fn strengthen<R: Rng>(rng: &mut R, c: &str) -> String {
    let mut out = String::new();
    let mut tokens = c.split(' ').peekable();
    let mut prev = "";
    while let Some(t) = tokens.next() {
        let next = if prev == "(at-least" && rng.gen_bool(0.5) {
            t.parse::<u32>().map_or(t.to_string(), |n| (n + 1).min(3).to_string())
        } else if prev == "(at-most" && rng.gen_bool(0.5) {
            t.parse::<u32>().map_or(t.to_string(), |n| n.saturating_sub(1).to_string())
        } else if t.starts_with("THING") && rng.gen_bool(0.5) {
            t.replacen("THING", "A", 1)
        } else {
            t.to_string()
        };
        out.push_str(&next);
        if tokens.peek().is_some() {
            out.push(' ');
        }
        prev = t;
    }
    out
}

// ----- dates -----

pub fn date<R: Rng>(rng: &mut R, first_year: u16, last_year: u16) -> Date {
    loop {
        let y = rng.gen_range(first_year..=last_year);
        let m = rng.gen_range(1..=12);
        let d = rng.gen_range(1..=31);
        if let Some(date) = Date::new(y, m, d) {
            return date;
        }
    }
}

pub fn range_literal<R: Rng>(rng: &mut R) -> String {
    let n = rng.gen_range(1..=3);
    let pairs: Vec<String> = (0..n)
        .map(|_| {
            let a = date(rng, 1992, 2004);
            // Mostly short spans so containments actually occur.
            let b = if rng.gen_bool(0.7) {
                let mut e = a;
                for _ in 0..rng.gen_range(0..120) {
                    e = e.next_day().filter(|d| d.year() <= 2004).unwrap_or(e);
                }
                e
            } else {
                date(rng, 1992, 2004)
            };
            format!("({a} {b})")
        })
        .collect();
    format!("(dateRange {})", pairs.join(" "))
}

pub fn period_literal<R: Rng>(rng: &mut R) -> String {
    let (m1, m2) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
    let (d1, d2) = (rng.gen_range(1..=31), rng.gen_range(1..=31));
    // Occasionally reversed, which is incoherent.
    if rng.gen_bool(0.9) {
        format!("(period ({} {}) ({} {}))", m1.min(m2), m1.max(m2), d1.min(d2), d1.max(d2))
    } else {
        format!("(period ({m1} {m2}) ({d1} {d2}))")
    }
}

/// A date concept; `with_range` forces a dateRange conjunct.
pub fn date_concept<R: Rng>(rng: &mut R, with_range: bool) -> String {
    let mut parts = Vec::new();
    if with_range || rng.gen_bool(0.5) {
        parts.push(range_literal(rng));
    }
    if !with_range && parts.is_empty() || rng.gen_bool(0.5) {
        parts.push(period_literal(rng));
    }
    if rng.gen_bool(0.2) {
        parts.push(range_literal(rng));
    }
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        format!("(and {})", parts.join(" "))
    }
}

// ----- update sequences -----

pub const ABOX_DECLS: &str = "
    (declare-primitive-role p)
    (declare-primitive-role q)
    (declare-primitive-attribute f)
    (declare-primitive-attribute g)
    (declare-primitive-concept A THING)
    (declare-primitive-concept B THING)
    (declare-primitive-concept C A)
    (declare-individual i0)
    (declare-individual i1)
    (declare-individual i2)
    (declare-individual i3)
    (declare-individual i4)
    (declare-individual i5)
    (declare-defined-concept ALL-P-A (all p A))
    (declare-defined-concept SOME-Q-B (some q B))
    (declare-defined-concept TWO-P (at-least 2 p))
    (declare-defined-concept FEW-A (and (all p A) (at-most 2 p)))
    (declare-defined-concept F-IS-G (same-as (f) (g)))
    (declare-defined-concept HAS-I0 (and A (fills q i0)))
    (declare-defined-concept EARLY (all f (dateRange (1996/1/1 1996/1/5))))
";

const INDS: [&str; 6] = ["i0", "i1", "i2", "i3", "i4", "i5"];

fn member_concept<R: Rng>(rng: &mut R) -> String {
    let i = pick(rng, &INDS);
    let j = pick(rng, &INDS);
    match rng.gen_range(0..16) {
        0 => "A".into(),
        1 => "B".into(),
        2 => "C".into(),
        3 => "(all p A)".into(),
        4 => "(all p (all q B))".into(),
        5 => "(some q B)".into(),
        6 => format!("(at-least {} p)", rng.gen_range(1..=3)),
        7 => format!("(at-most {} p)", rng.gen_range(0..=3)),
        8 => format!("(fills q {i})"),
        9 if i == j => format!("(all p (one-of {i}))"),
        9 => format!("(all p (one-of {i} {j}))"),
        10 => "(same-as (f) (g))".into(),
        11 => "(same-as (f) (g f))".into(),
        12 => "(all q ALL-P-A)".into(),
        13 => "(all f (dateRange (1996/1/1 1996/1/5)))".into(),
        14 => "(all p (and C (at-most 1 q)))".into(),
        _ => format!("(and (all q (one-of {i})) (at-least 1 q))"),
    }
}

pub fn random_update<R: Rng>(rng: &mut R) -> String {
    let b = pick(rng, &INDS);
    match rng.gen_range(0..10) {
        0..=3 => format!("(assert-member {b} {})", member_concept(rng)),
        4..=6 => format!("(assert-fills {b} {} {})", pick(rng, &["p", "q"]), pick(rng, &INDS)),
        7 => {
            let e = if rng.gen_bool(0.3) { "1996/01/03".to_string() } else { pick(rng, &INDS).to_string() };
            format!("(assert-fills {b} {} {e})", pick(rng, &["f", "g"]))
        }
        _ => format!("(assert-closed {b} {})", pick(rng, &["p", "q"])),
    }
}

pub fn commands(src: &str) -> Vec<KbCommand> {
    parse_program(src).into_iter().map(|r| r.expect("generated text parses").1).collect()
}

/// Runs random updates, keeping those that are accepted, until `len` were
/// tried. Returns the knowledge base and the accepted commands.
pub fn accepted_sequence<R: Rng>(rng: &mut R, len: usize, propagation: Propagation) -> (KnowledgeBase, Vec<KbCommand>) {
    let mut kb = KnowledgeBase::default().with_propagation(propagation);
    for c in commands(ABOX_DECLS) {
        kb.execute(&c).expect("declarations are valid");
    }
    let mut accepted = Vec::new();
    for _ in 0..len {
        let cmd = commands(&random_update(rng)).remove(0);
        if kb.execute(&cmd).is_ok() {
            accepted.push(cmd);
        }
    }
    (kb, accepted)
}

fn mentioned(c: &KbCommand) -> BTreeSet<Individual> {
    fn walk(d: &Description, out: &mut BTreeSet<Individual>) {
        match d {
            Description::And(ds) => ds.iter().for_each(|d| walk(d, out)),
            Description::All(_, c) | Description::Some(_, c) => walk(c, out),
            Description::Fills(_, b) => {
                out.insert(b.clone());
            }
            Description::OneOf(bs) => out.extend(bs.iter().cloned()),
            _ => {}
        }
    }
    let mut out = BTreeSet::new();
    match c {
        KbCommand::AssertMember(b, d) => {
            out.insert(b.clone());
            walk(d, &mut out);
        }
        KbCommand::AssertFills(b, _, e) => {
            out.insert(b.clone());
            out.insert(e.clone());
        }
        KbCommand::AssertClosed(b, _) => {
            out.insert(b.clone());
        }
        _ => {}
    }
    out
}

/// Updates touching disjoint sets of individuals.
pub fn independent(a: &KbCommand, b: &KbCommand) -> bool {
    mentioned(a).is_disjoint(&mentioned(b))
}

/// Randomly swaps adjacent independent updates.
pub fn permute_independent<R: Rng>(rng: &mut R, cmds: &[KbCommand]) -> Vec<KbCommand> {
    let mut out = cmds.to_vec();
    for _ in 0..out.len() * 2 {
        if out.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..out.len() - 1);
        if independent(&out[i], &out[i + 1]) {
            out.swap(i, i + 1);
        }
    }
    out
}
