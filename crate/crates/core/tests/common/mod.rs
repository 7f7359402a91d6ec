#![allow(dead_code)]

pub mod checks;
pub mod gen;

use dlkb::syntax::parse_program;
use dlkb::{parse_description, Description, Ident, Individual, KbError, KnowledgeBase, Outcome};

/// Runs every command of `src`, panicking on parse errors and rejections.
pub fn load(src: &str) -> KnowledgeBase {
    let mut kb = KnowledgeBase::default();
    run(&mut kb, src);
    kb
}

pub fn run(kb: &mut KnowledgeBase, src: &str) -> Vec<Outcome> {
    parse_program(src)
        .into_iter()
        .map(|r| {
            let (_, cmd) = r.expect("test program parses");
            kb.execute(&cmd).unwrap_or_else(|e| panic!("{} failed: {e}", cmd.keyword()))
        })
        .collect()
}

pub fn try_run(kb: &mut KnowledgeBase, src: &str) -> Result<Outcome, KbError> {
    let mut last = Ok(Outcome::Declared);
    for r in parse_program(src) {
        let (_, cmd) = r.expect("test program parses");
        last = kb.execute(&cmd);
        if last.is_err() {
            break;
        }
    }
    last
}

pub fn d(s: &str) -> Description {
    parse_description(s).expect("test description parses")
}

pub fn ind(s: &str) -> Individual {
    Individual::named(s)
}

pub fn id(s: &str) -> Ident {
    Ident::new(s)
}

pub fn member(kb: &KnowledgeBase, b: &str, c: &str) -> bool {
    kb.ask_member(&ind(b), &d(c)).expect("query in scope")
}

pub fn non_member(kb: &KnowledgeBase, b: &str, c: &str) -> bool {
    kb.ask_non_member(&ind(b), &d(c)).expect("query in scope")
}

pub fn fillers(kb: &KnowledgeBase, b: &str, p: &str) -> Vec<String> {
    kb.ask_for_fillers(&ind(b), &id(p)).expect("query in scope").iter().map(ToString::to_string).collect()
}
