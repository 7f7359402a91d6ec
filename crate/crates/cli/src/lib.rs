//! Batch and interactive front end.
//!
//! Answers and reports go to `out`, one per line; diagnostics go to `err`.
//! A batch file and the same text typed into the REPL produce identical
//! output on both streams.

use std::io::{self, BufRead, Write};
use std::path::Path;

use dlkb::abox::rejection_line;
use dlkb::syntax::{is_balanced, parse_program, Pos};
use dlkb::tbox::{ClassificationReport, TboxError};
use dlkb::{KbCommand, KbError, Kernel, KnowledgeBase, Outcome, Tbox};

/// Exit status: every command succeeded.
pub const OK: u8 = 0;
/// An update was rejected or a declared concept is incoherent.
pub const REJECTED: u8 = 1;
/// A form did not parse or named something undeclared.
pub const BAD_INPUT: u8 = 2;

pub struct Session {
    kb: KnowledgeBase,
    verbose: bool,
    status: u8,
}

impl Session {
    pub fn new(verbose: bool, budget: Option<usize>) -> Session {
        let kb = match budget {
            Some(n) => KnowledgeBase::new(Tbox::new(Kernel::default().with_budget(n))).with_budget(n),
            None => KnowledgeBase::default(),
        };
        Session { kb, verbose, status: OK }
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    /// Worst outcome so far.
    pub fn status(&self) -> u8 {
        self.status
    }

    fn flag(&mut self, status: u8) {
        self.status = self.status.max(status);
    }

    /// Runs every form of `text`; `first_line` is the line number of its
    /// first line, for diagnostics.
    pub fn run_text(&mut self, text: &str, first_line: usize, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<()> {
        let shift = |p: Pos| Pos { line: p.line + first_line - 1, column: p.column };
        for form in parse_program(text) {
            match form {
                Ok((pos, cmd)) => self.exec(&cmd, shift(pos), out, err)?,
                Err(e) => {
                    writeln!(err, "error at {}: {}", shift(e.pos), e.message)?;
                    self.flag(BAD_INPUT);
                }
            }
        }
        Ok(())
    }

    fn exec(&mut self, cmd: &KbCommand, pos: Pos, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<()> {
        match self.kb.execute(cmd) {
            Ok(Outcome::Declared) => {
                if self.verbose {
                    writeln!(out, "ok")?;
                }
            }
            Ok(Outcome::Classified(r)) => self.classified(&r, out, err)?,
            Ok(Outcome::Updated(r)) => {
                if self.verbose {
                    let lines = r.lines();
                    if lines.is_empty() {
                        writeln!(out, "ok")?;
                    }
                    for l in lines {
                        writeln!(out, "{l}")?;
                    }
                }
            }
            Ok(Outcome::Answer(b)) => writeln!(out, "{b}")?,
            Ok(Outcome::Names(ns)) => writeln!(out, "({})", ns.join(" "))?,
            Err(KbError::Rejected(s)) => {
                writeln!(out, "{}", rejection_line(&s))?;
                self.flag(REJECTED);
            }
            Err(KbError::Scope(TboxError::Signal(s))) => {
                writeln!(out, "{}", rejection_line(&s))?;
                self.flag(REJECTED);
            }
            Err(KbError::Scope(e)) => {
                writeln!(err, "error at {pos}: {}: {e}", cmd.keyword())?;
                self.flag(BAD_INPUT);
            }
        }
        Ok(())
    }

    fn classified(&mut self, r: &ClassificationReport, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<()> {
        let names = |s: &std::collections::BTreeSet<dlkb::Ident>| {
            s.iter().map(|n| n.as_str()).collect::<Vec<_>>().join(" ")
        };
        if self.verbose {
            writeln!(out, "classified {} parents ({}) children ({})", r.name, names(&r.parents), names(&r.children))?;
        }
        if r.incoherent {
            writeln!(err, "warning: {} is incoherent", r.name)?;
            self.flag(REJECTED);
        } else if r.is_redundant() {
            writeln!(err, "warning: {} is equivalent to {}", r.name, names(&r.equivalent))?;
        }
        Ok(())
    }
}

pub fn run_batch(session: &mut Session, path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<()> {
    match std::fs::read_to_string(path) {
        Ok(text) => session.run_text(&text, 1, out, err),
        Err(e) => {
            writeln!(err, "error: cannot read {}: {e}", path.display())?;
            session.flag(BAD_INPUT);
            Ok(())
        }
    }
}

/// Reads forms until end of input or `:quit`. Lines are collected until
/// their parentheses balance, so a form may span several lines.
pub fn run_repl(
    session: &mut Session,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    prompt: bool,
) -> io::Result<()> {
    let mut pending = String::new();
    let mut first_line = 1;
    let mut line_no = 0;
    loop {
        if prompt {
            write!(out, "{}", if pending.is_empty() { "dlkb> " } else { "...   " })?;
            out.flush()?;
        }
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            break;
        }
        line_no += 1;
        if pending.trim().is_empty() {
            match line.trim() {
                ":quit" => return Ok(()),
                ":fingerprint" => {
                    write!(out, "{}", session.kb.fingerprint())?;
                    pending.clear();
                    first_line = line_no + 1;
                    continue;
                }
                cmd if cmd.starts_with(':') => {
                    writeln!(err, "error at {line_no}:1: unknown directive {cmd}")?;
                    session.flag(BAD_INPUT);
                    pending.clear();
                    first_line = line_no + 1;
                    continue;
                }
                _ => {}
            }
        }
        pending.push_str(&line);
        if is_balanced(&pending) {
            session.run_text(&pending, first_line, out, err)?;
            pending.clear();
            first_line = line_no + 1;
        }
    }
    if !pending.trim().is_empty() {
        session.run_text(&pending, first_line, out, err)?;
    }
    Ok(())
}
