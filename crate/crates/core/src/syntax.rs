//! Surface language: concept descriptions and knowledge-base commands.
//!
//! Everything is a parenthesized prefix form. A keyword is only a keyword in
//! head position, except the atoms `THING`, `NOTHING` and `ANY-DATE`.
//! `;` starts a comment that runs to the end of the line.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::dates::Date;

/// A case-sensitive name of a role, attribute, concept or individual.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(Arc<str>);

impl Ident {
    pub fn new(s: &str) -> Ident {
        Ident(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Ident {
    fn from(s: &str) -> Ident {
        Ident::new(s)
    }
}

impl Borrow<str> for Ident {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// An individual: a declared name, or a date literal with value identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Individual {
    Named(Ident),
    Date(Date),
}

impl Individual {
    pub fn named(s: &str) -> Individual {
        Individual::Named(Ident::new(s))
    }

    pub fn as_date(&self) -> Option<Date> {
        match self {
            Individual::Date(d) => Some(*d),
            Individual::Named(_) => None,
        }
    }
}

impl From<&str> for Individual {
    fn from(s: &str) -> Individual {
        Individual::named(s)
    }
}

impl fmt::Display for Individual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Individual::Named(n) => n.fmt(f),
            Individual::Date(d) => d.fmt(f),
        }
    }
}

/// Parsed concept expression.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Description {
    ThingRef,
    NothingRef,
    NameRef(Ident),
    And(Vec<Description>),
    All(Ident, Box<Description>),
    Some(Ident, Box<Description>),
    AtLeast(u32, Ident),
    AtMost(u32, Ident),
    Fills(Ident, Individual),
    OneOf(Vec<Individual>),
    SameAs(Vec<Ident>, Vec<Ident>),
    AnyDate,
    DateRangeLit(Vec<(Date, Date)>),
    PeriodLit { month_lo: u8, month_hi: u8, day_lo: u8, day_hi: u8 },
}

impl Description {
    pub fn name(s: &str) -> Description {
        Description::NameRef(Ident::new(s))
    }

    pub fn all(role: &str, c: Description) -> Description {
        Description::All(Ident::new(role), Box::new(c))
    }

    pub fn some(role: &str, c: Description) -> Description {
        Description::Some(Ident::new(role), Box::new(c))
    }

    pub fn at_least(n: u32, role: &str) -> Description {
        Description::AtLeast(n, Ident::new(role))
    }

    pub fn at_most(n: u32, role: &str) -> Description {
        Description::AtMost(n, Ident::new(role))
    }

    /// Registry tag of the constructor heading this description, if any.
    pub fn constructor_tag(&self) -> Option<&'static str> {
        use crate::kernel::tags;
        match self {
            Description::All(..) => Some(tags::ALL),
            Description::Some(..) => Some(tags::SOME),
            Description::AtLeast(..) | Description::AtMost(..) => Some(tags::BOUNDS),
            Description::Fills(..) => Some(tags::FILLS),
            Description::OneOf(..) => Some(tags::ONE_OF),
            Description::SameAs(..) => Some(tags::SAME_AS),
            Description::DateRangeLit(..) => Some(tags::DATE_RANGE),
            Description::PeriodLit { .. } => Some(tags::PERIOD),
            _ => None,
        }
    }

    /// Role named by a role-bound constructor.
    pub fn role(&self) -> Option<&Ident> {
        match self {
            Description::All(r, _)
            | Description::Some(r, _)
            | Description::AtLeast(_, r)
            | Description::AtMost(_, r)
            | Description::Fills(r, _) => Some(r),
            _ => None,
        }
    }
}

/// One knowledge-base operation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KbCommand {
    DeclarePrimitiveRole(Ident),
    DeclarePrimitiveAttribute(Ident),
    DeclareIndividual(Ident),
    DeclarePrimitiveConcept(Ident, Description),
    DeclareDefinedConcept(Ident, Description),
    AssertMember(Individual, Description),
    AssertFills(Individual, Ident, Individual),
    AssertClosed(Individual, Ident),
    AskSubsumes(Description, Description),
    AskAncestors(Description),
    AskIsIncoherent(Description),
    AskMember(Individual, Description),
    AskNonMember(Individual, Description),
    AskForFillers(Individual, Ident),
    AskClosed(Individual, Ident),
}

impl KbCommand {
    pub fn keyword(&self) -> &'static str {
        match self {
            KbCommand::DeclarePrimitiveRole(_) => "declare-primitive-role",
            KbCommand::DeclarePrimitiveAttribute(_) => "declare-primitive-attribute",
            KbCommand::DeclareIndividual(_) => "declare-individual",
            KbCommand::DeclarePrimitiveConcept(..) => "declare-primitive-concept",
            KbCommand::DeclareDefinedConcept(..) => "declare-defined-concept",
            KbCommand::AssertMember(..) => "assert-member",
            KbCommand::AssertFills(..) => "assert-fills",
            KbCommand::AssertClosed(..) => "assert-closed",
            KbCommand::AskSubsumes(..) => "ask-subsumes?",
            KbCommand::AskAncestors(_) => "ask-ancestors",
            KbCommand::AskIsIncoherent(_) => "ask-is-incoherent?",
            KbCommand::AskMember(..) => "ask-member?",
            KbCommand::AskNonMember(..) => "ask-non-member?",
            KbCommand::AskForFillers(..) => "ask-for-fillers",
            KbCommand::AskClosed(..) => "ask-closed?",
        }
    }

    pub fn is_update(&self) -> bool {
        matches!(
            self,
            KbCommand::AssertMember(..) | KbCommand::AssertFills(..) | KbCommand::AssertClosed(..)
        )
    }
}

/// 1-based source position.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("parse error at {pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

fn err<T>(pos: Pos, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

#[derive(Clone, Debug)]
enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

#[derive(Debug)]
enum Token {
    Open(Pos),
    Close(Pos),
    Atom(String, Pos),
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    let mut current: Option<(String, Pos)> = None;
    while let Some(c) = chars.next() {
        let here = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
        let delimiter = c.is_whitespace() || c == '(' || c == ')' || c == ';';
        if delimiter {
            if let Some((s, p)) = current.take() {
                tokens.push(Token::Atom(s, p));
            }
        }
        match c {
            '(' => tokens.push(Token::Open(here)),
            ')' => tokens.push(Token::Close(here)),
            ';' => {
                while let Some(&n) = chars.peek() {
                    if n == '\n' {
                        break;
                    }
                    chars.next();
                    column += 1;
                }
            }
            c if c.is_whitespace() => {}
            c => match &mut current {
                Some((s, _)) => s.push(c),
                None => current = Some((c.to_string(), here)),
            },
        }
    }
    if let Some((s, p)) = current {
        tokens.push(Token::Atom(s, p));
    }
    tokens
}

/// Splits a token stream into top-level forms. Stops at the first bracket error.
fn read_forms(text: &str) -> (Vec<Sexp>, Option<ParseError>) {
    let mut forms = Vec::new();
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    for token in tokenize(text) {
        match token {
            Token::Open(p) => stack.push((Vec::new(), p)),
            Token::Close(p) => match stack.pop() {
                Some((items, start)) => {
                    let list = Sexp::List(items, start);
                    match stack.last_mut() {
                        Some((parent, _)) => parent.push(list),
                        None => forms.push(list),
                    }
                }
                None => {
                    return (forms, Some(ParseError { pos: p, message: "unexpected `)`".into() }))
                }
            },
            Token::Atom(s, p) => match stack.last_mut() {
                Some((parent, _)) => parent.push(Sexp::Atom(s, p)),
                None => forms.push(Sexp::Atom(s, p)),
            },
        }
    }
    match stack.first() {
        Some((_, p)) => (forms, Some(ParseError { pos: *p, message: "unclosed `(`".into() })),
        None => (forms, None),
    }
}

fn read_single(text: &str) -> Result<Sexp, ParseError> {
    let (mut forms, error) = read_forms(text);
    if let Some(e) = error {
        return Err(e);
    }
    match forms.len() {
        0 => err(Pos { line: 1, column: 1 }, "empty input"),
        1 => Ok(forms.pop().unwrap()),
        _ => err(forms[1].pos(), "unexpected text after form"),
    }
}

const RESERVED_ATOMS: [&str; 3] = ["THING", "NOTHING", "ANY-DATE"];

/// True when `s` can be written as an identifier token.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with(|c: char| c.is_ascii_digit())
        && !s.chars().any(|c| c.is_whitespace() || "();/".contains(c))
        && !RESERVED_ATOMS.contains(&s)
}

fn ident(s: &Sexp, what: &str) -> Result<Ident, ParseError> {
    match s {
        Sexp::Atom(a, _) if is_identifier(a) => Ok(Ident::new(a)),
        other => err(other.pos(), format!("expected {what} identifier")),
    }
}

fn number(s: &Sexp, what: &str) -> Result<u32, ParseError> {
    match s {
        Sexp::Atom(a, p) if a.bytes().all(|b| b.is_ascii_digit()) => {
            a.parse().or_else(|_| err(*p, format!("{what} out of range")))
        }
        other => err(other.pos(), format!("expected {what}")),
    }
}

fn date(s: &Sexp) -> Result<Date, ParseError> {
    match s {
        Sexp::Atom(a, p) => a.parse().or_else(|e| err(*p, format!("{e}"))),
        other => err(other.pos(), "expected a date YYYY/MM/DD"),
    }
}

fn individual(s: &Sexp) -> Result<Individual, ParseError> {
    match s {
        Sexp::Atom(a, _) if a.contains('/') => Ok(Individual::Date(date(s)?)),
        _ => Ok(Individual::Named(ident(s, "individual")?)),
    }
}

fn pair<T>(
    s: &Sexp,
    what: &str,
    mut item: impl FnMut(&Sexp) -> Result<T, ParseError>,
) -> Result<(T, T), ParseError> {
    match s {
        Sexp::List(items, _) if items.len() == 2 => Ok((item(&items[0])?, item(&items[1])?)),
        other => err(other.pos(), format!("expected a two-element {what} list")),
    }
}

fn arity(args: &[Sexp], n: usize, head: &str, pos: Pos) -> Result<(), ParseError> {
    if args.len() == n {
        Ok(())
    } else {
        let plural = if n == 1 { "" } else { "s" };
        err(pos, format!("`{head}` expects {n} argument{plural}, got {}", args.len()))
    }
}

fn chain(s: &Sexp) -> Result<Vec<Ident>, ParseError> {
    match s {
        Sexp::List(items, _) if !items.is_empty() => {
            items.iter().map(|i| ident(i, "attribute")).collect()
        }
        other => err(other.pos(), "expected a non-empty attribute chain"),
    }
}

fn description(s: &Sexp) -> Result<Description, ParseError> {
    let (items, pos) = match s {
        Sexp::Atom(a, p) => {
            return match a.as_str() {
                "THING" => Ok(Description::ThingRef),
                "NOTHING" => Ok(Description::NothingRef),
                "ANY-DATE" => Ok(Description::AnyDate),
                _ if is_identifier(a) => Ok(Description::NameRef(Ident::new(a))),
                _ => err(*p, format!("expected a concept, found `{a}`")),
            }
        }
        Sexp::List(items, p) => (items, *p),
    };
    let (head, args) = match items.split_first() {
        Some((Sexp::Atom(h, _), rest)) => (h.as_str(), rest),
        Some((other, _)) => return err(other.pos(), "expected a constructor keyword"),
        None => return err(pos, "empty form"),
    };
    match head {
        "and" => {
            if args.is_empty() {
                return err(pos, "`and` expects at least 1 argument, got 0");
            }
            Ok(Description::And(args.iter().map(description).collect::<Result<_, _>>()?))
        }
        "all" | "some" => {
            arity(args, 2, head, pos)?;
            let role = ident(&args[0], "role")?;
            let c = Box::new(description(&args[1])?);
            Ok(if head == "all" { Description::All(role, c) } else { Description::Some(role, c) })
        }
        "at-least" | "at-most" => {
            arity(args, 2, head, pos)?;
            let n = number(&args[0], "a non-negative integer")?;
            let role = ident(&args[1], "role")?;
            Ok(if head == "at-least" { Description::AtLeast(n, role) } else { Description::AtMost(n, role) })
        }
        "fills" => {
            arity(args, 2, head, pos)?;
            Ok(Description::Fills(ident(&args[0], "role")?, individual(&args[1])?))
        }
        "one-of" => {
            let members: Vec<Individual> = args.iter().map(individual).collect::<Result<_, _>>()?;
            let mut seen = BTreeSet::new();
            for (m, a) in members.iter().zip(args) {
                if !seen.insert(m) {
                    return err(a.pos(), format!("duplicate member `{m}` in `one-of`"));
                }
            }
            Ok(Description::OneOf(members))
        }
        "same-as" => {
            arity(args, 2, head, pos)?;
            Ok(Description::SameAs(chain(&args[0])?, chain(&args[1])?))
        }
        "dateRange" => Ok(Description::DateRangeLit(
            args.iter().map(|a| pair(a, "date", date)).collect::<Result<_, _>>()?,
        )),
        "period" => {
            arity(args, 2, head, pos)?;
            let bounded = |s: &Sexp, hi: u32, what: &str| -> Result<u8, ParseError> {
                let n = number(s, what)?;
                if (1..=hi).contains(&n) {
                    Ok(n as u8)
                } else {
                    err(s.pos(), format!("{what} must lie in 1..{hi}"))
                }
            };
            let (month_lo, month_hi) = pair(&args[0], "month", |s| bounded(s, 12, "month"))?;
            let (day_lo, day_hi) = pair(&args[1], "day", |s| bounded(s, 31, "day"))?;
            Ok(Description::PeriodLit { month_lo, month_hi, day_lo, day_hi })
        }
        other => err(items[0].pos(), format!("unknown constructor `{other}`")),
    }
}

fn command(s: &Sexp) -> Result<KbCommand, ParseError> {
    let (items, pos) = match s {
        Sexp::List(items, p) => (items, *p),
        Sexp::Atom(a, p) => return err(*p, format!("expected a command form, found `{a}`")),
    };
    let (head, args) = match items.split_first() {
        Some((Sexp::Atom(h, _), rest)) => (h.as_str(), rest),
        Some((other, _)) => return err(other.pos(), "expected a command keyword"),
        None => return err(pos, "empty form"),
    };
    let n = match head {
        "declare-primitive-role" | "declare-primitive-attribute" | "declare-individual"
        | "ask-ancestors" | "ask-is-incoherent?" => 1,
        "declare-primitive-concept" | "declare-defined-concept" | "assert-member"
        | "assert-closed" | "ask-subsumes?" | "ask-member?" | "ask-non-member?"
        | "ask-for-fillers" | "ask-closed?" => 2,
        "assert-fills" => 3,
        other => return err(items[0].pos(), format!("unknown command `{other}`")),
    };
    arity(args, n, head, pos)?;
    use KbCommand as K;
    Ok(match head {
        "declare-primitive-role" => K::DeclarePrimitiveRole(ident(&args[0], "role")?),
        "declare-primitive-attribute" => K::DeclarePrimitiveAttribute(ident(&args[0], "attribute")?),
        "declare-individual" => K::DeclareIndividual(ident(&args[0], "individual")?),
        "declare-primitive-concept" => {
            K::DeclarePrimitiveConcept(ident(&args[0], "concept")?, description(&args[1])?)
        }
        "declare-defined-concept" => {
            K::DeclareDefinedConcept(ident(&args[0], "concept")?, description(&args[1])?)
        }
        "assert-member" => K::AssertMember(individual(&args[0])?, description(&args[1])?),
        "assert-fills" => {
            K::AssertFills(individual(&args[0])?, ident(&args[1], "role")?, individual(&args[2])?)
        }
        "assert-closed" => K::AssertClosed(individual(&args[0])?, ident(&args[1], "role")?),
        "ask-subsumes?" => K::AskSubsumes(description(&args[0])?, description(&args[1])?),
        "ask-ancestors" => K::AskAncestors(description(&args[0])?),
        "ask-is-incoherent?" => K::AskIsIncoherent(description(&args[0])?),
        "ask-member?" => K::AskMember(individual(&args[0])?, description(&args[1])?),
        "ask-non-member?" => K::AskNonMember(individual(&args[0])?, description(&args[1])?),
        "ask-for-fillers" => K::AskForFillers(individual(&args[0])?, ident(&args[1], "role")?),
        _ => K::AskClosed(individual(&args[0])?, ident(&args[1], "role")?),
    })
}

pub fn parse_description(text: &str) -> Result<Description, ParseError> {
    description(&read_single(text)?)
}

pub fn parse_command(text: &str) -> Result<KbCommand, ParseError> {
    command(&read_single(text)?)
}

/// Parses a whole command file. Each well-bracketed form yields its own
/// result; a bracket error ends the stream with that error.
pub fn parse_program(text: &str) -> Vec<Result<(Pos, KbCommand), ParseError>> {
    let (forms, error) = read_forms(text);
    let mut out: Vec<_> = forms.iter().map(|f| command(f).map(|c| (f.pos(), c))).collect();
    out.extend(error.map(Err));
    out
}

/// Returns true once `text` holds no unclosed `(` (comments ignored).
pub fn is_balanced(text: &str) -> bool {
    let mut depth = 0i64;
    for t in tokenize(text) {
        match t {
            Token::Open(_) => depth += 1,
            Token::Close(_) => depth -= 1,
            Token::Atom(..) => {}
        }
    }
    depth <= 0
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Description::ThingRef => f.write_str("THING"),
            Description::NothingRef => f.write_str("NOTHING"),
            Description::AnyDate => f.write_str("ANY-DATE"),
            Description::NameRef(n) => n.fmt(f),
            Description::And(cs) => write!(f, "(and {})", join(cs)),
            Description::All(r, c) => write!(f, "(all {r} {c})"),
            Description::Some(r, c) => write!(f, "(some {r} {c})"),
            Description::AtLeast(n, r) => write!(f, "(at-least {n} {r})"),
            Description::AtMost(n, r) => write!(f, "(at-most {n} {r})"),
            Description::Fills(r, b) => write!(f, "(fills {r} {b})"),
            Description::OneOf(bs) if bs.is_empty() => f.write_str("(one-of)"),
            Description::OneOf(bs) => write!(f, "(one-of {})", join(bs)),
            Description::SameAs(a, b) => write!(f, "(same-as ({}) ({}))", join(a), join(b)),
            Description::DateRangeLit(pairs) => {
                f.write_str("(dateRange")?;
                for (b, e) in pairs {
                    write!(f, " ({b} {e})")?;
                }
                f.write_str(")")
            }
            Description::PeriodLit { month_lo, month_hi, day_lo, day_hi } => {
                write!(f, "(period ({month_lo} {month_hi}) ({day_lo} {day_hi}))")
            }
        }
    }
}

pub fn render_description(d: &Description) -> String {
    d.to_string()
}

impl fmt::Display for KbCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.keyword();
        match self {
            KbCommand::DeclarePrimitiveRole(n)
            | KbCommand::DeclarePrimitiveAttribute(n)
            | KbCommand::DeclareIndividual(n) => write!(f, "({k} {n})"),
            KbCommand::DeclarePrimitiveConcept(n, d) | KbCommand::DeclareDefinedConcept(n, d) => {
                write!(f, "({k} {n} {d})")
            }
            KbCommand::AssertMember(b, d)
            | KbCommand::AskMember(b, d)
            | KbCommand::AskNonMember(b, d) => write!(f, "({k} {b} {d})"),
            KbCommand::AssertFills(b, r, e) => write!(f, "({k} {b} {r} {e})"),
            KbCommand::AssertClosed(b, r)
            | KbCommand::AskForFillers(b, r)
            | KbCommand::AskClosed(b, r) => write!(f, "({k} {b} {r})"),
            KbCommand::AskSubsumes(c, d) => write!(f, "({k} {c} {d})"),
            KbCommand::AskAncestors(c) | KbCommand::AskIsIncoherent(c) => write!(f, "({k} {c})"),
        }
    }
}
