//! The temporal Narsese subset: terms, sentences, directives and step counts.
//!
//! Grammar (whitespace between tokens is insignificant, `//` starts a comment):
//!
//! ```text
//! line       ::= "" | comment | directive | steps | sentence
//! steps      ::= digit+                       (value >= 1)
//! directive  ::= "*setopname" int "^" name
//!              | "*" key "=" value
//! sentence   ::= term ("." | "!") [":|:"] [truth]
//! truth      ::= "{" number number "}"
//! term       ::= name
//!              | "^" name
//!              | "<" name "-->" "[" name "]" ">"
//!              | "<" term "=/>" term ">"
//!              | "(" term "&/" term ")"
//! name       ::= one or more characters other than whitespace and < > ( ) { } [ ] ! . : | ^ * = & / - ,
//! ```
//!
//! Keys accepted by `*key=value`: `babblingops`, `motorbabbling`, `volume`,
//! `decay`, `threshold`, `deadline`, `horizon`, `seed`, `evidencecap`,
//! `suppression`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown directive `*{0}`")]
    UnknownDirective(String),
}

impl ParseError {
    fn syntax(column: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            column,
            message: message.into(),
        }
    }
}

/// A term of the sensorimotor subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Atom(String),
    /// `<subject --> [property]>`
    Property { subject: String, property: String },
    /// `^name`
    Operation(String),
    /// `(left &/ right)`
    Sequence(Box<Term>, Box<Term>),
    /// `<antecedent =/> consequent>`
    Implication(Box<Term>, Box<Term>),
}

impl Term {
    pub fn atom(name: impl Into<String>) -> Self {
        Term::Atom(name.into())
    }

    pub fn property(subject: impl Into<String>, property: impl Into<String>) -> Self {
        Term::Property {
            subject: subject.into(),
            property: property.into(),
        }
    }

    pub fn op(name: impl Into<String>) -> Self {
        Term::Operation(name.into())
    }

    pub fn seq(left: Term, right: Term) -> Self {
        Term::Sequence(Box::new(left), Box::new(right))
    }

    pub fn implication(antecedent: Term, consequent: Term) -> Self {
        Term::Implication(Box::new(antecedent), Box::new(consequent))
    }

    /// Builds `((s1 &/ s2 ...) &/ op) =/> consequent` from a left-associated chain.
    pub fn procedural(preconditions: &[Term], op: &str, consequent: Term) -> Self {
        let mut chain = preconditions.to_vec();
        chain.push(Term::op(op));
        let antecedent = chain
            .into_iter()
            .reduce(Term::seq)
            .expect("chain holds at least the operation");
        Term::implication(antecedent, consequent)
    }

    pub fn is_operation(&self) -> bool {
        matches!(self, Term::Operation(_))
    }

    /// Flattens a left-associated sequence into its elements.
    pub fn sequence_elements(&self) -> Vec<&Term> {
        match self {
            Term::Sequence(left, right) => {
                let mut out = left.sequence_elements();
                out.extend(right.sequence_elements());
                out
            }
            other => vec![other],
        }
    }

    fn count_operations(&self) -> usize {
        match self {
            Term::Operation(_) => 1,
            Term::Sequence(l, r) | Term::Implication(l, r) => {
                l.count_operations() + r.count_operations()
            }
            _ => 0,
        }
    }

    fn contains_implication(&self) -> bool {
        match self {
            Term::Implication(..) => true,
            Term::Sequence(l, r) => l.contains_implication() || r.contains_implication(),
            _ => false,
        }
    }

    pub fn as_implication(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::Implication(a, c) => Some((a, c)),
            _ => None,
        }
    }

    /// Splits a procedural hypothesis into its preconditions, operation name and
    /// consequent. Returns `None` unless the antecedent is a sequence ending in
    /// exactly one operation.
    pub fn procedural_parts(&self) -> Option<(Vec<&Term>, &str, &Term)> {
        let (antecedent, consequent) = self.as_implication()?;
        let mut elements = antecedent.sequence_elements();
        let op = match elements.pop()? {
            Term::Operation(name) => name.as_str(),
            _ => return None,
        };
        if elements.iter().any(|t| t.count_operations() > 0) {
            return None;
        }
        Some((elements, op, consequent))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Atom(name) => f.write_str(name),
            Term::Property { subject, property } => write!(f, "<{subject} --> [{property}]>"),
            Term::Operation(name) => write!(f, "^{name}"),
            Term::Sequence(l, r) => write!(f, "({l} &/ {r})"),
            Term::Implication(a, c) => write!(f, "<{a} =/> {c}>"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Punctuation {
    Judgment,
    Goal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Occurrence {
    /// `:|:`, resolved to the engine clock on ingestion.
    Now,
    Eternal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    pub term: Term,
    pub punctuation: Punctuation,
    /// Explicit `{f c}` annotation; `None` means the default `{1.0 0.9}`.
    pub truth: Option<TruthValue>,
    pub occurrence: Occurrence,
}

impl Sentence {
    pub fn event(term: Term) -> Self {
        Sentence {
            term,
            punctuation: Punctuation::Judgment,
            truth: None,
            occurrence: Occurrence::Now,
        }
    }

    pub fn goal(term: Term) -> Self {
        Sentence {
            term,
            punctuation: Punctuation::Goal,
            truth: None,
            occurrence: Occurrence::Now,
        }
    }

    pub fn with_truth(mut self, truth: TruthValue) -> Self {
        self.truth = Some(truth);
        self
    }

    pub fn eternal(mut self) -> Self {
        self.occurrence = Occurrence::Eternal;
        self
    }

    /// Truth (or desire, for goals) with the default applied.
    pub fn truth(&self) -> TruthValue {
        self.truth.unwrap_or(TruthValue::DEFAULT)
    }

    pub fn is_goal(&self) -> bool {
        self.punctuation == Punctuation::Goal
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

/// Configuration directive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Directive {
    SetOpName { index: usize, name: String },
    BabblingOps(usize),
    MotorBabbling(f64),
    Volume(u8),
    Decay(f64),
    Threshold(f64),
    Deadline(u64),
    Horizon(u64),
    Seed(u64),
    EvidenceCap(f64),
    Suppression(f64),
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Directive::SetOpName { index, name } => write!(f, "*setopname {index} ^{name}"),
            Directive::BabblingOps(n) => write!(f, "*babblingops={n}"),
            Directive::MotorBabbling(p) => write!(f, "*motorbabbling={p}"),
            Directive::Volume(v) => write!(f, "*volume={v}"),
            Directive::Decay(v) => write!(f, "*decay={v}"),
            Directive::Threshold(v) => write!(f, "*threshold={v}"),
            Directive::Deadline(v) => write!(f, "*deadline={v}"),
            Directive::Horizon(v) => write!(f, "*horizon={v}"),
            Directive::Seed(v) => write!(f, "*seed={v}"),
            Directive::EvidenceCap(v) => write!(f, "*evidencecap={v}"),
            Directive::Suppression(v) => write!(f, "*suppression={v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ParsedInput {
    Sentence(Sentence),
    Config(Directive),
    StepCount(u64),
    Comment,
}

/// Canonical text of a sentence.
pub fn serialize(sentence: &Sentence) -> String {
    let mut out = sentence.term.to_string();
    out.push(match sentence.punctuation {
        Punctuation::Judgment => '.',
        Punctuation::Goal => '!',
    });
    if sentence.occurrence == Occurrence::Now {
        out.push_str(" :|:");
    }
    if let Some(t) = sentence.truth {
        out.push_str(&format!(" {{{:?} {:?}}}", t.frequency(), t.confidence()));
    }
    out
}

pub fn parse_line(text: &str) -> Result<ParsedInput, ParseError> {
    let content = match text.find("//") {
        Some(idx) => &text[..idx],
        None => text,
    };
    let mut lexer = Lexer::new(content);
    lexer.skip_ws();
    match lexer.peek() {
        None => Ok(ParsedInput::Comment),
        Some('*') => parse_directive(&mut lexer),
        Some(c) if c.is_ascii_digit() => parse_steps(&mut lexer),
        Some(_) => {
            let sentence = parse_sentence(&mut lexer)?;
            Ok(ParsedInput::Sentence(sentence))
        }
    }
}

/// Parses a single term (no punctuation), e.g. for queries.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut lexer = Lexer::new(text);
    let term = lexer.term(0)?;
    lexer.expect_end()?;
    Ok(term)
}

fn parse_steps(lexer: &mut Lexer) -> Result<ParsedInput, ParseError> {
    let start = lexer.column();
    let digits = lexer.take_while(|c| c.is_ascii_digit());
    lexer.expect_end()?;
    let n: u64 = digits
        .parse()
        .map_err(|_| ParseError::syntax(start, "step count out of range"))?;
    if n == 0 {
        return Err(ParseError::syntax(start, "step count must be at least 1"));
    }
    Ok(ParsedInput::StepCount(n))
}

fn parse_directive(lexer: &mut Lexer) -> Result<ParsedInput, ParseError> {
    lexer.bump();
    let key_col = lexer.column();
    let key = lexer.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
    if key.is_empty() {
        return Err(ParseError::syntax(key_col, "expected directive name"));
    }
    if key == "setopname" {
        lexer.skip_ws();
        let col = lexer.column();
        let index: usize = lexer
            .take_while(|c| c.is_ascii_digit())
            .parse()
            .map_err(|_| ParseError::syntax(col, "expected operation index"))?;
        if index == 0 {
            return Err(ParseError::syntax(col, "operation index starts at 1"));
        }
        lexer.skip_ws();
        let col = lexer.column();
        if lexer.peek() != Some('^') {
            return Err(ParseError::syntax(col, "expected `^name`"));
        }
        lexer.bump();
        let name = lexer.name()?;
        lexer.expect_end()?;
        return Ok(ParsedInput::Config(Directive::SetOpName { index, name }));
    }

    const KEYS: [&str; 10] = [
        "babblingops",
        "motorbabbling",
        "volume",
        "decay",
        "threshold",
        "deadline",
        "horizon",
        "seed",
        "evidencecap",
        "suppression",
    ];
    if !KEYS.contains(&key.as_str()) {
        return Err(ParseError::UnknownDirective(key));
    }
    lexer.skip_ws();
    lexer.expect('=')?;
    lexer.skip_ws();
    let col = lexer.column();
    let raw = lexer.take_while(|c| !c.is_whitespace());
    lexer.expect_end()?;
    let bad = |what: &str| ParseError::syntax(col, format!("invalid value `{raw}` for {key}: {what}"));

    let float = || raw.parse::<f64>().ok().filter(|v| v.is_finite());
    let int = || raw.parse::<u64>().ok();
    let directive = match key.as_str() {
        "babblingops" => match int() {
            Some(n) if n >= 1 => Directive::BabblingOps(n as usize),
            _ => return Err(bad("expected integer >= 1")),
        },
        "motorbabbling" => match float() {
            Some(p) if (0.0..=1.0).contains(&p) => Directive::MotorBabbling(p),
            _ => return Err(bad("expected probability")),
        },
        "volume" => match int() {
            Some(v) if v <= 100 => Directive::Volume(v as u8),
            _ => return Err(bad("expected 0..100")),
        },
        "decay" => match float() {
            Some(v) if v > 0.0 && v < 1.0 => Directive::Decay(v),
            _ => return Err(bad("expected value in (0, 1)")),
        },
        "threshold" => match float() {
            Some(v) if (0.0..=1.0).contains(&v) => Directive::Threshold(v),
            _ => return Err(bad("expected value in [0, 1]")),
        },
        "deadline" => match int() {
            Some(n) if n >= 1 => Directive::Deadline(n),
            _ => return Err(bad("expected integer >= 1")),
        },
        "horizon" => match int() {
            Some(n) if n >= 1 => Directive::Horizon(n),
            _ => return Err(bad("expected integer >= 1")),
        },
        "seed" => match int() {
            Some(n) => Directive::Seed(n),
            None => return Err(bad("expected integer")),
        },
        "evidencecap" => match float() {
            Some(v) if v > 0.0 => Directive::EvidenceCap(v),
            _ => return Err(bad("expected positive number")),
        },
        "suppression" => match float() {
            Some(v) if (0.0..=1.0).contains(&v) => Directive::Suppression(v),
            _ => return Err(bad("expected value in [0, 1]")),
        },
        _ => unreachable!("key checked above"),
    };
    Ok(ParsedInput::Config(directive))
}

fn parse_sentence(lexer: &mut Lexer) -> Result<Sentence, ParseError> {
    let term = lexer.term(0)?;
    lexer.skip_ws();
    let col = lexer.column();
    let punctuation = match lexer.peek() {
        Some('.') => Punctuation::Judgment,
        Some('!') => Punctuation::Goal,
        _ => return Err(ParseError::syntax(col, "expected `.` or `!`")),
    };
    lexer.bump();
    lexer.skip_ws();

    let mut occurrence = Occurrence::Eternal;
    if lexer.peek() == Some(':') {
        lexer.expect_str(":|:")?;
        occurrence = Occurrence::Now;
        lexer.skip_ws();
    }

    let mut truth = None;
    if lexer.peek() == Some('{') {
        truth = Some(lexer.truth()?);
    }
    lexer.expect_end()?;
    Ok(Sentence {
        term,
        punctuation,
        truth,
        occurrence,
    })
}

const RESERVED: &[char] = &[
    '<', '>', '(', ')', '{', '}', '[', ']', '!', '.', ':', '|', '^', '*', '=', '&', '/', '-', ',',
];

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !RESERVED.contains(&c)
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    /// 1-based column of the next character.
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(ParseError::syntax(
                self.column(),
                format!("expected `{want}`, found `{c}`"),
            )),
            None => Err(ParseError::syntax(
                self.column(),
                format!("expected `{want}`, found end of line"),
            )),
        }
    }

    fn expect_str(&mut self, want: &str) -> Result<(), ParseError> {
        let col = self.column();
        for c in want.chars() {
            if self.bump() != Some(c) {
                return Err(ParseError::syntax(col, format!("expected `{want}`")));
            }
        }
        Ok(())
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(ParseError::syntax(
                self.column(),
                format!("unexpected `{c}`"),
            )),
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        let col = self.column();
        let name = self.take_while(is_name_char);
        if name.is_empty() {
            return Err(ParseError::syntax(col, "expected a name"));
        }
        Ok(name)
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let col = self.column();
        let raw = self.take_while(|c| c.is_ascii_digit() || c == '.' || c == '-' || c == 'e');
        raw.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| ParseError::syntax(col, format!("invalid number `{raw}`")))
    }

    fn truth(&mut self) -> Result<TruthValue, ParseError> {
        let col = self.column();
        self.expect('{')?;
        let f = self.number()?;
        self.skip_ws();
        if self.peek() == Some(',') {
            self.bump();
        }
        let c = self.number()?;
        self.skip_ws();
        self.expect('}')?;
        TruthValue::new(f, c).map_err(|e| ParseError::syntax(col, e.to_string()))
    }

    /// `depth` counts enclosing implications.
    fn term(&mut self, depth: usize) -> Result<Term, ParseError> {
        self.skip_ws();
        let col = self.column();
        match self.peek() {
            Some('^') => {
                self.bump();
                Ok(Term::Operation(self.name()?))
            }
            Some('(') => {
                self.bump();
                let left = self.term(depth)?;
                self.skip_ws();
                self.expect_str("&/")?;
                let right = self.term(depth)?;
                self.skip_ws();
                self.expect(')')?;
                if left.contains_implication() || right.contains_implication() {
                    return Err(ParseError::syntax(col, "sequences cannot contain implications"));
                }
                Ok(Term::seq(left, right))
            }
            Some('<') => {
                self.bump();
                self.statement(col, depth)
            }
            Some(c) if is_name_char(c) => Ok(Term::Atom(self.name()?)),
            Some(c) => Err(ParseError::syntax(col, format!("unexpected `{c}`"))),
            None => Err(ParseError::syntax(col, "expected a term, found end of line")),
        }
    }

    fn statement(&mut self, col: usize, depth: usize) -> Result<Term, ParseError> {
        self.skip_ws();
        // `<name --> [prop]>` is the only statement whose subject is a bare name
        // followed by `-->`; everything else is an implication.
        let subject = self.term(depth + 1)?;
        self.skip_ws();
        let copula_col = self.column();
        if self.peek() == Some('-') {
            self.expect_str("-->")?;
            let subject = match subject {
                Term::Atom(name) => name,
                _ => {
                    return Err(ParseError::syntax(
                        col,
                        "inheritance subject must be a name",
                    ))
                }
            };
            self.skip_ws();
            self.expect('[')?;
            self.skip_ws();
            let property = self.name()?;
            self.skip_ws();
            self.expect(']')?;
            self.skip_ws();
            self.expect('>')?;
            return Ok(Term::Property { subject, property });
        }
        if self.peek() == Some('=') {
            self.expect_str("=/>")?;
            if depth > 0 {
                return Err(ParseError::syntax(col, "nested implications are not supported"));
            }
            let consequent = self.term(depth + 1)?;
            self.skip_ws();
            self.expect('>')?;
            if subject.contains_implication() || consequent.contains_implication() {
                return Err(ParseError::syntax(col, "nested implications are not supported"));
            }
            if subject.count_operations() > 1 {
                return Err(ParseError::syntax(
                    col,
                    "antecedent may contain at most one operation",
                ));
            }
            return Ok(Term::implication(subject, consequent));
        }
        Err(ParseError::syntax(copula_col, "expected `-->` or `=/>`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentence(text: &str) -> Sentence {
        match parse_line(text).unwrap() {
            ParsedInput::Sentence(s) => s,
            other => panic!("expected sentence, got {other:?}"),
        }
    }

    #[test]
    fn stimulus_event() {
        let s = sentence("<A1 --> [left]>. :|:");
        assert_eq!(s.term, Term::property("A1", "left"));
        assert_eq!(s.punctuation, Punctuation::Judgment);
        assert_eq!(s.occurrence, Occurrence::Now);
        assert_eq!(s.truth(), TruthValue::new(1.0, 0.9).unwrap());
    }

    #[test]
    fn goal_event() {
        let s = sentence("G! :|:");
        assert_eq!(s.term, Term::atom("G"));
        assert!(s.is_goal());
        assert_eq!(s.occurrence, Occurrence::Now);
    }

    #[test]
    fn negative_feedback() {
        let s = sentence("G. :|: {0.0 0.9}");
        assert_eq!(s.term, Term::atom("G"));
        assert_eq!(s.truth, Some(TruthValue::new(0.0, 0.9).unwrap()));
        assert_eq!(serialize(&s), "G. :|: {0.0 0.9}");
    }

    #[test]
    fn step_count() {
        assert_eq!(parse_line("100").unwrap(), ParsedInput::StepCount(100));
        assert!(matches!(parse_line("0"), Err(ParseError::Syntax { .. })));
        assert!(parse_line("12x").is_err());
    }

    #[test]
    fn comments() {
        assert_eq!(parse_line("").unwrap(), ParsedInput::Comment);
        assert_eq!(parse_line("   // nothing").unwrap(), ParsedInput::Comment);
        let s = sentence("<A1 --> [left]>. :|: // A1 is presented to the left");
        assert_eq!(s.term, Term::property("A1", "left"));
    }

    #[test]
    fn whitespace_insensitive() {
        let a = sentence("<(<A1-->[left]>&/^left)=/>G>.");
        let b = sentence("<  ( < A1 --> [ left ] >  &/  ^left )  =/>  G >  .");
        assert_eq!(a, b);
    }

    #[test]
    fn config_block() {
        let expected = [
            ("*babblingops=2", Directive::BabblingOps(2)),
            ("*motorbabbling=0.9", Directive::MotorBabbling(0.9)),
            (
                "*setopname 1 ^left",
                Directive::SetOpName {
                    index: 1,
                    name: "left".into(),
                },
            ),
            (
                "*setopname 2 ^right",
                Directive::SetOpName {
                    index: 2,
                    name: "right".into(),
                },
            ),
            ("*volume=100", Directive::Volume(100)),
        ];
        for (line, directive) in expected {
            assert_eq!(parse_line(line).unwrap(), ParsedInput::Config(directive));
        }
    }

    #[test]
    fn directive_errors() {
        assert_eq!(
            parse_line("*frobnicate=3"),
            Err(ParseError::UnknownDirective("frobnicate".into()))
        );
        assert!(parse_line("*motorbabbling=1.5").is_err());
        assert!(parse_line("*volume=101").is_err());
        assert!(parse_line("*setopname 0 ^left").is_err());
        assert!(parse_line("*setopname 1 left").is_err());
    }

    #[test]
    fn implication_printing() {
        let term = Term::procedural(&[Term::property("A1", "left")], "left", Term::atom("G"));
        assert_eq!(term.to_string(), "<(<A1 --> [left]> &/ ^left) =/> G>");
        let compound = Term::procedural(
            &[Term::property("A1", "sample"), Term::property("B1", "left")],
            "left",
            Term::atom("G"),
        );
        assert_eq!(
            compound.to_string(),
            "<((<A1 --> [sample]> &/ <B1 --> [left]>) &/ ^left) =/> G>"
        );
        assert_eq!(parse_term(&compound.to_string()).unwrap(), compound);
        assert_eq!(serialize(&Sentence::goal(Term::atom("G"))), "G! :|:");
    }

    #[test]
    fn procedural_parts() {
        let t = parse_term("<((<A1 --> [sample]> &/ <B1 --> [left]>) &/ ^left) =/> G>").unwrap();
        let (pre, op, cons) = t.procedural_parts().unwrap();
        assert_eq!(pre, vec![&Term::property("A1", "sample"), &Term::property("B1", "left")]);
        assert_eq!(op, "left");
        assert_eq!(cons, &Term::atom("G"));
        let temporal = parse_term("<<A1 --> [left]> =/> G>").unwrap();
        assert!(temporal.procedural_parts().is_none());
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "garbage <<<",
            "<A1 --> [left]. :|:",
            "(<A1 --> [left]> &/ ^left. :|:",
            "<(A &/ ^a) =/> G>>. :|:",
            "<(^a &/ ^b) =/> G>.",
            "<<A =/> B> =/> G>.",
            "<A --> left>.",
            "G",
            "G! :|: {1.2 0.9}",
            "G. :|: {0.5 1.0}",
            "G. :||:",
        ] {
            assert!(
                matches!(parse_line(bad), Err(ParseError::Syntax { .. })),
                "accepted {bad:?}"
            );
        }
    }

    #[test]
    fn error_column() {
        match parse_line("<A1 --> [left]>; :|:") {
            Err(ParseError::Syntax { column, .. }) => assert_eq!(column, 16),
            other => panic!("{other:?}"),
        }
    }
}
