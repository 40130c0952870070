//! Description language for fuzzy Turing machines (`.ftm`) and fuzzy P
//! systems (`.fps`).
//!
//! Both formats are brace-delimited blocks of `key: value;` clauses, with `#`
//! comments. Degrees are decimal literals in `[0, 1]`; an omitted degree
//! means 1. Fuzzy sets are written with `sym@degree` pairs, e.g.
//! `{2@0.3, 3@0.9, 4@1}`, or in tuple form `fuzzy set (2,0.3), (3,0.9)`;
//! fuzzy multisets as `{a:2@0.5, b:3@1}`.
//!
//! Parsing is hand-written recursive descent; syntax errors carry the line
//! and column of the offending token. Files that parse but describe an
//! invalid machine or system are reported as [`DslError::Invalid`] with the
//! spans of the offending clauses.

mod fps;
mod ftm;
mod lexer;

use std::fmt;

use thiserror::Error;

use crate::fuzzy::{Degree, FuzzyMultiset, FuzzySet, NormKind};
use lexer::{tokenize, Tok};

pub use fps::{parse_fps, serialize_fps};
pub use ftm::{parse_ftm, serialize_ftm};

/// 1-based position of a token in the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
    pub note: Option<String>,
}

impl ParseError {
    fn new(span: SourceSpan, expected: impl Into<String>, found: impl Into<String>) -> Self {
        ParseError {
            span,
            expected: expected.into(),
            found: found.into(),
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, found {}",
            self.span, self.expected, self.found
        )?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// A semantic problem in a file that parsed, with the spans involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub message: String,
    pub spans: Vec<SourceSpan>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(first) = self.spans.first() {
            write!(f, "{first}: ")?;
        }
        f.write_str(&self.message)?;
        if self.spans.len() > 1 {
            let rest: Vec<String> = self.spans[1..].iter().map(ToString::to_string).collect();
            write!(f, " (also at {})", rest.join("; "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Diagnostic>),
}

/// Token cursor shared by the two grammars.
struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: impl Into<String>) -> ParseError {
        ParseError::new(self.span(), expected, self.peek().describe())
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<SourceSpan, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(tok.describe()))
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        match self.peek() {
            Tok::Word(_) => match self.bump() {
                (Tok::Word(w), span) => Ok((w, span)),
                _ => unreachable!(),
            },
            _ => Err(self.error(what)),
        }
    }

    /// Expects the exact keyword `kw`.
    fn keyword(&mut self, kw: &str) -> Result<SourceSpan, ParseError> {
        match self.peek() {
            Tok::Word(w) if w == kw => Ok(self.bump().1),
            _ => Err(self.error(format!("`{kw}`"))),
        }
    }

    fn peek_word(&self) -> Option<&str> {
        match self.peek() {
            Tok::Word(w) => Some(w),
            _ => None,
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::Eof).map(|_| ())
    }

    fn degree(&mut self) -> Result<Degree, ParseError> {
        let (text, span) = self.word("a degree")?;
        parse_degree(&text).map_err(|e| e.at(span))
    }

    fn multiplicity(&mut self) -> Result<u64, ParseError> {
        let (text, span) = self.word("a multiplicity")?;
        match text.parse::<u64>() {
            Ok(n) if n > 0 && text.bytes().all(|b| b.is_ascii_digit()) => Ok(n),
            _ => Err(ParseError::new(
                span,
                "a positive integer multiplicity",
                format!("`{text}`"),
            )),
        }
    }

    fn norm(&mut self) -> Result<NormKind, ParseError> {
        let (text, span) = self.word("a norm name")?;
        text.parse().map_err(|_| {
            ParseError::new(
                span,
                "`min`, `product` or `lukasiewicz`",
                format!("`{text}`"),
            )
        })
    }

    /// `{ sym[:mult][@deg], ... }`
    fn multiset(&mut self) -> Result<FuzzyMultiset, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut out = FuzzyMultiset::new();
        if self.eat(&Tok::RBrace) {
            return Ok(out);
        }
        loop {
            let (sym, span) = self.word("a symbol")?;
            let count = if self.eat(&Tok::Colon) {
                self.multiplicity()?
            } else {
                1
            };
            let degree = if self.eat(&Tok::At) {
                self.degree()?
            } else {
                Degree::ONE
            };
            if out.get(&sym).is_some() {
                return Err(ParseError::new(
                    span,
                    "each symbol once",
                    format!("repeated `{sym}`"),
                ));
            }
            out.add(sym, count, degree, NormKind::Minimum);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(out)
    }

    /// `{sym@deg, ...}` or `fuzzy set (sym, deg), ...`
    fn fuzzy_set(&mut self) -> Result<FuzzySet, ParseError> {
        let mut pairs: Vec<(String, Degree)> = Vec::new();
        let mut push = |sym: String, span: SourceSpan, degree: Degree| {
            if pairs.iter().any(|(s, _)| *s == sym) {
                return Err(ParseError::new(
                    span,
                    "each symbol once",
                    format!("repeated `{sym}`"),
                ));
            }
            pairs.push((sym, degree));
            Ok(())
        };
        if self.peek_word() == Some("fuzzy") {
            self.bump();
            self.keyword("set")?;
            loop {
                self.expect(Tok::LParen)?;
                let (sym, span) = self.word("a symbol")?;
                self.expect(Tok::Comma)?;
                let degree = self.degree()?;
                self.expect(Tok::RParen)?;
                push(sym, span, degree)?;
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.eat(&Tok::Semi);
        } else {
            self.expect(Tok::LBrace)?;
            if !self.eat(&Tok::RBrace) {
                loop {
                    let (sym, span) = self.word("a symbol")?;
                    let degree = if self.eat(&Tok::At) {
                        self.degree()?
                    } else {
                        Degree::ONE
                    };
                    push(sym, span, degree)?;
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(Tok::RBrace)?;
            }
        }
        Ok(FuzzySet::from_pairs(pairs))
    }
}

struct DegreeError {
    found: String,
    note: &'static str,
}

impl DegreeError {
    fn at(self, span: SourceSpan) -> ParseError {
        ParseError::new(span, "a degree", format!("`{}`", self.found)).with_note(self.note)
    }
}

/// Decimal literal (`0`, `1`, `0.25`, `.5`) within `[0, 1]`.
fn parse_degree(text: &str) -> Result<Degree, DegreeError> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let well_formed = !(int.is_empty() && frac.is_empty())
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.bytes().all(|b| b.is_ascii_digit())
        && !(digits.contains('.') && frac.is_empty());
    if !well_formed {
        return Err(DegreeError {
            found: text.to_string(),
            note: "degrees are decimal literals",
        });
    }
    let value: f64 = text.parse().map_err(|_| DegreeError {
        found: text.to_string(),
        note: "degrees are decimal literals",
    })?;
    Degree::new(value).map_err(|_| DegreeError {
        found: text.to_string(),
        note: "degree must be in [0,1]",
    })
}

/// Parses a standalone fuzzy-set literal.
pub fn parse_fuzzy_set(text: &str) -> Result<FuzzySet, ParseError> {
    let mut p = Parser::new(text)?;
    let set = p.fuzzy_set()?;
    p.end()?;
    Ok(set)
}

/// Parses a standalone fuzzy-multiset literal.
pub fn parse_fuzzy_multiset(text: &str) -> Result<FuzzyMultiset, ParseError> {
    let mut p = Parser::new(text)?;
    let set = p.multiset()?;
    p.end()?;
    Ok(set)
}
