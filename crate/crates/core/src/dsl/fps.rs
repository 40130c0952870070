//! `.fps` files.
//!
//! ```text
//! psystem a_to_b {
//!   norm: product;
//!   output: skin;
//!   membrane skin {
//!     contents: {a:2@1};
//!     rule: a -> b (here) @ 0.6 @@ 1;
//!     membrane inner {
//!       contents: {};
//!     }
//!   }
//! }
//! ```
//!
//! A rule lists the consumed symbols, `->`, then its products. A product may
//! name a target (`here`, `out`, `in <child>`, default `here`) and a degree
//! (default 1); `@@` gives the rule's own degree (default 1).

use std::collections::BTreeMap;
use std::fmt::Write;

use super::lexer::Tok;
use super::{Diagnostic, DslError, ParseError, Parser, SourceSpan};
use crate::fpsystem::{Compartment, PSystem, Product, Rule, SystemViolation, Target};
use crate::fuzzy::Degree;

#[derive(Default)]
struct Spans {
    output: Option<SourceSpan>,
    compartments: Vec<(String, SourceSpan)>,
    /// `(compartment id, rule index)`
    rules: BTreeMap<(String, usize), SourceSpan>,
}

pub fn parse_fps(text: &str) -> Result<PSystem, DslError> {
    let mut p = Parser::new(text)?;
    let mut spans = Spans::default();

    p.keyword("psystem")?;
    let (name, _) = p.word("a system name")?;
    p.expect(Tok::LBrace)?;

    let mut norm = None;
    let mut output = None;
    let mut skin = None;
    while *p.peek() != Tok::RBrace {
        let span = p.span();
        match p.peek_word() {
            Some("norm") if norm.is_none() => {
                p.bump();
                p.expect(Tok::Colon)?;
                norm = Some(p.norm()?);
                p.expect(Tok::Semi)?;
            }
            Some("output") if output.is_none() => {
                p.bump();
                p.expect(Tok::Colon)?;
                let (id, at) = p.word("a compartment id")?;
                spans.output = Some(at);
                output = Some(id);
                p.expect(Tok::Semi)?;
            }
            Some("membrane") if skin.is_none() => {
                skin = Some(membrane(&mut p, &mut spans)?);
            }
            Some(w @ ("norm" | "output")) => {
                return Err(ParseError::new(
                    span,
                    format!("at most one `{w}` clause"),
                    format!("a second `{w}`"),
                )
                .into());
            }
            Some("membrane") => {
                return Err(ParseError::new(
                    span,
                    "a single skin membrane",
                    "a second top-level `membrane`",
                )
                .into());
            }
            _ => return Err(p.error("`norm:`, `output:` or `membrane`").into()),
        }
    }
    let close = p.span();
    let missing = |what: &str| ParseError::new(close, what.to_string(), "`}`");
    let system = PSystem {
        name,
        norm: norm.ok_or_else(|| missing("`norm:` clause"))?,
        output: output.ok_or_else(|| missing("`output:` clause"))?,
        skin: skin.ok_or_else(|| missing("a `membrane` block"))?,
        clock: 0,
    };
    p.expect(Tok::RBrace)?;
    p.end()?;

    let diagnostics: Vec<Diagnostic> = system
        .validate()
        .into_iter()
        .map(|v| {
            let spans = match &v {
                SystemViolation::UnknownOutput(_) => spans.output.into_iter().collect(),
                SystemViolation::DuplicateId(id) => spans
                    .compartments
                    .iter()
                    .filter(|(c, _)| c == id)
                    .map(|(_, s)| *s)
                    .collect(),
                SystemViolation::EmptyLhs { compartment, rule }
                | SystemViolation::BadTarget {
                    compartment, rule, ..
                } => spans
                    .rules
                    .get(&(compartment.clone(), *rule))
                    .copied()
                    .into_iter()
                    .collect(),
            };
            Diagnostic {
                message: v.to_string(),
                spans,
            }
        })
        .collect();
    if diagnostics.is_empty() {
        Ok(system)
    } else {
        Err(DslError::Invalid(diagnostics))
    }
}

fn membrane(p: &mut Parser, spans: &mut Spans) -> Result<Compartment, ParseError> {
    p.keyword("membrane")?;
    let (id, id_span) = p.word("a compartment id")?;
    spans.compartments.push((id.clone(), id_span));
    let mut c = Compartment::new(&id);
    let mut contents_seen = false;
    p.expect(Tok::LBrace)?;
    while *p.peek() != Tok::RBrace {
        let span = p.span();
        match p.peek_word() {
            Some("contents") => {
                if contents_seen {
                    return Err(ParseError::new(
                        span,
                        "at most one `contents` clause",
                        "a second `contents`",
                    ));
                }
                contents_seen = true;
                p.bump();
                p.expect(Tok::Colon)?;
                c.contents = p.multiset()?;
                p.expect(Tok::Semi)?;
            }
            Some("rule") => {
                p.bump();
                p.expect(Tok::Colon)?;
                c.rules.push(rule(p)?);
                // duplicate compartment ids keep the first id's rule spans
                spans
                    .rules
                    .entry((id.clone(), c.rules.len()))
                    .or_insert(span);
            }
            Some("membrane") => c.children.push(membrane(p, spans)?),
            _ => return Err(p.error("`contents:`, `rule:` or `membrane`")),
        }
    }
    p.expect(Tok::RBrace)?;
    Ok(c)
}

/// `sym+ -> (sym [(target)] [@ deg])* [@@ deg] ;`
fn rule(p: &mut Parser) -> Result<Rule, ParseError> {
    let mut lhs = BTreeMap::new();
    while let Tok::Word(_) = p.peek() {
        let (sym, _) = p.word("a symbol")?;
        *lhs.entry(sym).or_insert(0) += 1;
    }
    if lhs.is_empty() {
        return Err(p.error("a consumed symbol"));
    }
    p.expect(Tok::Arrow)?;
    let mut rhs = Vec::new();
    while let Tok::Word(_) = p.peek() {
        let (symbol, _) = p.word("a symbol")?;
        let target = if p.eat(&Tok::LParen) {
            let t = match p.peek_word() {
                Some("here") => {
                    p.bump();
                    Target::Here
                }
                Some("out") => {
                    p.bump();
                    Target::Out
                }
                Some("in") => {
                    p.bump();
                    Target::In(p.word("a child compartment id")?.0)
                }
                _ => return Err(p.error("`here`, `out` or `in <id>`")),
            };
            p.expect(Tok::RParen)?;
            t
        } else {
            Target::Here
        };
        let degree = if p.eat(&Tok::At) {
            p.degree()?
        } else {
            Degree::ONE
        };
        rhs.push(Product {
            symbol,
            target,
            degree,
        });
    }
    let degree = if p.eat(&Tok::AtAt) {
        p.degree()?
    } else {
        Degree::ONE
    };
    p.expect(Tok::Semi)?;
    Ok(Rule { lhs, rhs, degree })
}

/// Canonical text: nested membranes as indented blocks, every target and
/// degree written out.
pub fn serialize_fps(sys: &PSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "psystem {} {{", sys.name);
    let _ = writeln!(out, "  norm: {};", sys.norm.name());
    let _ = writeln!(out, "  output: {};", sys.output);
    write_membrane(&mut out, &sys.skin, 1);
    out.push_str("}\n");
    out
}

fn write_membrane(out: &mut String, c: &Compartment, depth: usize) {
    let pad = "  ".repeat(depth);
    let _ = writeln!(out, "{pad}membrane {} {{", c.id);
    let _ = writeln!(out, "{pad}  contents: {{{}}};", contents(c));
    for r in &c.rules {
        let mut line = String::new();
        for (sym, n) in &r.lhs {
            for _ in 0..*n {
                let _ = write!(line, "{sym} ");
            }
        }
        line.push_str("->");
        for prod in &r.rhs {
            let _ = write!(line, " {} ({}) @ {}", prod.symbol, prod.target, prod.degree);
        }
        let _ = writeln!(out, "{pad}  rule: {line} @@ {};", r.degree);
    }
    for child in &c.children {
        write_membrane(out, child, depth + 1);
    }
    let _ = writeln!(out, "{pad}}}");
}

fn contents(c: &Compartment) -> String {
    c.contents
        .iter()
        .map(|(s, n, d)| format!("{s}:{n}@{d}"))
        .collect::<Vec<_>>()
        .join(", ")
}
