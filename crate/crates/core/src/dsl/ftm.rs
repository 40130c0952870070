//! `.ftm` files.
//!
//! ```text
//! machine two_path {
//!   states: q0 q1 qf;
//!   input: a;
//!   tape: _ a;
//!   blank: _;
//!   start: q0;
//!   final: qf;
//!   norm: product;
//!   delta {
//!     (q0, a) -> (qf, a, N) @ 0.6;
//!     (q0, a) -> (q1, a, N) @ 0.9;
//!     (q1, a) -> (qf, a, N) @ 0.5;
//!   }
//! }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use super::lexer::Tok;
use super::{Diagnostic, DslError, ParseError, Parser, SourceSpan};
use crate::ftm::{Machine, MachineViolation, Move, Transition};
use crate::fuzzy::Degree;

const CLAUSES: [&str; 8] = [
    "states", "input", "tape", "blank", "start", "final", "norm", "delta",
];

#[derive(Default)]
struct Spans {
    clauses: BTreeMap<&'static str, SourceSpan>,
    transitions: BTreeMap<Transition, SourceSpan>,
}

pub fn parse_ftm(text: &str) -> Result<Machine, DslError> {
    let mut p = Parser::new(text)?;
    let mut spans = Spans::default();
    let mut diagnostics = Vec::new();

    p.keyword("machine")?;
    let (name, _) = p.word("a machine name")?;
    p.expect(Tok::LBrace)?;

    let mut states = None;
    let mut input = None;
    let mut tape = None;
    let mut blank = None;
    let mut start = None;
    let mut final_state = None;
    let mut norm = None;
    let mut transitions = BTreeMap::new();

    while *p.peek() != Tok::RBrace {
        let key_span = p.span();
        let key = match p
            .peek_word()
            .and_then(|w| CLAUSES.iter().find(|c| **c == w))
        {
            Some(k) => *k,
            None => {
                return Err(p
                    .error("a clause (states, input, tape, blank, start, final, norm or delta)")
                    .into())
            }
        };
        if spans.clauses.contains_key(key) {
            return Err(ParseError::new(
                key_span,
                format!("at most one `{key}` clause"),
                format!("a second `{key}`"),
            )
            .into());
        }
        spans.clauses.insert(key, key_span);
        p.bump();

        if key == "delta" {
            p.expect(Tok::LBrace)?;
            while *p.peek() != Tok::RBrace {
                let span = p.span();
                let (t, degree) = transition(&mut p)?;
                if let Some(first) = spans.transitions.get(&t) {
                    diagnostics.push(Diagnostic {
                        message: format!("duplicate transition {t}"),
                        spans: vec![*first, span],
                    });
                    continue;
                }
                spans.transitions.insert(t.clone(), span);
                transitions.insert(t, degree);
            }
            p.expect(Tok::RBrace)?;
            continue;
        }

        p.expect(Tok::Colon)?;
        match key {
            "states" => states = Some(symbols(&mut p, "a state name", 1)?),
            "input" => input = Some(symbols(&mut p, "an input symbol", 0)?),
            "tape" => tape = Some(symbols(&mut p, "a tape symbol", 1)?),
            "blank" => blank = Some(p.word("the blank symbol")?.0),
            "start" => start = Some(p.word("a state name")?.0),
            "final" => final_state = Some(p.word("a state name")?.0),
            "norm" => norm = Some(p.norm()?),
            _ => unreachable!(),
        }
        p.expect(Tok::Semi)?;
    }

    let close = p.span();
    let missing = |clause: &str| ParseError::new(close, format!("`{clause}:` clause"), "`}`");
    let machine = Machine {
        name,
        states: states.ok_or_else(|| missing("states"))?,
        input_alphabet: input.ok_or_else(|| missing("input"))?,
        tape_alphabet: tape.ok_or_else(|| missing("tape"))?,
        blank: blank.ok_or_else(|| missing("blank"))?,
        start: start.ok_or_else(|| missing("start"))?,
        final_state: final_state.ok_or_else(|| missing("final"))?,
        norm: norm.ok_or_else(|| missing("norm"))?,
        transitions,
    };
    if !spans.clauses.contains_key("delta") {
        return Err(missing("delta")
            .with_note("an empty relation is written `delta { }`")
            .into());
    }
    p.expect(Tok::RBrace)?;
    p.end()?;

    for v in machine.validate() {
        let span = |clause: &str| spans.clauses.get(clause).copied();
        let at = match &v {
            MachineViolation::BlankNotInTape(_) | MachineViolation::BlankIsInput => span("blank"),
            MachineViolation::InputNotInTape(_) => span("input"),
            MachineViolation::UnknownStart(_) => span("start"),
            MachineViolation::UnknownFinal(_) => span("final"),
            MachineViolation::UnknownState { transition, .. }
            | MachineViolation::UnknownSymbol { transition, .. } => {
                spans.transitions.get(transition).copied()
            }
        };
        diagnostics.push(Diagnostic {
            message: v.to_string(),
            spans: at.into_iter().collect(),
        });
    }
    if diagnostics.is_empty() {
        Ok(machine)
    } else {
        Err(DslError::Invalid(diagnostics))
    }
}

fn symbols(p: &mut Parser, what: &str, at_least: usize) -> Result<BTreeSet<String>, ParseError> {
    let mut out = BTreeSet::new();
    let mut n = 0;
    while let Tok::Word(_) = p.peek() {
        out.insert(p.word(what)?.0);
        n += 1;
    }
    if n < at_least {
        return Err(p.error(what));
    }
    Ok(out)
}

/// `( q , s ) -> ( q' , s' , L|N|R ) [@ degree] ;`
fn transition(p: &mut Parser) -> Result<(Transition, Degree), ParseError> {
    p.expect(Tok::LParen)?;
    let (from, _) = p.word("a state name")?;
    p.expect(Tok::Comma)?;
    let (read, _) = p.word("a tape symbol")?;
    p.expect(Tok::RParen)?;
    p.expect(Tok::Arrow)?;
    p.expect(Tok::LParen)?;
    let (to, _) = p.word("a state name")?;
    p.expect(Tok::Comma)?;
    let (write, _) = p.word("a tape symbol")?;
    p.expect(Tok::Comma)?;
    let mv = match p.peek_word() {
        Some("L") => Move::L,
        Some("N") => Move::N,
        Some("R") => Move::R,
        _ => return Err(p.error("a move `L`, `N` or `R`")),
    };
    p.bump();
    p.expect(Tok::RParen)?;
    let degree = if p.eat(&Tok::At) {
        p.degree()?
    } else {
        Degree::ONE
    };
    p.expect(Tok::Semi)?;
    Ok((
        Transition {
            from,
            read,
            to,
            write,
            mv,
        },
        degree,
    ))
}

/// Canonical text: sorted states, symbols and transitions, every degree
/// written out.
pub fn serialize_ftm(m: &Machine) -> String {
    let list = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "machine {} {{", m.name);
    let _ = writeln!(out, "  states: {};", list(&m.states));
    if m.input_alphabet.is_empty() {
        out.push_str("  input: ;\n");
    } else {
        let _ = writeln!(out, "  input: {};", list(&m.input_alphabet));
    }
    let _ = writeln!(out, "  tape: {};", list(&m.tape_alphabet));
    let _ = writeln!(out, "  blank: {};", m.blank);
    let _ = writeln!(out, "  start: {};", m.start);
    let _ = writeln!(out, "  final: {};", m.final_state);
    let _ = writeln!(out, "  norm: {};", m.norm.name());
    out.push_str("  delta {\n");
    for (t, d) in &m.transitions {
        let _ = writeln!(out, "    {t} @ {d};");
    }
    out.push_str("  }\n}\n");
    out
}
