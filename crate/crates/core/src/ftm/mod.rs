//! Nondeterministic fuzzy Turing machines with a unidirectional tape.
//!
//! A [`Machine`] carries a fuzzy transition relation: every transition has a
//! plausibility [`Degree`], and the degree of a computational path is the
//! t-norm fold of its transition degrees (1 for the empty path). The
//! acceptance degree of a word is the best degree over paths that reach the
//! final state.
//!
//! Two engines compute it: [`accept_degree`] (best-first search with
//! dominance pruning) and [`accept_degree_bruteforce`] (exhaustive path
//! enumeration, kept as the reference). Both are exact up to the step budget.

mod bruteforce;
mod compiled;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::fuzzy::{Degree, FuzzySet, NormKind};

pub use bruteforce::{accept_degree_bruteforce, accept_degree_bruteforce_with};
pub use search::accept_degree;

/// Head movement after writing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    L,
    N,
    R,
}

impl Move {
    pub fn letter(self) -> &'static str {
        match self {
            Move::L => "L",
            Move::N => "N",
            Move::R => "R",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

/// `(from, read) -> (to, write, move)`.
///
/// The derived ordering (field by field) is the canonical transition order
/// used for successor lists, serialization and witness tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: String,
    pub read: String,
    pub to: String,
    pub write: String,
    pub mv: Move,
}

impl Transition {
    pub fn new(from: &str, read: &str, to: &str, write: &str, mv: Move) -> Self {
        Transition {
            from: from.into(),
            read: read.into(),
            to: to.into(),
            write: write.into(),
            mv,
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) -> ({}, {}, {})",
            self.from, self.read, self.to, self.write, self.mv
        )
    }
}

/// The machine tuple: states, tape and input alphabets, fuzzy transition
/// relation, blank, start and final states, and the t-norm.
///
/// Fields are public so that machines can be assembled freely; use
/// [`Machine::validate`] to check the structural constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct Machine {
    pub name: String,
    pub states: BTreeSet<String>,
    pub tape_alphabet: BTreeSet<String>,
    pub input_alphabet: BTreeSet<String>,
    pub blank: String,
    pub start: String,
    pub final_state: String,
    /// Δ together with μ: each transition maps to its plausibility degree.
    pub transitions: BTreeMap<Transition, Degree>,
    pub norm: NormKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineViolation {
    #[error("blank symbol `{0}` is not a tape symbol")]
    BlankNotInTape(String),
    #[error("blank symbol must not be an input symbol")]
    BlankIsInput,
    #[error("input symbol `{0}` is not a tape symbol")]
    InputNotInTape(String),
    #[error("start state `{0}` is not a declared state")]
    UnknownStart(String),
    #[error("final state `{0}` is not a declared state")]
    UnknownFinal(String),
    #[error("transition {transition}: unknown state `{state}`")]
    UnknownState {
        transition: Transition,
        state: String,
    },
    #[error("transition {transition}: unknown tape symbol `{symbol}`")]
    UnknownSymbol {
        transition: Transition,
        symbol: String,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FtmError {
    #[error("invalid machine: {}", join_violations(.0))]
    InvalidMachine(Vec<MachineViolation>),
    #[error("input symbol `{symbol}` at position {position} is not in the input alphabet")]
    InputSymbol { symbol: String, position: usize },
    #[error("step budget must be at least 1")]
    ZeroBudget,
}

fn join_violations(v: &[MachineViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Machine {
    /// Every violated structural constraint, in a stable order.
    pub fn validate(&self) -> Vec<MachineViolation> {
        let mut out = Vec::new();
        if !self.tape_alphabet.contains(&self.blank) {
            out.push(MachineViolation::BlankNotInTape(self.blank.clone()));
        }
        if self.input_alphabet.contains(&self.blank) {
            out.push(MachineViolation::BlankIsInput);
        }
        for sym in &self.input_alphabet {
            if !self.tape_alphabet.contains(sym) {
                out.push(MachineViolation::InputNotInTape(sym.clone()));
            }
        }
        if !self.states.contains(&self.start) {
            out.push(MachineViolation::UnknownStart(self.start.clone()));
        }
        if !self.states.contains(&self.final_state) {
            out.push(MachineViolation::UnknownFinal(self.final_state.clone()));
        }
        for t in self.transitions.keys() {
            for state in [&t.from, &t.to] {
                if !self.states.contains(state) {
                    out.push(MachineViolation::UnknownState {
                        transition: t.clone(),
                        state: state.clone(),
                    });
                }
            }
            for symbol in [&t.read, &t.write] {
                if !self.tape_alphabet.contains(symbol) {
                    out.push(MachineViolation::UnknownSymbol {
                        transition: t.clone(),
                        symbol: symbol.clone(),
                    });
                }
            }
        }
        out.dedup();
        out
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), FtmError> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(FtmError::InvalidMachine(violations))
        }
    }

    /// True iff no two transitions share `(from, read)`.
    pub fn is_deterministic(&self) -> bool {
        let keys = self.transitions.keys().map(|t| (&t.from, &t.read));
        let mut seen = BTreeSet::new();
        keys.into_iter().all(|k| seen.insert(k))
    }

    /// Splits a textual word into symbols: on whitespace when the text
    /// contains any, otherwise one symbol per character.
    pub fn split_word(text: &str) -> Vec<String> {
        if text.chars().any(char::is_whitespace) {
            text.split_whitespace().map(str::to_string).collect()
        } else {
            text.chars().map(String::from).collect()
        }
    }

    /// Inverse of [`Machine::split_word`] for words over this machine.
    pub fn render_word(&self, word: &[String]) -> String {
        if self.input_alphabet.iter().all(|s| s.chars().count() == 1) {
            word.concat()
        } else {
            word.join(" ")
        }
    }
}

pub fn validate_machine(m: &Machine) -> Vec<MachineViolation> {
    m.validate()
}

pub fn is_deterministic(m: &Machine) -> bool {
    m.is_deterministic()
}

/// Tape contents, head position and control state.
///
/// Cells past the end of `tape` hold the blank; trailing blanks are trimmed
/// so that two configurations are equal iff they denote the same snapshot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    tape: Vec<String>,
    head: usize,
    state: String,
}

impl Configuration {
    pub fn new(mut tape: Vec<String>, head: usize, state: &str, blank: &str) -> Self {
        while tape.last().is_some_and(|s| s == blank) {
            tape.pop();
        }
        Configuration {
            tape,
            head,
            state: state.to_string(),
        }
    }

    pub fn tape(&self) -> &[String] {
        &self.tape
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn state(&self) -> &str {
        &self.state
    }

    fn read<'a>(&'a self, blank: &'a str) -> &'a str {
        self.tape.get(self.head).map_or(blank, String::as_str)
    }
}

/// The word printed from the leftmost cell, head on cell 0, state `q0`.
pub fn initial_configuration(m: &Machine, word: &[String]) -> Result<Configuration, FtmError> {
    check_word(m, word)?;
    Ok(Configuration::new(word.to_vec(), 0, &m.start, &m.blank))
}

pub(crate) fn check_word(m: &Machine, word: &[String]) -> Result<(), FtmError> {
    match word.iter().position(|s| !m.input_alphabet.contains(s)) {
        Some(position) => Err(FtmError::InputSymbol {
            symbol: word[position].clone(),
            position,
        }),
        None => Ok(()),
    }
}

/// One entry of [`step`].
#[derive(Debug, Clone, PartialEq)]
pub struct Successor {
    pub transition: Transition,
    pub configuration: Configuration,
    pub degree: Degree,
}

/// All one-step successors of `c`, in transition order.
///
/// A left move on cell 0 is inapplicable and yields nothing.
pub fn step(m: &Machine, c: &Configuration) -> Vec<Successor> {
    let read = c.read(&m.blank);
    m.transitions
        .iter()
        .filter(|(t, _)| t.from == c.state && t.read == read)
        .filter_map(|(t, &degree)| {
            let head = match t.mv {
                Move::L => c.head.checked_sub(1)?,
                Move::N => c.head,
                Move::R => c.head + 1,
            };
            let mut tape = c.tape.clone();
            if tape.len() <= c.head {
                tape.resize(c.head + 1, m.blank.clone());
            }
            tape[c.head] = t.write.clone();
            Some(Successor {
                transition: t.clone(),
                configuration: Configuration::new(tape, head, &t.to, &m.blank),
                degree,
            })
        })
        .collect()
}

/// Plausibility of a path with the given transition degrees: 1 for the empty
/// path, otherwise the left fold of the machine's t-norm.
pub fn path_degree(m: &Machine, alphas: &[Degree]) -> Degree {
    m.norm.fold(alphas.iter().copied())
}

/// Outcome of an acceptance query.
#[derive(Debug, Clone, PartialEq)]
pub struct AcceptanceResult {
    /// Best degree over accepting paths within the budget; 0 if there is none.
    pub degree: Degree,
    /// A best accepting path (the least one in transition order among ties).
    pub witness: Option<Vec<(Transition, Degree)>>,
    /// Search nodes expanded.
    pub paths_explored: u64,
    /// Set when the budget cut off a branch whose degree still exceeded
    /// `degree`, i.e. a longer computation might accept with a higher degree.
    /// When false, `degree` is the unbounded acceptance degree.
    pub truncated: bool,
}

impl AcceptanceResult {
    /// JSON record `{degree, witness, paths_explored, truncated}`; the witness
    /// is a list of `[from, read, to, write, move, degree]` rows.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let witness: Vec<serde_json::Value> = self
            .witness
            .iter()
            .flatten()
            .map(|(t, d)| {
                json!([
                    t.from,
                    t.read,
                    t.to,
                    t.write,
                    t.mv.letter(),
                    crate::cli::json_degree(d.value())
                ])
            })
            .collect();
        json!({
            "degree": crate::cli::json_degree(self.degree.value()),
            "witness": witness,
            "paths_explored": self.paths_explored,
            "truncated": self.truncated,
        })
    }
}

/// All words over the input alphabet of length `<= max_len`, shortest first
/// and in symbol order within a length.
pub fn words_up_to(m: &Machine, max_len: usize) -> Vec<Vec<String>> {
    let alphabet: Vec<&String> = m.input_alphabet.iter().collect();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * alphabet.len());
        for w in &frontier {
            for s in &alphabet {
                let mut w2 = w.clone();
                w2.push((*s).clone());
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The accepted fuzzy language restricted to words of length `<= max_len`:
/// each word with acceptance degree above `cutoff`.
///
/// Words are rendered with [`Machine::render_word`]; the universe is every
/// word within the length bound.
pub fn fuzzy_language(
    m: &Machine,
    max_len: usize,
    max_steps: usize,
    cutoff: Degree,
) -> Result<FuzzySet, FtmError> {
    let words = words_up_to(m, max_len);
    let mut lang = FuzzySet::empty(words.iter().map(|w| m.render_word(w)));
    for w in &words {
        let res = accept_degree(m, w, max_steps)?;
        if res.degree > cutoff {
            lang.set(&m.render_word(w), res.degree)
                .expect("word is in the enumerated universe");
        }
    }
    Ok(lang)
}
