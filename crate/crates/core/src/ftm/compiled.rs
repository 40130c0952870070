//! Index-based form of a validated machine used by the search engine.

use std::collections::BTreeMap;

use super::{Machine, Move, Transition};
use crate::fuzzy::Degree;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(super) struct Config {
    pub cells: Vec<u16>,
    pub head: usize,
    pub state: u16,
}

struct Action {
    to: u16,
    write: u16,
    mv: Move,
}

pub(super) struct Compiled<'m> {
    transitions: Vec<(&'m Transition, Degree)>,
    actions: Vec<Action>,
    /// Transition indices per `state * n_symbols + symbol`, in transition order.
    table: Vec<Vec<usize>>,
    n_symbols: usize,
    blank: u16,
    pub start: u16,
    pub accept: u16,
    symbols: BTreeMap<&'m str, u16>,
}

impl<'m> Compiled<'m> {
    /// `m` must be valid.
    pub fn new(m: &'m Machine) -> Self {
        let states: BTreeMap<&str, u16> = m
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u16))
            .collect();
        let symbols: BTreeMap<&str, u16> = m
            .tape_alphabet
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u16))
            .collect();
        let n_symbols = symbols.len();
        let mut table = vec![Vec::new(); states.len() * n_symbols];
        let mut transitions = Vec::with_capacity(m.transitions.len());
        let mut actions = Vec::with_capacity(m.transitions.len());
        for (idx, (t, &degree)) in m.transitions.iter().enumerate() {
            let from = states[t.from.as_str()] as usize;
            let read = symbols[t.read.as_str()] as usize;
            table[from * n_symbols + read].push(idx);
            transitions.push((t, degree));
            actions.push(Action {
                to: states[t.to.as_str()],
                write: symbols[t.write.as_str()],
                mv: t.mv,
            });
        }
        Compiled {
            transitions,
            actions,
            table,
            n_symbols,
            blank: symbols[m.blank.as_str()],
            start: states[m.start.as_str()],
            accept: states[m.final_state.as_str()],
            symbols,
        }
    }

    /// `word` must be over the input alphabet.
    pub fn initial(&self, word: &[String]) -> Config {
        let mut c = Config {
            cells: word.iter().map(|s| self.symbols[s.as_str()]).collect(),
            head: 0,
            state: self.start,
        };
        self.trim(&mut c);
        c
    }

    fn trim(&self, c: &mut Config) {
        while c.cells.last() == Some(&self.blank) {
            c.cells.pop();
        }
    }

    pub fn applicable(&self, c: &Config) -> &[usize] {
        let read = c.cells.get(c.head).copied().unwrap_or(self.blank) as usize;
        &self.table[c.state as usize * self.n_symbols + read]
    }

    /// `None` for a left move off cell 0.
    pub fn apply(&self, idx: usize, c: &Config) -> Option<Config> {
        let action = &self.actions[idx];
        let head = match action.mv {
            Move::L => c.head.checked_sub(1)?,
            Move::N => c.head,
            Move::R => c.head + 1,
        };
        let mut cells = c.cells.clone();
        if cells.len() <= c.head {
            cells.resize(c.head + 1, self.blank);
        }
        cells[c.head] = action.write;
        let mut next = Config {
            cells,
            head,
            state: action.to,
        };
        self.trim(&mut next);
        Some(next)
    }

    pub fn degree(&self, idx: usize) -> Degree {
        self.transitions[idx].1
    }

    pub fn transition(&self, idx: usize) -> &'m Transition {
        self.transitions[idx].0
    }
}
