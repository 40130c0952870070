//! Best-first acceptance search.
//!
//! Path degrees never increase along a path (`a * b <= a` for any t-norm), so
//! expanding search nodes in order of decreasing degree means the first
//! accepting node popped carries the optimal degree. A node is pruned when its
//! configuration was already expanded with at most as many steps used: that
//! earlier node had at least the same degree (pop order) and at least as much
//! budget left, so it dominates every continuation.
//!
//! Dominance pruning keeps the optimum but not necessarily the least witness
//! among ties, so a second depth-first pass in transition order recovers the
//! least path that reaches the optimum.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use super::compiled::{Compiled, Config};
use super::{check_word, AcceptanceResult, FtmError, Machine};
use crate::fuzzy::{Degree, NormKind};

/// Best acceptance degree of `word` over paths of at most `max_steps` steps.
///
/// Agrees exactly with [`super::accept_degree_bruteforce`] on the degree and
/// the witness.
pub fn accept_degree(
    m: &Machine,
    word: &[String],
    max_steps: usize,
) -> Result<AcceptanceResult, FtmError> {
    if max_steps == 0 {
        return Err(FtmError::ZeroBudget);
    }
    m.ensure_valid()?;
    check_word(m, word)?;
    let compiled = Compiled::new(m);
    let start = compiled.initial(word);

    let best = best_degree(&compiled, m.norm, &start, max_steps);
    let mut explored = best.explored;
    let witness = if best.degree.is_zero() {
        None
    } else {
        let mut ws = WitnessSearch {
            compiled: &compiled,
            norm: m.norm,
            target: best.degree,
            max_steps,
            failures: HashMap::new(),
            path: Vec::new(),
            explored: 0,
        };
        let found = ws.dfs(&start, 0, Degree::ONE);
        debug_assert!(found, "optimal degree must be reachable");
        explored += ws.explored;
        Some(
            ws.path
                .iter()
                .map(|&idx| (compiled.transition(idx).clone(), compiled.degree(idx)))
                .collect(),
        )
    };

    Ok(AcceptanceResult {
        degree: best.degree,
        witness,
        paths_explored: explored,
        truncated: best.max_cut > best.degree,
    })
}

struct Node {
    degree: Degree,
    steps: usize,
    seq: u64,
    config: Config,
}

// Max-heap order: higher degree, then fewer steps, then earlier insertion.
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.steps.cmp(&self.steps))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

struct Best {
    degree: Degree,
    max_cut: Degree,
    explored: u64,
}

fn best_degree(c: &Compiled<'_>, norm: NormKind, start: &Config, max_steps: usize) -> Best {
    let mut heap = BinaryHeap::new();
    let mut expanded: HashMap<Config, usize> = HashMap::new();
    let mut seq = 0;
    let mut max_cut = Degree::ZERO;
    let mut explored = 0;

    heap.push(Node {
        degree: Degree::ONE,
        steps: 0,
        seq,
        config: start.clone(),
    });

    while let Some(node) = heap.pop() {
        if node.config.state == c.accept {
            return Best {
                degree: node.degree,
                max_cut,
                explored,
            };
        }
        match expanded.get(&node.config) {
            Some(&steps) if steps <= node.steps => continue,
            _ => {}
        }
        expanded.insert(node.config.clone(), node.steps);
        explored += 1;

        let applicable = c.applicable(&node.config);
        if node.steps == max_steps {
            if applicable.iter().any(|&idx| !c.degree(idx).is_zero()) {
                max_cut = max_cut.max(node.degree);
            }
            continue;
        }
        for &idx in applicable {
            let degree = norm.tnorm(node.degree, c.degree(idx));
            if degree.is_zero() {
                continue;
            }
            if let Some(config) = c.apply(idx, &node.config) {
                seq += 1;
                heap.push(Node {
                    degree,
                    steps: node.steps + 1,
                    seq,
                    config,
                });
            }
        }
    }

    Best {
        degree: Degree::ZERO,
        max_cut,
        explored,
    }
}

/// Depth-first search in transition order for the first accepting path whose
/// degree reaches `target`.
struct WitnessSearch<'a, 'm> {
    compiled: &'a Compiled<'m>,
    norm: NormKind,
    target: Degree,
    max_steps: usize,
    /// Nodes known not to reach `target`: `(steps used, degree)` per configuration.
    failures: HashMap<Config, Vec<(usize, Degree)>>,
    path: Vec<usize>,
    explored: u64,
}

impl WitnessSearch<'_, '_> {
    fn dfs(&mut self, config: &Config, steps: usize, degree: Degree) -> bool {
        let c = self.compiled;
        if config.state == c.accept {
            return degree >= self.target;
        }
        if steps == self.max_steps {
            return false;
        }
        if let Some(records) = self.failures.get(config) {
            if records.iter().any(|&(s, d)| s <= steps && d >= degree) {
                return false;
            }
        }
        self.explored += 1;

        for &idx in c.applicable(config) {
            let next_degree = self.norm.tnorm(degree, c.degree(idx));
            if next_degree < self.target || next_degree.is_zero() {
                continue;
            }
            let Some(next) = c.apply(idx, config) else {
                continue;
            };
            self.path.push(idx);
            if self.dfs(&next, steps + 1, next_degree) {
                return true;
            }
            self.path.pop();
        }

        self.failures
            .entry(config.clone())
            .or_default()
            .push((steps, degree));
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ftm::tests::{d, set, two_path, word};
    use crate::ftm::{accept_degree_bruteforce, path_degree, Move, Transition};
    use std::collections::BTreeMap;

    #[test]
    fn two_path_machine_under_both_norms() {
        for norm in [NormKind::Product, NormKind::Minimum] {
            let m = two_path(norm);
            let r = accept_degree(&m, &word("a"), 3).unwrap();
            assert_eq!(r.degree, d(0.6));
            assert!(!r.truncated);
            assert_eq!(
                r,
                AcceptanceResult {
                    paths_explored: r.paths_explored,
                    ..accept_degree_bruteforce(&m, &word("a"), 3).unwrap()
                }
            );
        }
    }

    #[test]
    fn norm_choice_flips_the_best_path() {
        let mut m = two_path(NormKind::Product);
        m.transitions
            .insert(Transition::new("q0", "a", "q1", "a", Move::N), Degree::ONE);
        m.transitions
            .insert(Transition::new("q1", "a", "qf", "a", Move::N), d(0.7));
        let r = accept_degree(&m, &word("a"), 3).unwrap();
        assert_eq!(r.degree, d(0.7));
        assert_eq!(r.witness.as_ref().unwrap().len(), 2);
        m.norm = NormKind::Lukasiewicz;
        let r = accept_degree(&m, &word("a"), 3).unwrap();
        assert!((r.degree.value() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn empty_relation() {
        let mut m = two_path(NormKind::Product);
        m.transitions.clear();
        let r = accept_degree(&m, &word("a"), 10).unwrap();
        assert_eq!(r.degree, Degree::ZERO);
        assert!(r.witness.is_none());
        assert!(!r.truncated);
    }

    #[test]
    fn start_in_final_state_accepts_with_one() {
        let mut m = two_path(NormKind::Product);
        m.final_state = "q0".into();
        let r = accept_degree(&m, &[], 1).unwrap();
        assert_eq!(r.degree, Degree::ONE);
        assert_eq!(r.witness, Some(vec![]));
    }

    #[test]
    fn loop_that_never_accepts_is_truncated() {
        let mut m = two_path(NormKind::Minimum);
        m.transitions = BTreeMap::from([
            (Transition::new("q0", "a", "q0", "a", Move::R), d(0.9)),
            (Transition::new("q0", "_", "q0", "a", Move::R), d(0.9)),
        ]);
        let r = accept_degree(&m, &word("a"), 20).unwrap();
        assert_eq!(r.degree, Degree::ZERO);
        assert!(r.truncated);
    }

    #[test]
    fn ties_pick_the_least_path() {
        // two equal-degree routes to qf; the one through q1 sorts first
        let mut transitions = BTreeMap::new();
        transitions.insert(Transition::new("q0", "x", "q2", "x", Move::R), d(0.5));
        transitions.insert(Transition::new("q0", "x", "q1", "x", Move::R), d(0.5));
        transitions.insert(Transition::new("q1", "_", "qf", "_", Move::N), d(0.8));
        transitions.insert(Transition::new("q2", "_", "qf", "_", Move::N), d(0.8));
        let m = Machine {
            name: "ties".into(),
            states: set(&["q0", "q1", "q2", "qf"]),
            tape_alphabet: set(&["_", "x"]),
            input_alphabet: set(&["x"]),
            blank: "_".into(),
            start: "q0".into(),
            final_state: "qf".into(),
            transitions,
            norm: NormKind::Minimum,
        };
        let r = accept_degree(&m, &word("x"), 5).unwrap();
        let w = r.witness.clone().unwrap();
        assert_eq!(w[0].0.to, "q1");
        let alphas: Vec<Degree> = w.iter().map(|(_, d)| *d).collect();
        assert_eq!(path_degree(&m, &alphas), r.degree);
        assert_eq!(
            r.witness,
            accept_degree_bruteforce(&m, &word("x"), 5).unwrap().witness
        );
    }

    #[test]
    fn invalid_machine_is_rejected() {
        let mut m = two_path(NormKind::Product);
        m.blank = "a".into();
        assert!(matches!(
            accept_degree(&m, &word("a"), 3),
            Err(FtmError::InvalidMachine(_))
        ));
    }

    #[test]
    fn bad_input_symbol() {
        let m = two_path(NormKind::Product);
        assert_eq!(
            accept_degree(&m, &word("ab"), 3),
            Err(FtmError::InputSymbol {
                symbol: "b".into(),
                position: 1
            })
        );
    }
}
