//! Exhaustive reference engine.
//!
//! Walks every computational path of length `<= max_steps` depth-first in
//! transition order, using the string-level [`step`] relation. Exponential in
//! the budget; meant for small machines and as the oracle for the best-first
//! engine.

use super::{
    check_word, initial_configuration, step, AcceptanceResult, Configuration, FtmError, Machine,
    Transition,
};
use crate::fuzzy::Degree;

pub fn accept_degree_bruteforce(
    m: &Machine,
    word: &[String],
    max_steps: usize,
) -> Result<AcceptanceResult, FtmError> {
    accept_degree_bruteforce_with(m, word, max_steps, |_| {})
}

/// Like [`accept_degree_bruteforce`], calling `visit` with the transition
/// degrees of every enumerated path, starting with the empty one.
pub fn accept_degree_bruteforce_with<F>(
    m: &Machine,
    word: &[String],
    max_steps: usize,
    visit: F,
) -> Result<AcceptanceResult, FtmError>
where
    F: FnMut(&[Degree]),
{
    if max_steps == 0 {
        return Err(FtmError::ZeroBudget);
    }
    m.ensure_valid()?;
    check_word(m, word)?;
    let start = initial_configuration(m, word)?;

    let mut walker = Walker {
        m,
        max_steps,
        visit,
        path: Vec::new(),
        alphas: Vec::new(),
        best: Degree::ZERO,
        witness: None,
        max_cut: Degree::ZERO,
        explored: 0,
    };
    walker.walk(&start, Degree::ONE);

    Ok(AcceptanceResult {
        degree: walker.best,
        witness: walker.witness,
        paths_explored: walker.explored,
        truncated: walker.max_cut > walker.best,
    })
}

struct Walker<'m, F> {
    m: &'m Machine,
    max_steps: usize,
    visit: F,
    path: Vec<(Transition, Degree)>,
    alphas: Vec<Degree>,
    best: Degree,
    witness: Option<Vec<(Transition, Degree)>>,
    max_cut: Degree,
    explored: u64,
}

impl<F: FnMut(&[Degree])> Walker<'_, F> {
    fn walk(&mut self, c: &Configuration, degree: Degree) {
        self.explored += 1;
        (self.visit)(&self.alphas);

        if c.state() == self.m.final_state {
            // strict: the first path in transition order wins ties
            if degree > self.best {
                self.best = degree;
                self.witness = Some(self.path.clone());
            }
            return;
        }

        let successors = step(self.m, c);
        if self.path.len() == self.max_steps {
            if successors.iter().any(|s| !s.degree.is_zero()) {
                self.max_cut = self.max_cut.max(degree);
            }
            return;
        }

        for s in successors {
            let next = self.m.norm.tnorm(degree, s.degree);
            if next.is_zero() {
                continue;
            }
            self.path.push((s.transition, s.degree));
            self.alphas.push(s.degree);
            self.walk(&s.configuration, next);
            self.alphas.pop();
            self.path.pop();
        }
    }
}
