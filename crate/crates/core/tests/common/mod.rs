//! Seeded generators and independent reference implementations shared by the
//! integration tests. Nothing here calls into the engines it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use fuzzym::fpsystem::{Compartment, PSystem, Product, Rule, Target};
use fuzzym::ftm::{Machine, Move, Transition};
use fuzzym::{Degree, FuzzyMultiset, FuzzySet, NormKind};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn d(v: f64) -> Degree {
    Degree::new(v).unwrap()
}

/// Half the time a tenth (so ties and exact 0/1 occur), otherwise uniform.
pub fn degree(rng: &mut TestRng) -> Degree {
    if rng.gen_bool(0.5) {
        d(rng.gen_range(0..=10) as f64 / 10.0)
    } else {
        d(rng.gen::<f64>())
    }
}

/// At most this many transitions share a `(state, read)` pair, keeping the
/// exhaustive engine fast at a step budget of 10.
pub const MAX_BRANCHING: usize = 3;

/// A random valid machine: up to 4 states, a blank plus one or two input
/// symbols, up to 8 transitions. `crisp` makes every degree 1.
pub fn machine(rng: &mut TestRng, norm: NormKind, crisp: bool) -> Machine {
    let n_states = rng.gen_range(1..=4);
    let states: Vec<String> = (0..n_states).map(|i| format!("q{i}")).collect();
    let n_input = rng.gen_range(1..=2);
    let inputs: Vec<String> = ["a", "b"][..n_input]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut tape = inputs.clone();
    tape.push("_".into());

    let mut transitions = BTreeMap::new();
    let n_delta = rng.gen_range(3..=8);
    for _ in 0..n_delta * 3 {
        if transitions.len() == n_delta {
            break;
        }
        let from = states.choose(rng).unwrap().clone();
        let read = tape.choose(rng).unwrap().clone();
        let siblings = transitions
            .keys()
            .filter(|t: &&Transition| t.from == from && t.read == read)
            .count();
        if siblings >= MAX_BRANCHING {
            continue;
        }
        let t = Transition {
            from,
            read,
            to: states.choose(rng).unwrap().clone(),
            write: tape.choose(rng).unwrap().clone(),
            mv: *[Move::L, Move::N, Move::R].choose(rng).unwrap(),
        };
        let mu = if crisp { Degree::ONE } else { degree(rng) };
        transitions.insert(t, mu);
    }

    Machine {
        name: format!("m{}", rng.gen::<u32>()),
        start: "q0".into(),
        final_state: states.choose(rng).unwrap().clone(),
        states: states.into_iter().collect(),
        tape_alphabet: tape.into_iter().collect(),
        input_alphabet: inputs.into_iter().collect(),
        blank: "_".into(),
        transitions,
        norm,
    }
}

/// Every word over the input alphabet of length `<= max_len`.
pub fn words(m: &Machine, max_len: usize) -> Vec<Vec<String>> {
    let alphabet: Vec<&String> = m.input_alphabet.iter().collect();
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::<String>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
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

/// Classical bounded reachability: can the final state be reached from the
/// initial configuration in at most `max_steps` moves, ignoring degrees?
/// The tape is a sparse map of non-blank cells.
pub fn classical_accepts(m: &Machine, word: &[String], max_steps: usize) -> bool {
    type Conf = (String, usize, BTreeMap<usize, String>);
    let tape: BTreeMap<usize, String> = word.iter().cloned().enumerate().collect();
    let start: Conf = (m.start.clone(), 0, tape);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    seen.insert(start);
    while let Some(((state, head, tape), depth)) = queue.pop_front() {
        if state == m.final_state {
            return true;
        }
        if depth == max_steps {
            continue;
        }
        let read = tape.get(&head).cloned().unwrap_or_else(|| m.blank.clone());
        for t in m.transitions.keys() {
            if t.from != state || t.read != read {
                continue;
            }
            let head2 = match t.mv {
                Move::L if head == 0 => continue,
                Move::L => head - 1,
                Move::N => head,
                Move::R => head + 1,
            };
            let mut tape2 = tape.clone();
            if t.write == m.blank {
                tape2.remove(&head);
            } else {
                tape2.insert(head, t.write.clone());
            }
            let next: Conf = (t.to.clone(), head2, tape2);
            if seen.insert(next.clone()) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    false
}

/// A fuzzy subset of an 8-element universe; about a quarter of the members
/// get degree 0 and some get exactly 1.
pub fn fuzzy_set(rng: &mut TestRng) -> FuzzySet {
    let universe: Vec<String> = (0..8).map(|i| format!("x{i}")).collect();
    let mut s = FuzzySet::empty(universe.iter().cloned());
    for x in &universe {
        let v = match rng.gen_range(0..4) {
            0 => 0.0,
            1 => rng.gen_range(0..=10) as f64 / 10.0,
            _ => rng.gen::<f64>(),
        };
        s.set(x, d(v)).unwrap();
    }
    s
}

/// Entries `(symbol, multiplicity, degree)` with positive multiplicities and
/// degrees, distinct symbols.
pub fn multiset_entries(rng: &mut TestRng) -> Vec<(String, u64, Degree)> {
    let n = rng.gen_range(0..=8);
    (0..n)
        .map(|i| {
            let mut deg = degree(rng);
            if deg.is_zero() {
                deg = Degree::ONE;
            }
            (format!("s{i}"), rng.gen_range(1..=20), deg)
        })
        .collect()
}

/// Cardinality by listing every copy separately and summing.
pub fn copy_expansion_cardinality(entries: &[(String, u64, Degree)]) -> f64 {
    let copies: Vec<f64> = entries
        .iter()
        .flat_map(|(_, n, deg)| std::iter::repeat_n(deg.value(), *n as usize))
        .collect();
    copies.iter().sum()
}

const SYMBOLS: [&str; 3] = ["a", "b", "c"];

fn symbol(rng: &mut TestRng) -> String {
    SYMBOLS.choose(rng).unwrap().to_string()
}

fn contents(rng: &mut TestRng, crisp: bool) -> FuzzyMultiset {
    let mut ms = FuzzyMultiset::new();
    for s in SYMBOLS {
        let n = rng.gen_range(0..=4);
        let deg = if crisp { Degree::ONE } else { degree(rng) };
        ms.add(s, n, deg, NormKind::Minimum);
    }
    ms
}

fn rule(rng: &mut TestRng, crisp: bool, targets: &[Target]) -> Rule {
    let mut lhs = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=2) {
        *lhs.entry(symbol(rng)).or_insert(0) += 1;
    }
    let rhs = (0..rng.gen_range(0..=3))
        .map(|_| Product {
            symbol: symbol(rng),
            target: targets.choose(rng).unwrap().clone(),
            degree: if crisp { Degree::ONE } else { degree(rng) },
        })
        .collect();
    Rule {
        lhs,
        rhs,
        degree: if crisp { Degree::ONE } else { degree(rng) },
    }
}

/// One membrane, up to 4 rules over `{a, b, c}` with `here` and `out`
/// targets.
pub fn single_membrane_system(rng: &mut TestRng, norm: NormKind, crisp: bool) -> PSystem {
    let mut skin = Compartment::new("skin");
    skin.contents = contents(rng, crisp);
    let targets = [Target::Here, Target::Here, Target::Out];
    skin.rules = (0..rng.gen_range(0..=4))
        .map(|_| rule(rng, crisp, &targets))
        .collect();
    PSystem::single(&format!("p{}", rng.gen::<u32>()), norm, skin)
}

/// A skin with up to two children (one possibly nested further), rules
/// targeting parents and direct children, and a random output compartment.
pub fn nested_system(rng: &mut TestRng, norm: NormKind) -> PSystem {
    fn build(rng: &mut TestRng, id: String, depth: usize, next_id: &mut usize) -> Compartment {
        let mut c = Compartment::new(&id);
        let n_children = if depth < 2 { rng.gen_range(0..=2) } else { 0 };
        for _ in 0..n_children {
            *next_id += 1;
            let child = build(rng, format!("m{next_id}"), depth + 1, next_id);
            c.children.push(child);
        }
        c.contents = contents(rng, false);
        let mut targets = vec![Target::Here, Target::Out];
        targets.extend(c.children.iter().map(|k| Target::In(k.id.clone())));
        c.rules = (0..rng.gen_range(0..=3))
            .map(|_| rule(rng, false, &targets))
            .collect();
        c
    }
    let mut next_id = 0;
    let skin = build(rng, "skin".into(), 0, &mut next_id);
    let mut p = PSystem::single(&format!("p{}", rng.gen::<u32>()), norm, skin);
    let ids: Vec<String> = p.compartments().iter().map(|(_, c)| c.id.clone()).collect();
    p.output = ids.choose(rng).unwrap().clone();
    p
}

/// Outcome of [`crisp_run`].
#[derive(Debug, PartialEq)]
pub struct CrispOutcome {
    pub count: u64,
    pub halted: bool,
    pub ticks: u64,
}

/// Plain-multiset simulation of a single-membrane system: rules in listed
/// order, each applied as often as the remaining objects allow, products
/// delivered at the end of the tick, `out` products discarded.
pub fn crisp_run(p: &PSystem, max_ticks: u64) -> CrispOutcome {
    let mut objects: BTreeMap<String, u64> = p
        .skin
        .contents
        .iter()
        .map(|(s, n, _)| (s.to_string(), n))
        .collect();
    // (consumed symbols with counts, products with a stays-here flag)
    type PlainRule = (Vec<(String, u64)>, Vec<(String, bool)>);
    let rules: Vec<PlainRule> = p
        .skin
        .rules
        .iter()
        .map(|r| {
            (
                r.lhs.iter().map(|(s, n)| (s.clone(), *n)).collect(),
                r.rhs
                    .iter()
                    .map(|pr| (pr.symbol.clone(), pr.target == Target::Here))
                    .collect(),
            )
        })
        .collect();
    let fits = |objects: &BTreeMap<String, u64>, lhs: &[(String, u64)]| -> u64 {
        lhs.iter()
            .map(|(s, need)| objects.get(s).copied().unwrap_or(0) / need)
            .min()
            .unwrap_or(0)
    };
    let is_halted =
        |objects: &BTreeMap<String, u64>| rules.iter().all(|(lhs, _)| fits(objects, lhs) == 0);

    let mut ticks = 0;
    while ticks < max_ticks && !is_halted(&objects) {
        let mut produced: BTreeMap<String, u64> = BTreeMap::new();
        for (lhs, rhs) in &rules {
            let k = fits(&objects, lhs);
            if k == 0 {
                continue;
            }
            for (s, need) in lhs {
                *objects.get_mut(s).unwrap() -= need * k;
            }
            for (s, stays) in rhs {
                if *stays {
                    *produced.entry(s.clone()).or_insert(0) += k;
                }
            }
        }
        for (s, n) in produced {
            *objects.entry(s).or_insert(0) += n;
        }
        ticks += 1;
    }
    CrispOutcome {
        count: objects.values().sum(),
        halted: is_halted(&objects),
        ticks,
    }
}

/// Char offset of a 1-based `(line, column)` position, if it lies within the
/// text or exactly at its end.
pub fn offset_of(text: &str, line: usize, column: usize) -> Option<usize> {
    if line == 0 || column == 0 {
        return None;
    }
    let mut offset = 0;
    for (i, l) in text.split('\n').enumerate() {
        let len = l.chars().count();
        if i + 1 == line {
            return (column <= len + 1).then_some(offset + column - 1);
        }
        offset += len + 1;
    }
    None
}

/// Syntax-breaking edits of a well-formed description: drop a `;`, `)` or
/// `}`, insert a stray character, or cut the text before its final brace.
pub fn corrupt(rng: &mut TestRng, text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let positions = |set: &[char]| -> Vec<usize> {
        chars
            .iter()
            .enumerate()
            .filter(|(_, c)| set.contains(c))
            .map(|(i, _)| i)
            .collect()
    };
    loop {
        match rng.gen_range(0..4) {
            0 | 1 => {
                let set: &[char] = if rng.gen_bool(0.5) {
                    &[';']
                } else {
                    &[')', '}']
                };
                let ps = positions(set);
                if let Some(&i) = ps.choose(rng) {
                    let mut c = chars.clone();
                    c.remove(i);
                    return c.into_iter().collect();
                }
            }
            2 => {
                let i = rng.gen_range(0..=chars.len());
                let stray = *['$', '=', '!', '[', '%'].choose(rng).unwrap();
                let mut c = chars.clone();
                c.insert(i, stray);
                return c.into_iter().collect();
            }
            _ => {
                let last = *positions(&['}']).last().unwrap();
                let cut = rng.gen_range(0..last);
                return chars[..cut].iter().collect();
            }
        }
    }
}
