//! Fuzzy P systems.
//!
//! A system is a tree of membranes (compartments). Each compartment holds a
//! [`FuzzyMultiset`] of objects and an ordered list of rewriting rules. At
//! every tick each compartment applies its rules maximally in listed order:
//! a rule takes as many applications as the remaining objects allow before
//! the next rule is considered. Products are delivered after every
//! compartment has fired, so nothing produced in a tick is consumed in the
//! same tick.
//!
//! A product's degree is `d_in * (rule_degree * product_degree)` under the
//! system's t-norm, where `d_in` is the least degree among the consumed
//! objects. Deposits of a symbol already present merge with the t-conorm.
//! The system halts when no rule is applicable anywhere; the result is the
//! cardinality of the output compartment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::fuzzy::{Degree, FuzzyMultiset, NormKind};

/// Where a product goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Here,
    /// To the parent; from the skin, out of the system.
    Out,
    /// Into the named direct child.
    In(String),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Here => f.write_str("here"),
            Target::Out => f.write_str("out"),
            Target::In(id) => write!(f, "in {id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Product {
    pub symbol: String,
    pub target: Target,
    pub degree: Degree,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    /// Consumed objects with their counts.
    pub lhs: BTreeMap<String, u64>,
    pub rhs: Vec<Product>,
    pub degree: Degree,
}

impl Rule {
    /// How many times the rule fits into `contents`.
    pub fn max_applications(&self, contents: &FuzzyMultiset) -> u64 {
        if self.lhs.is_empty() {
            return 0;
        }
        self.lhs
            .iter()
            .map(|(sym, &need)| match need {
                0 => u64::MAX,
                n => contents.multiplicity(sym) / n,
            })
            .min()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Compartment {
    pub id: String,
    pub contents: FuzzyMultiset,
    pub rules: Vec<Rule>,
    pub children: Vec<Compartment>,
}

impl Compartment {
    pub fn new(id: &str) -> Self {
        Compartment {
            id: id.to_string(),
            contents: FuzzyMultiset::new(),
            rules: Vec::new(),
            children: Vec::new(),
        }
    }

    /// Rules that can fire on the current contents, with their maximal
    /// number of simultaneous applications.
    pub fn applicable_rules(&self) -> Vec<(&Rule, u64)> {
        self.rules
            .iter()
            .map(|r| (r, r.max_applications(&self.contents)))
            .filter(|&(_, n)| n > 0)
            .collect()
    }

    fn walk<'a>(&'a self, depth: usize, out: &mut Vec<(usize, &'a Compartment)>) {
        out.push((depth, self));
        for child in &self.children {
            child.walk(depth + 1, out);
        }
    }

    fn find_mut(&mut self, id: &str) -> Option<&mut Compartment> {
        if self.id == id {
            return Some(self);
        }
        self.children.iter_mut().find_map(|c| c.find_mut(id))
    }
}

pub fn applicable_rules(c: &Compartment) -> Vec<(&Rule, u64)> {
    c.applicable_rules()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PSystem {
    pub name: String,
    pub norm: NormKind,
    pub output: String,
    pub skin: Compartment,
    pub clock: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemViolation {
    #[error("output compartment `{0}` does not exist")]
    UnknownOutput(String),
    #[error("compartment id `{0}` is used more than once")]
    DuplicateId(String),
    #[error("compartment `{compartment}`, rule {rule}: left-hand side is empty")]
    EmptyLhs { compartment: String, rule: usize },
    #[error("compartment `{compartment}`, rule {rule}: `{child}` is not a direct child")]
    BadTarget {
        compartment: String,
        rule: usize,
        child: String,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FpsError {
    #[error("invalid P system: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<SystemViolation>),
    #[error("tick budget must be at least 1")]
    ZeroBudget,
}

/// One rule firing recorded by [`PSystem::tick_traced`].
#[derive(Debug, Clone, PartialEq)]
pub struct Application {
    pub compartment: String,
    pub rule: usize,
    pub count: u64,
    /// Least degree among the consumed objects.
    pub input_degree: Degree,
    pub rule_degree: Degree,
    /// `(symbol, target, specified degree, produced degree)` per product.
    pub produced: Vec<(String, Target, Degree, Degree)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub result: f64,
    pub halted: bool,
    pub ticks_used: u64,
    pub output_contents: FuzzyMultiset,
    pub system: PSystem,
}

impl RunResult {
    /// `{result, halted, ticks_used, output_contents}` with the contents as
    /// a list of `{symbol, multiplicity, degree}` objects.
    pub fn to_json(&self) -> serde_json::Value {
        let contents: Vec<serde_json::Value> = self
            .output_contents
            .iter()
            .map(|(s, n, d)| {
                json!({"symbol": s, "multiplicity": n, "degree": crate::cli::json_degree(d.value())})
            })
            .collect();
        json!({
            "result": crate::cli::json_degree(self.result),
            "halted": self.halted,
            "ticks_used": self.ticks_used,
            "output_contents": contents,
        })
    }
}

impl PSystem {
    /// Single-membrane system whose skin is also the output compartment.
    pub fn single(name: &str, norm: NormKind, skin: Compartment) -> Self {
        PSystem {
            name: name.to_string(),
            norm,
            output: skin.id.clone(),
            skin,
            clock: 0,
        }
    }

    /// Compartments in preorder with their nesting depth (skin = 0).
    pub fn compartments(&self) -> Vec<(usize, &Compartment)> {
        let mut out = Vec::new();
        self.skin.walk(0, &mut out);
        out
    }

    pub fn compartment(&self, id: &str) -> Option<&Compartment> {
        self.compartments()
            .into_iter()
            .map(|(_, c)| c)
            .find(|c| c.id == id)
    }

    /// Every violated structural constraint.
    pub fn validate(&self) -> Vec<SystemViolation> {
        let mut out = Vec::new();
        let all = self.compartments();
        let mut seen = BTreeSet::new();
        let mut reported = BTreeSet::new();
        for (_, c) in &all {
            if !seen.insert(c.id.as_str()) && reported.insert(c.id.as_str()) {
                out.push(SystemViolation::DuplicateId(c.id.clone()));
            }
        }
        if !seen.contains(self.output.as_str()) {
            out.push(SystemViolation::UnknownOutput(self.output.clone()));
        }
        for (_, c) in &all {
            for (i, rule) in c.rules.iter().enumerate() {
                if rule.lhs.values().all(|&n| n == 0) {
                    out.push(SystemViolation::EmptyLhs {
                        compartment: c.id.clone(),
                        rule: i + 1,
                    });
                }
                for p in &rule.rhs {
                    if let Target::In(child) = &p.target {
                        if !c.children.iter().any(|k| &k.id == child) {
                            out.push(SystemViolation::BadTarget {
                                compartment: c.id.clone(),
                                rule: i + 1,
                                child: child.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// True iff no rule is applicable in any compartment.
    pub fn halted(&self) -> bool {
        self.compartments()
            .iter()
            .all(|(_, c)| c.applicable_rules().is_empty())
    }

    /// One synchronous step. A halted system is returned unchanged.
    pub fn tick(&self) -> PSystem {
        self.tick_traced().0
    }

    /// [`PSystem::tick`] plus a record of every rule firing.
    pub fn tick_traced(&self) -> (PSystem, Vec<Application>) {
        if self.halted() {
            return (self.clone(), Vec::new());
        }
        let mut next = self.clone();
        let mut deposits: Vec<(String, String, u64, Degree)> = Vec::new();
        let mut trace = Vec::new();
        fire(&mut next.skin, None, self.norm, &mut deposits, &mut trace);
        for (target, symbol, count, degree) in deposits {
            let c = next
                .skin
                .find_mut(&target)
                .expect("deposit targets an existing compartment");
            c.contents.add(symbol, count, degree, self.norm);
        }
        next.clock += 1;
        (next, trace)
    }

    /// Ticks until halted or `max_ticks` ticks have run.
    pub fn run(&self, max_ticks: u64) -> Result<RunResult, FpsError> {
        if max_ticks == 0 {
            return Err(FpsError::ZeroBudget);
        }
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(FpsError::Invalid(violations));
        }
        let mut system = self.clone();
        let mut ticks_used = 0;
        while ticks_used < max_ticks && !system.halted() {
            system = system.tick();
            ticks_used += 1;
        }
        let output_contents = system
            .compartment(&system.output)
            .map(|c| c.contents.clone())
            .unwrap_or_default();
        Ok(RunResult {
            result: output_contents.cardinality(),
            halted: system.halted(),
            ticks_used,
            output_contents,
            system,
        })
    }
}

pub fn validate_system(p: &PSystem) -> Vec<SystemViolation> {
    p.validate()
}

pub fn tick(p: &PSystem) -> PSystem {
    p.tick()
}

pub fn halted(p: &PSystem) -> bool {
    p.halted()
}

pub fn run(p: &PSystem, max_ticks: u64) -> Result<RunResult, FpsError> {
    p.run(max_ticks)
}

/// Applies the rules of `c` and its descendants against their pre-tick
/// contents, consuming in place and queueing products as
/// `(target id, symbol, count, degree)`.
fn fire(
    c: &mut Compartment,
    parent: Option<&str>,
    norm: NormKind,
    deposits: &mut Vec<(String, String, u64, Degree)>,
    trace: &mut Vec<Application>,
) {
    for (i, rule) in c.rules.iter().enumerate() {
        let count = rule.max_applications(&c.contents);
        if count == 0 {
            continue;
        }
        let input_degree = rule
            .lhs
            .keys()
            .map(|s| c.contents.degree(s))
            .min()
            .unwrap_or(Degree::ONE);
        for (sym, &need) in &rule.lhs {
            c.contents.remove(sym, need * count);
        }
        let mut produced = Vec::with_capacity(rule.rhs.len());
        for p in &rule.rhs {
            let degree = norm.tnorm(input_degree, norm.tnorm(rule.degree, p.degree));
            let dest = match &p.target {
                Target::Here => Some(c.id.clone()),
                Target::Out => parent.map(str::to_string),
                Target::In(child) => Some(child.clone()),
            };
            if let Some(dest) = dest {
                deposits.push((dest, p.symbol.clone(), count, degree));
            }
            produced.push((p.symbol.clone(), p.target.clone(), p.degree, degree));
        }
        trace.push(Application {
            compartment: c.id.clone(),
            rule: i,
            count,
            input_degree,
            rule_degree: rule.degree,
            produced,
        });
    }
    let id = c.id.clone();
    for child in &mut c.children {
        fire(child, Some(&id), norm, deposits, trace);
    }
}
