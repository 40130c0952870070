use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Degree, FuzzyError, NormKind};

/// A fuzzy subset of a finite universe of symbols.
///
/// Only symbols with a positive degree are stored; every other member of the
/// universe has degree 0. Keeping the map canonical makes `==` coincide with
/// extensional equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FuzzySet {
    universe: BTreeSet<String>,
    membership: BTreeMap<String, Degree>,
}

impl FuzzySet {
    /// The empty fuzzy subset of `universe`.
    pub fn empty<I, S>(universe: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        FuzzySet {
            universe: universe.into_iter().map(Into::into).collect(),
            membership: BTreeMap::new(),
        }
    }

    /// The fuzzy subset of `universe` where every element has degree 1.
    pub fn full<I, S>(universe: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let universe: BTreeSet<String> = universe.into_iter().map(Into::into).collect();
        let membership = universe.iter().map(|s| (s.clone(), Degree::ONE)).collect();
        FuzzySet {
            universe,
            membership,
        }
    }

    /// Builds a set whose universe is exactly the listed symbols.
    ///
    /// A symbol listed twice keeps its last degree.
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, Degree)>,
        S: Into<String>,
    {
        let mut set = FuzzySet::default();
        for (sym, degree) in pairs {
            let sym = sym.into();
            set.universe.insert(sym.clone());
            set.put(sym, degree);
        }
        set
    }

    /// Sets the degree of a member of the universe.
    pub fn set(&mut self, sym: &str, degree: Degree) -> Result<(), FuzzyError> {
        if !self.universe.contains(sym) {
            return Err(FuzzyError::NotInUniverse(sym.to_string()));
        }
        self.put(sym.to_string(), degree);
        Ok(())
    }

    fn put(&mut self, sym: String, degree: Degree) {
        if degree.is_zero() {
            self.membership.remove(&sym);
        } else {
            self.membership.insert(sym, degree);
        }
    }

    pub fn degree(&self, sym: &str) -> Degree {
        self.membership.get(sym).copied().unwrap_or(Degree::ZERO)
    }

    pub fn universe(&self) -> &BTreeSet<String> {
        &self.universe
    }

    /// Members with positive degree, in symbol order.
    pub fn support(&self) -> impl Iterator<Item = (&str, Degree)> {
        self.membership.iter().map(|(s, d)| (s.as_str(), *d))
    }

    pub fn support_len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    /// Pointwise t-conorm. The result universe is the union of both universes.
    pub fn union(&self, other: &FuzzySet, kind: NormKind) -> FuzzySet {
        self.pointwise(other, |a, b| kind.tconorm(a, b))
    }

    /// Pointwise t-norm. The result universe is the union of both universes.
    pub fn intersection(&self, other: &FuzzySet, kind: NormKind) -> FuzzySet {
        self.pointwise(other, |a, b| kind.tnorm(a, b))
    }

    /// `1 - A(x)` for every `x` in the universe.
    pub fn complement(&self) -> FuzzySet {
        let mut out = FuzzySet::empty(self.universe.iter().cloned());
        for sym in &self.universe {
            out.put(sym.clone(), self.degree(sym).complement());
        }
        out
    }

    fn pointwise(&self, other: &FuzzySet, op: impl Fn(Degree, Degree) -> Degree) -> FuzzySet {
        let universe: BTreeSet<String> = self.universe.union(&other.universe).cloned().collect();
        let mut out = FuzzySet::empty(universe.iter().cloned());
        for sym in &universe {
            out.put(sym.clone(), op(self.degree(sym), other.degree(sym)));
        }
        out
    }

    /// Same universe and every degree within `tol`.
    pub fn approx_eq(&self, other: &FuzzySet, tol: f64) -> bool {
        self.universe == other.universe
            && self
                .universe
                .iter()
                .all(|s| (self.degree(s).value() - other.degree(s).value()).abs() <= tol)
    }
}

/// Free-function spellings of the set operations.
pub fn fs_union(a: &FuzzySet, b: &FuzzySet, kind: NormKind) -> FuzzySet {
    a.union(b, kind)
}

pub fn fs_intersection(a: &FuzzySet, b: &FuzzySet, kind: NormKind) -> FuzzySet {
    a.intersection(b, kind)
}

pub fn fs_complement(a: &FuzzySet) -> FuzzySet {
    a.complement()
}

/// Writes the support as `{sym@deg, ...}`.
impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (sym, degree)) in self.support().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{sym}@{degree}")?;
        }
        f.write_str("}")
    }
}
