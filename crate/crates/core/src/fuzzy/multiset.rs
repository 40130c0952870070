use std::collections::BTreeMap;
use std::fmt;

use super::{Degree, FuzzyError, NormKind};

/// A fuzzy multiset: each symbol maps to `(multiplicity, degree)`, meaning
/// that many indistinguishable copies all belonging to the degree.
///
/// Symbols with multiplicity 0 or degree 0 are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FuzzyMultiset {
    entries: BTreeMap<String, (u64, Degree)>,
}

impl FuzzyMultiset {
    pub fn new() -> Self {
        FuzzyMultiset::default()
    }

    /// Builds from `(symbol, multiplicity, degree)` triples. A repeated
    /// symbol is merged with the Minimum-dual (max) policy.
    pub fn from_entries<I, S>(entries: I) -> Result<Self, FuzzyError>
    where
        I: IntoIterator<Item = (S, u64, Degree)>,
        S: Into<String>,
    {
        let mut out = FuzzyMultiset::new();
        for (sym, count, degree) in entries {
            let sym = sym.into();
            if count == 0 {
                return Err(FuzzyError::ZeroMultiplicity(sym));
            }
            out.add(sym, count, degree, NormKind::Minimum);
        }
        Ok(out)
    }

    /// Adds `count` copies at `degree`; an existing entry gets the summed
    /// multiplicity and the t-conorm of the two degrees.
    pub fn add(&mut self, sym: impl Into<String>, count: u64, degree: Degree, kind: NormKind) {
        if count == 0 {
            return;
        }
        let sym = sym.into();
        match self.entries.get_mut(&sym) {
            Some((n, d)) => {
                *n += count;
                *d = kind.tconorm(*d, degree);
            }
            None if degree.is_zero() => {}
            None => {
                self.entries.insert(sym, (count, degree));
            }
        }
    }

    /// Removes up to `count` copies and returns how many were removed.
    pub fn remove(&mut self, sym: &str, count: u64) -> u64 {
        let Some((n, _)) = self.entries.get_mut(sym) else {
            return 0;
        };
        let taken = count.min(*n);
        *n -= taken;
        if *n == 0 {
            self.entries.remove(sym);
        }
        taken
    }

    pub fn multiplicity(&self, sym: &str) -> u64 {
        self.entries.get(sym).map_or(0, |(n, _)| *n)
    }

    pub fn degree(&self, sym: &str) -> Degree {
        self.entries.get(sym).map_or(Degree::ZERO, |(_, d)| *d)
    }

    pub fn get(&self, sym: &str) -> Option<(u64, Degree)> {
        self.entries.get(sym).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64, Degree)> {
        self.entries.iter().map(|(s, (n, d))| (s.as_str(), *n, *d))
    }

    /// Number of distinct symbols.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of copies, ignoring degrees.
    pub fn count(&self) -> u64 {
        self.entries.values().map(|(n, _)| n).sum()
    }

    /// `Σ multiplicity × degree` over the support.
    pub fn cardinality(&self) -> f64 {
        self.entries
            .values()
            .map(|(n, d)| *n as f64 * d.value())
            .sum()
    }

    /// Sums multiplicities and combines same-symbol degrees with the t-conorm.
    pub fn merge(&self, other: &FuzzyMultiset, kind: NormKind) -> FuzzyMultiset {
        let mut out = self.clone();
        for (sym, n, d) in other.iter() {
            out.add(sym, n, d, kind);
        }
        out
    }
}

pub fn fms_cardinality(a: &FuzzyMultiset) -> f64 {
    a.cardinality()
}

pub fn fms_merge(a: &FuzzyMultiset, b: &FuzzyMultiset, kind: NormKind) -> FuzzyMultiset {
    a.merge(b, kind)
}

/// Writes `{sym:mult@deg, ...}`.
impl fmt::Display for FuzzyMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (sym, n, d)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{sym}:{n}@{d}")?;
        }
        f.write_str("}")
    }
}
