//! Fuzzy set algebra.
//!
//! Membership and plausibility grades are [`Degree`]s in `[0, 1]`. Intersection
//! and union are parameterised by a [`NormKind`], which selects one of three
//! (t-norm, dual t-conorm) pairs:
//!
//! | kind          | t-norm             | t-conorm        |
//! |---------------|--------------------|-----------------|
//! | `Minimum`     | `min(a, b)`        | `max(a, b)`     |
//! | `Product`     | `a * b`            | `a + b - a * b` |
//! | `Lukasiewicz` | `max(0, a + b - 1)`| `min(1, a + b)` |

mod multiset;
mod set;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use multiset::{fms_cardinality, fms_merge, FuzzyMultiset};
pub use set::{fs_complement, fs_intersection, fs_union, FuzzySet};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("degree must be in [0,1], got {0}")]
    DegreeOutOfRange(f64),
    #[error("approximate-equality width must be positive, got {0}")]
    NonPositiveWidth(f64),
    #[error("symbol `{0}` is not in the universe")]
    NotInUniverse(String),
    #[error("multiplicity of `{0}` must be at least 1")]
    ZeroMultiplicity(String),
    #[error("unknown norm `{0}` (expected min, product or lukasiewicz)")]
    UnknownNorm(String),
}

/// A membership or plausibility grade in `[0, 1]`.
///
/// NaN and values outside the unit interval cannot be constructed, so
/// `Degree` is totally ordered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Degree(f64);

impl Degree {
    pub const ZERO: Degree = Degree(0.0);
    pub const ONE: Degree = Degree(1.0);

    pub fn new(value: f64) -> Result<Self, FuzzyError> {
        if (0.0..=1.0).contains(&value) {
            // normalise -0.0 so that structural equality and hashing agree
            Ok(Degree(value + 0.0))
        } else {
            Err(FuzzyError::DegreeOutOfRange(value))
        }
    }

    /// Clamps into `[0, 1]`; used for results of arithmetic that is
    /// mathematically inside the interval but may drift by an ulp.
    fn clamped(value: f64) -> Self {
        Degree(value.clamp(0.0, 1.0) + 0.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    pub fn complement(self) -> Self {
        Degree::clamped(1.0 - self.0)
    }
}

impl Eq for Degree {}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for Degree {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl TryFrom<f64> for Degree {
    type Error = FuzzyError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Degree::new(value)
    }
}

impl From<Degree> for f64 {
    fn from(d: Degree) -> f64 {
        d.0
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Selects a t-norm together with its dual t-conorm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum NormKind {
    /// Gödel: `min` / `max`.
    #[default]
    Minimum,
    /// Product / probabilistic sum.
    Product,
    /// Łukasiewicz bounded difference / bounded sum.
    Lukasiewicz,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::Minimum, NormKind::Product, NormKind::Lukasiewicz];

    pub fn tnorm(self, a: Degree, b: Degree) -> Degree {
        let (a, b) = (a.0, b.0);
        match self {
            NormKind::Minimum => Degree(a.min(b)),
            NormKind::Product => Degree::clamped(a * b),
            // rounding in `a + b - 1` may overshoot min(a, b) by an ulp
            NormKind::Lukasiewicz => Degree::clamped((a + b - 1.0).min(a.min(b))),
        }
    }

    pub fn tconorm(self, a: Degree, b: Degree) -> Degree {
        let (a, b) = (a.0, b.0);
        match self {
            NormKind::Minimum => Degree(a.max(b)),
            // likewise `a + b - ab` may undershoot max(a, b)
            NormKind::Product => Degree::clamped((a + b - a * b).max(a.max(b))),
            NormKind::Lukasiewicz => Degree::clamped(a + b),
        }
    }

    /// Left fold of the t-norm seeded with 1, the neutral element.
    pub fn fold<I>(self, degrees: I) -> Degree
    where
        I: IntoIterator<Item = Degree>,
    {
        degrees
            .into_iter()
            .fold(Degree::ONE, |acc, d| self.tnorm(acc, d))
    }

    /// Name used by the description language.
    pub fn name(self) -> &'static str {
        match self {
            NormKind::Minimum => "min",
            NormKind::Product => "product",
            NormKind::Lukasiewicz => "lukasiewicz",
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NormKind {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(NormKind::Minimum),
            "product" => Ok(NormKind::Product),
            "lukasiewicz" => Ok(NormKind::Lukasiewicz),
            other => Err(FuzzyError::UnknownNorm(other.to_string())),
        }
    }
}

pub fn tnorm(kind: NormKind, a: Degree, b: Degree) -> Degree {
    kind.tnorm(a, b)
}

pub fn tconorm(kind: NormKind, a: Degree, b: Degree) -> Degree {
    kind.tconorm(a, b)
}

/// Triangular "approximately equal" membership: `max(0, 1 - |x - y| / width)`.
pub fn approx_equal(x: f64, y: f64, width: f64) -> Result<Degree, FuzzyError> {
    if width.is_nan() || width <= 0.0 {
        return Err(FuzzyError::NonPositiveWidth(width));
    }
    Ok(Degree::clamped(1.0 - (x - y).abs() / width))
}
