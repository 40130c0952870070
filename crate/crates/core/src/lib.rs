//! Fuzzy models of computation.
//!
//! * [`fuzzy`]: degrees, t-norms/t-conorms, fuzzy sets and fuzzy multisets.
//! * [`ftm`]: nondeterministic fuzzy Turing machines and their acceptance degrees.
//! * [`fpsystem`]: fuzzy P systems (membranes holding fuzzy multisets).
//! * [`dsl`]: the `.ftm` / `.fps` description language.
//! * [`cli`]: the `fuzzym` command-line front end.

pub mod cli;
pub mod dsl;
pub mod fpsystem;
pub mod ftm;
pub mod fuzzy;

pub use fuzzy::{Degree, FuzzyMultiset, FuzzySet, NormKind};
