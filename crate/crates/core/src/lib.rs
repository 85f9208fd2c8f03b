//! Inversive pseudorandom number generators over prime fields.
//!
//! The generator is `x -> a * x^-1 + b` over `Z_N` (with `0 -> b`). Its
//! orbit is tied to the second-order LFSR `y_{n+2} = b*y_{n+1} + a*y_n`
//! through `x_n = y_{n+1} / y_n`, so the period is governed by the roots of
//! `t^2 - b*t - a` and the multiplicative order of their ratio.
//!
//! Modules:
//! - [`field`]: arithmetic in `Z_N` and `GF(N^2)` plus integer number theory.
//! - [`generator`]: the generator, its companion LFSR and orbit measurement.
//! - [`analytic`]: closed-form period prediction by root/order case analysis.
//! - [`census`]: analytic and exhaustive period distributions.
//! - [`design`]: construction of parameters hitting a requested period.

pub mod analytic;
pub mod census;
pub mod design;
mod error;
pub mod field;
pub mod generator;

pub use analytic::{predict_period, PeriodClass, PeriodTag, RootData, RootLocation};
pub use census::{
    achievable_periods, analytic_distribution, brute_force_distribution, compare, ComparisonReport,
    DistributionTable, Family, Source,
};
pub use design::design_triples;
pub use error::{Error, Result};
pub use field::{FieldElement, Fp2Elem, FpElem, PrimeModulus};
pub use generator::{measure_period, IprngParams, PeriodResult};
