//! Closed-form counts of secondary structures by partial stacks, helices and
//! loops. Results are exact; every division is carried out over the
//! rationals and checked to land on an integer.

mod distribution;
mod formulas;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::series::SeriesError;

pub use distribution::SizeDistribution;
pub use formulas::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("{0} did not evaluate to an integer")]
    NonIntegral(&'static str),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// An exact count or an exact rational (expectations, probabilities).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountingResult {
    Integer(BigInt),
    Rational(BigRational),
}

impl fmt::Display for CountingResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountingResult::Integer(n) => write!(f, "{n}"),
            CountingResult::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            CountingResult::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Serialize for CountingResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<BigInt> for CountingResult {
    fn from(n: BigInt) -> Self {
        CountingResult::Integer(n)
    }
}

impl From<BigRational> for CountingResult {
    fn from(r: BigRational) -> Self {
        CountingResult::Rational(r)
    }
}
