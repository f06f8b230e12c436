//! Exact arithmetic: big rationals, univariate polynomials over Q, rational
//! functions in canonical form, and truncated power series.
//!
//! Everything here is immutable value arithmetic. Nothing rounds.

mod poly;
mod ratfunc;
mod series;

pub use num_rational::BigRational;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use series::TruncatedSeries;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Default truncation order for power-series expansions.
pub const DEFAULT_TRUNCATION: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at t = {at} of multiplicity {multiplicity}")]
    Pole { at: BigRational, multiplicity: usize },
    #[error("not expandable at origin: denominator vanishes at 0")]
    NotExpandableAtOrigin,
    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn big(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let err = || AlgebraError::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| err())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Renders `p/q` with the denominator omitted when it is 1.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

/// `base^exp` for a possibly negative exponent. Panics on `0^negative`.
pub fn pow_rational(base: &BigRational, exp: i64) -> BigRational {
    let mut acc = BigRational::one();
    let b = if exp < 0 {
        base.recip()
    } else {
        base.clone()
    };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}
