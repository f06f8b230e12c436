use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{parse_rational, AlgebraError, BigRational, RationalFunction};

/// Scalars of a Hecke algebra: rationals at a numeric `q`, or rational
/// functions in a formal `q`.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(r: &BigRational) -> Self;
    fn parse(s: &str) -> Result<Self, AlgebraError>;

    fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn parse(s: &str) -> Result<Self, AlgebraError> {
        parse_rational(s)
    }
}

impl Coefficient for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn from_rational(r: &BigRational) -> Self {
        RationalFunction::constant(r.clone())
    }
    fn parse(s: &str) -> Result<Self, AlgebraError> {
        RationalFunction::from_str(s)
    }
}
