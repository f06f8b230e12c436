use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Polynomial, TruncatedSeries};

/// A quotient `num / den` of polynomials in `t`, kept in canonical form:
///
/// - `num` and `den` are coprime,
/// - both have integer coefficients whose joint content is 1,
/// - `den` has positive leading coefficient,
/// - zero is `0 / 1`.
///
/// With these rules two rational functions are equal iff they are
/// structurally equal, so `PartialEq` and `Hash` are derived.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds the canonical form of `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;

        // Clear rational denominators jointly, then remove the joint content.
        let lcm = num
            .coeffs()
            .iter()
            .chain(den.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale_up = BigRational::from_integer(lcm);
        let num = num.scale(&scale_up);
        let den = den.scale(&scale_up);
        let content = num
            .coeffs()
            .iter()
            .chain(den.coeffs())
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        let mut down = BigRational::new(BigInt::one(), content);
        if den.leading().is_negative() {
            down = -down;
        }
        Ok(RationalFunction {
            num: num.scale(&down),
            den: den.scale(&down),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_polynomial(Polynomial::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_polynomial(Polynomial::t())
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Self::new(p, Polynomial::one()).expect("nonzero denominator")
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial, if the denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if self.den.is_constant() {
            Some(self.num.scale(&self.den.leading().recip()))
        } else {
            None
        }
    }

    /// The constant value, if this is a constant function.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0) / self.den.leading())
        } else {
            None
        }
    }

    /// Exact value at `x`. A zero of the (reduced) denominator is a pole;
    /// its multiplicity is reported.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, AlgebraError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::Pole {
                at: x.clone(),
                multiplicity: self.den.root_multiplicity(x),
            });
        }
        Ok(self.num.eval(x) / d)
    }

    /// Power-series expansion at 0 through `t^order`.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries, AlgebraError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(AlgebraError::NotExpandableAtOrigin);
        }
        let d0_inv = d0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for k in 1..=n.min(self.den.coeffs().len().saturating_sub(1)) {
                acc -= self.den.coeff(k) * &out[n - k];
            }
            out.push(acc * &d0_inv);
        }
        Ok(TruncatedSeries::new(out, order))
    }

    /// `g(t) = f(1/t)`, canonicalized.
    pub fn substitute_reciprocal(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // f(1/t) = t^(b-a) rev(num) / rev(den), a = deg num, b = deg den
        let a = self.num.degree().unwrap_or(0);
        let b = self.den.degree().unwrap_or(0);
        let (num, den) = if b >= a {
            (self.num.reversed().shift(b - a), self.den.reversed())
        } else {
            (self.num.reversed(), self.den.reversed().shift(a - b))
        };
        Self::new(num, den).expect("reversal of a nonzero polynomial is nonzero")
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZeroPolynomial);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: i32) -> Result<Self, AlgebraError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        Self::new(base.num.pow(e.unsigned_abs()), base.den.pow(e.unsigned_abs()))
    }

    /// Substitutes `t -> c * t^k`.
    pub fn substitute_monomial(&self, c: &BigRational, k: usize) -> Self {
        let sub = |p: &Polynomial| {
            let mut coeffs = vec![BigRational::zero(); p.degree().map_or(0, |d| d * k + 1)];
            let mut cp = BigRational::one();
            for (i, a) in p.coeffs().iter().enumerate() {
                coeffs[i * k] = a * &cp;
                cp *= c;
            }
            Polynomial::new(coeffs)
        };
        Self::new(sub(&self.num), sub(&self.den)).expect("substitution keeps a nonzero denominator")
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

/// Panics on division by the zero function; see [`RationalFunction::checked_div`].
impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_polynomial(p)
    }
}

impl From<BigRational> for RationalFunction {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

/// `num | den`, each as a coefficient list.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.num, self.den)
    }
}

impl FromStr for RationalFunction {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('|') {
            Some((n, d)) => Self::new(n.parse()?, d.parse()?),
            None => Ok(Self::from_polynomial(s.parse()?)),
        }
    }
}
