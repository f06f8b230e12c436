use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Dense univariate polynomial over Q in the formal variable `t`.
///
/// `coeffs[i]` is the coefficient of `t^i`. Trailing zeros are always
/// stripped, so the zero polynomial has no coefficients at all and two
/// polynomials are equal iff their coefficient vectors are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// `1 + t + ... + t^m`
    pub fn geometric(m: usize) -> Self {
        Self::new(vec![BigRational::one(); m + 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial (degree "minus infinity").
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// `t^deg * p(1/t)`; the zero polynomial maps to itself.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division over Q: `self = q * divisor + r` with
    /// `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        let Some(dd) = divisor.degree() else {
            return Err(AlgebraError::DivisionByZeroPolynomial);
        };
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::InexactDivision(format!("({self}) / ({divisor})")))
        }
    }

    /// Integer coefficients after clearing denominators, together with the
    /// positive scalar `c` such that `self = c * result` (as rationals).
    fn to_primitive_integer(&self) -> (Vec<BigInt>, BigRational) {
        if self.is_zero() {
            return (Vec::new(), BigRational::one());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = int_content(&ints);
        let prim = ints.into_iter().map(|c| c / &content).collect();
        (prim, BigRational::new(content, lcm))
    }

    /// Primitive integer associate with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let (mut ints, _) = self.to_primitive_integer();
        if ints.last().is_some_and(Signed::is_negative) {
            ints.iter_mut().for_each(|c| *c = -c.clone());
        }
        from_int_vec(ints)
    }

    /// Greatest common divisor, normalized to a primitive integer polynomial
    /// with positive leading coefficient. `gcd(0, 0) = 0`.
    ///
    /// Computed by the primitive pseudo-remainder sequence over Z, which
    /// keeps coefficient growth bounded by the content removal at each step.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, _) = self.to_primitive_integer();
        let (mut b, _) = other.to_primitive_integer();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        if !b.is_empty() && coprime_mod_p(&a, &b) {
            return Polynomial::one();
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            let r = if r.is_empty() {
                r
            } else {
                let c = int_content(&r);
                r.into_iter().map(|x| x / &c).collect()
            };
            a = b;
            b = r;
        }
        from_int_vec(a).primitive_part()
    }

    /// Multiplicity of the rational root `x` (0 if `x` is not a root).
    /// The zero polynomial is reported with multiplicity 0.
    pub fn root_multiplicity(&self, x: &BigRational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let linear = Self::new(vec![-x.clone(), BigRational::one()]);
        let mut p = self.clone();
        let mut m = 0;
        while p.eval(x).is_zero() {
            p = p.div_rem(&linear).expect("nonzero divisor").0;
            m += 1;
        }
        m
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }
}

fn int_content(v: &[BigInt]) -> BigInt {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

fn from_int_vec(v: Vec<BigInt>) -> Polynomial {
    Polynomial::new(v.into_iter().map(BigRational::from_integer).collect())
}

const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, MODULUS - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Sufficient test for `gcd(a, b) = 1` over Q: if `p` does not divide
/// `lc(a)`, the gcd modulo `p` has degree at least that of the true gcd.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    let m = BigInt::from(MODULUS);
    let reduce = |v: &[BigInt]| -> Vec<u64> {
        let mut out: Vec<u64> = v
            .iter()
            .map(|c| {
                let r = c.mod_floor(&m);
                r.try_into().expect("reduced below the modulus")
            })
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    };
    let mut x = reduce(a);
    if x.len() != a.len() {
        return false;
    }
    let mut y = reduce(b);
    while !y.is_empty() {
        let inv = inv_mod(*y.last().expect("non-empty"));
        while x.len() >= y.len() {
            let c = mul_mod(*x.last().expect("non-empty"), inv);
            let shift = x.len() - y.len();
            for (j, &yj) in y.iter().enumerate() {
                x[shift + j] = (x[shift + j] + MODULUS - mul_mod(c, yj)) % MODULUS;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

/// Pseudo-remainder of `a` by `b` over Z: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().cloned().expect("non-empty");
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        // Multiply primitive integer associates; rational arithmetic per
        // coefficient would renormalize at every step.
        let (a, ca) = self.to_primitive_integer();
        let (b, cb) = rhs.to_primitive_integer();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let scale = ca * cb;
        Polynomial::new(out.into_iter().map(|c| BigRational::from_integer(c) * &scale).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Space-separated coefficient list `c0 c1 c2 ...`; the zero polynomial
/// renders as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Polynomial {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split_whitespace()
            .map(super::parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(AlgebraError::Parse {
                what: "polynomial",
                input: s.to_string(),
            });
        }
        Ok(Polynomial::new(coeffs))
    }
}
