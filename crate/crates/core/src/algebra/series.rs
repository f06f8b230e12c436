use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::Polynomial;

/// A power series known through `t^order`.
///
/// Binary operations return a series of order `min(order_a, order_b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
    order: usize,
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        Self::new(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }

    /// Series with integer coefficients, e.g. element counts by length.
    pub fn from_counts<I: IntoIterator<Item = u64>>(counts: I, order: usize) -> Self {
        Self::new(
            counts
                .into_iter()
                .take(order + 1)
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order + 1).cloned().collect(), order.min(self.order))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        Self::new(
            (0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
            order,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        Self::new(
            (0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
            order,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, order)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.order)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{} + O(t^{})", parts.join(" "), self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn order_is_minimum() {
        let a = TruncatedSeries::from_counts([1, 1, 1, 1, 1], 4);
        let b = TruncatedSeries::from_counts([1, 1], 2);
        let c = a.mul(&b);
        assert_eq!(c.order(), 2);
        assert_eq!(c.coeffs(), &[int(1), int(2), int(2)]);
        assert_eq!(a.add(&b).order(), 2);
    }

    #[test]
    fn padding() {
        let s = TruncatedSeries::from_polynomial(&Polynomial::from_ints(&[1, 2]), 3);
        assert_eq!(s.coeffs().len(), 4);
        assert_eq!(s.coeff(3), int(0));
        assert_eq!(s.coeff(10), int(0));
    }
}
