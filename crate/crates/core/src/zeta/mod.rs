//! Double-coset zeta functions `ζ_{G,𝒪}(s) = Σ_n |R(n)| n^{-s}` for
//! chamber-transitive actions on buildings and on regular trees.
//!
//! Truncated Dirichlet series are built from combinatorial data; values at
//! `s = -1` always come from closed forms in `t = q^{-s}`.

mod iwahori;
mod parabolic;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{big, pow_rational, AlgebraError, BigRational, Polynomial, RationalFunction};
use crate::coxeter::{CoxeterError, CoxeterSystem};
use crate::measure::{HaarMeasure, MeasureError};

pub use iwahori::{zeta_iwahori_functional, FunctionalSample, IwahoriFunctional};
pub use parabolic::{
    level_consistency, parabolic_factorization, pro_p_name, zeta_parabolic, zeta_pro_p, FactorizationCheck,
    LevelConsistency, ParabolicZeta, ParabolicZetaData, ProPRadicalData, ProPZeta,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("residue field size q must be at least 2, got {0}")]
    InvalidQ(u64),
    #[error("tree degree d must be at least 2, got {0}")]
    InvalidDegree(u64),
    #[error("parabolic not compact: {0} is not spherical")]
    NotCompact(String),
    #[error("inconsistent index table: {0}")]
    InconsistentIndex(String),
    #[error("not an affine system: {0}")]
    NotAffine(String),
    #[error("zeta value vanishes, so it has no inverse")]
    ZeroValue,
    #[error("only s = -1 is available in closed form at this level, got s = {0}")]
    UnsupportedEvaluation(i64),
}

pub(crate) fn check_q(q: u64) -> Result<(), ZetaError> {
    if q < 2 {
        return Err(ZetaError::InvalidQ(q));
    }
    Ok(())
}

pub(crate) fn check_degree(d: u64) -> Result<(), ZetaError> {
    if d < 2 {
        return Err(ZetaError::InvalidDegree(d));
    }
    Ok(())
}

/// Coefficients `n ↦ |R(n)|` of a Dirichlet series, complete for `n ≤ bound`.
/// Only nonzero counts are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletSeries {
    bound: BigUint,
    terms: BTreeMap<BigUint, BigUint>,
}

impl DirichletSeries {
    pub fn new(bound: impl Into<BigUint>) -> Self {
        DirichletSeries {
            bound: bound.into(),
            terms: BTreeMap::new(),
        }
    }

    pub fn bound(&self) -> &BigUint {
        &self.bound
    }

    /// Adds `count` to `|R(n)|`; terms beyond the bound are dropped.
    pub fn add(&mut self, n: BigUint, count: impl Into<BigUint>) {
        let count = count.into();
        if n.is_zero() || n > self.bound || count.is_zero() {
            return;
        }
        *self.terms.entry(n).or_insert_with(BigUint::zero) += count;
    }

    /// `|R(n)|`, zero off the support.
    ///
    /// # Panics
    /// If `n` exceeds the truncation bound, where the count is unknown.
    pub fn count(&self, n: &BigUint) -> BigUint {
        assert!(n <= &self.bound, "n = {n} exceeds the truncation bound {}", self.bound);
        self.terms.get(n).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigUint)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The same series, known only up to a smaller bound.
    pub fn truncated(&self, bound: &BigUint) -> Self {
        let bound = bound.min(&self.bound).clone();
        DirichletSeries {
            terms: self.terms.range(..=bound.clone()).map(|(n, c)| (n.clone(), c.clone())).collect(),
            bound,
        }
    }

    /// One line `n count` per nonzero term.
    pub fn to_text(&self) -> String {
        self.terms.iter().map(|(n, c)| format!("{n} {c}\n")).collect()
    }
}

impl fmt::Display for DirichletSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(n, c)| format!("{c}*{n}^-s")).collect();
        write!(f, "{} (n <= {})", parts.join(" + "), self.bound)
    }
}

/// `χ̃ = ζ̃(-1)^{-1}·μ_base`.
pub fn chi_from_zeta(value: &BigRational, base: &str) -> Result<HaarMeasure, ZetaError> {
    if value.is_zero() {
        return Err(ZetaError::ZeroValue);
    }
    Ok(HaarMeasure::new(value.recip(), base))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberZeta {
    pub q: u64,
    pub max_len: usize,
    pub series: DirichletSeries,
    /// `γ̃_{W,S}(t)` with `t = q^{-s}`.
    pub rational: RationalFunction,
}

impl ChamberZeta {
    /// `ζ̃_{G,B}(s) = γ̃(q^{-s})`.
    pub fn value_at(&self, s: i64) -> Result<BigRational, ZetaError> {
        let t = pow_rational(&BigRational::from_integer(self.q.into()), -s);
        Ok(self.rational.eval(&t)?)
    }

    pub fn value_at_minus_one(&self) -> Result<BigRational, ZetaError> {
        self.value_at(-1)
    }
}

/// `ζ_{G,B}(s) = Σ_w μ_B(B g_w B)^{-s}` with `μ_B(B g_w B) = q^{ℓ(w)}`,
/// truncated at `n ≤ q^L`.
pub fn zeta_chamber(sys: &CoxeterSystem, q: u64, max_len: usize) -> Result<ChamberZeta, ZetaError> {
    check_q(q)?;
    let qb = BigUint::from(q);
    let mut series = DirichletSeries::new(num_traits::pow(qb.clone(), max_len + 1) - 1u32);
    for (m, count) in sys.enumerate_by_length(max_len).counts().into_iter().enumerate() {
        series.add(num_traits::pow(qb.clone(), m), count);
    }
    Ok(ChamberZeta {
        q,
        max_len,
        series,
        rational: sys.growth_series(),
    })
}

/// `|R(n)| = #{w : q^{ℓ(w)} = n}` for the chamber subgroup.
pub fn double_coset_counts(sys: &CoxeterSystem, q: u64, n: &BigUint) -> Result<u64, ZetaError> {
    check_q(q)?;
    if n.is_zero() {
        return Ok(0);
    }
    let qb = BigUint::from(q);
    let mut rest = n.clone();
    let mut m = 0usize;
    while (&rest % &qb).is_zero() {
        rest /= &qb;
        m += 1;
    }
    if !rest.is_one() {
        return Ok(0);
    }
    let e = sys.enumerate_by_length(m);
    Ok(e.layers.get(m).map_or(0, |l| l.len() as u64))
}

/// Zeta function of a vertex stabilizer in the automorphism group of the
/// `(d+1)`-regular tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVertexZeta {
    pub d: u64,
    pub series: DirichletSeries,
    pub value_at_minus_one: BigRational,
}

/// Coefficients `|R(1)| = 1`, `|R((d+1)d^{2k-1})| = 1` for `k ≥ 1`.
pub fn zeta_tree_vertex(d: u64, bound: u64) -> Result<TreeVertexZeta, ZetaError> {
    check_degree(d)?;
    let db = BigUint::from(d);
    let mut series = DirichletSeries::new(bound);
    series.add(BigUint::one(), 1u32);
    let mut n = BigUint::from(d + 1) * &db;
    while n <= *series.bound() {
        series.add(n.clone(), 1u32);
        n *= &db * &db;
    }
    Ok(TreeVertexZeta {
        d,
        series,
        value_at_minus_one: tree_vertex_value(d, -1)?,
    })
}

/// `ζ̃(s) = 1 + (1+d)^{-s} / (d^s - d^{-s})` at an integer `s ≠ 0`.
pub fn tree_vertex_value(d: u64, s: i64) -> Result<BigRational, ZetaError> {
    check_degree(d)?;
    let dr = BigRational::from_integer(d.into());
    let den = pow_rational(&dr, s) - pow_rational(&dr, -s);
    if den.is_zero() {
        return Err(AlgebraError::Pole {
            at: BigRational::zero(),
            multiplicity: 1,
        }
        .into());
    }
    Ok(BigRational::one() + pow_rational(&(dr + BigRational::one()), -s) / den)
}

/// Zeta function of an edge stabilizer in the automorphism group of the
/// `(d+1)`-regular tree (the Iwahori subgroup for the tree as a building).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdgeZeta {
    pub d: u64,
    pub series: DirichletSeries,
    /// `(1+t)/(1-t)` with `t = d^{-s}`.
    pub rational: RationalFunction,
    pub value_at_minus_one: BigRational,
}

/// Coefficients `|R(1)| = 1`, `|R(d^k)| = 2` for `k ≥ 1`.
pub fn zeta_tree_edge(d: u64, bound: u64) -> Result<TreeEdgeZeta, ZetaError> {
    check_degree(d)?;
    let db = BigUint::from(d);
    let mut series = DirichletSeries::new(bound);
    series.add(BigUint::one(), 1u32);
    let mut n = db.clone();
    while n <= *series.bound() {
        series.add(n.clone(), 2u32);
        n *= &db;
    }
    let rational = RationalFunction::new(Polynomial::from_ints(&[1, 1]), Polynomial::from_ints(&[1, -1]))?;
    let value = rational.eval(&big(&BigInt::from(d)))?;
    Ok(TreeEdgeZeta {
        d,
        series,
        rational,
        value_at_minus_one: value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};
    use crate::coxeter::systems;

    fn counts(s: &DirichletSeries) -> Vec<(u64, u64)> {
        s.terms()
            .map(|(n, c)| (n.try_into().unwrap(), c.try_into().unwrap()))
            .collect()
    }

    #[test]
    fn tree_edge_coefficients() {
        let z = zeta_tree_edge(2, 32).unwrap();
        assert_eq!(counts(&z.series), vec![(1, 1), (2, 2), (4, 2), (8, 2), (16, 2), (32, 2)]);
        assert_eq!(z.value_at_minus_one, int(-3));
        let z = zeta_tree_edge(3, 100).unwrap();
        assert_eq!(counts(&z.series), vec![(1, 1), (3, 2), (9, 2), (27, 2), (81, 2)]);
        assert_eq!(z.value_at_minus_one, int(-2));
    }

    #[test]
    fn tree_vertex_coefficients() {
        let z = zeta_tree_vertex(3, 100).unwrap();
        assert_eq!(counts(&z.series), vec![(1, 1), (12, 1)]);
        assert_eq!(z.value_at_minus_one, ratio(-1, 2));
        let z = zeta_tree_vertex(2, 100).unwrap();
        assert_eq!(counts(&z.series), vec![(1, 1), (6, 1), (24, 1), (96, 1)]);
        assert!(tree_vertex_value(3, 0).is_err());
        assert!(zeta_tree_vertex(1, 10).is_err());
    }

    #[test]
    fn tree_vertex_value_matches_partial_sums() {
        // at s = 2 the series converges; compare against a long partial sum
        let d = 3u64;
        let v = tree_vertex_value(d, 2).unwrap();
        let mut partial = int(1);
        let mut n = BigRational::from_integer(((d + 1) * d).into());
        let d2 = int((d * d) as i64);
        for _ in 0..30 {
            partial += (&n * &n).recip();
            n *= &d2;
        }
        let diff = &v - &partial;
        assert!(diff >= int(0) && diff < ratio(1, 1_000_000_000));
    }

    #[test]
    fn tree_edge_is_chamber_zeta_of_affine_a1() {
        for d in [2u64, 3, 5] {
            let chamber = zeta_chamber(&systems::affine_a1(), d, 6).unwrap();
            let bound = chamber.series.bound().clone();
            let tree = zeta_tree_edge(d, bound.clone().try_into().unwrap()).unwrap();
            assert_eq!(tree.series, chamber.series);
            assert_eq!(tree.rational, chamber.rational);
            assert_eq!(tree.value_at_minus_one, chamber.value_at_minus_one().unwrap());
        }
    }

    #[test]
    fn rank_one_chamber() {
        let z = zeta_chamber(&systems::a(1), 5, 4).unwrap();
        assert_eq!(counts(&z.series), vec![(1, 1), (5, 1)]);
        assert_eq!(z.rational, RationalFunction::from_polynomial(Polynomial::from_ints(&[1, 1])));
        assert!(zeta_chamber(&systems::a(1), 1, 4).is_err());
    }

    #[test]
    fn double_cosets() {
        let sys = systems::affine_a1();
        assert_eq!(double_coset_counts(&sys, 2, &BigUint::from(8u32)).unwrap(), 2);
        assert_eq!(double_coset_counts(&sys, 2, &BigUint::from(1u32)).unwrap(), 1);
        assert_eq!(double_coset_counts(&sys, 2, &BigUint::from(6u32)).unwrap(), 0);
        assert_eq!(double_coset_counts(&systems::a(2), 3, &BigUint::from(27u32)).unwrap(), 1);
        assert_eq!(double_coset_counts(&systems::a(2), 3, &BigUint::from(81u32)).unwrap(), 0);
    }

    #[test]
    fn series_bookkeeping() {
        let mut s = DirichletSeries::new(10u32);
        s.add(BigUint::from(3u32), 2u32);
        s.add(BigUint::from(3u32), 1u32);
        s.add(BigUint::from(11u32), 1u32);
        assert_eq!(s.count(&BigUint::from(3u32)), BigUint::from(3u32));
        assert_eq!(s.len(), 1);
        assert_eq!(s.to_text(), "3 3\n");
        assert!(s.truncated(&BigUint::from(2u32)).is_empty());
        assert_eq!(chi_from_zeta(&int(-2), "E").unwrap().coefficient, ratio(-1, 2));
        assert!(chi_from_zeta(&int(0), "E").is_err());
    }
}
