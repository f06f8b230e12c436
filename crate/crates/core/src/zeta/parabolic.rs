//! Parahoric levels `P_J` and their pro-p radicals `P¹_J`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::algebra::{big, BigRational, TruncatedSeries};
use crate::coxeter::{length_series, CoxeterSystem, GenSet, NormalForm};
use crate::euler::{davis_orbit_data, euler_from_orbits, parahoric_name, CHAMBER_BASE};
use crate::measure::{HaarMeasure, SubgroupContext};

use super::{check_q, chi_from_zeta, DirichletSeries, ZetaError};

/// Name of the pro-p radical `P¹_J`: `B^1` for `J = ∅`, else e.g. `P{1,2}^1`.
pub fn pro_p_name(j: GenSet) -> String {
    format!("{}^1", parahoric_name(j))
}

fn q_power(q: u64, m: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), m)
}

/// Enumerated `^JW^J` with `Q(x)`, and the indices `|P_J : P_Q|` for `Q ⊆ J`.
#[derive(Debug, Clone)]
pub struct ParabolicZetaData {
    pub sys: CoxeterSystem,
    pub q: u64,
    pub j: GenSet,
    pub max_len: usize,
    pub reps: Vec<(NormalForm, GenSet)>,
    pub index: BTreeMap<GenSet, BigInt>,
}

impl ParabolicZetaData {
    pub fn new(sys: &CoxeterSystem, q: u64, j: GenSet, max_len: usize) -> Result<Self, ZetaError> {
        check_q(q)?;
        if !j.is_subset(sys.all_generators()) || !sys.is_spherical(j) {
            return Err(ZetaError::NotCompact(parahoric_name(j)));
        }
        let gamma_j = sys.growth_polynomial_of(j)?;
        let qr = BigRational::from_integer(q.into());
        let mut index = BTreeMap::new();
        for sub in j.subsets() {
            let quotient = gamma_j.exact_div(&sys.growth_polynomial_of(sub)?)?;
            let v = quotient.eval(&qr);
            if !v.is_integer() || !v.is_positive() {
                return Err(ZetaError::InconsistentIndex(format!(
                    "|{}:{}| = {v} is not a positive integer",
                    parahoric_name(j),
                    parahoric_name(sub)
                )));
            }
            index.insert(sub, v.to_integer());
        }
        let mut reps = Vec::new();
        for (qx, xs) in sys.p_classes(j, max_len) {
            reps.extend(xs.into_iter().map(|x| (x, qx)));
        }
        reps.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        Ok(ParabolicZetaData {
            sys: sys.clone(),
            q,
            j,
            max_len,
            reps,
            index,
        })
    }

    /// `|P_J : B| = γ_{W_J}(q)`.
    pub fn chamber_index(&self) -> &BigInt {
        &self.index[&GenSet::EMPTY]
    }

    /// `μ_{P_J}(P_J g_x P_J) = |P_J : P_{Q(x)}|·q^{ℓ(x)}`.
    pub fn measure(&self, x: &NormalForm, qx: GenSet) -> BigInt {
        &self.index[&qx] * q_power(self.q, x.len())
    }

    /// Every measure is at least `q^{ℓ(x)}`, so all terms below `q^{L+1}`
    /// come from representatives of length at most `L`.
    fn series_bound(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.q), self.max_len + 1) - 1u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicZeta {
    pub series: DirichletSeries,
    /// `ζ̃_{G,P_J}(-1) = γ̃_W(q) / γ_{W_J}(q)`.
    pub value_at_minus_one: BigRational,
}

pub fn zeta_parabolic(data: &ParabolicZetaData) -> Result<ParabolicZeta, ZetaError> {
    let mut series = DirichletSeries::new(data.series_bound());
    for (x, qx) in &data.reps {
        let n = data.measure(x, *qx);
        series.add(n.to_biguint().expect("positive"), 1u32);
    }
    let qr = BigRational::from_integer(data.q.into());
    let value = data.sys.growth_series().eval(&qr)? / big(data.chamber_index());
    Ok(ParabolicZeta {
        series,
        value_at_minus_one: value,
    })
}

/// [`ParabolicZetaData`] together with the orders `|P_Q : P¹_Q|` of the
/// reductive quotients for `Q ⊆ J`.
#[derive(Debug, Clone)]
pub struct ProPRadicalData {
    pub parabolic: ParabolicZetaData,
    pub ssrank: usize,
    pub reductive: BTreeMap<GenSet, BigInt>,
}

impl ProPRadicalData {
    /// Uses `|P_Q : P¹_Q| = q^{N_Q}·(q-1)^n·γ_{W_Q}(q)`, the order of the
    /// finite reductive quotient, with `N_Q` the number of positive roots of
    /// `W_Q` and `n` the semisimple rank.
    pub fn new(parabolic: ParabolicZetaData, ssrank: usize) -> Result<Self, ZetaError> {
        let sys = &parabolic.sys;
        let q = parabolic.q;
        let qr = BigRational::from_integer(q.into());
        let mut reductive = BTreeMap::new();
        for sub in parabolic.j.subsets() {
            let gamma = sys.growth_polynomial_of(sub)?;
            let n_q = gamma.degree().unwrap_or(0);
            let order = q_power(q, n_q) * num_traits::pow(BigInt::from(q - 1), ssrank) * gamma.eval(&qr).to_integer();
            reductive.insert(sub, order);
        }
        Self::with_orders(parabolic, ssrank, reductive)
    }

    /// Validates a supplied table: every `|P¹_Q : P¹_J|` must be a positive
    /// power of `q`.
    pub fn with_orders(
        parabolic: ParabolicZetaData,
        ssrank: usize,
        reductive: BTreeMap<GenSet, BigInt>,
    ) -> Result<Self, ZetaError> {
        for sub in parabolic.j.subsets() {
            match reductive.get(&sub) {
                Some(v) if v.is_positive() => {}
                _ => {
                    return Err(ZetaError::InconsistentIndex(format!(
                        "missing or non-positive |{}:{}|",
                        parahoric_name(sub),
                        pro_p_name(sub)
                    )))
                }
            }
        }
        let data = ProPRadicalData {
            parabolic,
            ssrank,
            reductive,
        };
        let q = BigInt::from(data.parabolic.q);
        for sub in data.parabolic.j.subsets() {
            let r = data.radical_index(sub);
            let bad = || {
                ZetaError::InconsistentIndex(format!(
                    "|{}:{}| = {r} is not a power of q",
                    pro_p_name(sub),
                    pro_p_name(data.parabolic.j)
                ))
            };
            if !r.is_integer() {
                return Err(bad());
            }
            let mut n = r.to_integer();
            while (&n % &q).is_zero() {
                n /= &q;
            }
            if !n.is_one() {
                return Err(bad());
            }
        }
        Ok(data)
    }

    /// `|P_J : P¹_Q| = |P_J : P_Q|·|P_Q : P¹_Q|`.
    pub fn parahoric_to_radical(&self, sub: GenSet) -> BigInt {
        &self.parabolic.index[&sub] * &self.reductive[&sub]
    }

    /// `|P_J : P¹_J|`.
    pub fn radical_order(&self) -> BigInt {
        self.reductive[&self.parabolic.j].clone()
    }

    /// `|P¹_Q : P¹_J| = |P_J : P¹_J| / |P_J : P¹_Q|`.
    pub fn radical_index(&self, sub: GenSet) -> BigRational {
        BigRational::new(self.radical_order(), self.parahoric_to_radical(sub))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProPZeta {
    pub series: DirichletSeries,
    /// `ζ̃_{G,P¹_J}(-1) = |P_J : P¹_J|·ζ̃_{G,P_J}(-1)`.
    pub value_at_minus_one: BigRational,
}

/// Each `P_J g_x P_J` splits into `|P_J:P_{Q(x)}|·|P_J:P¹_{Q(x)}|` double
/// cosets of `P¹_J`, each of measure `|P¹_{Q(x)} : P¹_J|·q^{ℓ(x)}`.
pub fn zeta_pro_p(data: &ProPRadicalData) -> Result<ProPZeta, ZetaError> {
    let par = &data.parabolic;
    let mut series = DirichletSeries::new(par.series_bound());
    for (x, qx) in &par.reps {
        let mult = &par.index[qx] * data.parahoric_to_radical(*qx);
        let n = data.radical_index(*qx).to_integer() * q_power(par.q, x.len());
        series.add(n.to_biguint().expect("positive"), mult.to_biguint().expect("positive"));
    }
    let value = big(&data.radical_order()) * zeta_parabolic(par)?.value_at_minus_one;
    Ok(ProPZeta {
        series,
        value_at_minus_one: value,
    })
}

/// `χ̃_G` computed at the chamber, parahoric and pro-p levels and from the
/// Davis orbit data, in one commensurability context.
#[derive(Debug, Clone)]
pub struct LevelConsistency {
    pub context: SubgroupContext,
    pub chamber: HaarMeasure,
    pub parabolic: HaarMeasure,
    pub pro_p: HaarMeasure,
    pub orbits: HaarMeasure,
}

impl LevelConsistency {
    /// All four agree as elements of `h_G`.
    pub fn consistent(&self) -> bool {
        [&self.parabolic, &self.pro_p, &self.orbits]
            .iter()
            .all(|m| self.context.equal(&self.chamber, m).unwrap_or(false))
    }

    /// Every level rebased to `μ_B`.
    pub fn in_chamber_base(&self) -> Result<Vec<HaarMeasure>, ZetaError> {
        [&self.chamber, &self.parabolic, &self.pro_p, &self.orbits]
            .iter()
            .map(|m| Ok(self.context.rebase(m, CHAMBER_BASE)?))
            .collect()
    }
}

pub fn level_consistency(data: &ProPRadicalData) -> Result<LevelConsistency, ZetaError> {
    let par = &data.parabolic;
    let j = par.j;
    let (orbit_data, mut ctx) =
        davis_orbit_data(&par.sys, par.q).map_err(|e| ZetaError::InconsistentIndex(e.to_string()))?;
    let pj = parahoric_name(j);
    let p1 = pro_p_name(j);
    if !j.is_empty() {
        ctx.declare_index(&pj, CHAMBER_BASE, par.chamber_index().clone(), 1)?;
    }
    ctx.declare_index(&pj, &p1, data.radical_order(), 1)?;
    let parabolic_value = zeta_parabolic(par)?.value_at_minus_one;
    let pro_p_value = zeta_pro_p(data)?.value_at_minus_one;
    let chamber_value = par.sys.growth_series().eval(&BigRational::from_integer(par.q.into()))?;
    let orbits =
        euler_from_orbits(&orbit_data, &ctx, CHAMBER_BASE).map_err(|e| ZetaError::InconsistentIndex(e.to_string()))?;
    Ok(LevelConsistency {
        chamber: chi_from_zeta(&chamber_value, CHAMBER_BASE)?,
        parabolic: chi_from_zeta(&parabolic_value, &pj)?,
        pro_p: chi_from_zeta(&pro_p_value, &p1)?,
        orbits,
        context: ctx,
    })
}

/// Truncated check of `γ_W = γ_{W_J}·Σ_Q γ_{^QW_J}·γ_{p_{Q,J}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCheck {
    pub j: GenSet,
    pub order: usize,
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
}

impl FactorizationCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn parabolic_factorization(sys: &CoxeterSystem, j: GenSet, order: usize) -> Result<FactorizationCheck, ZetaError> {
    if !sys.is_spherical(j) {
        return Err(ZetaError::NotCompact(parahoric_name(j)));
    }
    let lhs = TruncatedSeries::from_counts(sys.enumerate_by_length(order).counts(), order);
    let mut sum = TruncatedSeries::zero(order);
    for (qx, xs) in sys.p_classes(j, order) {
        let cosets = length_series(&sys.min_left_coset_reps_in(qx, j)?, order);
        sum = sum.add(&cosets.mul(&length_series(&xs, order)));
    }
    let gamma_j = TruncatedSeries::from_polynomial(&sys.growth_polynomial_of(j)?, order);
    Ok(FactorizationCheck {
        j,
        order,
        lhs,
        rhs: gamma_j.mul(&sum),
    })
}
