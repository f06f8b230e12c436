//! Growth series `γ(t) = Σ_w t^{ℓ(w)}` as rational functions.
//!
//! For infinite `W` the series is obtained from the alternating sum over
//! spherical subsets
//!
//! ```text
//! 1 / γ(t) = Σ_{T spherical} (-1)^{|T|} t^{N_T} / γ_T(t)
//! ```
//!
//! where `N_T` is the length of the longest element of `W_T`. All `γ_T` are
//! products of cyclotomic polynomials, so the sum is formed over their least
//! common multiple without intermediate gcds.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::{BigRational, Polynomial, RationalFunction, TruncatedSeries};

use super::{CoxeterSystem, GenSet, NormalForm};

/// `Φ_n(t)`, computed by dividing `t^n - 1` by the lower cyclotomic factors.
fn cyclotomic(n: usize, table: &mut BTreeMap<usize, Polynomial>) -> Polynomial {
    if let Some(p) = table.get(&n) {
        return p.clone();
    }
    let mut p = &Polynomial::monomial(BigRational::one(), n) - &Polynomial::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi = cyclotomic(d, table);
        p = p.exact_div(&phi).expect("cyclotomic factor divides t^n - 1");
    }
    table.insert(n, p.clone());
    p
}

/// Multiplicities of `Φ_d` in `∏ (1 + t + ... + t^{m_i})`.
fn cyclotomic_exponents(exponents: &[u32]) -> BTreeMap<usize, u32> {
    let mut out = BTreeMap::new();
    for &m in exponents {
        let n = m as usize + 1;
        for d in (2..=n).filter(|d| n.is_multiple_of(*d)) {
            *out.entry(d).or_insert(0) += 1;
        }
    }
    out
}

/// Truncated length generating function of a finite set of elements.
pub fn length_series<'a, I>(elements: I, order: usize) -> TruncatedSeries
where
    I: IntoIterator<Item = &'a NormalForm>,
{
    let mut counts = vec![0u64; order + 1];
    for w in elements {
        if w.len() <= order {
            counts[w.len()] += 1;
        }
    }
    TruncatedSeries::from_counts(counts, order)
}

impl CoxeterSystem {
    /// All `T ⊆ S` generating a finite subgroup, in increasing bitmask order.
    pub fn spherical_subsets(&self) -> Vec<GenSet> {
        // Subsets of spherical sets are spherical: extend only spherical sets.
        let mut out = vec![GenSet::EMPTY];
        let mut frontier = vec![GenSet::EMPTY];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for t in &frontier {
                let top = t.iter().last().map_or(0, |s| s + 1);
                for s in top..self.rank() {
                    let u = t.with(s);
                    if self.is_spherical(u) {
                        next.push(u);
                    }
                }
            }
            out.extend(next.iter().copied());
            frontier = next;
        }
        out.sort_unstable_by_key(|g| g.bits());
        out
    }

    /// The growth series as a canonical rational function.
    pub fn growth_series(&self) -> RationalFunction {
        if let Some(d) = self.classify_finite() {
            return RationalFunction::from_polynomial(d.growth_polynomial());
        }
        let mut table = BTreeMap::new();
        // Terms depend on T only through the exponents of W_T and |T|.
        let mut grouped: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for t in self.spherical_subsets() {
            let exps = self.classify_subset(t).expect("spherical").exponents;
            *grouped.entry(exps).or_insert(0) += if t.len() % 2 == 0 { 1 } else { -1 };
        }
        let factored: Vec<(BTreeMap<usize, u32>, u32, i64)> = grouped
            .iter()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (cyclotomic_exponents(e), e.iter().sum(), c))
            .collect();
        let mut lcm_exp: BTreeMap<usize, u32> = BTreeMap::new();
        for (f, _, _) in &factored {
            for (&d, &k) in f {
                let e = lcm_exp.entry(d).or_insert(0);
                *e = (*e).max(k);
            }
        }
        let power = |exps: &BTreeMap<usize, u32>, table: &mut BTreeMap<usize, Polynomial>| {
            exps.iter()
                .fold(Polynomial::one(), |acc, (&d, &k)| &acc * &cyclotomic(d, table).pow(k))
        };
        let mut sum = Polynomial::zero();
        for (f, n_t, c) in &factored {
            let cofactor: BTreeMap<usize, u32> = lcm_exp
                .iter()
                .map(|(&d, &k)| (d, k - f.get(&d).copied().unwrap_or(0)))
                .filter(|&(_, k)| k > 0)
                .collect();
            let term = power(&cofactor, &mut table)
                .shift(*n_t as usize)
                .scale(&BigRational::from_integer((*c).into()));
            sum = &sum + &term;
        }
        // Cancel common cyclotomic factors so the final reduction is coprime.
        for (&d, k) in lcm_exp.iter_mut() {
            let phi = cyclotomic(d, &mut table);
            while *k > 0 {
                match sum.div_rem(&phi).expect("nonzero divisor") {
                    (q, r) if r.is_zero() => {
                        sum = q;
                        *k -= 1;
                    }
                    _ => break,
                }
            }
        }
        let lcm = power(&lcm_exp, &mut table);
        RationalFunction::new(lcm, sum).expect("1/γ is a nonzero rational function")
    }

    /// `Σ_{ℓ(w) <= order} t^{ℓ(w)}` by enumeration.
    pub fn growth_truncated(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_counts(self.enumerate_by_length(order).counts(), order)
    }

    /// Truncated growth series of the parabolic subgroup `W_J`.
    pub fn growth_truncated_in(&self, subset: GenSet, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_counts(self.enumerate_in(subset, order).counts(), order)
    }
}
