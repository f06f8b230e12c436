//! The Iwahori zeta function of an affine building and its functional
//! equation under `s ↦ -s`, i.e. `t ↦ 1/t`.

use num_traits::One;

use crate::algebra::{ratio, BigRational, Polynomial, RationalFunction};
use crate::coxeter::{CoxeterSystem, FiniteType, GenSet};

use super::{check_q, ZetaError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalSample {
    pub t: BigRational,
    /// `f(1/t)`
    pub lhs: BigRational,
    /// `(-1)^n f(t)`
    pub rhs: BigRational,
}

impl FunctionalSample {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IwahoriFunctional {
    /// Generators of the spherical part `(W, S)`.
    pub spherical: GenSet,
    pub spherical_type: String,
    /// Rank of the spherical part.
    pub n: usize,
    /// `f(t) = γ_{W,S}(t) ∏ 1/(1 - t^{d_i - 1})`.
    pub zeta: RationalFunction,
    /// `γ̃` of the affine system itself.
    pub affine_growth: RationalFunction,
    /// `f(1/t)`.
    pub reciprocal: RationalFunction,
    pub samples: Vec<FunctionalSample>,
}

impl IwahoriFunctional {
    pub fn sign(&self) -> i32 {
        if self.n.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `f` agrees with the growth series of the affine system.
    pub fn bott_holds(&self) -> bool {
        self.zeta == self.affine_growth
    }

    /// `f(1/t) = (-1)^n f(t)` as rational functions.
    pub fn functional_holds(&self) -> bool {
        let rhs = if self.sign() == 1 { self.zeta.clone() } else { -&self.zeta };
        self.reciprocal == rhs
    }

    pub fn samples_hold(&self) -> bool {
        self.samples.iter().all(FunctionalSample::holds)
    }
}

/// Picks the spherical part as a maximal spherical `S \ {s}` of largest order,
/// builds `f` and checks it at `t ∈ {1/2, 1/3, 2, 1/q, q}`.
pub fn zeta_iwahori_functional(sys: &CoxeterSystem, q: u64) -> Result<IwahoriFunctional, ZetaError> {
    check_q(q)?;
    let all = sys.all_generators();
    if sys.rank() < 2 {
        return Err(ZetaError::NotAffine(format!("rank {} leaves no spherical part", sys.rank())));
    }
    if sys.is_spherical(all) {
        return Err(ZetaError::NotAffine("the group is finite".into()));
    }
    let candidate = (0..sys.rank())
        .filter_map(|s| sys.classify_subset(all.without(s)).map(|d| (all.without(s), d)))
        .max_by_key(|(g, d)| (d.order(), std::cmp::Reverse(g.bits())));
    let Some((spherical, desc)) = candidate else {
        return Err(ZetaError::NotAffine("no maximal proper subset is spherical".into()));
    };
    let crystallographic = desc.components.iter().all(|c| {
        !matches!(c.ty, FiniteType::H(_)) && !matches!(c.ty, FiniteType::I2(m) if ![3, 4, 6].contains(&m))
    });
    if !crystallographic {
        return Err(ZetaError::NotAffine(format!("spherical part {} is not a Weyl group", desc.type_name())));
    }
    let mut den = Polynomial::one();
    for &m in &desc.exponents {
        den = den * (Polynomial::one() - Polynomial::monomial(BigRational::one(), m as usize));
    }
    let zeta = RationalFunction::new(desc.growth_polynomial(), den)?;
    let reciprocal = zeta.substitute_reciprocal();
    let n = desc.exponents.len();
    let qr = BigRational::from_integer(q.into());
    let points = [ratio(1, 2), ratio(1, 3), ratio(2, 1), qr.recip(), qr];
    let sign = if n % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let mut samples = Vec::new();
    for t in points {
        let lhs = zeta.eval(&t.recip())?;
        let rhs = &sign * zeta.eval(&t)?;
        samples.push(FunctionalSample { t, lhs, rhs });
    }
    Ok(IwahoriFunctional {
        spherical,
        spherical_type: desc.type_name(),
        n,
        zeta,
        affine_growth: sys.growth_series(),
        reciprocal,
        samples,
    })
}
