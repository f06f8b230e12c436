//! Euler–Poincaré characteristics `χ̃_G ∈ h_G`, computed along five routes:
//! compact groups, orbit data of a proper cocompact action on a contractible
//! complex, graphs of profinite groups, uniform lattices, and buildings
//! (including the closed form for Chevalley groups over local fields).

mod gog;
mod orbits;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::algebra::{AlgebraError, BigRational, Polynomial};
use crate::coxeter::{systems, CoxeterError, CoxeterSystem, FiniteType};
use crate::measure::{HaarMeasure, MeasureError};

pub use gog::{
    check_nonpositive, euler_graph_of_groups, Edge, EdgeInequality, GraphOfGroups, GraphOfGroupsEuler,
    NonpositivityReport, NonpositivityVerdict, Vertex,
};
pub use orbits::{davis_orbit_data, euler_from_orbits, OrbitComplexData, parahoric_name};

/// Base name of the chamber stabilizer `B` in building computations.
pub const CHAMBER_BASE: &str = "B";
/// Base name of the Iwahori subgroup in the Chevalley closed form.
pub const IWAHORI_BASE: &str = "I";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("not unimodular: the cycle {} has index ratio {ratio}", .cycle.join(" -> "))]
    NotUnimodular { cycle: Vec<String>, ratio: BigRational },
    #[error("invalid graph of groups: {0}")]
    InvalidGraph(String),
    #[error("covolume must be positive, got {0}")]
    NonPositiveCovolume(BigRational),
    #[error("unresolvable stabilizer {0}")]
    UnresolvableStabilizer(String),
    #[error("unknown Chevalley type {0}")]
    UnknownType(String),
    #[error("residue field size q must be at least 2, got {0}")]
    InvalidQ(String),
}

/// `χ̃_𝒪 = 1·μ_𝒪` for a compact group.
pub fn euler_compact(base: &str) -> HaarMeasure {
    HaarMeasure::unit(base)
}

/// `χ̃_G = χ(Γ) / μ_𝒪(G/Γ) · μ_𝒪` for a uniform lattice `Γ`.
pub fn euler_from_lattice(chi_gamma: &BigRational, covolume: &BigRational, base: &str) -> Result<HaarMeasure, EulerError> {
    if !covolume.is_positive() {
        return Err(EulerError::NonPositiveCovolume(covolume.clone()));
    }
    Ok(HaarMeasure::new(chi_gamma / covolume, base))
}

/// `χ̃_G = 1/γ̃(q) · μ_B` for a chamber-transitive action on a building of
/// type `(W, S)` with uniform thickness `q + 1`.
pub fn euler_building(sys: &CoxeterSystem, q: u64) -> Result<HaarMeasure, EulerError> {
    check_q(q)?;
    let gamma = sys.growth_series();
    let value = gamma.recip()?.eval(&BigRational::from_integer(q.into()))?;
    Ok(HaarMeasure::new(value, CHAMBER_BASE))
}

pub(crate) fn check_q(q: u64) -> Result<(), EulerError> {
    if q < 2 {
        return Err(EulerError::InvalidQ(q.to_string()));
    }
    Ok(())
}

/// Irreducible crystallographic root system types, as used for Chevalley
/// groups. `B_n` and `C_n` share a Weyl group but have different affine
/// Weyl groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub letter: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(letter: char, rank: usize) -> Result<Self, EulerError> {
        let letter = letter.to_ascii_uppercase();
        let ok = match letter {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(CartanType { letter, rank })
        } else {
            Err(EulerError::UnknownType(format!("{letter}{rank}")))
        }
    }

    pub fn weyl_type(&self) -> FiniteType {
        match self.letter {
            'A' if self.rank == 2 => FiniteType::A(2),
            'A' => FiniteType::A(self.rank),
            'B' | 'C' => FiniteType::B(self.rank),
            'D' => FiniteType::D(self.rank),
            'E' => FiniteType::E(self.rank),
            'F' => FiniteType::F4,
            _ => FiniteType::G2,
        }
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.weyl_type().exponents()
    }

    /// The affine Weyl group `W̃` acting on the Bruhat–Tits building.
    pub fn affine_system(&self) -> CoxeterSystem {
        match (self.letter, self.rank) {
            ('A', n) => systems::affine_a(n),
            ('B', 2) | ('C', _) => systems::affine_c(self.rank),
            ('B', n) => systems::affine_b(n),
            ('D', n) => systems::affine_d(n),
            ('E', n) => systems::affine_e(n),
            ('F', _) => systems::affine_f4(),
            _ => systems::affine_g2(),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// A split simple group of the given type over a local field with residue
/// field of size `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChevalleyDatum {
    pub ty: CartanType,
    pub q: u64,
}

impl ChevalleyDatum {
    pub fn new(ty: CartanType, q: u64) -> Result<Self, EulerError> {
        check_q(q)?;
        Ok(ChevalleyDatum { ty, q })
    }
}

/// `χ̃_G = (-1)^n ∏ (q^{m_i} - 1) / (1 + q + ... + q^{m_i}) · μ_I`.
pub fn euler_chevalley(d: &ChevalleyDatum) -> HaarMeasure {
    let q = BigRational::from_integer(BigInt::from(d.q));
    let mut c = BigRational::one();
    for m in d.ty.exponents() {
        let qm = num_traits::pow(q.clone(), m as usize);
        let num = &qm - BigRational::one();
        let den = Polynomial::geometric(m as usize).eval(&q);
        c = c * num / den;
    }
    if d.ty.rank % 2 == 1 {
        c = -c;
    }
    HaarMeasure::new(c, IWAHORI_BASE)
}
