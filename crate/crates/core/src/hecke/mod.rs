//! Iwahori–Hecke algebras `H(W, q)` with basis `T_w`, realizing the Hecke
//! algebra of a chamber-transitive building action with chamber stabilizer
//! `B` and `μ_B(B g_w B) = q^{ℓ(w)}`.

mod coeff;
mod text;

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::algebra::{BigRational, RationalFunction};
use crate::coxeter::{CoxeterError, CoxeterSystem, GenSet, NormalForm};
use crate::measure::HaarMeasure;

pub use coeff::Coefficient;
pub use text::{format_element, parse_element, parse_elements, parse_matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("elements belong to different Hecke algebras")]
    MixedAlgebras,
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("not idempotent: E·E differs from E")]
    NotIdempotent,
    #[error("parameter q must be at least 2, got {0}")]
    InvalidQ(String),
    #[error("matrix must be square and non-empty, got {entries} entries for n = {n}")]
    BadMatrix { n: usize, entries: usize },
    #[error("matrix dimensions differ: {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("{0} is not invertible in the coefficient ring")]
    NotInvertible(String),
}

/// `Σ c_w T_w` with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement<C> {
    algebra: u64,
    terms: BTreeMap<NormalForm, C>,
}

impl<C: Coefficient> HeckeElement<C> {
    /// Terms in ShortLex order of `w`.
    pub fn terms(&self) -> impl Iterator<Item = (&NormalForm, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &NormalForm) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    fn accumulate(&mut self, w: NormalForm, c: &C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(C::zero);
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }
}

/// `H(W, q)` over the coefficient type `C`.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra<C> {
    sys: CoxeterSystem,
    q: C,
    fingerprint: u64,
}

impl HeckeAlgebra<BigRational> {
    /// The algebra at a numeric residue field size `q ≥ 2`.
    pub fn numeric(sys: &CoxeterSystem, q: u64) -> Result<Self, HeckeError> {
        if q < 2 {
            return Err(HeckeError::InvalidQ(q.to_string()));
        }
        Ok(Self::new(sys, BigRational::from_integer(q.into())))
    }

    /// `ρ̃(E) = Σ τ(E_ii)·μ_base` for an idempotent matrix `E`, where `base`
    /// names the Iwahori subgroup the trace is normalized by.
    pub fn hattori_stallings_rank(&self, e: &HeckeMatrix<BigRational>, base: &str) -> Result<HaarMeasure, HeckeError> {
        if !self.is_idempotent(e)? {
            return Err(HeckeError::NotIdempotent);
        }
        Ok(HaarMeasure::new(self.matrix_trace(e)?, base))
    }
}

impl HeckeAlgebra<RationalFunction> {
    /// The generic algebra with `q` a formal parameter.
    pub fn formal(sys: &CoxeterSystem) -> Self {
        Self::new(sys, RationalFunction::t())
    }
}

impl<C: Coefficient> HeckeAlgebra<C> {
    pub fn new(sys: &CoxeterSystem, q: C) -> Self {
        let mut h = DefaultHasher::new();
        sys.to_text().hash(&mut h);
        q.to_string().hash(&mut h);
        HeckeAlgebra {
            sys: sys.clone(),
            q,
            fingerprint: h.finish(),
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn q(&self) -> &C {
        &self.q
    }

    pub fn zero(&self) -> HeckeElement<C> {
        HeckeElement {
            algebra: self.fingerprint,
            terms: BTreeMap::new(),
        }
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (NormalForm, C)>) -> HeckeElement<C> {
        let mut out = self.zero();
        for (w, c) in terms {
            out.accumulate(w, &c);
        }
        out
    }

    pub fn basis(&self, w: NormalForm) -> HeckeElement<C> {
        self.element([(w, C::one())])
    }

    pub fn unit(&self) -> HeckeElement<C> {
        self.basis(self.sys.identity())
    }

    pub fn generator(&self, s: usize) -> Result<HeckeElement<C>, HeckeError> {
        Ok(self.basis(self.sys.normal_form(&[s])?))
    }

    /// `T_w` for the element represented by a (not necessarily reduced) word.
    pub fn from_word(&self, word: &[usize]) -> Result<HeckeElement<C>, HeckeError> {
        Ok(self.basis(self.sys.normal_form(word)?))
    }

    fn check(&self, a: &HeckeElement<C>) -> Result<(), HeckeError> {
        if a.algebra == self.fingerprint {
            Ok(())
        } else {
            Err(HeckeError::MixedAlgebras)
        }
    }

    pub fn add(&self, a: &HeckeElement<C>, b: &HeckeElement<C>) -> Result<HeckeElement<C>, HeckeError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        for (w, c) in &b.terms {
            out.accumulate(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, a: &HeckeElement<C>, b: &HeckeElement<C>) -> Result<HeckeElement<C>, HeckeError> {
        self.add(a, &self.scale(b, &C::zero().sub(&C::one()))?)
    }

    pub fn scale(&self, a: &HeckeElement<C>, c: &C) -> Result<HeckeElement<C>, HeckeError> {
        self.check(a)?;
        Ok(self.element(a.terms.iter().map(|(w, x)| (w.clone(), x.mul(c)))))
    }

    /// `a·T_s`: `T_w T_s = T_{ws}` if `ℓ(ws) > ℓ(w)`, else
    /// `q·T_{ws} + (q-1)·T_w`.
    fn mul_generator(&self, a: &HeckeElement<C>, s: usize) -> HeckeElement<C> {
        let q_minus_one = self.q.sub(&C::one());
        let mut out = self.zero();
        for (w, c) in &a.terms {
            let ws = self.sys.right_mul(w, s);
            if ws.len() > w.len() {
                out.accumulate(ws, c);
            } else {
                out.accumulate(ws, &c.mul(&self.q));
                out.accumulate(w.clone(), &c.mul(&q_minus_one));
            }
        }
        out
    }

    pub fn mult(&self, a: &HeckeElement<C>, b: &HeckeElement<C>) -> Result<HeckeElement<C>, HeckeError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (v, c) in &b.terms {
            let mut partial = a.clone();
            for &s in v.word() {
                partial = self.mul_generator(&partial, s);
            }
            for (w, x) in partial.terms {
                out.accumulate(w, &x.mul(c));
            }
        }
        Ok(out)
    }

    /// `ε(Σ c_w T_w) = Σ c_w q^{ℓ(w)}`.
    pub fn eps(&self, a: &HeckeElement<C>) -> C {
        a.terms.iter().fold(C::zero(), |acc, (w, c)| acc.add(&c.mul(&self.q.pow(w.len()))))
    }

    /// `τ(a)`, the coefficient of `T_e`.
    pub fn trace(&self, a: &HeckeElement<C>) -> C {
        a.coeff(&self.sys.identity())
    }

    /// `T_w ↦ T_{w⁻¹}`.
    pub fn star(&self, a: &HeckeElement<C>) -> HeckeElement<C> {
        self.element(a.terms.iter().map(|(w, c)| (self.sys.inverse(w), c.clone())))
    }

    /// `e_J = γ_{W_J}(q)^{-1} Σ_{w ∈ W_J} T_w`.
    pub fn standard_idempotent(&self, j: GenSet) -> Result<HeckeElement<C>, HeckeError> {
        let elements = self.sys.parabolic_elements(j)?;
        let gamma = elements.iter().fold(C::zero(), |acc, w| acc.add(&self.q.pow(w.len())));
        let inv = gamma.inverse().ok_or_else(|| HeckeError::NotInvertible(gamma.to_string()))?;
        Ok(self.element(elements.into_iter().map(|w| (w, inv.clone()))))
    }

    pub fn matrix_mult(&self, a: &HeckeMatrix<C>, b: &HeckeMatrix<C>) -> Result<HeckeMatrix<C>, HeckeError> {
        if a.n != b.n {
            return Err(HeckeError::DimensionMismatch(a.n, b.n));
        }
        let n = a.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                let mut acc = self.zero();
                for j in 0..n {
                    acc = self.add(&acc, &self.mult(a.get(i, j), b.get(j, k))?)?;
                }
                entries.push(acc);
            }
        }
        HeckeMatrix::new(n, entries)
    }

    pub fn is_idempotent(&self, e: &HeckeMatrix<C>) -> Result<bool, HeckeError> {
        Ok(&self.matrix_mult(e, e)? == e)
    }

    /// `Σ_i τ(E_ii)`.
    pub fn matrix_trace(&self, e: &HeckeMatrix<C>) -> Result<C, HeckeError> {
        let mut acc = C::zero();
        for i in 0..e.n {
            self.check(e.get(i, i))?;
            acc = acc.add(&self.trace(e.get(i, i)));
        }
        Ok(acc)
    }

    pub fn identity_matrix(&self, n: usize) -> Result<HeckeMatrix<C>, HeckeError> {
        self.diagonal(vec![self.unit(); n])
    }

    pub fn diagonal(&self, diag: Vec<HeckeElement<C>>) -> Result<HeckeMatrix<C>, HeckeError> {
        let n = diag.len();
        let mut entries = vec![self.zero(); n * n];
        for (i, d) in diag.into_iter().enumerate() {
            self.check(&d)?;
            entries[i * n + i] = d;
        }
        HeckeMatrix::new(n, entries)
    }
}

/// A square matrix over `H(W, q)`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeMatrix<C> {
    n: usize,
    entries: Vec<HeckeElement<C>>,
}

impl<C: Coefficient> HeckeMatrix<C> {
    pub fn new(n: usize, entries: Vec<HeckeElement<C>>) -> Result<Self, HeckeError> {
        if n == 0 || entries.len() != n * n {
            return Err(HeckeError::BadMatrix {
                n,
                entries: entries.len(),
            });
        }
        Ok(HeckeMatrix { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &HeckeElement<C> {
        &self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(HeckeElement::is_zero)
    }
}

impl<C: Coefficient> fmt::Display for HeckeElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*T[{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
