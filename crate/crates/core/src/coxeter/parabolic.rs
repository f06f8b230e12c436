//! Minimal double-coset representatives `^J W^K`, the sets
//! `Q(x) = K ∩ x⁻¹Jx` and the decomposition `w = y x z`.

use std::collections::BTreeMap;

use super::{CoxeterError, CoxeterSystem, GenSet, NormalForm};

/// `w = y·x·z` with `y ∈ W_J`, `x ∈ ^JW^K`, `z ∈ ^{Q(x)}W_K` and
/// `ℓ(w) = ℓ(y) + ℓ(x) + ℓ(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub y: NormalForm,
    pub x: NormalForm,
    pub z: NormalForm,
}

impl CoxeterSystem {
    /// `x ∈ ^JW^K`: no left descent in `J` and no right descent in `K`.
    pub fn is_min_double_coset_rep(&self, j: GenSet, k: GenSet, x: &NormalForm) -> bool {
        self.left_descents(x).intersection(j).is_empty() && self.right_descents(x).intersection(k).is_empty()
    }

    /// All of `^JW^K` up to length `max_len`, in ShortLex order.
    pub fn min_double_coset_reps(&self, j: GenSet, k: GenSet, max_len: usize) -> Vec<NormalForm> {
        self.enumerate_by_length(max_len)
            .elements()
            .filter(|x| self.is_min_double_coset_rep(j, k, x))
            .cloned()
            .collect()
    }

    /// `K ∩ x⁻¹Jx` for `x ∈ ^JW^K`: the `r ∈ K` with `x r x⁻¹ ∈ J`.
    pub fn cross_section(&self, j: GenSet, k: GenSet, x: &NormalForm) -> Result<GenSet, CoxeterError> {
        if !self.is_min_double_coset_rep(j, k, x) {
            return Err(CoxeterError::NotMinimal(format!("{x} is not in ^{j}W^{k}")));
        }
        // x r x⁻¹ = s  iff  x r = s x; both sides have length ℓ(x) + 1, so
        // s must be a left descent of x r with s·(x r) = x.
        Ok(k.iter()
            .filter(|&r| {
                let xr = self.right_mul(x, r);
                self.left_descents(&xr)
                    .intersection(j)
                    .iter()
                    .any(|s| &self.left_mul(s, &xr) == x)
            })
            .collect())
    }

    /// `Q(x) = J ∩ x⁻¹Jx` for `x ∈ ^JW^J`.
    pub fn cross_section_q(&self, j: GenSet, x: &NormalForm) -> Result<GenSet, CoxeterError> {
        self.cross_section(j, j, x)
    }

    /// Strips left `J`-descents, then right `K`-descents.
    pub fn parabolic_decompose(&self, j: GenSet, k: GenSet, w: &NormalForm) -> Decomposition {
        let mut rest = w.clone();
        let mut y_word = Vec::new();
        while let Some(s) = self.left_descents(&rest).intersection(j).iter().next() {
            rest = self.left_mul(s, &rest);
            y_word.push(s);
        }
        let mut z_rev = Vec::new();
        while let Some(s) = self.right_descents(&rest).intersection(k).iter().next() {
            rest = self.right_mul(&rest, s);
            z_rev.push(s);
        }
        let y = y_word.iter().fold(self.identity(), |acc, &s| self.right_mul(&acc, s));
        let z = z_rev.iter().rev().fold(self.identity(), |acc, &s| self.right_mul(&acc, s));
        Decomposition { y, x: rest, z }
    }

    /// `^QW_J`: elements of the finite group `W_J` that are minimal in
    /// their left `W_Q`-coset.
    pub fn min_left_coset_reps_in(&self, q: GenSet, j: GenSet) -> Result<Vec<NormalForm>, CoxeterError> {
        Ok(self
            .parabolic_elements(j)?
            .into_iter()
            .filter(|z| self.left_descents(z).intersection(q).is_empty())
            .collect())
    }

    /// `^JW^J` up to length `max_len`, partitioned by `Q(x)`; the sets
    /// `p_{Q,J}` truncated at `max_len`.
    pub fn p_classes(&self, j: GenSet, max_len: usize) -> BTreeMap<GenSet, Vec<NormalForm>> {
        let mut out: BTreeMap<GenSet, Vec<NormalForm>> = BTreeMap::new();
        for x in self.min_double_coset_reps(j, j, max_len) {
            let q = self.cross_section_q(j, &x).expect("x is minimal");
            out.entry(q).or_default().push(x);
        }
        out
    }
}
