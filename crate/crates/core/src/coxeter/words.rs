//! The word problem, solved by Tits' braid-move criterion.
//!
//! A word is reduced iff no sequence of braid moves produces two equal
//! adjacent letters, and two reduced words represent the same element iff
//! they are connected by braid moves. Every element is stored as the
//! ShortLex-least word of its braid orbit. For each element the orbit is
//! explored once; from the orbit we read off both descent sets and the
//! normal forms of `ws` and `sw` for every descent `s`. Products that go up
//! in length are normalized by exploring the orbit of `nf(w) s`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use super::{Bond, CoxeterError, CoxeterSystem, GenSet};

/// The ShortLex-least reduced word of a group element. Equality of normal
/// forms is equality in `W`; ordering is ShortLex.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm(Vec<usize>);

impl NormalForm {
    pub fn word(&self) -> &[usize] {
        &self.0
    }

    /// `ℓ(w)`
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Generators occurring in the word (the support of the element).
    pub fn support(&self) -> GenSet {
        self.0.iter().copied().collect()
    }
}

impl Ord for NormalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `e`, or the word with 1-based generator names, e.g. `s2s1`.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for s in &self.0 {
            write!(f, "s{}", s + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug)]
pub(crate) struct ElementInfo {
    right_desc: GenSet,
    left_desc: GenSet,
    /// `(s, nf(ws))` for every right descent `s`.
    right_lower: Vec<(usize, NormalForm)>,
    /// `(s, nf(sw))` for every left descent `s`.
    left_lower: Vec<(usize, NormalForm)>,
}

#[derive(Default)]
pub(crate) struct Cache {
    info: HashMap<NormalForm, Arc<ElementInfo>>,
    right_up: HashMap<(NormalForm, usize), NormalForm>,
    left_up: HashMap<(NormalForm, usize), NormalForm>,
}

/// Elements of `W` grouped by length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub layers: Vec<Vec<NormalForm>>,
}

impl Enumeration {
    pub fn max_length(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    pub fn counts(&self) -> Vec<u64> {
        self.layers.iter().map(|l| l.len() as u64).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = &NormalForm> {
        self.layers.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when some layer came out empty, i.e. the whole (finite) group
    /// was enumerated.
    pub fn is_exhaustive(&self) -> bool {
        self.layers.last().is_some_and(Vec::is_empty)
    }
}

impl CoxeterSystem {
    pub fn identity(&self) -> NormalForm {
        NormalForm::default()
    }

    pub fn generator(&self, s: usize) -> NormalForm {
        assert!(s < self.rank(), "generator {s} out of range");
        NormalForm(vec![s])
    }

    /// Solves the word problem: the normal form of an arbitrary word.
    pub fn normal_form(&self, word: &[usize]) -> Result<NormalForm, CoxeterError> {
        for &s in word {
            self.check_generator(s)?;
        }
        Ok(word.iter().fold(self.identity(), |w, &s| self.right_mul(&w, s)))
    }

    /// Does `word` equal `w` in `W`?
    pub fn represents(&self, word: &[usize], w: &NormalForm) -> Result<bool, CoxeterError> {
        Ok(&self.normal_form(word)? == w)
    }

    pub fn right_descents(&self, w: &NormalForm) -> GenSet {
        self.info(w).right_desc
    }

    pub fn left_descents(&self, w: &NormalForm) -> GenSet {
        self.info(w).left_desc
    }

    /// `nf(w s)`.
    pub fn right_mul(&self, w: &NormalForm, s: usize) -> NormalForm {
        assert!(s < self.rank(), "generator {s} out of range");
        let info = self.info(w);
        if let Some((_, lower)) = info.right_lower.iter().find(|(t, _)| *t == s) {
            return lower.clone();
        }
        let key = (w.clone(), s);
        if let Some(up) = self.lock().right_up.get(&key) {
            return up.clone();
        }
        let mut word = w.0.clone();
        word.push(s);
        let nf = self.explore_and_store(word);
        self.lock().right_up.insert(key, nf.clone());
        nf
    }

    /// `nf(s w)`.
    pub fn left_mul(&self, s: usize, w: &NormalForm) -> NormalForm {
        assert!(s < self.rank(), "generator {s} out of range");
        let info = self.info(w);
        if let Some((_, lower)) = info.left_lower.iter().find(|(t, _)| *t == s) {
            return lower.clone();
        }
        let key = (w.clone(), s);
        if let Some(up) = self.lock().left_up.get(&key) {
            return up.clone();
        }
        let mut word = Vec::with_capacity(w.len() + 1);
        word.push(s);
        word.extend_from_slice(&w.0);
        let nf = self.explore_and_store(word);
        self.lock().left_up.insert(key, nf.clone());
        nf
    }

    pub fn multiply(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        b.0.iter().fold(a.clone(), |w, &s| self.right_mul(&w, s))
    }

    pub fn inverse(&self, w: &NormalForm) -> NormalForm {
        w.0.iter().fold(self.identity(), |acc, &s| self.left_mul(s, &acc))
    }

    /// `x w x^{-1}`.
    pub fn conjugate(&self, x: &NormalForm, w: &NormalForm) -> NormalForm {
        self.multiply(&self.multiply(x, w), &self.inverse(x))
    }

    /// All elements of length `0..=max_len`, layer by layer. Layer `k+1` is
    /// obtained from layer `k` by right multiplication with non-descents.
    pub fn enumerate_by_length(&self, max_len: usize) -> Enumeration {
        self.enumerate_in(self.all_generators(), max_len)
    }

    /// Elements of the standard parabolic subgroup `W_J` of length
    /// `<= max_len`.
    pub fn enumerate_in(&self, subset: GenSet, max_len: usize) -> Enumeration {
        let mut layers = vec![vec![self.identity()]];
        for _ in 0..max_len {
            let prev = layers.last().expect("non-empty");
            let mut next = BTreeSet::new();
            for w in prev {
                let desc = self.right_descents(w);
                for s in subset.iter().filter(|&s| !desc.contains(s)) {
                    next.insert(self.right_mul(w, s));
                }
            }
            layers.push(next.into_iter().collect());
        }
        Enumeration { layers }
    }

    /// Every element of the finite parabolic subgroup `W_J`.
    pub fn parabolic_elements(&self, subset: GenSet) -> Result<Vec<NormalForm>, CoxeterError> {
        if !self.is_spherical(subset) {
            return Err(CoxeterError::NotSpherical);
        }
        let mut out = Vec::new();
        let mut layer = vec![self.identity()];
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for w in &layer {
                let desc = self.right_descents(w);
                for s in subset.iter().filter(|&s| !desc.contains(s)) {
                    next.insert(self.right_mul(w, s));
                }
            }
            out.append(&mut layer);
            layer = next.into_iter().collect();
        }
        Ok(out)
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, Cache> {
        self.cache.lock().unwrap_or_else(|p| p.into_inner())
    }

    pub(crate) fn info(&self, w: &NormalForm) -> Arc<ElementInfo> {
        if let Some(i) = self.lock().info.get(w) {
            return i.clone();
        }
        let (nf, info) = self.explore(w.0.clone());
        debug_assert_eq!(&nf, w, "info requested for a non-normal word");
        let info = Arc::new(info);
        self.lock().info.entry(nf).or_insert(info).clone()
    }

    fn explore_and_store(&self, word: Vec<usize>) -> NormalForm {
        let (nf, info) = self.explore(word);
        self.lock().info.entry(nf.clone()).or_insert_with(|| Arc::new(info));
        nf
    }

    /// Explores the braid orbit of a reduced word.
    fn explore(&self, word: Vec<usize>) -> (NormalForm, ElementInfo) {
        let rank = self.rank();
        if word.is_empty() {
            let info = ElementInfo {
                right_desc: GenSet::EMPTY,
                left_desc: GenSet::EMPTY,
                right_lower: Vec::new(),
                left_lower: Vec::new(),
            };
            return (NormalForm(word), info);
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut orbit: Vec<Vec<usize>> = Vec::new();
        seen.insert(word.clone());
        orbit.push(word);
        let mut head = 0;
        while head < orbit.len() {
            let w = orbit[head].clone();
            head += 1;
            for i in 0..w.len().saturating_sub(1) {
                let (s, t) = (w[i], w[i + 1]);
                debug_assert_ne!(s, t, "explore called on a non-reduced word");
                let Bond::Finite(m) = self.bond(s, t) else { continue };
                let m = m as usize;
                if i + m > w.len() {
                    continue;
                }
                let alternating = (0..m).all(|k| w[i + k] == if k % 2 == 0 { s } else { t });
                if !alternating {
                    continue;
                }
                let mut moved = w.clone();
                for k in 0..m {
                    moved[i + k] = if k % 2 == 0 { t } else { s };
                }
                if seen.insert(moved.clone()) {
                    orbit.push(moved);
                }
            }
        }
        let mut best: Option<&Vec<usize>> = None;
        let mut right_best: Vec<Option<&[usize]>> = vec![None; rank];
        let mut left_best: Vec<Option<&[usize]>> = vec![None; rank];
        for w in &orbit {
            if best.is_none_or(|b| w < b) {
                best = Some(w);
            }
            let n = w.len();
            let last = w[n - 1];
            let prefix = &w[..n - 1];
            if right_best[last].is_none_or(|b| prefix < b) {
                right_best[last] = Some(prefix);
            }
            let first = w[0];
            let suffix = &w[1..];
            if left_best[first].is_none_or(|b| suffix < b) {
                left_best[first] = Some(suffix);
            }
        }
        let collect = |v: &[Option<&[usize]>]| -> (GenSet, Vec<(usize, NormalForm)>) {
            let mut set = GenSet::EMPTY;
            let mut lower = Vec::new();
            for (s, b) in v.iter().enumerate() {
                if let Some(b) = b {
                    set = set.with(s);
                    lower.push((s, NormalForm(b.to_vec())));
                }
            }
            (set, lower)
        };
        let (right_desc, right_lower) = collect(&right_best);
        let (left_desc, left_lower) = collect(&left_best);
        let nf = NormalForm(best.expect("non-empty orbit").clone());
        (
            nf,
            ElementInfo {
                right_desc,
                left_desc,
                right_lower,
                left_lower,
            },
        )
    }

    /// Renders an element with the system's generator labels.
    pub fn format(&self, w: &NormalForm) -> String {
        if w.is_identity() {
            return "e".into();
        }
        match self.labels() {
            Some(_) => w.word().iter().map(|&s| self.label(s)).collect::<Vec<_>>().join(" "),
            None => w.to_string(),
        }
    }
}
