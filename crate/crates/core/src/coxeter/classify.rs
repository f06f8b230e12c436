//! Recognition of finite Coxeter systems and their exponents.

use std::fmt;

use crate::algebra::Polynomial;

use super::{Bond, CoxeterError, CoxeterSystem, GenSet};

/// Irreducible finite Coxeter types. Rank-2 systems are named `A2`, `B2`,
/// `G2` for `m = 3, 4, 6` and `I2(m)` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    H(usize),
    I2(u32),
}

impl FiniteType {
    pub fn rank(&self) -> usize {
        match *self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) | FiniteType::E(n) | FiniteType::H(n) => n,
            FiniteType::F4 => 4,
            FiniteType::G2 | FiniteType::I2(_) => 2,
        }
    }

    /// Exponents `m_1 <= ... <= m_n`; the degrees are `m_i + 1`.
    pub fn exponents(&self) -> Vec<u32> {
        match *self {
            FiniteType::A(n) => (1..=n as u32).collect(),
            FiniteType::B(n) => (0..n as u32).map(|i| 2 * i + 1).collect(),
            FiniteType::D(n) => {
                let mut e: Vec<u32> = (0..n as u32 - 1).map(|i| 2 * i + 1).collect();
                e.push(n as u32 - 1);
                e.sort_unstable();
                e
            }
            FiniteType::E(6) => vec![1, 4, 5, 7, 8, 11],
            FiniteType::E(7) => vec![1, 5, 7, 9, 11, 13, 17],
            FiniteType::E(8) => vec![1, 7, 11, 13, 17, 19, 23, 29],
            FiniteType::E(n) => panic!("no type E{n}"),
            FiniteType::F4 => vec![1, 5, 7, 11],
            FiniteType::G2 => vec![1, 5],
            FiniteType::H(3) => vec![1, 5, 9],
            FiniteType::H(4) => vec![1, 11, 19, 29],
            FiniteType::H(n) => panic!("no type H{n}"),
            FiniteType::I2(m) => vec![1, m - 1],
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.exponents().into_iter().map(|m| m + 1).collect()
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E(n) => write!(f, "E{n}"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::G2 => write!(f, "G2"),
            FiniteType::H(n) => write!(f, "H{n}"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleComponent {
    pub ty: FiniteType,
    /// Generators of this component, 0-based indices into the ambient system.
    pub generators: GenSet,
}

/// A finite Coxeter system: its irreducible components and the multiset of
/// exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTypeDescriptor {
    pub components: Vec<IrreducibleComponent>,
    /// Sorted exponents over all components; one per generator.
    pub exponents: Vec<u32>,
}

impl FiniteTypeDescriptor {
    pub fn degrees(&self) -> Vec<u32> {
        self.exponents.iter().map(|m| m + 1).collect()
    }

    /// Number of positive roots, which is also the length of the longest
    /// element.
    pub fn positive_roots(&self) -> usize {
        self.exponents.iter().map(|&m| m as usize).sum()
    }

    /// `|W| = ∏ d_i`.
    pub fn order(&self) -> u64 {
        self.degrees().iter().map(|&d| d as u64).product()
    }

    /// `∏ (1 + t + ... + t^{m_i})`
    pub fn growth_polynomial(&self) -> Polynomial {
        self.exponents
            .iter()
            .fold(Polynomial::one(), |acc, &m| &acc * &Polynomial::geometric(m as usize))
    }

    pub fn type_name(&self) -> String {
        if self.components.is_empty() {
            return "trivial".into();
        }
        self.components
            .iter()
            .map(|c| c.ty.to_string())
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

impl CoxeterSystem {
    /// Classifies the whole system; `None` if `W` is infinite.
    pub fn classify_finite(&self) -> Option<FiniteTypeDescriptor> {
        self.classify_subset(self.all_generators())
    }

    /// Classifies the parabolic subgroup `W_J`; `None` if it is infinite.
    pub fn classify_subset(&self, subset: GenSet) -> Option<FiniteTypeDescriptor> {
        let mut components = Vec::new();
        let mut exponents = Vec::new();
        for comp in self.graph_components(subset) {
            let ty = self.classify_irreducible(comp)?;
            exponents.extend(ty.exponents());
            components.push(IrreducibleComponent { ty, generators: comp });
        }
        exponents.sort_unstable();
        Some(FiniteTypeDescriptor { components, exponents })
    }

    pub fn is_spherical(&self, subset: GenSet) -> bool {
        self.classify_subset(subset).is_some()
    }

    /// `Σ_{w ∈ W} t^{ℓ(w)}` for finite `W`.
    pub fn growth_polynomial_finite(&self) -> Result<Polynomial, CoxeterError> {
        self.growth_polynomial_of(self.all_generators())
    }

    /// Growth polynomial of the finite parabolic subgroup `W_J`.
    pub fn growth_polynomial_of(&self, subset: GenSet) -> Result<Polynomial, CoxeterError> {
        self.classify_subset(subset)
            .map(|d| d.growth_polynomial())
            .ok_or(CoxeterError::NotSpherical)
    }

    /// Connected components of the Coxeter graph restricted to `subset`
    /// (edges where `m(s,t) != 2`).
    fn graph_components(&self, subset: GenSet) -> Vec<GenSet> {
        let mut remaining = subset;
        let mut out = Vec::new();
        while let Some(start) = remaining.iter().next() {
            let mut comp = GenSet::singleton(start);
            let mut stack = vec![start];
            while let Some(s) = stack.pop() {
                for t in remaining.iter() {
                    if !comp.contains(t) && self.bond(s, t) != Bond::Finite(2) && s != t {
                        comp = comp.with(t);
                        stack.push(t);
                    }
                }
            }
            remaining = remaining.difference(comp);
            out.push(comp);
        }
        out
    }

    fn classify_irreducible(&self, comp: GenSet) -> Option<FiniteType> {
        let nodes: Vec<usize> = comp.iter().collect();
        let n = nodes.len();
        let mut edges = Vec::new();
        for (a, &s) in nodes.iter().enumerate() {
            for &t in &nodes[a + 1..] {
                match self.bond(s, t) {
                    Bond::Finite(2) => {}
                    Bond::Infinite => return None,
                    Bond::Finite(m) => edges.push((s, t, m)),
                }
            }
        }
        match n {
            1 => return Some(FiniteType::A(1)),
            2 => {
                let m = edges[0].2;
                return Some(match m {
                    3 => FiniteType::A(2),
                    4 => FiniteType::B(2),
                    6 => FiniteType::G2,
                    m => FiniteType::I2(m),
                });
            }
            _ => {}
        }
        // Finite irreducible diagrams of rank >= 3 are trees.
        if edges.len() != n - 1 {
            return None;
        }
        let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
        let neighbours = |v: usize| -> Vec<usize> {
            edges
                .iter()
                .filter_map(|e| match (e.0 == v, e.1 == v) {
                    (true, _) => Some(e.1),
                    (_, true) => Some(e.0),
                    _ => None,
                })
                .collect()
        };
        let branch: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) >= 3).collect();
        if branch.len() > 1 || nodes.iter().any(|&v| degree(v) > 3) {
            return None;
        }
        if let Some(&center) = branch.first() {
            if edges.iter().any(|e| e.2 != 3) {
                return None;
            }
            let mut arms: Vec<usize> = neighbours(center)
                .into_iter()
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (center, start, 1);
                    loop {
                        let next: Vec<usize> = neighbours(cur).into_iter().filter(|&x| x != prev).collect();
                        match next.as_slice() {
                            [] => break len,
                            [nx] => {
                                prev = cur;
                                cur = *nx;
                                len += 1;
                            }
                            _ => unreachable!("single branch vertex"),
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            return match arms.as_slice() {
                [1, 1, k] => Some(FiniteType::D(k + 3)),
                [1, 2, 2] => Some(FiniteType::E(6)),
                [1, 2, 3] => Some(FiniteType::E(7)),
                [1, 2, 4] => Some(FiniteType::E(8)),
                _ => None,
            };
        }
        // A path: read the labels from one end.
        let end = *nodes.iter().find(|&&v| degree(v) == 1)?;
        let mut labels = Vec::with_capacity(n - 1);
        let (mut prev, mut cur) = (usize::MAX, end);
        loop {
            let next = neighbours(cur).into_iter().find(|&x| x != prev);
            let Some(nx) = next else { break };
            labels.push(self.bond(cur, nx).finite().expect("finite bond"));
            prev = cur;
            cur = nx;
        }
        let special: Vec<(usize, u32)> = labels.iter().copied().enumerate().filter(|&(_, m)| m != 3).collect();
        let at_end = |i: usize| i == 0 || i == n - 2;
        match special.as_slice() {
            [] => Some(FiniteType::A(n)),
            [(i, 4)] if at_end(*i) => Some(FiniteType::B(n)),
            [(1, 4)] if n == 4 => Some(FiniteType::F4),
            [(i, 5)] if at_end(*i) && (n == 3 || n == 4) => Some(FiniteType::H(n)),
            _ => None,
        }
    }
}
