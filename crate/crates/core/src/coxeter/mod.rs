//! Coxeter systems `(W, S)`: the word problem, enumeration by length,
//! finite-type recognition, growth series and parabolic double cosets.
//!
//! Generators are 0-based indices internally. The text file format and the
//! CLI use 1-based indices.

mod classify;
mod gens;
mod growth;
mod parabolic;
mod words;

use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::ParseError;

pub use classify::{FiniteType, FiniteTypeDescriptor, IrreducibleComponent};
pub use gens::GenSet;
pub use growth::length_series;
pub use parabolic::Decomposition;
pub use words::{Enumeration, NormalForm};

/// Default length bound for enumerations and truncated identities.
pub const DEFAULT_MAX_LENGTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("not spherical: the generated subgroup is infinite")]
    NotSpherical,
    #[error("not a minimal representative: {0}")]
    NotMinimal(String),
    #[error("rank {0} exceeds the supported maximum of 64")]
    RankTooLarge(usize),
}

/// Coxeter matrix entry `m(s, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinite => None,
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => write!(f, "inf"),
        }
    }
}

/// A Coxeter system given by its Coxeter matrix.
///
/// The system owns a memo cache for normal-form computations; clones share
/// it. All operations are deterministic and the cache is behind a mutex, so a
/// system can be used from several threads.
#[derive(Clone)]
pub struct CoxeterSystem {
    matrix: Vec<Vec<Bond>>,
    labels: Option<Vec<String>>,
    cache: Arc<Mutex<words::Cache>>,
}

impl CoxeterSystem {
    pub fn new(matrix: Vec<Vec<Bond>>) -> Result<Self, CoxeterError> {
        let rank = matrix.len();
        if rank == 0 {
            return Err(CoxeterError::InvalidMatrix("rank must be positive".into()));
        }
        if rank > 64 {
            return Err(CoxeterError::RankTooLarge(rank));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(CoxeterError::InvalidMatrix(format!("row {} has length {}", i + 1, row.len())));
            }
            for (j, &b) in row.iter().enumerate() {
                if b != matrix[j][i] {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                match (i == j, b) {
                    (true, Bond::Finite(1)) => {}
                    (true, _) => {
                        return Err(CoxeterError::InvalidMatrix(format!("diagonal entry {} is not 1", i + 1)))
                    }
                    (false, Bond::Finite(m)) if m < 2 => {
                        return Err(CoxeterError::InvalidMatrix(format!(
                            "m({}, {}) = {m} but off-diagonal entries must be >= 2",
                            i + 1,
                            j + 1
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(CoxeterSystem {
            matrix,
            labels: None,
            cache: Arc::new(Mutex::new(words::Cache::default())),
        })
    }

    /// Builds a system from its non-default bonds; unspecified pairs commute.
    /// Indices are 0-based.
    pub fn from_bonds(rank: usize, bonds: &[(usize, usize, Bond)]) -> Result<Self, CoxeterError> {
        let mut matrix = vec![vec![Bond::Finite(2); rank]; rank];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = Bond::Finite(1);
        }
        for &(i, j, b) in bonds {
            if i >= rank || j >= rank {
                return Err(CoxeterError::GeneratorOutOfRange { index: i.max(j), rank });
            }
            if i == j {
                return Err(CoxeterError::InvalidMatrix(format!("bond on the diagonal at {}", i + 1)));
            }
            matrix[i][j] = b;
            matrix[j][i] = b;
        }
        Self::new(matrix)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, CoxeterError> {
        if labels.len() != self.rank() {
            return Err(CoxeterError::InvalidMatrix(format!(
                "{} labels given for rank {}",
                labels.len(),
                self.rank()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn bond(&self, s: usize, t: usize) -> Bond {
        self.matrix[s][t]
    }

    pub fn matrix(&self) -> &[Vec<Bond>] {
        &self.matrix
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of generator `s`: its label, or `s{1-based index}`.
    pub fn label(&self, s: usize) -> String {
        match &self.labels {
            Some(l) => l[s].clone(),
            None => format!("s{}", s + 1),
        }
    }

    pub fn all_generators(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    /// The Coxeter system generated by `subset`, re-indexed in increasing
    /// generator order.
    pub fn restrict(&self, subset: GenSet) -> Result<Self, CoxeterError> {
        let idx: Vec<usize> = subset.iter().collect();
        if idx.is_empty() {
            return Err(CoxeterError::InvalidMatrix("empty generator subset".into()));
        }
        let matrix = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.matrix[i][j]).collect())
            .collect();
        Self::new(matrix)
    }

    fn check_generator(&self, s: usize) -> Result<(), CoxeterError> {
        if s < self.rank() {
            Ok(())
        } else {
            Err(CoxeterError::GeneratorOutOfRange { index: s, rank: self.rank() })
        }
    }

    /// Parses the plain-text Coxeter description:
    ///
    /// ```text
    /// rank N
    /// labels a b c        (optional)
    /// m i j V             (1-based; V >= 2 or "inf"; unspecified pairs are 2)
    /// ```
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut rank: Option<usize> = None;
        let mut labels: Option<(usize, Vec<String>)> = None;
        let mut bonds: Vec<(usize, usize, usize, Bond)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "rank" => {
                    if toks.len() != 2 {
                        return Err(ParseError::new(line_no, "expected `rank N`"));
                    }
                    if rank.is_some() {
                        return Err(ParseError::new(line_no, "duplicate `rank` directive"));
                    }
                    let r: usize = toks[1]
                        .parse()
                        .map_err(|_| ParseError::new(line_no, format!("invalid rank {:?}", toks[1])))?;
                    if r == 0 {
                        return Err(ParseError::new(line_no, "rank must be positive"));
                    }
                    rank = Some(r);
                }
                "labels" => {
                    labels = Some((line_no, toks[1..].iter().map(|s| s.to_string()).collect()));
                }
                "m" => {
                    if toks.len() != 4 {
                        return Err(ParseError::new(line_no, "expected `m i j V`"));
                    }
                    let idx = |t: &str| {
                        t.parse::<usize>()
                            .ok()
                            .filter(|&v| v >= 1)
                            .ok_or_else(|| ParseError::new(line_no, format!("invalid generator index {t:?}")))
                    };
                    let i = idx(toks[1])?;
                    let j = idx(toks[2])?;
                    let b = match toks[3] {
                        "inf" | "∞" => Bond::Infinite,
                        v => Bond::Finite(
                            v.parse::<u32>()
                                .ok()
                                .filter(|&m| m >= 2)
                                .ok_or_else(|| ParseError::new(line_no, format!("invalid bond {v:?}: need an integer >= 2 or `inf`")))?,
                        ),
                    };
                    if i == j {
                        return Err(ParseError::new(line_no, "bond on the diagonal"));
                    }
                    bonds.push((line_no, i - 1, j - 1, b));
                }
                other => return Err(ParseError::new(line_no, format!("unknown directive {other:?}"))),
            }
        }
        let rank = rank.ok_or_else(|| ParseError::new(0, "missing `rank` directive"))?;
        let mut matrix = vec![vec![Bond::Finite(2); rank]; rank];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = Bond::Finite(1);
        }
        for (line_no, i, j, b) in bonds {
            if i >= rank || j >= rank {
                return Err(ParseError::new(line_no, format!("generator index out of range for rank {rank}")));
            }
            matrix[i][j] = b;
            matrix[j][i] = b;
        }
        let sys = Self::new(matrix).map_err(|e| ParseError::new(0, e.to_string()))?;
        match labels {
            Some((line_no, l)) => sys.with_labels(l).map_err(|e| ParseError::new(line_no, e.to_string())),
            None => Ok(sys),
        }
    }

    /// Inverse of [`CoxeterSystem::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("rank {}\n", self.rank());
        if let Some(l) = &self.labels {
            out.push_str(&format!("labels {}\n", l.join(" ")));
        }
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if self.matrix[i][j] != Bond::Finite(2) {
                    out.push_str(&format!("m {} {} {}\n", i + 1, j + 1, self.matrix[i][j]));
                }
            }
        }
        out
    }
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for CoxeterSystem {}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("matrix", &self.matrix)
            .field("labels", &self.labels)
            .finish()
    }
}

/// Common systems used across tests, the CLI and the verification suites.
pub mod systems {
    use super::{Bond, CoxeterSystem};

    fn chain(rank: usize, last: u32) -> CoxeterSystem {
        let mut bonds: Vec<_> = (0..rank.saturating_sub(1)).map(|i| (i, i + 1, Bond::Finite(3))).collect();
        if rank >= 2 {
            bonds.last_mut().expect("rank >= 2").2 = Bond::Finite(last);
        }
        CoxeterSystem::from_bonds(rank, &bonds).expect("valid chain")
    }

    /// Type `A_n` (the symmetric group on `n + 1` letters).
    pub fn a(n: usize) -> CoxeterSystem {
        chain(n, 3)
    }

    /// Type `B_n = C_n`.
    pub fn b(n: usize) -> CoxeterSystem {
        chain(n, 4)
    }

    /// Type `D_n`, `n >= 4`: a chain with a fork at the end.
    pub fn d(n: usize) -> CoxeterSystem {
        assert!(n >= 4);
        let mut bonds: Vec<_> = (0..n - 2).map(|i| (i, i + 1, Bond::Finite(3))).collect();
        bonds.push((n - 3, n - 1, Bond::Finite(3)));
        CoxeterSystem::from_bonds(n, &bonds).expect("valid D_n")
    }

    /// Dihedral group `I2(m)` of order `2m`.
    pub fn dihedral(m: u32) -> CoxeterSystem {
        CoxeterSystem::from_bonds(2, &[(0, 1, Bond::Finite(m))]).expect("valid dihedral")
    }

    /// `A1 x A1`.
    pub fn a1xa1() -> CoxeterSystem {
        CoxeterSystem::from_bonds(2, &[]).expect("valid")
    }

    /// Infinite dihedral group, the affine type `Ã1`.
    pub fn affine_a1() -> CoxeterSystem {
        CoxeterSystem::from_bonds(2, &[(0, 1, Bond::Infinite)]).expect("valid")
    }

    /// Affine type `Ã_n`: for `n >= 2` a cycle of `n + 1` nodes.
    pub fn affine_a(n: usize) -> CoxeterSystem {
        if n == 1 {
            return affine_a1();
        }
        let bonds: Vec<_> = (0..=n).map(|i| (i, (i + 1) % (n + 1), Bond::Finite(3))).collect();
        CoxeterSystem::from_bonds(n + 1, &bonds).expect("valid cycle")
    }

    fn with_bonds(rank: usize, bonds: &[(usize, usize, u32)]) -> CoxeterSystem {
        let b: Vec<_> = bonds.iter().map(|&(i, j, m)| (i, j, Bond::Finite(m))).collect();
        CoxeterSystem::from_bonds(rank, &b).expect("valid diagram")
    }

    /// A tree with arms of the given lengths attached to node 0.
    fn star(arms: &[usize]) -> CoxeterSystem {
        let mut bonds = Vec::new();
        let mut next = 1;
        for &len in arms {
            let mut prev = 0;
            for _ in 0..len {
                bonds.push((prev, next, 3));
                prev = next;
                next += 1;
            }
        }
        with_bonds(next, &bonds)
    }

    /// Affine type `B̃_n`, `n >= 3`: nodes `0` and `1` both attached to `2`,
    /// a chain up to `n`, and `m(n-1, n) = 4`.
    pub fn affine_b(n: usize) -> CoxeterSystem {
        assert!(n >= 3);
        let mut bonds = vec![(0, 2, 3)];
        bonds.extend((1..n - 1).map(|i| (i, i + 1, 3)));
        bonds.push((n - 1, n, 4));
        with_bonds(n + 1, &bonds)
    }

    /// Affine type `C̃_n`, `n >= 2`: a chain with 4 at both ends.
    pub fn affine_c(n: usize) -> CoxeterSystem {
        assert!(n >= 2);
        let bonds: Vec<_> = (0..n).map(|i| (i, i + 1, if i == 0 || i == n - 1 { 4 } else { 3 })).collect();
        with_bonds(n + 1, &bonds)
    }

    /// Affine type `D̃_n`, `n >= 4`: a chain `2..=n-2` with two leaves at
    /// each end.
    pub fn affine_d(n: usize) -> CoxeterSystem {
        assert!(n >= 4);
        let mut bonds = vec![(0, 2, 3), (1, 2, 3)];
        bonds.extend((2..n - 2).map(|i| (i, i + 1, 3)));
        bonds.push((n - 2, n - 1, 3));
        bonds.push((n - 2, n, 3));
        with_bonds(n + 1, &bonds)
    }

    /// Affine types `Ẽ6`, `Ẽ7`, `Ẽ8`.
    pub fn affine_e(n: usize) -> CoxeterSystem {
        match n {
            6 => star(&[2, 2, 2]),
            7 => star(&[1, 3, 3]),
            8 => star(&[1, 2, 5]),
            _ => panic!("no affine type E{n}"),
        }
    }

    /// Affine type `F̃4`: labels 3, 3, 4, 3 along a chain.
    pub fn affine_f4() -> CoxeterSystem {
        with_bonds(5, &[(0, 1, 3), (1, 2, 3), (2, 3, 4), (3, 4, 3)])
    }

    /// Affine type `G̃2`: labels 3, 6 along a chain.
    pub fn affine_g2() -> CoxeterSystem {
        with_bonds(3, &[(0, 1, 3), (1, 2, 6)])
    }

    /// Three generators with every product of infinite order.
    pub fn infinite_triangle() -> CoxeterSystem {
        CoxeterSystem::from_bonds(
            3,
            &[(0, 1, Bond::Infinite), (1, 2, Bond::Infinite), (0, 2, Bond::Infinite)],
        )
        .expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let text = "# A2 with labels\nrank 2\nlabels a b\nm 1 2 3\n";
        let sys = CoxeterSystem::parse(text).unwrap();
        assert_eq!(sys, systems::a(2));
        assert_eq!(sys.label(1), "b");
        assert_eq!(CoxeterSystem::parse(&sys.to_text()).unwrap(), sys);
        let inf = CoxeterSystem::parse("rank 2\nm 1 2 inf").unwrap();
        assert_eq!(inf, systems::affine_a1());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = CoxeterSystem::parse("rank 2\nm 1 2 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = CoxeterSystem::parse("rank 2\n\nm 1 3 3\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = CoxeterSystem::parse("rank 2\nfoo\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(CoxeterSystem::parse("m 1 2 3\n").is_err());
        let err = CoxeterSystem::parse("rank 2\nlabels a b c\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn matrix_validation() {
        let bad = vec![vec![Bond::Finite(1), Bond::Finite(3)], vec![Bond::Finite(4), Bond::Finite(1)]];
        assert!(matches!(CoxeterSystem::new(bad), Err(CoxeterError::InvalidMatrix(_))));
        let bad = vec![vec![Bond::Finite(2)]];
        assert!(CoxeterSystem::new(bad).is_err());
        assert!(CoxeterSystem::new(Vec::new()).is_err());
    }

    #[test]
    fn restriction_reindexes() {
        let sys = systems::affine_a(2);
        let sub = sys.restrict(GenSet::from_slice(&[0, 2])).unwrap();
        assert_eq!(sub, systems::a(2));
    }
}
