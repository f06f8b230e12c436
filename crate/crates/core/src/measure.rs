//! Haar measures as rational multiples `c · μ_U` of the normalization with
//! `μ_U(U) = 1`, and the commensurability data needed to compare them.
//!
//! For compact open `U, V` write `|U:V| = |U : U∩V| / |V : U∩V|`. Then
//! `μ_V = |U:V| · μ_U`. The context assigns every subgroup a potential
//! `φ(U) = μ_R(U)` relative to a root `R` of its commensurability class, so
//! `|U:V| = φ(U)/φ(V)` and `c·μ_A = c·φ(B)/φ(A) · μ_B`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{format_rational, parse_rational, BigRational};
use crate::{content_line, ParseError};

/// Identifier of the trivial subgroup, whose measure counts points.
pub const TRIVIAL: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("incommensurable or undeclared pair: {0} and {1}")]
    Incommensurable(String, String),
    #[error("index must be a positive integer, got {0}")]
    NonPositiveIndex(String),
    #[error("inconsistent commensurability data around the cycle {}: indices multiply to {ratio} instead of 1", .cycle.join(" -> "))]
    InconsistentCycle { cycle: Vec<String>, ratio: BigRational },
    #[error("a subgroup cannot be compared with itself by a declaration: {0}")]
    SelfPair(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// The element `coefficient · μ_base` of `h_G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HaarMeasure {
    pub coefficient: BigRational,
    pub base: String,
}

impl HaarMeasure {
    pub fn new(coefficient: BigRational, base: impl Into<String>) -> Self {
        HaarMeasure {
            coefficient,
            base: base.into(),
        }
    }

    /// `1 · μ_base`.
    pub fn unit(base: impl Into<String>) -> Self {
        Self::new(BigRational::one(), base)
    }

    pub fn zero(base: impl Into<String>) -> Self {
        Self::new(BigRational::zero(), base)
    }

    pub fn sign(&self) -> Sign {
        measure_sign(self)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.coefficient * c, self.base.clone())
    }
}

/// Renders `c * mu[BASE]`.
impl fmt::Display for HaarMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * mu[{}]", format_rational(&self.coefficient), self.base)
    }
}

pub fn measure_sign(m: &HaarMeasure) -> Sign {
    if m.coefficient.is_zero() {
        Sign::Zero
    } else if m.coefficient.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Declaration {
    u: String,
    v: String,
    /// `|U : U∩V|`
    u_index: BigInt,
    /// `|V : U∩V|`
    v_index: BigInt,
}

#[derive(Debug, Clone)]
struct Node {
    root: String,
    potential: BigRational,
    parent: Option<String>,
}

/// Declared commensurability indices between named compact open subgroups.
#[derive(Debug, Clone, Default)]
pub struct SubgroupContext {
    declarations: Vec<Declaration>,
    nodes: BTreeMap<String, Node>,
}

impl SubgroupContext {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a subgroup with no declared relations.
    pub fn add_subgroup(&mut self, name: &str) {
        if !self.nodes.contains_key(name) {
            self.nodes.insert(
                name.to_string(),
                Node {
                    root: name.to_string(),
                    potential: BigRational::one(),
                    parent: None,
                },
            );
        }
    }

    pub fn subgroups(&self) -> impl Iterator<Item = &str> {
        self.nodes.keys().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.nodes.contains_key(name)
    }

    /// Declares `|U : U∩V| = u_index` and `|V : U∩V| = v_index`. Rejects the
    /// declaration, leaving the context unchanged, if it contradicts the data
    /// already present.
    pub fn declare_index(
        &mut self,
        u: &str,
        v: &str,
        u_index: impl Into<BigInt>,
        v_index: impl Into<BigInt>,
    ) -> Result<(), MeasureError> {
        let (u_index, v_index) = (u_index.into(), v_index.into());
        for i in [&u_index, &v_index] {
            if !i.is_positive() {
                return Err(MeasureError::NonPositiveIndex(i.to_string()));
            }
        }
        if u == v {
            return if u_index == v_index {
                self.add_subgroup(u);
                Ok(())
            } else {
                Err(MeasureError::SelfPair(u.to_string()))
            };
        }
        let ratio = BigRational::new(u_index.clone(), v_index.clone());
        if let (Some(a), Some(b)) = (self.nodes.get(u), self.nodes.get(v)) {
            if a.root == b.root {
                // closing a cycle: |U:V| must agree with the potentials
                let implied = &a.potential / &b.potential;
                if implied != ratio {
                    let mut cycle = self.tree_path(u, v);
                    cycle.push(u.to_string());
                    return Err(MeasureError::InconsistentCycle {
                        cycle,
                        ratio: &ratio / &implied,
                    });
                }
            }
        }
        self.declarations.push(Declaration {
            u: u.to_string(),
            v: v.to_string(),
            u_index,
            v_index,
        });
        self.rebuild();
        Ok(())
    }

    /// Declares a finite group of order `m`: `|G : 1| = m`.
    pub fn declare_order(&mut self, g: &str, m: impl Into<BigInt>) -> Result<(), MeasureError> {
        self.declare_index(g, TRIVIAL, m, 1)
    }

    /// Path `from -> ... -> to` through the spanning forest.
    fn tree_path(&self, from: &str, to: &str) -> Vec<String> {
        let ancestors = |mut x: String| {
            let mut out = vec![x.clone()];
            while let Some(p) = self.nodes[&x].parent.clone() {
                out.push(p.clone());
                x = p;
            }
            out
        };
        let a = ancestors(from.to_string());
        let b = ancestors(to.to_string());
        let common = a.iter().find(|x| b.contains(x)).expect("same tree").clone();
        let mut path: Vec<String> = a.iter().take_while(|x| **x != common).cloned().collect();
        path.push(common.clone());
        let mut tail: Vec<String> = b.iter().take_while(|x| **x != common).cloned().collect();
        tail.reverse();
        path.extend(tail);
        path
    }

    /// Recomputes potentials by breadth-first search from the least name of
    /// every class.
    fn rebuild(&mut self) {
        let mut adj: BTreeMap<&str, Vec<(&str, BigRational)>> = BTreeMap::new();
        let mut names: BTreeSet<String> = self.nodes.keys().cloned().collect();
        for d in &self.declarations {
            names.insert(d.u.clone());
            names.insert(d.v.clone());
        }
        for d in &self.declarations {
            // φ(V) = φ(U) · |V:U∩V| / |U:U∩V|
            let r = BigRational::new(d.v_index.clone(), d.u_index.clone());
            adj.entry(d.u.as_str()).or_default().push((d.v.as_str(), r.clone()));
            adj.entry(d.v.as_str()).or_default().push((d.u.as_str(), r.recip()));
        }
        let mut nodes: BTreeMap<String, Node> = BTreeMap::new();
        for start in &names {
            if nodes.contains_key(start) {
                continue;
            }
            nodes.insert(
                start.clone(),
                Node {
                    root: start.clone(),
                    potential: BigRational::one(),
                    parent: None,
                },
            );
            let mut queue = VecDeque::from([start.as_str()]);
            while let Some(x) = queue.pop_front() {
                let px = nodes[x].potential.clone();
                for (y, r) in adj.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                    if !nodes.contains_key(*y) {
                        nodes.insert(
                            y.to_string(),
                            Node {
                                root: start.clone(),
                                potential: &px * r,
                                parent: Some(x.to_string()),
                            },
                        );
                        queue.push_back(y);
                    }
                }
            }
        }
        self.nodes = nodes;
    }

    /// `|U:V| = μ(U)/μ(V)` for commensurable `U, V`.
    pub fn index(&self, u: &str, v: &str) -> Result<BigRational, MeasureError> {
        if u == v {
            return Ok(BigRational::one());
        }
        match (self.nodes.get(u), self.nodes.get(v)) {
            (Some(a), Some(b)) if a.root == b.root => Ok(&a.potential / &b.potential),
            _ => Err(MeasureError::Incommensurable(u.to_string(), v.to_string())),
        }
    }

    /// The same element of `h_G` in the base `μ_target`.
    pub fn rebase(&self, m: &HaarMeasure, target: &str) -> Result<HaarMeasure, MeasureError> {
        // μ_A = μ_B / |A:B|
        let idx = self.index(&m.base, target)?;
        Ok(HaarMeasure::new(&m.coefficient / &idx, target))
    }

    /// Equality in `h_G`.
    pub fn equal(&self, a: &HaarMeasure, b: &HaarMeasure) -> Result<bool, MeasureError> {
        Ok(self.rebase(b, &a.base)?.coefficient == a.coefficient)
    }

    /// `a + b`, expressed in the base of `a`.
    pub fn add(&self, a: &HaarMeasure, b: &HaarMeasure) -> Result<HaarMeasure, MeasureError> {
        let b = self.rebase(b, &a.base)?;
        Ok(HaarMeasure::new(&a.coefficient + &b.coefficient, a.base.clone()))
    }

    /// Parses lines `index U V a b` (declaring `|U:U∩V| = a`, `|V:U∩V| = b`)
    /// and `order G m` (declaring `|G:1| = m`).
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut ctx = SubgroupContext::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let Some(line) = content_line(raw) else { continue };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let positive = |t: &str| -> Result<BigInt, ParseError> {
                t.parse::<BigInt>()
                    .ok()
                    .filter(|v| v.is_positive())
                    .ok_or_else(|| ParseError::new(line_no, format!("expected a positive integer, got {t:?}")))
            };
            let result = match toks.as_slice() {
                ["index", u, v, a, b] => ctx.declare_index(u, v, positive(a)?, positive(b)?),
                ["order", g, m] => ctx.declare_order(g, positive(m)?),
                ["subgroup", g] => {
                    ctx.add_subgroup(g);
                    Ok(())
                }
                _ => return Err(ParseError::new(line_no, format!("expected `index U V a b` or `order G m`, got {line:?}"))),
            };
            result.map_err(|e| ParseError::new(line_no, e.to_string()))?;
        }
        Ok(ctx)
    }
}

/// Parses `c * mu[BASE]`.
pub fn parse_measure(s: &str) -> Option<HaarMeasure> {
    let (c, rest) = s.split_once('*')?;
    let base = rest.trim().strip_prefix("mu[")?.strip_suffix(']')?;
    Some(HaarMeasure::new(parse_rational(c).ok()?, base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    #[test]
    fn subgroup_of_index_five() {
        let mut ctx = SubgroupContext::new();
        ctx.declare_index("U", "O", 5, 1).unwrap();
        let m = ctx.rebase(&HaarMeasure::unit("O"), "U").unwrap();
        assert_eq!(m, HaarMeasure::new(int(5), "U"));
        assert_eq!(ctx.rebase(&m, "O").unwrap(), HaarMeasure::unit("O"));
        // μ_O(O) = 1 and μ_U(O) = 1/5, so μ_O = 5 μ_U
        assert_eq!(ctx.index("O", "U").unwrap(), ratio(1, 5));
    }

    #[test]
    fn orientation_of_general_pair() {
        let mut ctx = SubgroupContext::new();
        ctx.declare_index("U", "V", 6, 4).unwrap();
        let m = ctx.rebase(&HaarMeasure::unit("U"), "V").unwrap();
        assert_eq!(m.coefficient, ratio(2, 3));
        assert_eq!(ctx.rebase(&m, "U").unwrap(), HaarMeasure::unit("U"));
    }

    #[test]
    fn finite_group_counts_points() {
        let mut ctx = SubgroupContext::new();
        ctx.declare_order("G", 6).unwrap();
        let m = ctx.rebase(&HaarMeasure::unit("G"), TRIVIAL).unwrap();
        assert_eq!(m.to_string(), "1/6 * mu[1]");
    }

    #[test]
    fn undeclared_pair_is_an_error() {
        let mut ctx = SubgroupContext::new();
        ctx.declare_index("A", "B", 2, 1).unwrap();
        ctx.add_subgroup("C");
        let err = ctx.rebase(&HaarMeasure::unit("A"), "C").unwrap_err();
        assert!(err.to_string().starts_with("incommensurable or undeclared pair"));
        assert!(ctx.rebase(&HaarMeasure::unit("A"), "Z").is_err());
        assert_eq!(ctx.rebase(&HaarMeasure::unit("Z"), "Z").unwrap(), HaarMeasure::unit("Z"));
    }

    #[test]
    fn inconsistent_cycle_is_rejected() {
        let mut ctx = SubgroupContext::new();
        ctx.declare_index("A", "B", 2, 1).unwrap();
        ctx.declare_index("B", "C", 3, 1).unwrap();
        ctx.declare_index("A", "C", 6, 1).unwrap();
        let err = ctx.declare_index("C", "A", 1, 5).unwrap_err();
        match err {
            MeasureError::InconsistentCycle { cycle, .. } => {
                assert_eq!(cycle.first(), cycle.last());
                assert!(cycle.len() >= 3);
            }
            other => panic!("unexpected {other}"),
        }
        // the context is unchanged
        assert_eq!(ctx.index("A", "C").unwrap(), int(6));
    }

    #[test]
    fn signs() {
        assert_eq!(HaarMeasure::new(ratio(-2, 4), "e").sign(), Sign::Negative);
        assert_eq!(HaarMeasure::zero("e").sign(), Sign::Zero);
        assert_eq!(HaarMeasure::unit("G").sign(), Sign::Positive);
    }

    #[test]
    fn parse_context_and_measure() {
        let ctx = SubgroupContext::parse("# ctx\nindex P B 3 1\norder B 8\n").unwrap();
        assert_eq!(ctx.index("P", TRIVIAL).unwrap(), int(24));
        let err = SubgroupContext::parse("index P B 3\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = SubgroupContext::parse("index P B 3 1\nindex P B 2 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        let m = parse_measure("-1/6 * mu[1]").unwrap();
        assert_eq!(m, HaarMeasure::new(ratio(-1, 6), TRIVIAL));
        assert_eq!(parse_measure(&m.to_string()), Some(m));
    }
}
