//! Alternating sums over orbits of cells: `χ̃_G = Σ_k (-1)^k Σ_{ω ∈ Ω_k} 1·μ_{G_ω}`.
//!
//! Stabilizers are taken to be the stabilizers of the cell up to
//! orientation, so no orientation characters appear.

use num_traits::Zero;

use crate::algebra::BigRational;
use crate::coxeter::{CoxeterSystem, GenSet};
use crate::measure::{HaarMeasure, SubgroupContext};
use crate::{content_line, ParseError};

use super::{check_q, EulerError, CHAMBER_BASE};

/// Orbit representatives by dimension: `orbits[k]` lists the stabilizer of
/// every orbit of `k`-cells.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrbitComplexData {
    pub orbits: Vec<Vec<String>>,
}

impl OrbitComplexData {
    pub fn new(dim: usize) -> Self {
        OrbitComplexData {
            orbits: vec![Vec::new(); dim + 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.orbits.len().saturating_sub(1)
    }

    pub fn push(&mut self, k: usize, stabilizer: impl Into<String>) {
        if k >= self.orbits.len() {
            self.orbits.resize(k + 1, Vec::new());
        }
        self.orbits[k].push(stabilizer.into());
    }

    /// Parses `dim D` followed by lines `orbit K SUBGROUP_ID`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut data: Option<OrbitComplexData> = None;
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let Some(line) = content_line(raw) else { continue };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["dim", d] => {
                    if data.is_some() {
                        return Err(ParseError::new(line_no, "duplicate `dim` directive"));
                    }
                    let d: usize = d
                        .parse()
                        .map_err(|_| ParseError::new(line_no, format!("invalid dimension {d:?}")))?;
                    data = Some(OrbitComplexData::new(d));
                }
                ["orbit", k, id] => {
                    let data = data
                        .as_mut()
                        .ok_or_else(|| ParseError::new(line_no, "`orbit` before `dim`"))?;
                    let k: usize = k
                        .parse()
                        .map_err(|_| ParseError::new(line_no, format!("invalid cell dimension {k:?}")))?;
                    if k > data.dim() {
                        return Err(ParseError::new(line_no, format!("cell dimension {k} exceeds dim {}", data.dim())));
                    }
                    data.push(k, *id);
                }
                _ => return Err(ParseError::new(line_no, format!("expected `dim D` or `orbit K ID`, got {line:?}"))),
            }
        }
        data.ok_or_else(|| ParseError::new(0, "missing `dim` directive"))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim());
        for (k, layer) in self.orbits.iter().enumerate() {
            for id in layer {
                out.push_str(&format!("orbit {k} {id}\n"));
            }
        }
        out
    }
}

/// The alternating orbit sum, expressed in `μ_base`.
pub fn euler_from_orbits(data: &OrbitComplexData, ctx: &SubgroupContext, base: &str) -> Result<HaarMeasure, EulerError> {
    let mut total = BigRational::zero();
    for (k, layer) in data.orbits.iter().enumerate() {
        for id in layer {
            let term = ctx
                .rebase(&HaarMeasure::unit(id.as_str()), base)
                .map_err(|_| EulerError::UnresolvableStabilizer(format!("{id} (not commensurable with {base})")))?;
            if k % 2 == 0 {
                total += term.coefficient;
            } else {
                total -= term.coefficient;
            }
        }
    }
    Ok(HaarMeasure::new(total, base))
}

/// Name of the parahoric `P_T`: `B` for `T = ∅`, otherwise e.g. `P{1,3}`
/// (1-based generators).
pub fn parahoric_name(t: GenSet) -> String {
    if t.is_empty() {
        CHAMBER_BASE.to_string()
    } else {
        format!("P{t}")
    }
}

/// Orbit data of a chamber-transitive, type-preserving action on the Davis
/// realization of a building of type `(W, S)` and thickness `q + 1`.
///
/// The cells of the barycentric subdivision of one chamber are the chains
/// `T_0 ⊊ ... ⊊ T_k` of spherical subsets; each chain is one orbit of
/// `k`-simplices with stabilizer `P_{T_0}`. The context records
/// `|P_T : B| = γ_T(q)`.
pub fn davis_orbit_data(sys: &CoxeterSystem, q: u64) -> Result<(OrbitComplexData, SubgroupContext), EulerError> {
    check_q(q)?;
    let spherical = sys.spherical_subsets();
    let mut ctx = SubgroupContext::new();
    ctx.add_subgroup(CHAMBER_BASE);
    let qr = BigRational::from_integer(q.into());
    for &t in &spherical {
        if t.is_empty() {
            continue;
        }
        let index = sys.growth_polynomial_of(t)?.eval(&qr);
        ctx.declare_index(&parahoric_name(t), CHAMBER_BASE, index.to_integer(), 1)?;
    }
    let mut data = OrbitComplexData::new(0);
    // Depth-first over chains, extended upwards from their least element.
    fn extend(chain: &mut Vec<GenSet>, spherical: &[GenSet], data: &mut OrbitComplexData) {
        data.push(chain.len() - 1, parahoric_name(chain[0]));
        let top = *chain.last().expect("non-empty chain");
        for &u in spherical {
            if top.is_subset(u) && top != u {
                chain.push(u);
                extend(chain, spherical, data);
                chain.pop();
            }
        }
    }
    for &t in &spherical {
        extend(&mut vec![t], &spherical, &mut data);
    }
    Ok((data, ctx))
}
