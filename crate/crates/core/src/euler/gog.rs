//! Finite graphs of profinite groups and the Euler–Poincaré characteristic
//! of their fundamental group,
//! `χ̃_Π = Σ_v 1·μ_{𝒢_v} − Σ_e 1·μ_{𝒢_e}` (one term per geometric edge).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::BigRational;
use crate::measure::{HaarMeasure, MeasureError, Sign, SubgroupContext, TRIVIAL};
use crate::{content_line, ParseError};

use super::EulerError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    /// Order of the vertex group when it is finite.
    pub order: Option<BigInt>,
}

/// A geometric edge from `origin` to `terminus` with
/// `i_t = |𝒢_{t(e)} : 𝒢_e|` and `i_o = |𝒢_{o(e)} : 𝒢_e|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub origin: String,
    pub terminus: String,
    pub i_t: BigInt,
    pub i_o: BigInt,
    pub order: Option<BigInt>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.origin == self.terminus
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl GraphOfGroups {
    /// Validates names, endpoints, indices, connectivity and finite orders.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, EulerError> {
        let invalid = |m: String| Err(EulerError::InvalidGraph(m));
        if vertices.is_empty() {
            return invalid("no vertices".into());
        }
        let mut names = BTreeSet::new();
        for n in vertices.iter().map(|v| &v.name).chain(edges.iter().map(|e| &e.name)) {
            if n == TRIVIAL {
                return invalid(format!("the name {TRIVIAL:?} is reserved for the trivial group"));
            }
            if !names.insert(n.clone()) {
                return invalid(format!("duplicate name {n:?}"));
            }
        }
        let orders: BTreeMap<&str, Option<&BigInt>> =
            vertices.iter().map(|v| (v.name.as_str(), v.order.as_ref())).collect();
        for v in &vertices {
            if v.order.as_ref().is_some_and(|m| !m.is_positive()) {
                return invalid(format!("vertex {} has non-positive order", v.name));
            }
        }
        for e in &edges {
            for end in [&e.origin, &e.terminus] {
                if !orders.contains_key(end.as_str()) {
                    return invalid(format!("edge {} refers to unknown vertex {end:?}", e.name));
                }
            }
            if !e.i_t.is_positive() || !e.i_o.is_positive() {
                return invalid(format!("edge {} has a non-positive index", e.name));
            }
            // every known order must be compatible: |𝒢_v| = index · |𝒢_e|
            let mut derived: Vec<BigInt> = e.order.iter().cloned().collect();
            for (end, idx) in [(&e.terminus, &e.i_t), (&e.origin, &e.i_o)] {
                if let Some(m) = orders[end.as_str()] {
                    let (q, r) = m.div_rem(idx);
                    if !r.is_zero() {
                        return invalid(format!("edge {}: index {idx} does not divide |{end}| = {m}", e.name));
                    }
                    derived.push(q);
                }
            }
            if derived.iter().any(|d| d != &derived[0]) {
                return invalid(format!("edge {}: inconsistent group orders", e.name));
            }
        }
        let g = GraphOfGroups { vertices, edges };
        if !g.is_connected() {
            return invalid("the graph is not connected".into());
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let mut seen = BTreeSet::from([self.vertices[0].name.as_str()]);
        let mut queue = VecDeque::from([self.vertices[0].name.as_str()]);
        while let Some(x) = queue.pop_front() {
            for e in &self.edges {
                for (a, b) in [(&e.origin, &e.terminus), (&e.terminus, &e.origin)] {
                    if a == x && seen.insert(b.as_str()) {
                        queue.push_back(b.as_str());
                    }
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// True when every vertex group comes with a finite order.
    pub fn all_finite(&self) -> bool {
        self.vertices.iter().all(|v| v.order.is_some())
    }

    /// Order of the edge group, given or derived from an endpoint.
    fn edge_order(&self, e: &Edge) -> Option<BigInt> {
        if let Some(k) = &e.order {
            return Some(k.clone());
        }
        let order_of = |n: &str| self.vertices.iter().find(|v| v.name == n).and_then(|v| v.order.clone());
        order_of(&e.terminus)
            .map(|m| m / &e.i_t)
            .or_else(|| order_of(&e.origin).map(|m| m / &e.i_o))
    }

    /// Parses lines `vertex NAME [order M]` and
    /// `edge NAME V1 V2 it I1 io I2 [order K]`, where the edge runs from
    /// `V1 = o(e)` to `V2 = t(e)`, `I1 = |𝒢_{V2} : 𝒢_e|` and
    /// `I2 = |𝒢_{V1} : 𝒢_e|`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
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
            match toks.as_slice() {
                ["vertex", name] => vertices.push(Vertex {
                    name: name.to_string(),
                    order: None,
                }),
                ["vertex", name, "order", m] => vertices.push(Vertex {
                    name: name.to_string(),
                    order: Some(positive(m)?),
                }),
                ["edge", name, v1, v2, "it", i1, "io", i2, rest @ ..] => {
                    let order = match rest {
                        [] => None,
                        ["order", k] => Some(positive(k)?),
                        _ => return Err(ParseError::new(line_no, "expected `order K` or end of line after the indices")),
                    };
                    edges.push(Edge {
                        name: name.to_string(),
                        origin: v1.to_string(),
                        terminus: v2.to_string(),
                        i_t: positive(i1)?,
                        i_o: positive(i2)?,
                        order,
                    });
                }
                _ => {
                    return Err(ParseError::new(
                        line_no,
                        format!("expected `vertex NAME [order M]` or `edge NAME V1 V2 it I1 io I2 [order K]`, got {line:?}"),
                    ))
                }
            }
        }
        GraphOfGroups::new(vertices, edges).map_err(|e| ParseError::new(0, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            match &v.order {
                Some(m) => out.push_str(&format!("vertex {} order {m}\n", v.name)),
                None => out.push_str(&format!("vertex {}\n", v.name)),
            }
        }
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {} it {} io {}", e.name, e.origin, e.terminus, e.i_t, e.i_o));
            if let Some(k) = &e.order {
                out.push_str(&format!(" order {k}"));
            }
            out.push('\n');
        }
        out
    }

    /// Commensurability context of all vertex and edge groups, inside `Π`.
    /// Fails exactly when `Π` is not unimodular (or finite orders clash).
    pub fn context(&self) -> Result<SubgroupContext, EulerError> {
        let mut ctx = SubgroupContext::new();
        for v in &self.vertices {
            ctx.add_subgroup(&v.name);
        }
        for e in &self.edges {
            for (end, idx) in [(&e.terminus, &e.i_t), (&e.origin, &e.i_o)] {
                ctx.declare_index(end, &e.name, idx.clone(), 1).map_err(|err| match err {
                    MeasureError::InconsistentCycle { cycle, ratio } => EulerError::NotUnimodular { cycle, ratio },
                    other => EulerError::Measure(other),
                })?;
            }
        }
        let mut finite: Vec<(String, BigInt)> =
            self.vertices.iter().filter_map(|v| v.order.clone().map(|m| (v.name.clone(), m))).collect();
        finite.extend(self.edges.iter().filter_map(|e| self.edge_order(e).map(|k| (e.name.clone(), k))));
        for (name, m) in finite {
            ctx.declare_order(&name, m).map_err(|err| {
                EulerError::InvalidGraph(format!("finite group orders are inconsistent with the indices: {err}"))
            })?;
        }
        Ok(ctx)
    }

    /// `μ_{1}` when all groups are finite, otherwise the group of the
    /// lexicographically first edge (or first vertex, if there are no edges).
    pub fn default_base(&self) -> String {
        if self.all_finite() {
            return TRIVIAL.to_string();
        }
        match self.edges.iter().map(|e| &e.name).min() {
            Some(e) => e.clone(),
            None => self.vertices.iter().map(|v| &v.name).min().expect("non-empty").clone(),
        }
    }

    /// Contracts non-loop edges with an index equal to 1 until none remain.
    /// If `|𝒢_{o(e)} : 𝒢_e| = 1` the origin is absorbed into the terminus and
    /// indices at the absorbed vertex are multiplied by `i_t(e)`.
    pub fn collapse(&self) -> GraphOfGroups {
        let mut g = self.clone();
        while let Some(pos) = g
            .edges
            .iter()
            .position(|e| !e.is_loop() && (e.i_o.is_one() || e.i_t.is_one()))
        {
            let e = g.edges.remove(pos);
            let (gone, kept, factor) = if e.i_o.is_one() {
                (e.origin, e.terminus, e.i_t)
            } else {
                (e.terminus, e.origin, e.i_o)
            };
            g.vertices.retain(|v| v.name != gone);
            for f in g.edges.iter_mut() {
                if f.terminus == gone {
                    f.terminus = kept.clone();
                    f.i_t *= &factor;
                }
                if f.origin == gone {
                    f.origin = kept.clone();
                    f.i_o *= &factor;
                }
            }
        }
        g
    }
}

/// Result of [`euler_graph_of_groups`].
#[derive(Debug, Clone)]
pub struct GraphOfGroupsEuler {
    pub chi: HaarMeasure,
    pub context: SubgroupContext,
}

/// `χ̃_Π` in the requested base (default: [`GraphOfGroups::default_base`]).
/// Rejects non-unimodular input with the violating cycle.
pub fn euler_graph_of_groups(g: &GraphOfGroups, base: Option<&str>) -> Result<GraphOfGroupsEuler, EulerError> {
    let ctx = g.context()?;
    let base = base.map(str::to_string).unwrap_or_else(|| g.default_base());
    let mut total = BigRational::zero();
    for v in &g.vertices {
        total += ctx.rebase(&HaarMeasure::unit(v.name.as_str()), &base)?.coefficient;
    }
    for e in &g.edges {
        total -= ctx.rebase(&HaarMeasure::unit(e.name.as_str()), &base)?.coefficient;
    }
    Ok(GraphOfGroupsEuler {
        chi: HaarMeasure::new(total, base),
        context: ctx,
    })
}

/// `1·μ_𝒢_e ≥ Σ 1·μ_𝒢_v` over the vertices `covers` charged to this edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeInequality {
    pub edge: String,
    pub covers: Vec<String>,
    pub edge_measure: BigRational,
    pub covered_measure: BigRational,
}

impl EdgeInequality {
    pub fn holds(&self) -> bool {
        self.edge_measure >= self.covered_measure
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonpositivityVerdict {
    /// The collapsed graph is a single vertex: `Π` is compact and `χ̃ > 0`.
    Compact,
    /// Every edge inequality holds, hence `χ̃_Π ≤ 0`.
    NonPositive,
    /// Some inequality failed.
    Violated,
}

#[derive(Debug, Clone)]
pub struct NonpositivityReport {
    pub chi: HaarMeasure,
    pub collapsed: GraphOfGroups,
    pub verdict: NonpositivityVerdict,
    /// Each collapsed edge with the vertices charged to it. Summing gives
    /// `Σ_e μ_e ≥ Σ_v μ_v`.
    pub certificate: Vec<EdgeInequality>,
}

impl NonpositivityReport {
    /// Whether `χ̃_Π ≤ 0`.
    pub fn holds(&self) -> bool {
        self.chi.sign() != Sign::Positive
    }
}

/// Checks `χ̃_Π ≤ 0` for a unimodular non-compact `Π`, with a certificate.
///
/// After collapsing, every non-loop edge has both indices `≥ 2`, so
/// `μ_e ≥ μ_{o(e)} + μ_{t(e)}`; on a spanning tree rooted at `r` the first
/// edge at `r` is charged with `r` and its other end, and every other vertex
/// with its parent edge.
pub fn check_nonpositive(g: &GraphOfGroups) -> Result<NonpositivityReport, EulerError> {
    let base = g.default_base();
    let chi = euler_graph_of_groups(g, Some(&base))?.chi;
    let collapsed = g.collapse();
    if collapsed.edges.is_empty() {
        return Ok(NonpositivityReport {
            chi,
            collapsed,
            verdict: NonpositivityVerdict::Compact,
            certificate: Vec::new(),
        });
    }
    // contraction keeps every surviving vertex and edge group, so the
    // original context still measures them
    let ctx = g.context()?;
    let mu = |name: &str| -> Result<BigRational, EulerError> {
        Ok(ctx.rebase(&HaarMeasure::unit(name), &base)?.coefficient)
    };
    let mut charged: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let root = collapsed.vertices.iter().map(|v| v.name.clone()).min().expect("non-empty");
    let mut seen = BTreeSet::from([root.clone()]);
    let mut queue = VecDeque::from([root.clone()]);
    let mut root_edge_used = false;
    while let Some(x) = queue.pop_front() {
        for e in &collapsed.edges {
            let other = if e.origin == x {
                &e.terminus
            } else if e.terminus == x {
                &e.origin
            } else {
                continue;
            };
            if seen.insert(other.clone()) {
                let covers = charged.entry(e.name.clone()).or_default();
                if x == root && !root_edge_used {
                    covers.push(root.clone());
                    root_edge_used = true;
                }
                covers.push(other.clone());
                queue.push_back(other.clone());
            }
        }
    }
    if !root_edge_used {
        // a single vertex carrying loops
        let first = collapsed.edges[0].name.clone();
        charged.entry(first).or_default().push(root.clone());
    }
    let mut certificate = Vec::new();
    for e in &collapsed.edges {
        let covers = charged.remove(&e.name).unwrap_or_default();
        let mut covered = BigRational::zero();
        for v in &covers {
            covered += mu(v)?;
        }
        certificate.push(EdgeInequality {
            edge: e.name.clone(),
            covers,
            edge_measure: mu(&e.name)?,
            covered_measure: covered,
        });
    }
    let all_hold = certificate.iter().all(EdgeInequality::holds);
    let verdict = if all_hold && chi.sign() != Sign::Positive {
        NonpositivityVerdict::NonPositive
    } else {
        NonpositivityVerdict::Violated
    };
    Ok(NonpositivityReport {
        chi,
        collapsed,
        verdict,
        certificate,
    })
}
