use std::fs;
use std::path::Path;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use tdlc::algebra::{parse_rational, BigRational, RationalFunction};
use tdlc::coxeter::{systems, CoxeterSystem, GenSet};
use tdlc::euler::{
    check_nonpositive, davis_orbit_data, euler_building, euler_chevalley, euler_from_lattice, euler_from_orbits,
    euler_graph_of_groups, parahoric_name, CartanType, ChevalleyDatum, GraphOfGroups, NonpositivityVerdict,
    OrbitComplexData, CHAMBER_BASE,
};
use tdlc::hecke::{format_element, parse_elements, parse_matrix, HeckeAlgebra};
use tdlc::measure::{HaarMeasure, SubgroupContext};
use tdlc::verify::{self, Suite};
use tdlc::zeta::{
    chi_from_zeta, level_consistency, parabolic_factorization, pro_p_name, zeta_chamber, zeta_parabolic, zeta_pro_p,
    zeta_tree_edge, zeta_tree_vertex, DirichletSeries, ParabolicZetaData, ProPRadicalData,
};

use crate::args::{Command, EulerCommand, HeckeArgs, HeckeOp, TreeSubgroup, ZetaCommand};
use crate::output::Outcome;

/// Bad input or a failed computation on it; exit status 1.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Res = Result<Outcome, InputError>;

pub fn dispatch(cmd: &Command) -> Res {
    match cmd {
        Command::Growth { coxeter, max_len, exact } => growth(coxeter, *max_len, *exact),
        Command::Euler(e) => euler(e),
        Command::Zeta(z) => zeta(z),
        Command::Hecke(h) => hecke(h),
        Command::Verify { suite } => verify_suite(suite),
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn read_parsed<T, E: std::fmt::Display>(path: &Path, parse: impl FnOnce(&str) -> Result<T, E>) -> Result<T, InputError> {
    let text = read(path)?;
    parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<CoxeterSystem, InputError> {
    read_parsed(path, CoxeterSystem::parse)
}

/// A single residue field size; thickness vectors are rejected.
fn parse_q(raw: &str) -> Result<u64, InputError> {
    let raw = raw.trim();
    if raw.contains(',') || raw.contains(char::is_whitespace) {
        return Err(InputError(format!(
            "non-uniform thickness {raw:?} is not supported: the building must have uniform thickness q+1 for a single q"
        )));
    }
    let q: u64 = raw.parse().map_err(|_| InputError(format!("invalid q {raw:?}: expected an integer >= 2")))?;
    if q < 2 {
        return Err(InputError(format!("q must be at least 2, got {q}")));
    }
    Ok(q)
}

fn parse_subset(raw: &str, rank: usize) -> Result<GenSet, InputError> {
    let mut set = GenSet::EMPTY;
    for tok in raw.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match tok.parse::<usize>() {
            Ok(i) if (1..=rank).contains(&i) => set = set.with(i - 1),
            _ => return Err(InputError(format!("invalid generator {tok:?} in --parabolic: expected 1..={rank}"))),
        }
    }
    Ok(set)
}

fn rat(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

fn measure_json(m: &HaarMeasure) -> Value {
    json!({"coefficient": m.coefficient.to_string(), "base": m.base, "sign": m.sign().to_string()})
}

fn series_json(s: &DirichletSeries) -> Value {
    let terms: Vec<Value> = s.terms().map(|(n, c)| json!({"n": n.to_string(), "count": c.to_string()})).collect();
    json!({"bound": s.bound().to_string(), "terms": terms})
}

fn series_lines(out: &mut Outcome, s: &DirichletSeries) {
    out.line(format!("# dirichlet coefficients (n count), complete for n <= {}", s.bound()));
    for (n, c) in s.terms() {
        out.line(format!("{n} {c}"));
    }
}

fn rational_json(f: &RationalFunction) -> Value {
    json!({"numerator": f.numerator().to_string(), "denominator": f.denominator().to_string()})
}

fn growth(path: &Path, max_len: usize, exact: bool) -> Res {
    let sys = load_system(path)?;
    let mut out = Outcome::new("growth");
    out.input("coxeter", path.display()).input("max_len", max_len).input("exact", exact);
    let e = sys.enumerate_by_length(max_len);
    let counts = e.counts();
    out.line(format!("# elements by length, lengths 0..={max_len}"));
    for (m, c) in counts.iter().enumerate() {
        out.line(format!("{m} {c}"));
    }
    out.set("counts", json!(counts)).set("exhaustive", json!(e.is_exhaustive()));
    if let Some(desc) = sys.classify_finite() {
        out.line(format!("finite type: {} (order {})", desc.type_name(), desc.order()));
        out.set("finite_type", json!(desc.type_name()));
    }
    if exact {
        let gamma = sys.growth_series();
        let expansion = gamma.expand(max_len)?;
        out.line(format!("growth series (num | den in t): {gamma}"));
        out.set("growth_series", rational_json(&gamma));
        let ok = (0..=max_len).all(|m| expansion.coeff(m) == BigRational::from_integer(counts[m].into()));
        out.check("expansion of the growth series = counts by length", ok, format!("to order {max_len}"));
    }
    Ok(out)
}

fn euler(cmd: &EulerCommand) -> Res {
    match cmd {
        EulerCommand::Building { coxeter, q } => {
            let sys = load_system(coxeter)?;
            let q = parse_q(q)?;
            let mut out = Outcome::new("euler building");
            out.input("coxeter", coxeter.display()).input("q", q);
            let chi = euler_building(&sys, q)?;
            out.line(format!("chi = {chi}")).line(format!("sign: {}", chi.sign()));
            out.set("chi", measure_json(&chi));
            let (data, ctx) = davis_orbit_data(&sys, q)?;
            let orbit = euler_from_orbits(&data, &ctx, CHAMBER_BASE)?;
            out.check(
                "alternating orbit sum over the Davis chamber = 1/gamma(q) mu_B",
                orbit == chi,
                format!("orbit route gives {orbit}"),
            );
            Ok(out)
        }
        EulerCommand::Gog { graph, base } => {
            let g = read_parsed(graph, GraphOfGroups::parse)?;
            let mut out = Outcome::new("euler gog");
            out.input("graph", graph.display());
            let r = euler_graph_of_groups(&g, base.as_deref())?;
            out.input("base", &r.chi.base);
            out.line(format!("chi = {}", r.chi)).line(format!("sign: {}", r.chi.sign())).line("unimodular: yes");
            out.set("chi", measure_json(&r.chi)).set("unimodular", json!(true));
            let rep = check_nonpositive(&g)?;
            out.line(format!(
                "collapsed graph: {} vertices, {} edges",
                rep.collapsed.vertices.len(),
                rep.collapsed.edges.len()
            ));
            let verdict = match rep.verdict {
                NonpositivityVerdict::Compact => "compact",
                NonpositivityVerdict::NonPositive => "non-positive",
                NonpositivityVerdict::Violated => "violated",
            };
            out.line(format!("non-positivity: {verdict}"));
            let mut cert = Vec::new();
            for ineq in &rep.certificate {
                out.line(format!(
                    "  edge {} covers [{}]: {} >= {} (units of mu[{}])",
                    ineq.edge,
                    ineq.covers.join(" "),
                    ineq.edge_measure,
                    ineq.covered_measure,
                    rep.chi.base
                ));
                cert.push(json!({
                    "edge": ineq.edge,
                    "covers": ineq.covers,
                    "edge_measure": ineq.edge_measure.to_string(),
                    "covered_measure": ineq.covered_measure.to_string(),
                    "holds": ineq.holds(),
                }));
            }
            out.set("collapsed", json!(rep.collapsed.to_text()))
                .set("nonpositivity", json!(verdict))
                .set("certificate", json!(cert));
            if rep.verdict != NonpositivityVerdict::Compact {
                out.check(
                    "chi <= 0 for a non-compact unimodular fundamental group",
                    rep.verdict == NonpositivityVerdict::NonPositive,
                    "",
                );
            }
            Ok(out)
        }
        EulerCommand::Chevalley { ty, rank, q } => {
            let q = parse_q(q)?;
            let cartan = CartanType::new(*ty, *rank)?;
            let mut out = Outcome::new("euler chevalley");
            out.input("type", cartan.letter).input("rank", rank).input("q", q);
            let chi = euler_chevalley(&ChevalleyDatum::new(cartan, q)?);
            out.line(format!("chi = {chi}")).line(format!("sign: {}", chi.sign()));
            out.set("chi", measure_json(&chi)).set("exponents", json!(cartan.exponents()));
            let building = euler_building(&cartan.affine_system(), q)?;
            out.check(
                "closed product formula = 1/gamma(q) for the affine Weyl group (I = B)",
                building.coefficient == chi.coefficient,
                format!("building route gives {building}"),
            );
            Ok(out)
        }
        EulerCommand::Complex { file, ctx, base } => {
            let data = read_parsed(file, OrbitComplexData::parse)?;
            let mut context = match ctx {
                Some(p) => read_parsed(p, SubgroupContext::parse)?,
                None => SubgroupContext::new(),
            };
            for id in data.orbits.iter().flatten() {
                context.add_subgroup(id);
            }
            let base = match base {
                Some(b) => b.clone(),
                None => data
                    .orbits
                    .iter()
                    .flatten()
                    .next()
                    .cloned()
                    .ok_or_else(|| InputError("the orbit file lists no orbits".into()))?,
            };
            let mut out = Outcome::new("euler complex");
            out.input("file", file.display());
            if let Some(p) = ctx {
                out.input("ctx", p.display());
            }
            out.input("base", &base);
            let chi = euler_from_orbits(&data, &context, &base)?;
            out.line(format!("chi = {chi}")).line(format!("sign: {}", chi.sign()));
            out.set("chi", measure_json(&chi));
            Ok(out)
        }
        EulerCommand::Lattice { chi, covol, base } => {
            let c = parse_rational(chi)?;
            let v = parse_rational(covol)?;
            let mut out = Outcome::new("euler lattice");
            out.input("chi", &c).input("covol", &v).input("base", base);
            let m = euler_from_lattice(&c, &v, base)?;
            out.line(format!("chi = {m}")).line(format!("sign: {}", m.sign()));
            out.set("chi", measure_json(&m));
            Ok(out)
        }
    }
}

fn zeta(cmd: &ZetaCommand) -> Res {
    match cmd {
        ZetaCommand::Building {
            coxeter,
            q,
            parabolic,
            pro_p,
            ssrank,
            max_len,
            truncate,
            eval_at,
        } => {
            let sys = load_system(coxeter)?;
            let q = parse_q(q)?;
            let qb = num_bigint::BigUint::from(q);
            // enumerate far enough to make every coefficient up to the bound complete
            let len = match truncate {
                Some(n) => {
                    let mut l = 0usize;
                    while num_traits::pow(qb.clone(), l + 1) <= num_bigint::BigUint::from(*n) {
                        l += 1;
                    }
                    l
                }
                None => *max_len,
            };
            let bound = match truncate {
                Some(n) => num_bigint::BigUint::from(*n),
                None => num_traits::pow(qb.clone(), len),
            };
            let j = match parabolic {
                Some(p) => Some(parse_subset(p, sys.rank())?),
                None => None,
            };
            let mut out = Outcome::new("zeta building");
            out.input("coxeter", coxeter.display()).input("q", q).input("max_len", len).input("truncate", &bound);
            if let Some(j) = j {
                out.input("parabolic", j);
            }
            if let Some(s) = eval_at {
                out.input("eval_at", s);
            }
            if !*pro_p && j.is_none() {
                let z = zeta_chamber(&sys, q, len)?;
                let series = z.series.truncated(&bound);
                out.input("level", "chamber");
                out.line("# rational form in t, where t = q^-s").line(format!("zeta(t) = {}", z.rational));
                series_lines(&mut out, &series);
                let value = z.value_at_minus_one()?;
                let chi = chi_from_zeta(&value, CHAMBER_BASE)?;
                out.line(format!("value at s=-1: {value}")).line(format!("chi = {chi}"));
                out.set("rational", rational_json(&z.rational))
                    .set("series", series_json(&series))
                    .set("value_at_minus_one", rat(&value))
                    .set("chi", measure_json(&chi));
                if let Some(s) = eval_at {
                    let v = z.value_at(*s)?;
                    out.line(format!("value at s={s}: {v}"));
                    out.set("value_at_s", rat(&v));
                }
                let expansion = z.rational.expand(len)?;
                let ok = (0..=len).all(|m| {
                    let n = num_traits::pow(qb.clone(), m);
                    BigRational::from_integer(z.series.count(&n).into()) == expansion.coeff(m)
                });
                out.check("|R(q^m)| = [t^m] gamma(t)", ok, format!("m <= {len}"));
                return Ok(out);
            }
            let j = j.unwrap_or(GenSet::EMPTY);
            if let Some(s) = eval_at {
                if *s != -1 {
                    return Err(tdlc::zeta::ZetaError::UnsupportedEvaluation(*s).into());
                }
            }
            let par = ParabolicZetaData::new(&sys, q, j, len)?;
            let ssrank = ssrank.unwrap_or(sys.rank().saturating_sub(1));
            let data = ProPRadicalData::new(par.clone(), ssrank)?;
            let lc = level_consistency(&data)?;
            let zp = zeta_parabolic(&par)?;
            if *pro_p {
                out.input("level", "pro-p").input("ssrank", ssrank);
                let z = zeta_pro_p(&data)?;
                let series = z.series.truncated(&bound);
                let base = pro_p_name(j);
                series_lines(&mut out, &series);
                let chi = chi_from_zeta(&z.value_at_minus_one, &base)?;
                out.line(format!("|{}:{}| = {}", parahoric_name(j), base, data.radical_order()))
                    .line(format!("value at s=-1: {}", z.value_at_minus_one))
                    .line(format!("chi = {chi}"));
                out.set("series", series_json(&series))
                    .set("radical_order", json!(data.radical_order().to_string()))
                    .set("value_at_minus_one", rat(&z.value_at_minus_one))
                    .set("chi", measure_json(&chi));
                let scaled = BigRational::from_integer(data.radical_order()) * &zp.value_at_minus_one;
                out.check(
                    "zeta_{P_J^1}(-1) = |P_J:P_J^1| zeta_{P_J}(-1)",
                    scaled == z.value_at_minus_one,
                    "",
                );
                let total: BigRational = series
                    .terms()
                    .filter(|(n, _)| *n == &num_bigint::BigUint::one())
                    .map(|(_, c)| BigRational::from_integer(c.clone().into()))
                    .sum();
                out.check("|R(1)| >= 1", !total.is_zero(), "");
            } else {
                out.input("level", "parahoric");
                let series = zp.series.truncated(&bound);
                let base = parahoric_name(j);
                series_lines(&mut out, &series);
                let chi = chi_from_zeta(&zp.value_at_minus_one, &base)?;
                out.line(format!("|{}:B| = {}", base, par.chamber_index()))
                    .line(format!("value at s=-1: {}", zp.value_at_minus_one))
                    .line(format!("chi = {chi}"));
                out.set("series", series_json(&series))
                    .set("chamber_index", json!(par.chamber_index().to_string()))
                    .set("value_at_minus_one", rat(&zp.value_at_minus_one))
                    .set("chi", measure_json(&chi));
                let f = parabolic_factorization(&sys, j, len)?;
                out.check(
                    "gamma_W = gamma_J sum_Q gamma(^Q W_J) gamma(p_QJ)",
                    f.holds(),
                    format!("to order {len}"),
                );
            }
            out.check(
                "chi agrees at the chamber, parahoric and pro-p levels and with the orbit sum",
                lc.consistent(),
                "",
            );
            Ok(out)
        }
        ZetaCommand::Tree { d, subgroup, truncate } => {
            let mut out = Outcome::new("zeta tree");
            out.input("d", d).input("subgroup", format!("{subgroup:?}").to_lowercase()).input("truncate", truncate);
            let graph = GraphOfGroups::parse(&format!("vertex v\nvertex w\nedge e v w it {} io {}\n", d + 1, d + 1))?;
            let gog = euler_graph_of_groups(&graph, Some("e"))?;
            match subgroup {
                TreeSubgroup::Edge => {
                    let z = zeta_tree_edge(*d, *truncate)?;
                    out.line("# rational form in t, where t = d^-s").line(format!("zeta(t) = {}", z.rational));
                    series_lines(&mut out, &z.series);
                    let chi = chi_from_zeta(&z.value_at_minus_one, "e")?;
                    out.line(format!("value at s=-1: {}", z.value_at_minus_one)).line(format!("chi = {chi}"));
                    out.set("rational", rational_json(&z.rational))
                        .set("series", series_json(&z.series))
                        .set("value_at_minus_one", rat(&z.value_at_minus_one))
                        .set("chi", measure_json(&chi));
                    let chamber = zeta_chamber(&systems::affine_a1(), *d, 64)?;
                    let bound = z.series.bound().min(chamber.series.bound()).clone();
                    out.check(
                        "edge zeta = chamber zeta of the infinite dihedral group",
                        z.series.truncated(&bound) == chamber.series.truncated(&bound) && z.rational == chamber.rational,
                        "",
                    );
                    out.check(
                        "zeta(-1)^-1 mu_e = chi of the amalgam along the edge",
                        gog.context.equal(&chi, &gog.chi)?,
                        format!("graph of groups gives {}", gog.chi),
                    );
                }
                TreeSubgroup::Vertex => {
                    let z = zeta_tree_vertex(*d, *truncate)?;
                    out.line("# no single-variable rational form: the closed form mixes d^-s and (d+1)^-s");
                    series_lines(&mut out, &z.series);
                    let chi = chi_from_zeta(&z.value_at_minus_one, "v")?;
                    out.line(format!("value at s=-1: {}", z.value_at_minus_one)).line(format!("chi = {chi}"));
                    out.set("series", series_json(&z.series))
                        .set("value_at_minus_one", rat(&z.value_at_minus_one))
                        .set("chi", measure_json(&chi));
                    let par = ParabolicZetaData::new(&systems::affine_a1(), *d, GenSet::singleton(0), 64)?;
                    let zp = zeta_parabolic(&par)?;
                    let bound = z.series.bound().min(zp.series.bound()).clone();
                    out.check(
                        "vertex zeta = parahoric zeta of the infinite dihedral group",
                        z.series.truncated(&bound) == zp.series.truncated(&bound)
                            && z.value_at_minus_one == zp.value_at_minus_one,
                        "",
                    );
                    out.check(
                        "zeta(-1)^-1 mu_v = chi of the amalgam along the edge",
                        gog.context.equal(&chi, &gog.chi)?,
                        format!("graph of groups gives {}", gog.chi),
                    );
                }
            }
            Ok(out)
        }
    }
}

fn hecke(args: &HeckeArgs) -> Res {
    let sys = load_system(&args.coxeter)?;
    let q = parse_q(&args.q)?;
    let h = HeckeAlgebra::numeric(&sys, q)?;
    let text = read(&args.input)?;
    let with_path = |e: tdlc::ParseError| InputError(format!("{}: {e}", args.input.display()));
    let mut out = Outcome::new("hecke");
    out.input("coxeter", args.coxeter.display())
        .input("q", q)
        .input("op", format!("{:?}", args.op).to_lowercase())
        .input("input", args.input.display());
    match args.op {
        HeckeOp::Mult | HeckeOp::Trace => {
            let blocks = parse_elements(&h, &text).map_err(with_path)?;
            if blocks.is_empty() {
                return Err(InputError(format!("{}: no elements", args.input.display())));
            }
            let mut product = h.unit();
            for b in &blocks {
                product = h.mult(&product, b)?;
            }
            out.set("factors", json!(blocks.len()));
            if args.op == HeckeOp::Mult {
                out.line(format!("product = {product}"));
                out.line("# as an element file");
                for l in format_element(&product).lines() {
                    out.line(l);
                }
                out.set("product", json!(format_element(&product)));
                let eps_product = blocks.iter().fold(BigRational::one(), |acc, b| acc * h.eps(b));
                out.check("eps(a b) = eps(a) eps(b)", h.eps(&product) == eps_product, "");
            } else {
                let tau = h.trace(&product);
                let eps = h.eps(&product);
                out.line(format!("trace = {tau}")).line(format!("eps = {eps}"));
                out.set("trace", rat(&tau)).set("eps", rat(&eps));
                if blocks.len() == 2 {
                    let swapped = h.mult(&blocks[1], &blocks[0])?;
                    out.check("tau(ab) = tau(ba)", h.trace(&swapped) == tau, "");
                }
            }
        }
        HeckeOp::Rank => {
            out.input("base", &args.base);
            let m = parse_matrix(&h, &text).map_err(with_path)?;
            let in_chamber = h.hattori_stallings_rank(&m, CHAMBER_BASE)?;
            let (_, ctx) = davis_orbit_data(&sys, q)?;
            let rank = ctx.rebase(&in_chamber, &args.base)?;
            out.line(format!("rank = {rank}")).line(format!("sign: {}", rank.sign()));
            out.set("rank", measure_json(&rank)).set("dim", json!(m.dim()));
            let nonneg = !rank.coefficient.is_zero() || m.is_zero();
            out.check(
                "rank >= 0, and rank = 0 only for the zero idempotent",
                rank.coefficient >= BigRational::zero() && nonneg,
                "",
            );
        }
    }
    Ok(out)
}

fn verify_suite(name: &str) -> Res {
    let suite: Suite = name.parse().map_err(InputError)?;
    let mut out = Outcome::new("verify");
    out.input("suite", suite);
    let report = verify::run(suite);
    let mut checks = Vec::new();
    for c in &report.checks {
        out.check(format!("[{}] {} on {}", c.suite, c.identity, c.instance), c.passed, c.detail.clone());
        checks.push(json!({"suite": c.suite, "identity": c.identity, "instance": c.instance, "passed": c.passed}));
    }
    out.line(format!(
        "{} checks, {} failed",
        report.checks.len(),
        report.failures().count()
    ));
    out.set("checks", json!(checks.len())).set("passed", json!(report.passed()));
    Ok(out)
}
