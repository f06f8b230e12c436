//! Identity suites run by `tdlc verify`. Every check names the identity it
//! tests; randomized checks use a fixed seed, so reports are deterministic.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{int, ratio, BigRational, Polynomial, RationalFunction, TruncatedSeries};
use crate::coxeter::{systems, CoxeterSystem, GenSet, DEFAULT_MAX_LENGTH};
use crate::euler::{
    check_nonpositive, davis_orbit_data, euler_building, euler_chevalley, euler_from_orbits, euler_graph_of_groups,
    CartanType, ChevalleyDatum, GraphOfGroups, NonpositivityVerdict, CHAMBER_BASE,
};
use crate::hecke::{HeckeAlgebra, HeckeElement, HeckeMatrix};
use crate::measure::{HaarMeasure, Sign, SubgroupContext};
use crate::zeta::{
    chi_from_zeta, level_consistency, parabolic_factorization, zeta_chamber, zeta_iwahori_functional, zeta_parabolic,
    zeta_tree_edge, zeta_tree_vertex, ParabolicZetaData, ProPRadicalData,
};

const SEED: u64 = 0x7d1c;

/// The systems every suite runs over, by name.
pub fn reference_systems() -> Vec<(&'static str, CoxeterSystem)> {
    vec![
        ("A1", systems::a(1)),
        ("A2", systems::a(2)),
        ("A3", systems::a(3)),
        ("I2(5)", systems::dihedral(5)),
        ("A1xA1", systems::a1xa1()),
        ("~A1", systems::affine_a1()),
        ("~A2", systems::affine_a(2)),
        ("triangle(inf,inf,inf)", systems::infinite_triangle()),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Growth,
    Euler,
    Zeta,
    Hecke,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "growth" => Ok(Suite::Growth),
            "euler" => Ok(Suite::Euler),
            "zeta" => Ok(Suite::Zeta),
            "hecke" => Ok(Suite::Hecke),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?}: expected growth, euler, zeta, hecke or all")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Growth => "growth",
            Suite::Euler => "euler",
            Suite::Zeta => "zeta",
            Suite::Hecke => "hecke",
            Suite::All => "all",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    /// The identity, e.g. `chi = zeta(-1)^-1 mu_B`.
    pub identity: String,
    /// The instance it was checked on.
    pub instance: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} [{}] {} on {}", self.suite, self.identity, self.instance)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, suite: &'static str, identity: &str, instance: impl Into<String>, outcome: Result<bool, String>) {
        let (passed, detail) = match outcome {
            Ok(p) => (p, String::new()),
            Err(e) => (false, e),
        };
        self.checks.push(Check {
            suite,
            identity: identity.to_string(),
            instance: instance.into(),
            passed,
            detail,
        });
    }

    fn expect_eq<T: PartialEq + fmt::Display>(
        &mut self,
        suite: &'static str,
        identity: &str,
        instance: impl Into<String>,
        got: Result<T, String>,
        want: T,
    ) {
        let (passed, detail) = match got {
            Ok(g) if g == want => (true, String::new()),
            Ok(g) => (false, format!("got {g}, expected {want}")),
            Err(e) => (false, e),
        };
        self.checks.push(Check {
            suite,
            identity: identity.to_string(),
            instance: instance.into(),
            passed,
            detail,
        });
    }
}

pub fn run(suite: Suite) -> Report {
    let mut r = Report::default();
    if matches!(suite, Suite::Growth | Suite::All) {
        growth_suite(&mut r);
    }
    if matches!(suite, Suite::Euler | Suite::All) {
        euler_suite(&mut r);
    }
    if matches!(suite, Suite::Zeta | Suite::All) {
        zeta_suite(&mut r);
    }
    if matches!(suite, Suite::Hecke | Suite::All) {
        hecke_suite(&mut r);
    }
    r
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn q_rat(q: u64) -> BigRational {
    BigRational::from_integer(q.into())
}

fn growth_suite(r: &mut Report) {
    const S: &str = "growth";
    let order = DEFAULT_MAX_LENGTH;
    for (name, sys) in reference_systems() {
        let counts = TruncatedSeries::from_counts(sys.enumerate_by_length(order).counts(), order);
        let expanded = sys.growth_series().expand(order).map_err(err);
        r.expect_eq(S, "expansion of the growth series = counts by length", name, expanded, counts);
    }
    let bott = [
        ("~A1", systems::affine_a1(), 'A', 1),
        ("~A2", systems::affine_a(2), 'A', 2),
        ("~C2", systems::affine_c(2), 'C', 2),
        ("~G2", systems::affine_g2(), 'G', 2),
    ];
    for (name, sys, letter, rank) in bott {
        let ty = CartanType::new(letter, rank).expect("valid type");
        let fin = ty.weyl_type();
        let mut den = Polynomial::one();
        for m in fin.exponents() {
            den = den * (Polynomial::one() - Polynomial::monomial(BigRational::one(), m as usize));
        }
        let mut num = Polynomial::one();
        for m in fin.exponents() {
            num = num * Polynomial::geometric(m as usize);
        }
        let want = RationalFunction::new(num, den).map_err(err);
        match want {
            Ok(w) => r.expect_eq(S, "gamma(affine) = gamma(W) prod 1/(1 - t^m_i)", name, Ok(sys.growth_series()), w),
            Err(e) => r.record(S, "gamma(affine) = gamma(W) prod 1/(1 - t^m_i)", name, Err(e)),
        }
    }
}

/// A random unimodular graph of groups whose collapse keeps several
/// vertices: a random tree with indices `≥ 2` plus potential-compatible
/// extra edges.
fn random_unimodular_graph(rng: &mut ChaCha8Rng) -> GraphOfGroups {
    let n = rng.gen_range(2..=5);
    let mut text = String::new();
    for v in 0..n {
        text.push_str(&format!("vertex v{v}\n"));
    }
    // potential: phi(v) = measure of the vertex group in units of a fixed edge group
    let mut phi = vec![BigRational::one(); n];
    for v in 1..n {
        let p = rng.gen_range(0..v);
        let it: i64 = rng.gen_range(2..=4);
        let io: i64 = rng.gen_range(2..=4);
        phi[v] = &phi[p] * ratio(it, io);
        text.push_str(&format!("edge t{v} v{p} v{v} it {it} io {io}\n"));
    }
    for k in 0..rng.gen_range(0..=2) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let ratio_ba = &phi[b] / &phi[a];
        let scale: i64 = rng.gen_range(2..=3);
        let it = ratio_ba.numer() * BigInt::from(scale);
        let io = ratio_ba.denom() * BigInt::from(scale);
        text.push_str(&format!("edge x{k} v{a} v{b} it {it} io {io}\n"));
    }
    GraphOfGroups::parse(&text).expect("generated graph is valid")
}

fn euler_suite(r: &mut Report) {
    const S: &str = "euler";
    for q in [2u64, 3, 5] {
        let d = ChevalleyDatum::new(CartanType::new('A', 1).expect("A1"), q).expect("q >= 2");
        let closed = euler_chevalley(&d).coefficient;
        r.expect_eq(S, "chi(SL2) = -(q-1)/(q+1) mu_I", format!("q={q}"), Ok(closed.clone()), ratio(1 - q as i64, 1 + q as i64));
        let building = euler_building(&systems::affine_a1(), q).map(|m| m.coefficient).map_err(err);
        r.expect_eq(S, "Chevalley closed form = 1/gamma(q) mu_B", format!("A1, q={q}"), building, closed);
    }
    for (l, n, sys) in [('A', 2, systems::affine_a(2)), ('C', 2, systems::affine_c(2)), ('G', 2, systems::affine_g2())] {
        let ty = CartanType::new(l, n).expect("valid type");
        let closed = euler_chevalley(&ChevalleyDatum::new(ty, 2).expect("q = 2")).coefficient;
        let building = euler_building(&sys, 2).map(|m| m.coefficient).map_err(err);
        r.expect_eq(S, "Chevalley closed form = 1/gamma(q) mu_B", format!("{ty}, q=2"), building, closed);
    }
    for (name, sys) in [("~A1", systems::affine_a1()), ("~A2", systems::affine_a(2)), ("A2", systems::a(2))] {
        for q in [2u64, 3] {
            let orbit = davis_orbit_data(&sys, q)
                .and_then(|(data, ctx)| euler_from_orbits(&data, &ctx, CHAMBER_BASE))
                .map(|m| m.coefficient)
                .map_err(err);
            let building = sys.growth_series().recip().and_then(|f| f.eval(&q_rat(q)));
            match building {
                Ok(b) => r.expect_eq(S, "alternating orbit sum = 1/gamma(q) mu_B", format!("{name}, q={q}"), orbit, b),
                Err(e) => r.record(S, "alternating orbit sum = 1/gamma(q) mu_B", name, Err(err(e))),
            }
        }
    }
    for d in [2i64, 3, 5, 10] {
        let text = format!("vertex u\nvertex v\nedge e u v it {} io {}\n", d + 1, d + 1);
        let chi = GraphOfGroups::parse(&text)
            .map_err(err)
            .and_then(|g| euler_graph_of_groups(&g, None).map_err(err))
            .map(|x| x.chi);
        r.expect_eq(S, "chi(tree) = (1-d)/(1+d) mu_e", format!("d={d}"), chi, HaarMeasure::new(ratio(1 - d, 1 + d), "e"));
    }
    let amalgam = GraphOfGroups::parse("vertex A order 2\nvertex B order 3\nedge e A B it 3 io 2 order 1\n")
        .map_err(err)
        .and_then(|g| euler_graph_of_groups(&g, None).map_err(err))
        .map(|x| x.chi);
    r.expect_eq(S, "chi = sum_v mu_v - sum_e mu_e", "C2 * C3", amalgam, HaarMeasure::new(ratio(-1, 6), "1"));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for i in 0..20 {
        let g = random_unimodular_graph(&mut rng);
        match check_nonpositive(&g) {
            Ok(rep) if rep.verdict == NonpositivityVerdict::NonPositive && rep.holds() => {}
            Ok(rep) => bad.push(format!("instance {i}: verdict {:?}, chi {}", rep.verdict, rep.chi)),
            Err(e) => bad.push(format!("instance {i}: {e}")),
        }
    }
    r.record(
        S,
        "chi <= 0 for non-compact unimodular fundamental groups",
        "20 random graphs",
        if bad.is_empty() { Ok(true) } else { Err(bad.join("; ")) },
    );
    let cycle = GraphOfGroups::parse("vertex v\nedge e v v it 1 io 2\n").map_err(err).map(|g| euler_graph_of_groups(&g, None).is_err());
    r.record(S, "non-unimodular cycles are rejected", "loop with indices 1, 2", cycle);
}

fn zeta_suite(r: &mut Report) {
    const S: &str = "zeta";
    let order = DEFAULT_MAX_LENGTH;
    for (name, sys) in [("~A1", systems::affine_a1()), ("~A2", systems::affine_a(2))] {
        for q in [2u64, 3] {
            let instance = format!("{name}, q={q}");
            let outcome = zeta_chamber(&sys, q, order).map_err(err).and_then(|z| {
                let expansion = z.rational.expand(order).map_err(err)?;
                let qb = BigUint::from(q);
                let ok = (0..=order).all(|m| {
                    let n = num_traits::pow(qb.clone(), m);
                    BigRational::from_integer(BigInt::from(z.series.count(&n))) == expansion.coeff(m)
                });
                let chi = chi_from_zeta(&z.value_at_minus_one().map_err(err)?, CHAMBER_BASE).map_err(err)?;
                let product = &chi.coefficient * z.rational.eval(&q_rat(q)).map_err(err)?;
                Ok(ok && product.is_one())
            });
            r.record(S, "|R(q^m)| = [t^m] gamma(t) and chi * gamma(q) = mu_B", instance, outcome);
        }
    }
    for d in [2u64, 3, 5, 10] {
        let edge = zeta_tree_edge(d, 100_000).map_err(err);
        let chamber = zeta_chamber(&systems::affine_a1(), d, 5).map_err(err);
        let outcome = edge.and_then(|e| {
            let c = chamber?;
            let bound = c.series.bound().min(e.series.bound()).clone();
            Ok(e.series.truncated(&bound) == c.series.truncated(&bound)
                && e.rational == c.rational
                && e.value_at_minus_one == ratio(1 + d as i64, 1 - d as i64))
        });
        r.record(S, "edge zeta = chamber zeta of ~A1, value (1+d)/(1-d)", format!("d={d}"), outcome);
        let vertex = zeta_tree_vertex(d, 100_000).map(|v| v.value_at_minus_one).map_err(err);
        r.expect_eq(S, "vertex zeta at s=-1 = 1/(1-d)", format!("d={d}"), vertex, ratio(1, 1 - d as i64));
    }
    let cases = [
        ("~A1", systems::affine_a1(), vec![GenSet::singleton(0)]),
        (
            "~A2",
            systems::affine_a(2),
            vec![
                GenSet::singleton(0),
                GenSet::singleton(1),
                GenSet::singleton(2),
                GenSet::from_slice(&[0, 1]),
                GenSet::from_slice(&[0, 2]),
                GenSet::from_slice(&[1, 2]),
            ],
        ),
    ];
    for (name, sys, js) in &cases {
        for &j in js {
            let f = parabolic_factorization(sys, j, 8).map(|c| c.holds()).map_err(err);
            r.record(S, "gamma_W = gamma_J sum_Q gamma(^Q W_J) gamma(p_QJ) (order 8)", format!("{name}, J={j}"), f);
            for q in [2u64, 3] {
                let instance = format!("{name}, J={j}, q={q}");
                let outcome = ParabolicZetaData::new(sys, q, j, 6)
                    .and_then(|par| {
                        let want = sys.growth_series().eval(&q_rat(q))? / sys.growth_polynomial_of(j)?.eval(&q_rat(q));
                        let got = zeta_parabolic(&par)?.value_at_minus_one;
                        let data = ProPRadicalData::new(par, sys.rank() - 1)?;
                        let lc = level_consistency(&data)?;
                        Ok(got == want && lc.consistent())
                    })
                    .map_err(err);
                r.record(S, "zeta_PJ(-1) = gamma_W(q)/gamma_J(q); chi agrees at B, P_J, P_J^1", instance, outcome);
            }
        }
    }
    for (name, sys) in [("~A1", systems::affine_a1()), ("~A2", systems::affine_a(2)), ("~C2", systems::affine_c(2))] {
        let outcome = zeta_iwahori_functional(&sys, 2)
            .map(|rec| rec.bott_holds() && rec.functional_holds() && rec.samples_hold())
            .map_err(err);
        r.record(S, "f(1/t) = (-1)^n f(t) for the Iwahori zeta function", name, outcome);
    }
}

fn random_element(h: &HeckeAlgebra<BigRational>, pool: &[crate::coxeter::NormalForm], rng: &mut ChaCha8Rng) -> HeckeElement<BigRational> {
    let k = rng.gen_range(1..=4);
    h.element((0..k).map(|_| {
        let w = pool[rng.gen_range(0..pool.len())].clone();
        (w, ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
    }))
}

fn hecke_suite(r: &mut Report) {
    const S: &str = "hecke";
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (name, sys, len) in [("A1", systems::a(1), 1), ("A2", systems::a(2), 3), ("~A1", systems::affine_a1(), 3), ("~A2", systems::affine_a(2), 2)] {
        let pool: Vec<_> = sys.enumerate_by_length(len).elements().cloned().collect();
        for q in [2u64, 3] {
            let h = HeckeAlgebra::numeric(&sys, q).expect("q >= 2");
            let instance = format!("{name}, q={q}");
            let mut assoc = true;
            let mut trace = true;
            let mut eps = true;
            let mut star = true;
            let mut positive = true;
            for _ in 0..20 {
                let a = random_element(&h, &pool, &mut rng);
                let b = random_element(&h, &pool, &mut rng);
                let c = random_element(&h, &pool, &mut rng);
                let ab = h.mult(&a, &b).expect("same algebra");
                let ba = h.mult(&b, &a).expect("same algebra");
                assoc &= h.mult(&ab, &c).ok() == h.mult(&a, &h.mult(&b, &c).expect("same algebra")).ok();
                trace &= h.trace(&ab) == h.trace(&ba);
                eps &= h.eps(&ab) == h.eps(&a) * h.eps(&b);
                star &= h.star(&ab) == h.mult(&h.star(&b), &h.star(&a)).expect("same algebra");
                let norm = h.trace(&h.mult(&h.star(&a), &a).expect("same algebra"));
                positive &= if a.is_zero() { norm.is_zero() } else { norm.is_positive() };
            }
            r.record(S, "(ab)c = a(bc)", instance.clone(), Ok(assoc));
            r.record(S, "tau(ab) = tau(ba)", instance.clone(), Ok(trace));
            r.record(S, "eps(ab) = eps(a) eps(b)", instance.clone(), Ok(eps));
            r.record(S, "(ab)* = b* a*", instance.clone(), Ok(star));
            r.record(S, "tau(a* a) > 0 for a != 0", instance.clone(), Ok(positive));
            let s = h.generator(0).expect("rank >= 1");
            let sq = h.mult(&s, &s).expect("same algebra");
            let qr = q_rat(q);
            let quad = h
                .add(&h.scale(&s, &(&qr - int(1))).expect("same"), &h.scale(&h.unit(), &qr).expect("same"))
                .expect("same algebra");
            r.record(S, "T_s T_s = (q-1) T_s + q T_e", instance.clone(), Ok(sq == quad));
            for j in sys.spherical_subsets().into_iter().filter(|j| !j.is_empty()) {
                let outcome = h
                    .standard_idempotent(j)
                    .map(|e| {
                        let gamma = sys.growth_polynomial_of(j).expect("spherical").eval(&qr);
                        let t = h.trace(&e);
                        h.mult(&e, &e).ok() == Some(e) && t == gamma.recip() && t.is_positive() && t <= int(1)
                    })
                    .map_err(err);
                r.record(S, "e_J^2 = e_J and tau(e_J) = 1/gamma_J(q) in (0,1]", format!("{instance}, J={j}"), outcome);
            }
        }
    }
    let h = HeckeAlgebra::numeric(&systems::a(1), 2).expect("q = 2");
    let outcome = h
        .standard_idempotent(GenSet::singleton(0))
        .and_then(|e| h.diagonal(vec![e, h.zero()]))
        .and_then(|m: HeckeMatrix<BigRational>| h.hattori_stallings_rank(&m, CHAMBER_BASE))
        .map_err(err)
        .and_then(|rank| {
            let mut ctx = SubgroupContext::new();
            ctx.declare_index("P{1}", CHAMBER_BASE, 3, 1).map_err(err)?;
            let rebased = ctx.rebase(&rank, "P{1}").map_err(err)?;
            Ok(rebased == HaarMeasure::unit("P{1}") && rank.sign() == Sign::Positive)
        });
    r.record(S, "rank(diag(e_s, 0)) = 1 mu_{P_s}", "A1, q=2", outcome);
}
