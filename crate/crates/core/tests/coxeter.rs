use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdlc::algebra::{int, Polynomial, RationalFunction, TruncatedSeries};
use tdlc::coxeter::{systems, Bond, CoxeterSystem, GenSet};

const ORDER: usize = 12;

/// A faithful model of the group in which equality is decidable directly.
trait Oracle {
    type Elem: PartialEq + Clone;
    fn identity(&self) -> Self::Elem;
    fn apply(&self, g: &Self::Elem, s: usize) -> Self::Elem;
    fn eval(&self, word: &[usize]) -> Self::Elem {
        word.iter().fold(self.identity(), |g, &s| self.apply(&g, s))
    }
}

/// Generators acting as permutations of `{0..n}`, each an adjacent swap.
struct Perm {
    n: usize,
    swaps: Vec<(usize, usize)>,
}

impl Oracle for Perm {
    type Elem = Vec<usize>;
    fn identity(&self) -> Vec<usize> {
        (0..self.n).collect()
    }
    fn apply(&self, g: &Vec<usize>, s: usize) -> Vec<usize> {
        let (a, b) = self.swaps[s];
        let mut h = g.clone();
        h.swap(a, b);
        h
    }
}

/// Dihedral group of order `2m` (or infinite for `m = None`), as affine
/// maps `x ↦ ε x + k` of `Z/m` or `Z` with generators `x ↦ -x`, `x ↦ 1 - x`.
struct Dihedral {
    m: Option<i64>,
}

impl Oracle for Dihedral {
    type Elem = (i64, i64);
    fn identity(&self) -> (i64, i64) {
        (1, 0)
    }
    fn apply(&self, g: &(i64, i64), s: usize) -> (i64, i64) {
        // g ∘ r with r(x) = -x + c
        let c = s as i64;
        let (e, k) = *g;
        let k2 = e * c + k;
        let k2 = match self.m {
            Some(m) => k2.rem_euclid(m),
            None => k2,
        };
        (-e, k2)
    }
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max);
    (0..len).map(|_| rng.gen_range(0..rank)).collect()
}

/// Rewrites `word` into an equal word by inserting `ss` and applying
/// braid relations, so that equal pairs are well represented.
fn equal_variant(rng: &mut ChaCha8Rng, sys: &CoxeterSystem, word: &[usize]) -> Vec<usize> {
    let mut w = word.to_vec();
    for _ in 0..3 {
        let pos = rng.gen_range(0..=w.len());
        let s = rng.gen_range(0..sys.rank());
        w.splice(pos..pos, [s, s]);
    }
    // Insert an alternating relator (st)^m for a random finite pair.
    let s = rng.gen_range(0..sys.rank());
    let t = rng.gen_range(0..sys.rank());
    if s != t {
        if let Bond::Finite(m) = sys.bond(s, t) {
            let pos = rng.gen_range(0..=w.len());
            let rel: Vec<usize> = (0..2 * m as usize).map(|i| if i % 2 == 0 { s } else { t }).collect();
            w.splice(pos..pos, rel);
        }
    }
    w
}

fn check_word_problem<O: Oracle>(sys: &CoxeterSystem, oracle: &O, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut equal_pairs = 0;
    for i in 0..200 {
        let u = random_word(&mut rng, sys.rank(), 10);
        let v = if i % 2 == 0 {
            equal_variant(&mut rng, sys, &u)
        } else {
            random_word(&mut rng, sys.rank(), 10)
        };
        let same_nf = sys.normal_form(&u).unwrap() == sys.normal_form(&v).unwrap();
        let same_oracle = oracle.eval(&u) == oracle.eval(&v);
        assert_eq!(same_nf, same_oracle, "{u:?} vs {v:?}");
        if same_oracle {
            equal_pairs += 1;
        }
    }
    assert!(equal_pairs >= 100);
}

#[test]
fn word_problem_against_permutations() {
    check_word_problem(&systems::a(1), &Perm { n: 2, swaps: vec![(0, 1)] }, 1);
    check_word_problem(&systems::a(2), &Perm { n: 3, swaps: vec![(0, 1), (1, 2)] }, 2);
    check_word_problem(&systems::a(3), &Perm { n: 4, swaps: vec![(0, 1), (1, 2), (2, 3)] }, 3);
    check_word_problem(&systems::a1xa1(), &Perm { n: 4, swaps: vec![(0, 1), (2, 3)] }, 4);
}

#[test]
fn word_problem_against_dihedral_maps() {
    for m in [3u32, 4, 5, 6, 7] {
        check_word_problem(&systems::dihedral(m), &Dihedral { m: Some(m as i64) }, 10 + m as u64);
    }
    check_word_problem(&systems::affine_a1(), &Dihedral { m: None }, 20);
}

#[test]
fn oracle_normal_form_lengths() {
    // ℓ(w) in D∞ is |2k| or |2k - 1| depending on the parity; check via the
    // oracle that distinct normal forms of each length give distinct maps.
    let sys = systems::affine_a1();
    let oracle = Dihedral { m: None };
    let e = sys.enumerate_by_length(9);
    let images: Vec<_> = e.elements().map(|w| oracle.eval(w.word())).collect();
    for (i, a) in images.iter().enumerate() {
        assert!(!images[i + 1..].contains(a));
    }
}

fn shipped_systems() -> Vec<(&'static str, CoxeterSystem)> {
    vec![
        ("A1", systems::a(1)),
        ("A2", systems::a(2)),
        ("A3", systems::a(3)),
        ("B3", systems::b(3)),
        ("I2(5)", systems::dihedral(5)),
        ("A1xA1", systems::a1xa1()),
        ("affine A1", systems::affine_a1()),
        ("affine A2", systems::affine_a(2)),
        ("affine A3", systems::affine_a(3)),
        ("affine C2", systems::affine_c(2)),
        ("affine G2", systems::affine_g2()),
        ("inf triangle", systems::infinite_triangle()),
        (
            "(3,3,4) triangle",
            CoxeterSystem::from_bonds(3, &[(0, 1, Bond::Finite(3)), (1, 2, Bond::Finite(3)), (0, 2, Bond::Finite(4))])
                .unwrap(),
        ),
    ]
}

#[test]
fn growth_contract_to_order_12() {
    for (name, sys) in shipped_systems() {
        let closed = sys.growth_series().expand(ORDER).unwrap();
        assert_eq!(closed, sys.growth_truncated(ORDER), "{name}");
    }
}

#[test]
fn ell_ws_differs_by_one() {
    for (_, sys) in shipped_systems() {
        for w in sys.enumerate_by_length(6).elements() {
            for s in 0..sys.rank() {
                assert_eq!(sys.right_mul(w, s).len().abs_diff(w.len()), 1);
            }
        }
    }
}

/// `γ(W̃) = γ_W(t) ∏ 1/(1 - t^{m_i})` for every irreducible affine type.
#[test]
fn bott_identity_for_affine_types() {
    let cases: Vec<(CoxeterSystem, CoxeterSystem)> = vec![
        (systems::affine_a1(), systems::a(1)),
        (systems::affine_a(2), systems::a(2)),
        (systems::affine_a(3), systems::a(3)),
        (systems::affine_a(4), systems::a(4)),
        (systems::affine_b(3), systems::b(3)),
        (systems::affine_b(4), systems::b(4)),
        (systems::affine_c(2), systems::b(2)),
        (systems::affine_c(3), systems::b(3)),
        (systems::affine_d(4), systems::d(4)),
        (systems::affine_d(5), systems::d(5)),
        (systems::affine_g2(), systems::dihedral(6)),
        (systems::affine_f4(), CoxeterSystem::from_bonds(4, &[(0, 1, Bond::Finite(3)), (1, 2, Bond::Finite(4)), (2, 3, Bond::Finite(3))]).unwrap()),
        (systems::affine_e(6), systems::affine_e(6).restrict(GenSet::full(7).without(2)).unwrap()),
        (systems::affine_e(7), systems::affine_e(7).restrict(GenSet::full(8).without(4)).unwrap()),
        (systems::affine_e(8), systems::affine_e(8).restrict(GenSet::full(9).without(8)).unwrap()),
    ];
    for (affine, finite) in cases {
        let desc = finite.classify_finite().expect("finite part");
        let mut den = Polynomial::one();
        for &m in &desc.exponents {
            den = &den * &(&Polynomial::one() - &Polynomial::monomial(int(1), m as usize));
        }
        let bott = RationalFunction::new(desc.growth_polynomial(), den).unwrap();
        assert_eq!(affine.growth_series(), bott, "{}", desc.type_name());
    }
}

#[test]
fn deletion_factorization() {
    for (name, sys) in shipped_systems() {
        let w = sys.growth_truncated(ORDER);
        for j in sys.spherical_subsets() {
            let wj = {
                let elems = sys.parabolic_elements(j).unwrap();
                TruncatedSeries::from_polynomial(&poly_of(&elems), ORDER)
            };
            // ^JW: elements without left descents in J
            let min_left = sys.enumerate_by_length(ORDER);
            let reps: Vec<_> = min_left
                .elements()
                .filter(|x| sys.left_descents(x).intersection(j).is_empty())
                .collect();
            let jw = counts_series(reps.iter().map(|x| x.len()));
            assert_eq!(wj.mul(&jw), w, "{name}, J = {j}");
        }
    }
}

fn poly_of(elems: &[tdlc::coxeter::NormalForm]) -> Polynomial {
    let max = elems.iter().map(|w| w.len()).max().unwrap_or(0);
    let mut c = vec![0i64; max + 1];
    for w in elems {
        c[w.len()] += 1;
    }
    Polynomial::from_ints(&c)
}

fn counts_series(lengths: impl Iterator<Item = usize>) -> TruncatedSeries {
    let mut c = vec![0u64; ORDER + 1];
    for l in lengths {
        if l <= ORDER {
            c[l] += 1;
        }
    }
    TruncatedSeries::from_counts(c, ORDER)
}

/// `γ_W = γ_{W_J} Σ_{Q ⊆ J} γ_{^QW_J} γ_{p_{Q,J}}`, truncated.
#[test]
fn parabolic_factorization() {
    for (name, sys) in shipped_systems() {
        let w = sys.growth_truncated(ORDER);
        for j in sys.spherical_subsets() {
            let wj = TruncatedSeries::from_polynomial(&sys.growth_polynomial_of(j).unwrap(), ORDER);
            let classes = sys.p_classes(j, ORDER);
            let mut sum = TruncatedSeries::zero(ORDER);
            for (q, xs) in &classes {
                assert!(q.is_subset(j));
                let qwj = poly_of(&sys.min_left_coset_reps_in(*q, j).unwrap());
                let p = counts_series(xs.iter().map(|x| x.len()));
                sum = sum.add(&TruncatedSeries::from_polynomial(&qwj, ORDER).mul(&p));
            }
            assert_eq!(wj.mul(&sum), w, "{name}, J = {j}");
        }
    }
}

#[test]
fn conjugation_respects_length() {
    for (_, sys) in shipped_systems() {
        for j in sys.spherical_subsets() {
            for (q, xs) in sys.p_classes(j, 6) {
                if q.is_empty() {
                    continue;
                }
                let wq = sys.parabolic_elements(q).unwrap();
                for x in &xs {
                    for w in wq.iter().filter(|w| w.len() <= 6) {
                        let c = sys.conjugate(x, w);
                        assert_eq!(c.len(), w.len());
                        assert!(c.support().is_subset(j));
                    }
                }
            }
        }
    }
}

#[test]
fn finite_orders_and_degrees() {
    for (_, sys) in shipped_systems() {
        if let Some(d) = sys.classify_finite() {
            let g = sys.growth_polynomial_finite().unwrap();
            assert_eq!(g.degree(), Some(d.positive_roots()));
            assert_eq!(g.eval(&int(1)), int(d.order() as i64));
            assert_eq!(d.exponents.len(), sys.rank());
        }
    }
}

proptest! {
    #[test]
    fn normal_form_idempotent(word in proptest::collection::vec(0usize..3, 0..14)) {
        let sys = systems::affine_a(2);
        let n = sys.normal_form(&word).unwrap();
        prop_assert_eq!(sys.normal_form(n.word()).unwrap(), n.clone());
        let inv: Vec<usize> = word.iter().rev().copied().collect();
        prop_assert_eq!(sys.normal_form(&inv).unwrap(), sys.inverse(&n));
    }

    #[test]
    fn multiplication_is_associative(
        a in proptest::collection::vec(0usize..3, 0..8),
        b in proptest::collection::vec(0usize..3, 0..8),
        c in proptest::collection::vec(0usize..3, 0..8),
    ) {
        let sys = systems::infinite_triangle();
        let (a, b, c) = (sys.normal_form(&a).unwrap(), sys.normal_form(&b).unwrap(), sys.normal_form(&c).unwrap());
        prop_assert_eq!(
            sys.multiply(&sys.multiply(&a, &b), &c),
            sys.multiply(&a, &sys.multiply(&b, &c))
        );
    }
}
