mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tdlc::algebra::{ratio, BigRational};
use tdlc::coxeter::systems;
use tdlc::euler::{
    check_nonpositive, davis_orbit_data, euler_building, euler_chevalley, euler_from_orbits, euler_graph_of_groups,
    CartanType, ChevalleyDatum, EulerError, GraphOfGroups, NonpositivityVerdict, OrbitComplexData, CHAMBER_BASE,
};
use tdlc::measure::{HaarMeasure, SubgroupContext};

#[test]
fn randomized_unimodular_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51);
    let mut checked = 0;
    let mut with_contraction = 0;
    while checked < 50 {
        let r = common::random_graph(&mut rng);
        let g = GraphOfGroups::parse(&r.text).unwrap();
        let collapsed = g.collapse();
        if collapsed.vertices.len() < 2 {
            continue;
        }
        if collapsed.vertices.len() < g.vertices.len() {
            with_contraction += 1;
        }
        let base = g.edges[0].name.clone();
        let chi = euler_graph_of_groups(&g, Some(&base)).unwrap().chi;
        let want = &r.chi_reference * BigRational::from_integer(r.measure[&base].clone());
        assert_eq!(chi.coefficient, want, "{}", r.text);
        let rep = check_nonpositive(&g).unwrap();
        assert_eq!(rep.verdict, NonpositivityVerdict::NonPositive, "{}", r.text);
        assert!(rep.holds());
        assert!(rep.certificate.iter().all(|i| i.holds()));
        assert!(!rep.chi.coefficient.is_positive());
        // the collapsed graph has the same Euler characteristic
        let after = euler_graph_of_groups(&collapsed, Some(&collapsed.edges[0].name)).unwrap();
        let before = euler_graph_of_groups(&g, Some(&collapsed.edges[0].name)).unwrap();
        assert_eq!(after.chi, before.chi);
        checked += 1;
    }
    assert!(with_contraction > 0, "no sample exercised contraction");
}

#[test]
fn trees_are_unimodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let r = common::random_graph(&mut rng);
        // keep only the spanning tree edges (the first n - 1)
        let n = r.text.lines().filter(|l| l.starts_with("vertex")).count();
        let text: String = r
            .text
            .lines()
            .filter(|l| l.starts_with("vertex") || l.split_whitespace().nth(1).and_then(|e| e[1..].parse::<usize>().ok()).is_some_and(|k| k + 1 < n))
            .map(|l| format!("{l}\n"))
            .collect();
        // any indices at all on a tree
        let g = GraphOfGroups::parse(&text).unwrap();
        assert!(euler_graph_of_groups(&g, None).is_ok());
        let scrambled: String = text
            .lines()
            .map(|l| {
                let t: Vec<&str> = l.split_whitespace().collect();
                if t[0] == "edge" {
                    format!("edge {} {} {} it 7 io 2\n", t[1], t[2], t[3])
                } else {
                    format!("{l}\n")
                }
            })
            .collect();
        let g = GraphOfGroups::parse(&scrambled).unwrap();
        assert!(euler_graph_of_groups(&g, None).is_ok());
    }
}

#[test]
fn inconsistent_cycles_rejected() {
    let triangle = "vertex a\nvertex b\nvertex c\nedge x a b it 2 io 2\nedge y b c it 2 io 2\nedge z c a it 3 io 2\n";
    let g = GraphOfGroups::parse(triangle).unwrap();
    match euler_graph_of_groups(&g, None) {
        Err(EulerError::NotUnimodular { ratio: r, cycle }) => {
            assert_ne!(r, BigRational::one());
            assert!(cycle.len() >= 3);
        }
        other => panic!("expected a unimodularity failure, got {other:?}"),
    }
    assert!(check_nonpositive(&g).is_err());
}

#[test]
fn finite_amalgams() {
    for (a, b, c) in [(2i64, 3i64, 1i64), (4, 6, 2), (6, 4, 2), (8, 12, 4)] {
        let text = format!("vertex A order {a}\nvertex B order {b}\nedge e A B it {} io {} order {c}\n", b / c, a / c);
        let g = GraphOfGroups::parse(&text).unwrap();
        let chi = euler_graph_of_groups(&g, None).unwrap().chi;
        assert_eq!(chi.base, "1");
        assert_eq!(chi.coefficient, ratio(1, a) + ratio(1, b) - ratio(1, c));
    }
}

#[test]
fn orbit_route_matches_graph_route_for_trees() {
    for d in [2i64, 3, 4] {
        let mut ctx = SubgroupContext::new();
        ctx.declare_index("V", "E", d + 1, 1).unwrap();
        ctx.declare_index("W", "E", d + 1, 1).unwrap();
        let orbits = OrbitComplexData::parse("dim 1\norbit 0 V\norbit 0 W\norbit 1 E\n").unwrap();
        let a = euler_from_orbits(&orbits, &ctx, "E").unwrap();
        let g = GraphOfGroups::parse(&format!("vertex V\nvertex W\nedge E V W it {} io {}\n", d + 1, d + 1)).unwrap();
        assert_eq!(a, euler_graph_of_groups(&g, Some("E")).unwrap().chi);
    }
}

#[test]
fn chevalley_closed_form_against_buildings() {
    for q in [2u64, 3, 5] {
        let a1 = ChevalleyDatum::new(CartanType::new('A', 1).unwrap(), q).unwrap();
        let chi = euler_chevalley(&a1);
        assert_eq!(chi, HaarMeasure::new(ratio(1 - q as i64, 1 + q as i64), "I"));
        assert_eq!(euler_building(&systems::affine_a1(), q).unwrap().coefficient, chi.coefficient);
    }
    let a2 = euler_chevalley(&ChevalleyDatum::new(CartanType::new('A', 2).unwrap(), 2).unwrap());
    assert_eq!(a2.coefficient, ratio(1, 7));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orbit_sum_equals_building_formula(q in 2u64..=7) {
        for sys in [systems::affine_a1(), systems::affine_a(2), systems::affine_c(2), systems::a(3), systems::infinite_triangle()] {
            let (data, ctx) = davis_orbit_data(&sys, q).unwrap();
            let orbit = euler_from_orbits(&data, &ctx, CHAMBER_BASE).unwrap();
            prop_assert_eq!(orbit, euler_building(&sys, q).unwrap());
        }
    }

    #[test]
    fn lattice_route_scales(p in -20i64..=20, v in 1i64..=30, w in 1i64..=30) {
        let chi = tdlc::euler::euler_from_lattice(&ratio(p, 6), &ratio(v, w), "O").unwrap();
        prop_assert_eq!(chi.coefficient, ratio(p * w, 6 * v));
    }

    #[test]
    fn regular_tree_amalgam(d in 1i64..=40) {
        let g = GraphOfGroups::parse(&format!("vertex u\nvertex v\nedge e u v it {} io {}\n", d + 1, d + 1)).unwrap();
        let chi = euler_graph_of_groups(&g, None).unwrap().chi;
        prop_assert_eq!(chi.coefficient, ratio(1 - d, 1 + d));
        let in_v = euler_graph_of_groups(&g, Some("v")).unwrap().chi;
        prop_assert_eq!(in_v.coefficient, BigRational::from_integer(BigInt::from(1 - d)));
    }
}
