//! Property-based invariants tying the independent implementations together.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crumby::codec::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use crumby::generators::gen_random_subcubic_tree;
use crumby::oracle::{count_colorings, solve_exact, Prescription, SolveOutcome};
use crumby::trees::solve_tree;
use crumby::verifier::{component_shapes, verify_crumby, ComponentShape};
use crumby::{Color, Coloring, Graph};

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Like [`random_graph`] but capped at maximum degree 3 (the shape
/// classifier's taxonomy is specific to subcubic graphs).
fn random_subcubic(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if g.degree(u) < 3 && g.degree(v) < 3 && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn random_coloring(n: usize, seed: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Coloring::new(
        (0..n)
            .map(|_| if rng.gen_bool(0.5) { Color::Red } else { Color::Blue })
            .collect(),
    )
}

proptest! {
    // Two independent routes to the same predicate: the violation scanner
    // and the component-shape classifier must accept exactly the same pairs.
    #![proptest_config(ProptestConfig::with_cases(2048))]
    #[test]
    fn verifier_agrees_with_shape_classifier(
        n in 1usize..=20,
        p in 0.05f64..0.6,
        seed in any::<u64>(),
    ) {
        let g = random_subcubic(n, p, seed);
        let c = random_coloring(n, seed.wrapping_add(1));
        let ok = verify_crumby(&g, &c).unwrap().ok;
        let shapes_ok = component_shapes(&g, &c)
            .unwrap()
            .iter()
            .all(|sc| sc.shape != ComponentShape::Other);
        prop_assert_eq!(ok, shapes_ok);
    }
}

// The spec-sized sweep of the same equivalence: cheap enough to run in full.
#[test]
fn verifier_agrees_with_shape_classifier_bulk() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    for _ in 0..100_000 {
        let n = rng.gen_range(1..=20);
        let g = random_subcubic(n, rng.gen_range(0.05..0.6), rng.gen());
        let c = random_coloring(n, rng.gen());
        let ok = verify_crumby(&g, &c).unwrap().ok;
        let shapes_ok = component_shapes(&g, &c)
            .unwrap()
            .iter()
            .all(|sc| sc.shape != ComponentShape::Other);
        assert_eq!(ok, shapes_ok);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn graph6_round_trips(n in 0usize..=40, p in 0.0f64..0.8, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let h = parse_graph6(&write_graph6(&g).unwrap()).unwrap();
        prop_assert_eq!(g.vertex_count(), h.vertex_count());
        prop_assert_eq!(g.edges(), h.edges());
    }

    #[test]
    fn edge_list_round_trips(n in 1usize..=40, p in 0.0f64..0.8, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let h = parse_edge_list(&write_edge_list(&g)).unwrap();
        prop_assert_eq!(g.vertex_count(), h.vertex_count());
        prop_assert_eq!(g.edges(), h.edges());
    }

    // Whatever the oracle returns as Sat must pass the verifier, and its
    // count must match the plain 2^n enumeration.
    #[test]
    fn oracle_is_sound_and_counts_exactly(n in 1usize..=9, seed in any::<u64>()) {
        let g = random_graph(n, 0.35, seed);
        match solve_exact(&g, &Prescription::empty(), u64::MAX).unwrap() {
            SolveOutcome::Sat(c) => prop_assert!(verify_crumby(&g, &c).unwrap().ok),
            SolveOutcome::Unsat => {}
            SolveOutcome::BudgetExceeded { .. } => prop_assert!(false, "unlimited budget"),
        }
        let mut brute = 0u64;
        for mask in 0u32..1 << n {
            let c = Coloring::new(
                (0..n)
                    .map(|v| if mask >> v & 1 == 1 { Color::Blue } else { Color::Red })
                    .collect(),
            );
            if verify_crumby(&g, &c).unwrap().ok {
                brute += 1;
            }
        }
        prop_assert_eq!(count_colorings(&g), brute);
    }

    // The tree DP must agree with the oracle under arbitrary prescriptions.
    #[test]
    fn tree_dp_matches_oracle(
        n in 2usize..=14,
        seed in any::<u64>(),
        picks in prop::collection::vec((any::<u16>(), any::<bool>()), 0..3),
    ) {
        let t = gen_random_subcubic_tree(n, seed);
        let mut p = Prescription::empty();
        for (v, blue) in picks {
            let v = v as usize % n;
            p.fixed
                .entry(v)
                .or_insert(if blue { Color::Blue } else { Color::Red });
        }
        let dp = solve_tree(&t, &p).unwrap();
        let oracle = solve_exact(&t, &p, u64::MAX).unwrap();
        prop_assert_eq!(dp.is_some(), oracle.is_sat());
        if let Some(c) = dp {
            prop_assert!(verify_crumby(&t, &c).unwrap().ok);
            for (&v, &want) in &p.fixed {
                prop_assert_eq!(c.get(v), want);
            }
        }
    }
}
