//! Randomized invariants for the series algebra and the graph kernel.

use proptest::prelude::*;

use specine::graphs::{
    are_isomorphic, canonical_form, comating_graph, decorate, from_graph6, patch_compose, reduce,
    to_graph6, undecorate, Graph, K2Policy,
};
use specine::symfunc::{partitions, CycleIndexSeries, PMonomial, Rational, Slice};

/// A sparse series of degree at most 5 with small rational coefficients.
fn small_series() -> impl Strategy<Value = CycleIndexSeries> {
    let coeff = (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()));
    let slice = |degree: usize| {
        let parts = partitions(degree);
        proptest::collection::vec(coeff.clone(), parts.len()).prop_map(move |cs| {
            let mut s = Slice::zero(degree);
            for (lam, c) in parts.iter().zip(cs) {
                s.add_term(PMonomial::from_partition(lam), c);
            }
            s
        })
    };
    (slice(0), slice(1), slice(2), slice(3), slice(4), slice(5)).prop_map(
        |(s0, s1, s2, s3, s4, s5)| {
            CycleIndexSeries::from_polynomial(vec![s0, s1, s2, s3, s4, s5])
        },
    )
}

/// Like [`small_series`] but with zero constant term, fit for composition.
fn small_arg_series() -> impl Strategy<Value = CycleIndexSeries> {
    small_series().prop_map(|f| {
        let zeroed = f.slice(0).neg();
        f.add(&CycleIndexSeries::from_polynomial(vec![zeroed]))
    })
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << pairs)).prop_map(|(n, mask)| {
            let mut g = Graph::empty(n);
            let mut bit = 0;
            for j in 1..n {
                for i in 0..j {
                    if mask >> bit & 1 == 1 {
                        g.add_edge(i, j);
                    }
                    bit += 1;
                }
            }
            g
        })
    })
}

/// Deterministic permutation of `0..n` from a seed.
fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut state = seed | 1;
    for i in (1..n).rev() {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = (state >> 33) as usize % (i + 1);
        perm.swap(i, j);
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn type_series_is_multiplicative(f in small_series(), g in small_series()) {
        let lhs = f.mul(&g).type_series();
        let rhs = f.type_series().mul(&g.type_series());
        prop_assert!(lhs.eq_up_to(&rhs, 8));
    }

    #[test]
    fn mul_commutes_and_distributes(f in small_series(), g in small_series(), h in small_series()) {
        prop_assert!(f.mul(&g).eq_up_to(&g.mul(&f), 8));
        let lhs = f.mul(&g.add(&h));
        let rhs = f.mul(&g).add(&f.mul(&h));
        prop_assert!(lhs.eq_up_to(&rhs, 8));
    }

    #[test]
    fn plethysm_is_associative(f in small_series(), g in small_arg_series(), h in small_arg_series()) {
        let left = f.plethysm(&g).unwrap().plethysm(&h).unwrap();
        let right = f.plethysm(&g.plethysm(&h).unwrap()).unwrap();
        prop_assert!(left.eq_up_to(&right, 6));
    }

    #[test]
    fn plethysm_distributes_over_sum_and_product(
        f in small_series(),
        g in small_series(),
        a in small_arg_series(),
    ) {
        let sum = f.add(&g).plethysm(&a).unwrap();
        prop_assert!(sum.eq_up_to(&f.plethysm(&a).unwrap().add(&g.plethysm(&a).unwrap()), 6));
        let prod = f.mul(&g).plethysm(&a).unwrap();
        prop_assert!(prod.eq_up_to(&f.plethysm(&a).unwrap().mul(&g.plethysm(&a).unwrap()), 6));
    }

    #[test]
    fn type_series_of_composition_by_two_routes(f in small_series(), a in small_arg_series()) {
        let composed = f.plethysm(&a).unwrap().type_series();
        let substituted = f.substitute_type(&a.type_series());
        prop_assert!(composed.eq_up_to(&substituted, 8));
    }

    #[test]
    fn forcing_order_is_irrelevant(f in small_series(), g in small_arg_series()) {
        let a = f.plethysm(&g).unwrap();
        let b = f.plethysm(&g).unwrap();
        for n in (0..=6).rev() { a.slice(n); }
        for n in 0..=6 { b.slice(n); }
        prop_assert!(a.eq_up_to(&b, 6));
    }

    #[test]
    fn graph_invariants_survive_relabeling(g in graph_strategy(7), seed in any::<u64>()) {
        let perm = permutation(g.n(), seed);
        let h = g.permuted(&perm);
        prop_assert_eq!(g.sibling_number(), h.sibling_number());
        prop_assert_eq!(g.tuft_number(), h.tuft_number());
        prop_assert_eq!(g.is_connected(), h.is_connected());
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(g.induced_cycle_lengths(), h.induced_cycle_lengths());
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(8)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn reduction_commutes_with_relabeling(g in graph_strategy(7), seed in any::<u64>()) {
        prop_assume!(g.is_connected());
        let perm = permutation(g.n(), seed);
        let h = g.permuted(&perm);
        let rg = reduce(&g, K2Policy::AsBullet).unwrap();
        let rh = reduce(&h, K2Policy::AsBullet).unwrap();
        prop_assert_eq!(canonical_form(&rg), canonical_form(&rh));
        prop_assert_eq!(rg.leaves(), 0);
        prop_assert_eq!(rg.sibling_number(), 0);
    }

    #[test]
    fn patch_round_trip_on_random_connected_graphs(g in graph_strategy(7)) {
        prop_assume!(g.is_connected() && !g.is_k2());
        let d = comating_graph(&g).unwrap();
        prop_assert_eq!(patch_compose(&d).unwrap(), g);
    }

    #[test]
    fn decorate_round_trip_on_random_connected_graphs(g in graph_strategy(7)) {
        prop_assume!(g.is_connected() && !g.is_k2());
        let t = decorate(&g).unwrap();
        prop_assert!(are_isomorphic(&undecorate(&t).unwrap(), &g));
    }
}
