use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use skewq_core::clifford::f2_rank;
use skewq_core::oracle::center_dimension;
use skewq_core::point_scheme::{count_p1_closed_form, minimal_transversals_of};
use skewq_core::{
    anticommutation_form, apply_permutation, bad_triples, canonical_form, count_p1, point_scheme, realize_sign_matrix,
    stable_category, structure_constants, wedderburn_type, CommutationMatrix, Permutation, SignMatrix, TripleSet,
    VertexSet,
};

fn sign_matrix(max_n: usize) -> impl Strategy<Value = SignMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0..(1u64 << pairs)).prop_map(|(n, mask)| SignMatrix::from_mask(n, mask).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

fn sign_and_permutation(max_n: usize) -> impl Strategy<Value = (SignMatrix, Permutation)> {
    sign_matrix(max_n).prop_flat_map(|s| {
        let n = s.n();
        (Just(s), permutation(n))
    })
}

fn two_graph(max_n: usize) -> impl Strategy<Value = TripleSet> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = (n - 1) * n.saturating_sub(2) / 2;
        (0..(1u64 << pairs)).prop_map(move |mask| TripleSet::from_gauge_mask(n, mask))
    })
}

fn brute_force_transversals(n: usize, edges: &[VertexSet]) -> Vec<VertexSet> {
    let hits = |s: u32| edges.iter().all(|e| e.bits() & s != 0);
    let mut out: Vec<VertexSet> = (0..(1u32 << n))
        .filter(|&s| hits(s) && (0..n).all(|i| s >> i & 1 == 0 || !hits(s & !(1 << i))))
        .map(|s| VertexSet::from_indices((0..n).filter(|i| s >> i & 1 == 1).map(|i| i + 1)))
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bad_triples_are_equivariant((s, p) in sign_and_permutation(8)) {
        let lhs = bad_triples(&s.permuted(&p).unwrap());
        let rhs = apply_permutation(&bad_triples(&s), &p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bad_triples_form_two_graphs(s in sign_matrix(9)) {
        prop_assert!(bad_triples(&s).is_two_graph());
    }

    #[test]
    fn realization_round_trip(t in two_graph(9)) {
        prop_assert_eq!(bad_triples(&realize_sign_matrix(&t).unwrap()), t);
    }

    #[test]
    fn transversals_match_brute_force(
        n in 1usize..=7,
        raw in proptest::collection::vec(1u32..128, 0..6),
    ) {
        let edges: Vec<VertexSet> = raw
            .iter()
            .map(|&b| VertexSet::from_indices((0..n).filter(|i| b >> i & 1 == 1).map(|i| i + 1)))
            .collect();
        let mut ours = minimal_transversals_of(n, &edges).unwrap();
        ours.sort();
        prop_assert_eq!(ours, brute_force_transversals(n, &edges));
    }

    #[test]
    fn ell_closed_form(t in two_graph(9)) {
        prop_assert_eq!(count_p1(&point_scheme(&t).unwrap()), count_p1_closed_form(&t));
    }

    #[test]
    fn components_avoid_bad_support(t in two_graph(8)) {
        let ps = point_scheme(&t).unwrap();
        for c in ps.components() {
            for tr in t.iter() {
                let [a, b, cc] = tr.elements();
                prop_assert!(!(c.contains(a) && c.contains(b) && c.contains(cc)));
            }
        }
    }

    #[test]
    fn label_is_permutation_invariant((s, p) in sign_and_permutation(8)) {
        prop_assert_eq!(stable_category(&s), stable_category(&s.permuted(&p).unwrap()));
    }

    #[test]
    fn canonical_form_is_an_orbit_invariant(
        (t, p) in two_graph(7).prop_flat_map(|t| { let n = t.n(); (Just(t), permutation(n)) })
    ) {
        let moved = apply_permutation(&t, &p).unwrap();
        prop_assert_eq!(canonical_form(&t).unwrap(), canonical_form(&moved).unwrap());
    }

    #[test]
    fn center_matches_rank_formula(m in 0usize..=5, mask in any::<u64>()) {
        let pairs = m * m.saturating_sub(1) / 2;
        let mu = CommutationMatrix::from_mask(m, mask & ((1u64 << pairs) - 1));
        let form = anticommutation_form(&mu);
        let w = wedderburn_type(&form);
        prop_assert_eq!(center_dimension(&structure_constants(&mu)), 1 << (m - f2_rank(&form)));
        prop_assert_eq!(w.block_count, 1 << (m - f2_rank(&form)));
    }
}

#[test]
fn cocycle_exhaustive_small() {
    for m in 0..=4usize {
        let pairs = m * m.saturating_sub(1) / 2;
        for mask in 0..(1u64 << pairs) {
            let tab = structure_constants(&CommutationMatrix::from_mask(m, mask));
            let dim = tab.dim() as u64;
            for a in 0..dim {
                for b in 0..dim {
                    for c in 0..dim {
                        assert!(tab.cocycle_holds(a, b, c), "m={m} mask={mask:#b} ({a},{b},{c})");
                    }
                }
            }
        }
    }
}

#[test]
fn cocycle_random_larger() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for m in [5usize, 6] {
        let pairs = m * (m - 1) / 2;
        for _ in 0..10_000 {
            let tab = structure_constants(&CommutationMatrix::from_mask(m, rng.gen_range(0..1u64 << pairs)));
            let dim = tab.dim() as u64;
            let (a, b, c) = (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim));
            assert!(tab.cocycle_holds(a, b, c), "m={m} ({a},{b},{c})");
        }
    }
}
