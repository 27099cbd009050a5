mod common;

use common::{gcd, inverse_entry, r, to_i128};
use proptest::prelude::*;
use slcgerm_core::germs::{germ_from_plt_chain, inverse_mod};
use slcgerm_core::{
    check_slc_glue, classify_lc_germ, classify_nonnormal, hj_contract, hj_expand, Attach,
    CyclicQuotientGerm, GermTag, LogCanonicalClass, Rat, ResolutionGraph, Trichotomy,
};

fn coprime_pair(max_n: u64) -> impl Strategy<Value = (u64, u64)> {
    (2..=max_n).prop_flat_map(|n| (Just(n), 1..n)).prop_filter("coprime", |&(n, q)| gcd(n, q) == 1)
}

/// Side coefficients in `[0, 1)` with small denominators.
fn side_strategy() -> impl Strategy<Value = Rat> {
    (1i64..=8).prop_flat_map(|d| (0..d).prop_map(move |k| Rat::new(k, d)))
}

fn germ_strategy() -> impl Strategy<Value = CyclicQuotientGerm> {
    (coprime_pair(40), side_strategy()).prop_map(|((n, q), side)| CyclicQuotientGerm::plt(n, q, side).unwrap())
}

/// Coefficients in `[1/2, 1]` with denominator at most 6.
fn big_coeff() -> impl Strategy<Value = Rat> {
    (2i64..=6).prop_flat_map(|d| ((d + 1) / 2..=d).prop_map(move |k| Rat::new(k, d)))
}

/// Contractible-or-not chains and single forks carrying a coefficient-one
/// branch and otherwise coefficients in `[1/2, 1]`.
fn taxonomy_graph() -> impl Strategy<Value = ResolutionGraph> {
    (
        prop::collection::vec(1u32..=5, 1..=5),
        prop::option::of((0usize..5, 1u32..=5)),
        0usize..6,
        prop::collection::vec((0usize..6, big_coeff()), 0..=3),
    )
        .prop_map(|(chain, fork, unit_at, others)| {
            let mut g = ResolutionGraph::chain(&chain).unwrap();
            if let Some((at, c)) = fork {
                g = g.with_vertex(at % chain.len(), c).unwrap().0;
            }
            let n = g.num_vertices();
            g = g.with_branch(Attach::Vertex(unit_at % n), Rat::one()).unwrap();
            for (v, c) in others {
                g = g.with_branch(Attach::Vertex(v % n), c).unwrap();
            }
            g
        })
}

/// The chain of `(n, q)` read from the other end, with the conductor on the
/// last curve and the side branch on the first.
fn reversed_graph(n: u64, q: u64, side: &Rat) -> ResolutionGraph {
    let q_inv = inverse_mod(n, q).unwrap();
    let chain = hj_expand(n, q_inv).unwrap();
    let last = chain.len() - 1;
    let mut g = ResolutionGraph::chain(&chain).unwrap().with_branch(Attach::Vertex(last), Rat::one()).unwrap();
    if !side.is_zero() {
        g = g.with_branch(Attach::Vertex(0), side.clone()).unwrap();
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 400, max_global_rejects: 50_000, ..ProptestConfig::default() })]

    #[test]
    fn hj_roundtrip((n, q) in coprime_pair(500)) {
        let chain = hj_expand(n, q).unwrap();
        prop_assert!(chain.iter().all(|&c| c >= 2));
        prop_assert_eq!(hj_contract(&chain).unwrap(), (n, q));
    }

    #[test]
    fn reversal_inverts_q((n, q) in coprime_pair(500)) {
        let mut chain = hj_expand(n, q).unwrap();
        chain.reverse();
        let (n2, q2) = hj_contract(&chain).unwrap();
        prop_assert_eq!(n2, n);
        prop_assert_eq!((q * q2) % n, 1 % n);
    }

    #[test]
    fn different_matches_inverse_matrix(g in germ_strategy()) {
        let chain = hj_expand(g.n(), g.q()).unwrap();
        prop_assume!(chain.len() <= 8);
        let graph = g.resolution_graph().unwrap();
        let m = to_i128(&graph.intersection_matrix());
        let k = chain.len() - 1;
        // dual basis entry of the far end against the conductor curve
        let entry = -inverse_entry(&m, 0, k);
        prop_assert_eq!(entry.clone(), Rat::new(1, g.n() as i64));
        let oracle = Rat::one() - g.c() * entry;
        prop_assert_eq!(g.different_coeff().unwrap(), oracle.clone());
        // and it is the solved coefficient of the conductor curve
        prop_assert_eq!(graph.boundary_coefficients().unwrap().coeff(0).clone(), oracle);
    }

    #[test]
    fn glue_is_reflexive(g in germ_strategy()) {
        prop_assert!(check_slc_glue(&g, &g).unwrap());
    }

    #[test]
    fn glue_is_symmetric(g in germ_strategy(), h in germ_strategy()) {
        prop_assert_eq!(check_slc_glue(&g, &h).unwrap(), check_slc_glue(&h, &g).unwrap());
    }

    #[test]
    fn classification_survives_end_swap((n, q) in coprime_pair(80), side in side_strategy()) {
        let germ = CyclicQuotientGerm::plt(n, q, side.clone()).unwrap();
        let forward = classify_lc_germ(&germ.resolution_graph().unwrap()).unwrap();
        let backward_graph = reversed_graph(n, q, &side);
        let backward = classify_lc_germ(&backward_graph).unwrap();
        prop_assert_eq!(&forward, &backward);
        prop_assert_eq!(forward.tag, GermTag::PltChain);
        prop_assert_eq!(forward.gamma, Some(germ.gamma()));
        prop_assert_eq!(germ_from_plt_chain(&backward_graph).unwrap(), germ);
    }

    #[test]
    fn taxonomy_is_total(g in taxonomy_graph()) {
        prop_assume!(g.is_contractible());
        let class = g.log_canonical_class().unwrap();
        prop_assume!(matches!(class, LogCanonicalClass::Plt | LogCanonicalClass::LcCenter));
        let gc = classify_lc_germ(&g).unwrap();
        match gc.tag {
            GermTag::Unclassified => prop_assert!(gc.violation.is_some()),
            GermTag::PltChain => {
                prop_assert_eq!(class, LogCanonicalClass::Plt);
                let gamma = gc.gamma.clone().unwrap();
                prop_assert!(gamma.in_half_open_unit());
                prop_assert!(gc.violation.is_none());
            }
            _ => {
                prop_assert_eq!(class, LogCanonicalClass::LcCenter);
                prop_assert_eq!(2 % gc.cartier_index, 0);
                prop_assert!(gc.violation.is_none());
            }
        }
    }

    #[test]
    fn nonnormal_invariants(g in germ_strategy(), h in germ_strategy()) {
        let one = classify_nonnormal(std::slice::from_ref(&g), true).unwrap();
        prop_assert_eq!(one.trichotomy, Trichotomy::OneComponentPlt);
        if let Ok(two) = classify_nonnormal(&[g.clone(), h.clone()], true) {
            prop_assert!(check_slc_glue(&g, &h).unwrap());
            prop_assert_eq!(two.trichotomy, Trichotomy::TwoComponentPlt);
            prop_assert_eq!(two.components.len(), 2);
        }
    }
}

#[test]
fn different_for_q_one_without_side() {
    for n in 1..=60u64 {
        let g = CyclicQuotientGerm::plt(n, 1, Rat::zero()).unwrap();
        assert_eq!(g.different_coeff().unwrap(), Rat::one() - Rat::new(1, n as i64));
    }
}

#[test]
fn lc_center_cases_have_index_dividing_two() {
    let cyclic = CyclicQuotientGerm::new(5, 2, Rat::one(), Rat::one()).unwrap();
    let res = classify_nonnormal(&[cyclic.clone(), cyclic], true).unwrap();
    assert_eq!(res.trichotomy, Trichotomy::LcCenterCase);
    assert_eq!(2 % res.cartier_index.unwrap(), 0);
    let single = CyclicQuotientGerm::new(3, 1, Rat::one(), r("1")).unwrap();
    let res = classify_nonnormal(&[single], true).unwrap();
    assert_eq!(2 % res.cartier_index.unwrap(), 0);
}
