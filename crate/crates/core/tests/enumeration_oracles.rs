//! Counting formulas against brute force.

mod common;

use common::*;
use num_bigint::BigUint;
use num_rational::BigRational;
use pedigree_core::enumeration::{
    automorphism_count, bounds_n, brute_count_n, depth1_total, edge_automorphism_count, factorial,
    graph_classes, lower_bound_class_sum, stirling2, CensusOptions, SimpleGraph,
};

fn all_labelled(n: usize) -> impl Iterator<Item = SimpleGraph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs).map(move |mask| SimpleGraph::from_mask(n, mask))
}

#[test]
fn stirling_matches_partitions() {
    for n in 0..=8 {
        for k in 0..=n {
            assert_eq!(
                stirling2(n, k).unwrap(),
                BigUint::from(brute_partitions(n, k)),
                "S({n}, {k})"
            );
        }
    }
}

#[test]
fn automorphisms_match_permutation_search() {
    for n in 1..=5 {
        for g in all_labelled(n) {
            assert_eq!(
                automorphism_count(&g).unwrap(),
                brute_automorphisms(n, g.edges()),
                "{g:?}"
            );
        }
    }
    for n in 1..=6 {
        for g in graph_classes(n).unwrap() {
            assert_eq!(
                automorphism_count(&g).unwrap(),
                brute_automorphisms(n, g.edges()),
                "{g:?}"
            );
        }
    }
}

#[test]
fn edge_automorphisms_agree_without_small_components() {
    for n in 1..=6 {
        for g in all_labelled(n) {
            if g.isolated_edges() == 0 && g.isolated_vertices() <= 1 {
                assert_eq!(
                    edge_automorphism_count(&g).unwrap(),
                    automorphism_count(&g).unwrap(),
                    "{g:?}"
                );
            }
        }
    }
}

#[test]
fn class_orbits_sum_to_all_labelled_graphs() {
    for n in 1..=6 {
        let total: BigUint = graph_classes(n)
            .unwrap()
            .iter()
            .map(|g| factorial(n) / automorphism_count(g).unwrap())
            .sum();
        assert_eq!(total, BigUint::from(1u64) << (n * (n - 1) / 2), "n = {n}");
    }
}

#[test]
fn labelled_trees_number_n_to_the_n_minus_2() {
    for n in 2..=7 {
        let total: BigUint = graph_classes(n)
            .unwrap()
            .iter()
            .filter(|g| g.is_tree())
            .map(|g| factorial(n) / automorphism_count(g).unwrap())
            .sum();
        assert_eq!(total, BigUint::from(n).pow(n as u32 - 2), "n = {n}");
    }
}

#[test]
fn depth_one_formula_matches_census() {
    for n in 2..=4 {
        for strict in [false, true] {
            let options = CensusOptions {
                strict_population: strict,
                ..CensusOptions::default()
            };
            let brute = brute_count_n(n, 1, options).unwrap();
            assert_eq!(
                depth1_total(n, strict).unwrap(),
                brute,
                "n = {n}, strict = {strict}"
            );
            let lower = lower_bound_class_sum(n).unwrap();
            assert!(lower <= BigRational::from_integer(brute.into()), "n = {n}");
        }
    }
}

#[test]
fn census_lies_between_the_bounds() {
    for (n, d) in [(2, 1), (2, 2), (3, 1), (4, 1), (3, 2)] {
        let exact = brute_count_n(n, d, CensusOptions::default()).unwrap();
        let b = bounds_n(n, d).unwrap().with_exact(exact.clone());
        assert!(b.is_consistent(), "({n}, {d}): {b:?}");
        if (n, d) == (2, 1) {
            assert_eq!(exact, BigUint::from(1u32));
        }
    }
}

#[test]
fn discrete_sites_beat_the_pairwise_baseline_from_five() {
    use pedigree_core::enumeration::{pairwise_distance_baseline, site_bound};
    for n in 3..=64 {
        for d in 1..=64 {
            let s = site_bound(&bounds_n(n, d).unwrap().lower.unwrap(), n)
                .unwrap()
                .s;
            // Three and four extant individuals fall short of the baseline.
            assert_eq!(
                s > pairwise_distance_baseline(n, d),
                n >= 5,
                "n = {n}, d = {d}: s = {s}"
            );
        }
    }
}
