//! The canonical labelling agrees with exhaustive bijection search on small
//! pedigrees.

mod common;

use common::*;
use pedigree_core::isomorphism::{
    are_isomorphic, canonical_code, find_isomorphism, verify_isomorphism, SearchLimit,
};
use pedigree_core::pedigree::VertexId;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_pairs_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut same, mut different) = (0, 0);
    for _ in 0..3000 {
        let n = rng.gen_range(1..=3);
        let extra = rng.gen_range(2..=6);
        let p = random_pedigree(&mut rng, n, extra);
        let q = if rng.gen_bool(0.3) {
            shuffle_ids(&p, &mut rng)
        } else {
            random_pedigree(&mut rng, n, extra)
        };
        if p.vertex_count() > 10 || q.vertex_count() > 10 {
            continue;
        }
        let expected = brute_isomorphic(&p, &q);
        let found = find_isomorphism(&p, &q, SearchLimit::default()).unwrap();
        assert_eq!(found.is_some(), expected, "{p:?}\n{q:?}");
        assert_eq!(
            canonical_code(&p).unwrap() == canonical_code(&q).unwrap(),
            expected
        );
        if let Some(m) = found {
            assert!(verify_isomorphism(&p, &q, &m));
            same += 1;
        } else {
            different += 1;
        }
    }
    assert!(
        same > 300 && different > 300,
        "{same} isomorphic, {different} not"
    );
}

#[test]
fn broken_maps_fail_verification() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let p = random_pedigree(&mut rng, 2, 6);
        let q = shuffle_ids(&p, &mut rng);
        let mut m = find_isomorphism(&p, &q, SearchLimit::default())
            .unwrap()
            .unwrap();
        let founders: Vec<VertexId> = p.founders();
        let (a, b) = (founders[0], founders[founders.len() - 1]);
        if a == b {
            continue;
        }
        let (ia, ib) = (m.0[&a], m.0[&b]);
        m.0.insert(a, ib);
        m.0.insert(b, ia);
        // Swapping two founders keeps a valid isomorphism only if they play
        // the same role.
        let swapped_ok = verify_isomorphism(&p, &q, &m);
        let symmetric = p.children_of(a) == p.children_of(b);
        assert_eq!(swapped_ok, symmetric);
    }
}

#[test]
fn extant_mismatch_is_an_error() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let p = random_pedigree(&mut rng, 2, 5);
    let q = random_pedigree(&mut rng, 3, 5);
    assert!(are_isomorphic(&p, &q, SearchLimit::default()).is_err());
}
