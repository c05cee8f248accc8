//! The non-reconstructible pairs `T`, `U` across the family, plus their
//! genderized versions.

use pedigree_core::counterexample::{build_counterexample, genderize, hypomorphism_witness};
use pedigree_core::isomorphism::{
    are_r_hypomorphic, find_isomorphism, verify_isomorphism, SearchLimit,
};
use pedigree_core::pedigree::find_gender_labelling;

#[test]
fn small_pairs_are_hypomorphic_but_not_isomorphic() {
    for n in 3..=6 {
        let ce = build_counterexample(n, None).unwrap();
        let (t, u) = (&ce.t.pedigree, &ce.u.pedigree);
        assert!(
            find_isomorphism(t, u, SearchLimit::default())
                .unwrap()
                .is_none(),
            "n = {n}"
        );
        assert!(
            are_r_hypomorphic(t, u, n - 1, SearchLimit::default()).unwrap(),
            "n = {n}"
        );
        for j in 1..=n {
            let (a, b) = ce.cards(j);
            assert!(
                verify_isomorphism(&a, &b, &hypomorphism_witness(&ce, j).unwrap()),
                "n = {n}, j = {j}"
            );
        }
    }
}

#[test]
fn large_pairs_differ_in_founder_count() {
    for n in 7..=10 {
        let ce = build_counterexample(n, None).unwrap();
        let (t, u) = (&ce.t.pedigree, &ce.u.pedigree);
        // Even strings other than all-zeros against all odd strings.
        assert_eq!(t.founders().len(), (1 << (n - 1)) - 1, "n = {n}");
        assert_eq!(u.founders().len(), 1 << (n - 1), "n = {n}");
        for j in 1..=n {
            let (a, b) = ce.cards(j);
            assert!(
                verify_isomorphism(&a, &b, &hypomorphism_witness(&ce, j).unwrap()),
                "n = {n}, j = {j}"
            );
        }
    }
}

#[test]
fn genderized_pairs_keep_both_properties() {
    for n in 3..=5 {
        let ce = build_counterexample(n, None).unwrap();
        let (t, u) = (genderize(&ce.t.pedigree), genderize(&ce.u.pedigree));
        assert!(find_gender_labelling(&t.pedigree).is_ok());
        assert!(find_gender_labelling(&u.pedigree).is_ok());
        assert!(
            find_isomorphism(&t.pedigree, &u.pedigree, SearchLimit::default())
                .unwrap()
                .is_none(),
            "n = {n}"
        );
        assert!(
            are_r_hypomorphic(&t.pedigree, &u.pedigree, n - 1, SearchLimit::default()).unwrap(),
            "n = {n}"
        );
    }
}
