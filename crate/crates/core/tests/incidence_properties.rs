use std::sync::Arc;

use paradigms::incidence::{
    blob_sum, in_diagonal, in_product, indit, paradigm_meet, paradigm_negate, permute_conjugate, sharpen,
    IncidenceMatrix,
};
use paradigms::universe::{partition_join, Partition, Subset, Universe};
use proptest::prelude::*;

fn universe(n: usize) -> Arc<Universe> {
    Universe::new((1..=n).map(|j| format!("u{j}"))).unwrap()
}

fn subset(u: &Arc<Universe>, mask: u32) -> Subset {
    Subset::new(u, (0..u.len()).map(|j| (mask >> j) & 1 == 1).collect()).unwrap()
}

fn partition_from_labels(u: &Arc<Universe>, labels: &[usize]) -> Partition {
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); labels.len()];
    for (j, &l) in labels.iter().enumerate() {
        blocks[l].push(j);
    }
    Partition::new(u, blocks.into_iter().filter(|b| !b.is_empty()).collect()).unwrap()
}

fn check_algebra(u: &Arc<Universe>, s: &Subset, t: &Subset) {
    let (a, b) = (in_product(s), in_product(t));
    assert_eq!(blob_sum(&a, &b).unwrap(), in_product(&s.union(t).unwrap()));
    assert_eq!(paradigm_meet(&a, &b).unwrap(), in_product(&s.intersection(t).unwrap()));
    assert_eq!(paradigm_negate(&a).unwrap(), in_product(&s.complement()));
    let not = |m: &IncidenceMatrix| paradigm_negate(m).unwrap();
    assert_eq!(not(&blob_sum(&a, &b).unwrap()), paradigm_meet(&not(&a), &not(&b)).unwrap());
    assert_eq!(not(&paradigm_meet(&a, &b).unwrap()), blob_sum(&not(&a), &not(&b)).unwrap());
    assert_eq!(blob_sum(&a, &not(&a)).unwrap(), in_product(&Subset::full(u)));
}

#[test]
fn boolean_algebra_isomorphism_exhaustive_up_to_five() {
    for n in 1..=5 {
        let u = universe(n);
        for sm in 0u32..(1 << n) {
            for tm in 0u32..(1 << n) {
                check_algebra(&u, &subset(&u, sm), &subset(&u, tm));
            }
        }
    }
}

#[test]
fn diagonal_and_product_differ_exactly_for_non_singletons() {
    for n in 1..=5 {
        let u = universe(n);
        for mask in 0u32..(1 << n) {
            let s = subset(&u, mask);
            assert_eq!(in_diagonal(&s) == in_product(&s), s.count() <= 1);
            assert_eq!(in_diagonal(&s).diagonal_support(), in_product(&s).diagonal_support());
        }
    }
}

fn case() -> impl Strategy<Value = (usize, u32, u32, Vec<usize>, Vec<usize>, Vec<usize>)> {
    (1usize..=10).prop_flat_map(|n| {
        (
            Just(n),
            0u32..(1 << n),
            0u32..(1 << n),
            proptest::collection::vec(0..n, n),
            proptest::collection::vec(0..n, n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn boolean_algebra_isomorphism_random((n, sm, tm, _, _, _) in case()) {
        let u = universe(n);
        check_algebra(&u, &subset(&u, sm), &subset(&u, tm));
    }

    #[test]
    fn indit_is_an_equivalence((n, _, _, a, _, _) in case()) {
        let u = universe(n);
        prop_assert!(indit(&partition_from_labels(&u, &a)).is_equivalence());
    }

    #[test]
    fn sharpening_is_masking_and_idempotent((n, sm, _, a, _, _) in case()) {
        let u = universe(n);
        let s = subset(&u, sm);
        let p = partition_from_labels(&u, &a);
        let once = sharpen(&in_product(&s), &p).unwrap();
        for j in 0..n {
            for k in 0..n {
                prop_assert_eq!(once.get(j, k), s.contains(j) && s.contains(k) && a[j] == a[k]);
            }
        }
        prop_assert_eq!(sharpen(&once, &p).unwrap(), once);
    }

    #[test]
    fn complete_commuting_partitions_decohere_fully((n, sm, _, a, b, _) in case()) {
        let u = universe(n);
        let s = subset(&u, sm);
        let (p, q) = (partition_from_labels(&u, &a), partition_from_labels(&u, &b));
        let join = partition_join(&p, &q).unwrap();
        let separates_s = join.blocks().iter().all(|blk| blk.iter().filter(|&&j| s.contains(j)).count() <= 1);
        let twice = sharpen(&sharpen(&in_product(&s), &p).unwrap(), &q).unwrap();
        prop_assert_eq!(twice == in_diagonal(&s), separates_s);
    }

    #[test]
    fn conjugation_relabels_support((n, sm, _, _, _, perm) in case()) {
        let u = universe(n);
        let s = subset(&u, sm);
        let pulled_back = Subset::from_indices(&u, (0..n).filter(|&j| s.contains(perm[j]))).unwrap();
        prop_assert_eq!(permute_conjugate(&in_product(&s), &perm).unwrap(), in_product(&pulled_back));
        let fixes_s = (0..n).all(|j| s.contains(j) == s.contains(perm[j]));
        if fixes_s {
            prop_assert_eq!(permute_conjugate(&in_product(&s), &perm).unwrap(), in_product(&s));
        }
    }
}
