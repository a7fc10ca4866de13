use std::sync::Arc;

use paradigms::universe::{
    attributes_complete, classifiable_cells, dnf_of_subset, participates, partition_join, truth_table_universe,
    Attribute, Partition, Subset, Universe,
};
use proptest::prelude::*;

fn universe(n: usize) -> Arc<Universe> {
    Universe::new((1..=n).map(|j| format!("u{j}"))).unwrap()
}

fn partition_from_labels(u: &Arc<Universe>, labels: &[usize]) -> Partition {
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); labels.len()];
    for (j, &l) in labels.iter().enumerate() {
        blocks[l].push(j);
    }
    Partition::new(u, blocks.into_iter().filter(|b| !b.is_empty()).collect()).unwrap()
}

fn labels(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..n, n)
}

fn three_partitions() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>, Vec<usize>)> {
    (1usize..=8).prop_flat_map(|n| (Just(n), labels(n), labels(n), labels(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn join_is_a_semilattice((n, a, b, c) in three_partitions()) {
        let u = universe(n);
        let (p, q, r) = (partition_from_labels(&u, &a), partition_from_labels(&u, &b), partition_from_labels(&u, &c));
        prop_assert_eq!(partition_join(&p, &q).unwrap(), partition_join(&q, &p).unwrap());
        prop_assert_eq!(
            partition_join(&partition_join(&p, &q).unwrap(), &r).unwrap(),
            partition_join(&p, &partition_join(&q, &r).unwrap()).unwrap()
        );
        prop_assert_eq!(partition_join(&p, &p).unwrap(), p.clone());
        let join = partition_join(&p, &q).unwrap();
        for j in 0..n {
            for k in 0..n {
                prop_assert_eq!(join.same_block(j, k), a[j] == a[k] && b[j] == b[k]);
            }
        }
    }

    #[test]
    fn completeness_matches_pair_scan((n, a, b, _c) in three_partitions()) {
        let u = universe(n);
        let f = Attribute::new(&u, "f", a.iter().map(|v| v.to_string())).unwrap();
        let g = Attribute::new(&u, "g", b.iter().map(|v| v.to_string())).unwrap();
        let separated = (0..n).all(|j| (j + 1..n).all(|k| a[j] != a[k] || b[j] != b[k]));
        prop_assert_eq!(attributes_complete(&[f.clone(), g.clone()]).unwrap(), separated);

        let (cells, bound) = classifiable_cells(&[f.clone(), g.clone()]).unwrap();
        let mut distinct_pairs: Vec<(usize, usize)> = a.iter().copied().zip(b.iter().copied()).collect();
        distinct_pairs.sort_unstable();
        distinct_pairs.dedup();
        prop_assert_eq!(cells, distinct_pairs.len());
        prop_assert!(cells <= bound);
    }

    #[test]
    fn participation_is_a_partial_order(
        (n, s, t, r) in (1usize..=8).prop_flat_map(|n| {
            (Just(n), proptest::collection::vec(any::<bool>(), n), proptest::collection::vec(any::<bool>(), n), proptest::collection::vec(any::<bool>(), n))
        })
    ) {
        let u = universe(n);
        let (s, t, r) = (Subset::new(&u, s).unwrap(), Subset::new(&u, t).unwrap(), Subset::new(&u, r).unwrap());
        prop_assert!(participates(&s, &s).unwrap());
        if participates(&s, &t).unwrap() && participates(&t, &s).unwrap() {
            prop_assert_eq!(&s, &t);
        }
        if participates(&s, &t).unwrap() && participates(&t, &r).unwrap() {
            prop_assert!(participates(&s, &r).unwrap());
        }
    }

    #[test]
    fn dnf_round_trip_on_random_complete_predicates(
        (k, rows, bits) in (1usize..=4).prop_flat_map(|k| {
            let max = (1usize << k).min(8);
            (Just(k), proptest::sample::subsequence((0..1usize << k).collect::<Vec<_>>(), 1..=max))
                .prop_flat_map(|(k, rows)| {
                    let n = rows.len();
                    (Just(k), Just(rows), proptest::collection::vec(any::<bool>(), n))
                })
        })
    ) {
        let n = rows.len();
        let u = universe(n);
        let preds: Vec<Attribute> = (0..k)
            .map(|p| Attribute::new(&u, format!("p{p}"), rows.iter().map(|r| ((r >> p) & 1).to_string())).unwrap())
            .collect();
        let s = Subset::new(&u, bits.clone()).unwrap();
        let dnf = dnf_of_subset(&preds, &s).unwrap();
        for j in 0..n {
            let row: Vec<bool> = (0..k).map(|p| (rows[j] >> p) & 1 == 1).collect();
            prop_assert_eq!(dnf.evaluate(&row), bits[j]);
        }
    }
}

#[test]
fn dnf_round_trip_is_exhaustive_on_truth_tables() {
    for k in 1..=3 {
        let names: Vec<String> = (0..k).map(|p| format!("P{p}")).collect();
        let (u, attrs) = truth_table_universe(&names).unwrap();
        let n = u.len();
        let table: Vec<Vec<bool>> = (0..n).map(|j| attrs.iter().map(|a| a.value(j) == "1").collect()).collect();
        for mask in 0u32..(1 << n) {
            let s = Subset::new(&u, (0..n).map(|j| (mask >> j) & 1 == 1).collect()).unwrap();
            let dnf = dnf_of_subset(&attrs, &s).unwrap();
            let recovered: Vec<bool> = table.iter().map(|row| dnf.evaluate(row)).collect();
            assert_eq!(recovered, s.members());
            assert_eq!(dnf.conjuncts().len(), s.count());
        }
    }
}
