use proptest::prelude::*;
use vincular_eco::oracle::all_permutations;
use vincular_eco::perm::{
    avoids, label, occurrences, order_isomorphic, parse_dashed_pattern, standard_reduction,
    DashedPattern, Permutation,
};
use vincular_eco::structure::avoids_1_32_4;

/// Index subsets of size `m` from `0..n`, lexicographic.
fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// Classical containment by checking the relative order of every subsequence.
fn contains_classically(pattern: &[u32], t: &[u32]) -> bool {
    subsets(t.len(), pattern.len()).into_iter().any(|idx| {
        let sub: Vec<u32> = idx.iter().map(|&i| t[i]).collect();
        (0..sub.len())
            .all(|a| (0..sub.len()).all(|b| (sub[a] < sub[b]) == (pattern[a] < pattern[b])))
    })
}

#[test]
fn all_dashed_matches_classical_subsequence_scan() {
    let patterns = ["1-2-3", "1-3-2", "2-1-3-4", "1-3-2-4", "3-1-4-2", "1-2-3-4"];
    for text in patterns {
        let p = parse_dashed_pattern(text).unwrap();
        for n in 0..=8 {
            for t in all_permutations(n).unwrap() {
                assert_eq!(
                    avoids(&p, &t),
                    !contains_classically(p.underlying().as_slice(), t.as_slice()),
                    "{text} in {t}"
                );
            }
        }
    }
}

#[test]
fn linear_test_agrees_with_generic_search() {
    let p = DashedPattern::one_32_four();
    for n in 0..=8 {
        for t in all_permutations(n).unwrap() {
            assert_eq!(avoids_1_32_4(t.as_slice()), avoids(&p, &t), "{t}");
        }
    }
}

fn arb_permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

fn arb_pattern() -> impl Strategy<Value = DashedPattern> {
    arb_permutation(5)
        .prop_filter("non-empty", |p| !p.is_empty())
        .prop_flat_map(|p| {
            let m = p.len();
            (Just(p), proptest::collection::vec(any::<bool>(), m - 1))
        })
        .prop_map(|(p, adj)| DashedPattern::new(p, adj).unwrap())
}

proptest! {
    #[test]
    fn occurrences_respect_adjacency(p in arb_pattern(), t in arb_permutation(9)) {
        for occ in occurrences(&p, &t) {
            prop_assert!(occ.windows(2).all(|w| w[0] < w[1]));
            for (j, &adjacent) in p.adjacency().iter().enumerate() {
                if adjacent {
                    prop_assert_eq!(occ[j + 1], occ[j] + 1);
                }
            }
            let values: Vec<u32> = occ.iter().map(|&i| t.as_slice()[i - 1]).collect();
            prop_assert!(order_isomorphic(&values, p.underlying().as_slice()).unwrap());
        }
    }

    #[test]
    fn dropping_dashes_only_adds_occurrences(p in arb_pattern(), t in arb_permutation(9)) {
        let loose = occurrences(&p.all_dashed(), &t);
        for occ in occurrences(&p, &t) {
            prop_assert!(loose.contains(&occ));
        }
        prop_assert_eq!(avoids(&p, &t), occurrences(&p, &t).is_empty());
    }

    #[test]
    fn standard_reduction_is_order_isomorphic(
        values in proptest::collection::hash_set(-1000i64..1000, 0..12)
    ) {
        let word: Vec<i64> = values.into_iter().collect();
        let r = standard_reduction(&word).unwrap();
        let as_i64: Vec<i64> = r.as_slice().iter().map(|&v| v as i64).collect();
        prop_assert!(order_isomorphic(&as_i64, &word).unwrap());
    }

    #[test]
    fn label_is_bounded(t in arb_permutation(12).prop_filter("non-empty", |t| !t.is_empty())) {
        prop_assert!(label(&t).unwrap() < t.len());
    }

    #[test]
    fn permutation_text_round_trips(t in arb_permutation(15)) {
        prop_assert_eq!(t.to_string().parse::<Permutation>().unwrap(), t.clone());
    }

    #[test]
    fn pattern_text_round_trips(p in arb_pattern()) {
        prop_assert_eq!(p.to_string().parse::<DashedPattern>().unwrap(), p.clone());
    }
}
