use std::collections::HashMap;

use vincular_eco::eco::{child_count, child_label, expand, reduce, ChildSpec};
use vincular_eco::gentree::omega_rule;
use vincular_eco::oracle::{all_permutations, brute_avoiders};
use vincular_eco::perm::{avoids, label, DashedPattern, Permutation};
use vincular_eco::structure::{
    check_avoidance_by_blocks, classify_type, decompose, recompose, AvoiderType, Decomposition,
};

fn avoiders(n: usize) -> Vec<Permutation> {
    brute_avoiders(&DashedPattern::one_32_four(), n).unwrap()
}

#[test]
fn decomposition_round_trips_and_tracks_label() {
    for n in 1..=8 {
        for t in avoiders(n) {
            let d = decompose(&t).unwrap();
            assert_eq!(recompose(&d).unwrap(), t);
            assert_eq!(d.last_group().runs.len(), label(&t).unwrap(), "{t}");
            assert!(check_avoidance_by_blocks(&d).unwrap());
        }
    }
}

#[test]
fn block_check_agrees_with_occurrence_search() {
    let p = DashedPattern::one_32_four();
    let mut well_formed = 0;
    for n in 1..=7 {
        for t in all_permutations(n).unwrap() {
            // Only permutations whose raw block split is well formed have a
            // decomposition to check.
            if let Ok(d) = Decomposition::of_word(&t) {
                well_formed += 1;
                assert_eq!(
                    check_avoidance_by_blocks(&d).unwrap(),
                    avoids(&p, &t),
                    "{t}"
                );
            }
        }
    }
    assert!(well_formed > 0);
}

#[test]
fn type_matches_second_to_last_minimum() {
    for n in 2..=8 {
        for t in avoiders(n) {
            let d = decompose(&t).unwrap();
            let by_minima = d.height() >= 2 && d.groups[d.height() - 2].min == 2;
            assert_eq!(
                classify_type(&t).unwrap() == AvoiderType::Type21,
                by_minima,
                "{t}"
            );
        }
    }
}

#[test]
fn every_child_reduces_to_its_parent() {
    for n in 1..=9 {
        for t in avoiders(n) {
            let k = label(&t).unwrap();
            let kids = expand(&t).unwrap();
            assert_eq!(kids.len(), child_count(k));
            for (spec, c) in kids {
                assert_eq!(reduce(&c).unwrap(), t, "{spec} of {t}");
            }
        }
    }
}

#[test]
fn expansion_partitions_the_next_level() {
    for n in 1..=8 {
        let mut parent_of: HashMap<Permutation, Permutation> = HashMap::new();
        for t in avoiders(n) {
            for (_, c) in expand(&t).unwrap() {
                assert!(
                    parent_of.insert(c.clone(), t.clone()).is_none(),
                    "{c} twice"
                );
            }
        }
        let next = avoiders(n + 1);
        assert_eq!(parent_of.len(), next.len());
        for c in next {
            assert_eq!(parent_of.get(&c), Some(&reduce(&c).unwrap()));
        }
    }
}

#[test]
fn child_labels_follow_the_rule() {
    let omega = omega_rule();
    for n in 1..=8 {
        for t in avoiders(n) {
            let k = label(&t).unwrap();
            let kids = expand(&t).unwrap();
            let labels: Vec<usize> = kids.iter().map(|(_, c)| label(c).unwrap()).collect();
            assert_eq!(labels, omega.productions(k), "{t}");
            for (spec, c) in &kids {
                assert_eq!(label(c).unwrap(), child_label(*spec, k).unwrap());
                let expected = match spec {
                    ChildSpec::Insert { .. } => AvoiderType::Type12,
                    _ => AvoiderType::Type21,
                };
                assert_eq!(classify_type(c).unwrap(), expected, "{spec} of {t}");
            }
        }
    }
}
