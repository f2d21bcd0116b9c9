use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use vincular_eco::counting::{
    callan_3142, count_avoiders_upto, lomega_apply, u_triangle, v_triangle, ConstantTerm,
};
use vincular_eco::gentree::{generate_level, lambda_rule, level_label_counts, omega_rule};
use vincular_eco::oracle::{brute_census, brute_count, Statistic};
use vincular_eco::perm::{label, parse_dashed_pattern, DashedPattern};
use vincular_eco::series::BivariateSeries;

#[test]
fn tree_levels_match_rule_counts() {
    let omega = omega_rule();
    for n in 1..=9 {
        let mut hist: BTreeMap<usize, BigUint> = BTreeMap::new();
        let level = generate_level(n);
        for t in &level {
            *hist.entry(label(t).unwrap()).or_default() += 1u32;
        }
        assert_eq!(hist, level_label_counts(&omega, n - 1), "length {n}");
        let distinct: HashSet<_> = level.iter().collect();
        assert_eq!(distinct.len(), level.len());
        assert_eq!(BigUint::from(level.len()), u_triangle(n).row_sum(n));
    }
}

#[test]
fn lambda_is_omega_shifted() {
    for depth in 0..=12 {
        let shifted: BTreeMap<usize, BigUint> = level_label_counts(&omega_rule(), depth)
            .into_iter()
            .map(|(k, v)| (k + 1, v))
            .collect();
        assert_eq!(level_label_counts(&lambda_rule(), depth), shifted);
    }
}

#[test]
fn triangle_identities() {
    let u = u_triangle(14);
    let v = v_triangle(14);
    let counts = count_avoiders_upto(14);
    for n in 1..=14 {
        for k in 0..n {
            assert_eq!(v.get(n, k), u.get(n, k + 1));
        }
        assert_eq!(u.row_sum(n), v.row_sum(n));
        assert_eq!(v.get(n, 0), Some(&counts[n - 1]));
    }
}

#[test]
fn brute_force_counts_match_recurrence() {
    let p = DashedPattern::one_32_four();
    let counts = count_avoiders_upto(9);
    for (n, count) in counts.iter().enumerate() {
        assert_eq!(&BigUint::from(brute_count(&p, n).unwrap()), count);
    }
    let v = v_triangle(8);
    for n in 1..=8 {
        let census: Vec<BigUint> = brute_census(&p, n, Statistic::Label)
            .unwrap()
            .into_iter()
            .map(|r| r.count)
            .collect();
        assert_eq!(census, v.row(n));
    }
}

#[test]
fn callan_matches_brute_force() {
    let p = parse_dashed_pattern("31-4-2").unwrap();
    let a = callan_3142(8);
    for (n, value) in a.iter().enumerate() {
        assert_eq!(
            value,
            &BigUint::from(brute_count(&p, n).unwrap()),
            "length {n}"
        );
    }
}

#[test]
fn wilf_equivalent_to_1_23_4() {
    let a = DashedPattern::one_32_four();
    let b = parse_dashed_pattern("1-23-4").unwrap();
    for n in 0..=8 {
        assert_eq!(brute_count(&a, n).unwrap(), brute_count(&b, n).unwrap());
    }
}

fn level_polynomial(depth: usize) -> BivariateSeries {
    let mut s = BivariateSeries::zero(0);
    for (k, v) in level_label_counts(&omega_rule(), depth) {
        s.add_term(0, k, BigInt::from(v));
    }
    s
}

#[test]
fn operator_is_the_level_transition() {
    for depth in 0..10 {
        let next = lomega_apply(
            &level_polynomial(depth),
            &omega_rule(),
            ConstantTerm::Productions,
        );
        assert_eq!(next, level_polynomial(depth + 1));
    }
}

#[test]
fn operator_is_linear() {
    let rule = omega_rule();
    let mut a = BivariateSeries::zero(4);
    let mut b = BivariateSeries::zero(4);
    for (i, c) in [3i64, -1, 4, 1, -5, 9].iter().enumerate() {
        a.add_term(i % 5, i, BigInt::from(*c));
        b.add_term((i * 3) % 5, (i * 7) % 6, BigInt::from(c * 2 - 1));
    }
    for mode in [ConstantTerm::Axiom, ConstantTerm::Productions] {
        let lhs = lomega_apply(&(&a + &b), &rule, mode);
        let rhs = &lomega_apply(&a, &rule, mode) + &lomega_apply(&b, &rule, mode);
        assert_eq!(lhs, rhs);
    }
}
