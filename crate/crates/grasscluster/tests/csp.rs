use grasscluster::csp::*;
use grasscluster::planepartition::{enumerate, macmahon, IntPolynomial};
use grasscluster::tropical::{bijection, trop_weight, x_from_gz};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_homomorphism(
        f in prop::collection::vec(-20i64..20, 0..12),
        g in prop::collection::vec(-20i64..20, 0..12),
        n in 1usize..13,
        d in 0usize..13,
    ) {
        let (f, g) = (IntPolynomial::from_i64(&f), IntPolynomial::from_i64(&g));
        let d = d % n;
        let lhs = eval_at_root(&f.mul(&g), n, d);
        let rhs = eval_at_root(&f, n, d).mul(&eval_at_root(&g, n, d));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn residue_census_matches_full_polynomial() {
    for (a, b, c) in [(2, 2, 2), (2, 3, 2), (1, 3, 4)] {
        let report = verify_csp(a, b, c).unwrap();
        let full = macmahon_at_roots(a, b, c).unwrap();
        for (row, v) in report.rows.iter().zip(full) {
            assert_eq!(row.value, v);
        }
    }
}

#[test]
fn fixed_sets_depend_only_on_the_subgroup() {
    let (a, b, c) = (2, 4, 2);
    let n = a + b;
    for d in 0..n {
        assert_eq!(fixed_points(a, b, c, d), fixed_points(a, b, c, gcd(d, n)));
    }
}

#[test]
fn single_box_csp() {
    for c in 0..=10 {
        let r = verify_csp(1, 1, c).unwrap();
        assert!(r.all_equal);
        assert_eq!(r.rows[1].fixed, if c % 2 == 0 { 1 } else { 0 });
    }
}

#[test]
fn small_csp_instances() {
    for (a, b, c) in [(2, 2, 1), (2, 3, 6), (2, 2, 3)] {
        let r = verify_csp(a, b, c).unwrap();
        assert!(r.all_equal, "{}", r.table());
        assert_eq!(BigInt::from(r.rows[0].fixed), macmahon(a, b, c).unwrap().eval_at_one());
    }
}

#[test]
fn non_integral_values_are_reported() {
    let v = eval_at_root(&IntPolynomial::from_i64(&[0, 1]), 5, 1);
    assert!(v.as_integer().is_none());
    assert!(!v.equals_integer(&BigInt::from(0)));
}

#[test]
fn report_serializes() {
    let r = verify_csp(2, 2, 1).unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["rows"].as_array().unwrap().len(), 4);
    assert!(r.table().contains("yes"));
}

#[test]
fn census_matches_tropical_weights() {
    for (a, b, c) in [(2, 3, 2), (2, 2, 3)] {
        let census = weight_census(a, b, c);
        let mut trop: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for p in enumerate(a, b, c) {
            let pt = x_from_gz(&bijection(&p, c).unwrap()).unwrap();
            *trop.entry(trop_weight(&pt).unwrap()).or_default() += 1;
        }
        assert_eq!(census, trop);
        assert_eq!(BigInt::from(census.values().sum::<u64>()), count_partitions(a, b, c));
        assert!(census.keys().all(|w| w.iter().sum::<i64>() == (a as i64) * c as i64));
    }
}
