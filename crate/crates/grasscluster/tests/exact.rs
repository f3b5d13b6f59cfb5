use grasscluster::exact::*;
use proptest::prelude::*;

fn small_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, n), n).prop_map(|r| RatMatrix::from_i64(&r).unwrap())
}

proptest! {
    #[test]
    fn determinant_is_multiplicative(a in small_matrix(4), b in small_matrix(4)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn three_term_relation(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 4), 2)) {
        let m = RatMatrix::from_i64(&rows).unwrap();
        let d = |s: &[usize]| plucker(&m, s).unwrap();
        prop_assert_eq!(d(&[1, 3]) * d(&[2, 4]), d(&[1, 2]) * d(&[3, 4]) + d(&[1, 4]) * d(&[2, 3]));
    }

    #[test]
    fn rational_text_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn solve_inverts_multiplication(a in small_matrix(3), x in prop::collection::vec(-5i64..5, 3)) {
        prop_assume!(!a.determinant().unwrap().eq(&int(0)));
        let xs: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
        let col = RatMatrix::from_columns(&[xs.clone()]).unwrap();
        let rhs = a.mul(&col).unwrap().column(0);
        prop_assert_eq!(a.solve(&rhs).unwrap(), xs);
    }
}

#[test]
fn generic_matrices_are_generic_and_reproducible() {
    for (a, n) in [(2, 4), (3, 6), (4, 8)] {
        for seed in 0..5 {
            let m = random_generic_matrix(a, n, seed).unwrap();
            assert!(all_minors_nonzero(&m));
            assert_eq!(m, random_generic_matrix(a, n, seed).unwrap());
        }
    }
    assert!(random_generic_matrix(3, 3, 0).is_err());
}

#[test]
fn vandermonde_is_totally_positive() {
    let ts: Vec<Rational> = (1..=6).map(int).collect();
    for a in 2..=4 {
        let m = totally_positive_matrix(a, &ts).unwrap();
        for s in subsets(6, a) {
            assert!(plucker(&m, &s).unwrap() > int(0), "{s:?}");
        }
    }
}

#[test]
fn line_configuration_minor() {
    let m = RatMatrix::from_i64(&[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap();
    assert_eq!(plucker(&m, &[1, 3]).unwrap(), int(2));
    assert!(plucker(&m, &[3, 1]).is_err());
    assert!(plucker(&m, &[1, 5]).is_err());
}
