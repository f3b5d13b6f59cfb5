mod common;

use grasscluster::confspace::*;
use grasscluster::exact::{int, plucker, pow, random_generic_matrix, RatMatrix, Rational};
use grasscluster::quiver::{frozen_rotation, grid_vertices, rho_sequence, VertexId};
use num_traits::One;
use VertexId::Grid;

const SIZES: [(usize, usize); 5] = [(2, 4), (2, 5), (3, 6), (3, 7), (4, 8)];
const TRIALS: u64 = 6;

fn samples(a: usize, n: usize) -> impl Iterator<Item = DecoratedConfiguration> {
    (0..TRIALS).map(move |s| DecoratedConfiguration::random(a, n, 1000 + s).unwrap())
}

#[test]
fn casimir_identity() {
    for (a, n) in SIZES {
        for c in samples(a, n) {
            let x = c.x_seed().unwrap();
            let all: Vec<VertexId> = x.quiver().vertices().to_vec();
            assert_eq!(x.product_over(&all).unwrap(), c.monodromy());
        }
    }
}

#[test]
fn potentials_agree() {
    for (a, n) in SIZES {
        for c in samples(a, n) {
            let w = c.potential().unwrap();
            assert_eq!(c.potential_cluster().unwrap(), w);
            assert_eq!(c.potential_gz().unwrap(), w);
            assert_eq!(c.rw_potential().unwrap(), w);
            for i in 1..=n {
                assert_eq!(c.theta(i).unwrap(), c.theta_cluster(i).unwrap(), "theta_{i} on ({a},{n})");
            }
        }
    }
}

#[test]
fn gz_product_formula_holds() {
    for (a, n) in SIZES {
        for c in samples(a, n) {
            for i in 1..=a {
                for j in 1..=n - a {
                    assert_eq!(c.gz_value(i, j).unwrap(), c.gz_product_formula(i, j).unwrap());
                }
            }
            assert_eq!(c.gz_value(0, 0).unwrap(), c.monodromy());
        }
    }
}

#[test]
fn weights_are_products_over_f_sets() {
    for (a, n) in SIZES {
        for c in samples(a, n) {
            let x = c.x_seed().unwrap();
            let mut prod = Rational::one();
            for k in 1..=n {
                let m = c.weight(k).unwrap();
                assert_eq!(m, x.product_over(&f_set(a, n, k)).unwrap(), "M_{k} on ({a},{n})");
                prod *= m;
            }
            assert_eq!(prod, pow(&c.monodromy(), a as i64));
        }
    }
}

#[test]
fn f_sets_have_stair_shape_counts() {
    // Every grid vertex (i,j) lies in exactly a of the F_k, matching |I(i,j)| = a.
    for (a, n) in SIZES {
        for v in grid_vertices(a, n - a) {
            let hits = (1..=n).filter(|&k| f_set(a, n, k).contains(&v)).count();
            assert_eq!(hits, a);
        }
    }
}

#[test]
fn rotation_matches_rho_mutation() {
    for (a, n) in SIZES {
        let perm = frozen_rotation(a, n).unwrap();
        let rho = rho_sequence(a, n).unwrap();
        for c in samples(a, n) {
            let mutated = c.x_seed().unwrap().mutate_sequence(&rho).unwrap();
            let r = c.rotate();
            for &v in mutated.quiver().vertices() {
                assert_eq!(&r.x_value(perm[&v]).unwrap(), mutated.value(v).unwrap(), "{v} on ({a},{n})");
            }
        }
    }
}

#[test]
fn twisted_rotation_relabels_plucker_sets() {
    for (a, n) in SIZES {
        let m = random_generic_matrix(a, n, 7).unwrap();
        let mc = apply_c(&m);
        for v in grid_vertices(a, n - a) {
            assert_eq!(
                plucker(&mc, &plucker_set(a, n, v).unwrap()).unwrap(),
                plucker(&m, &plucker_set_rotated(a, n, v).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn twisted_rotation_power() {
    for (a, n) in [(2, 4), (3, 6), (3, 7), (4, 8)] {
        let c = twisted_rotation_matrix(a, n).unwrap();
        let mut p = RatMatrix::identity(n);
        for _ in 0..n {
            p = p.mul(&c).unwrap();
        }
        let sign = if a % 2 == 1 { int(1) } else { int(-1) };
        assert_eq!(p, RatMatrix::identity(n).scale(&sign));
    }
}

#[test]
fn rotation_has_order_n_on_x() {
    for (a, n) in SIZES {
        let c = DecoratedConfiguration::random(a, n, 5).unwrap();
        let mut r = c.clone();
        for _ in 0..n {
            r = r.rotate();
        }
        assert_eq!(r.x_seed().unwrap().values(), c.x_seed().unwrap().values());
    }
}

#[test]
fn gz_recursion_under_rotation() {
    for (a, n) in SIZES {
        for c in samples(a, n) {
            let (p, l) = c.gz_coordinates().unwrap();
            let (p2, l2) = c.rotate().gz_coordinates().unwrap();
            assert_eq!(p2, p);
            assert_eq!(l2, birational_eta(&p, &l), "({a},{n})");
        }
    }
}

#[test]
fn sl_invariance() {
    for (a, n) in SIZES {
        let c = DecoratedConfiguration::random(a, n, 11).unwrap();
        let g = common::random_sl(a, 3);
        assert_eq!(g.determinant().unwrap(), int(1));
        let d = c.act(&g).unwrap();
        assert_eq!(d.x_seed().unwrap().values(), c.x_seed().unwrap().values());
        assert_eq!(d.a_seed().unwrap().values(), c.a_seed().unwrap().values());
        assert_eq!(d.potential().unwrap(), c.potential().unwrap());
        assert_eq!(d.rw_potential().unwrap(), c.rw_potential().unwrap());
        for k in 1..=n {
            assert_eq!(d.weight(k).unwrap(), c.weight(k).unwrap());
        }
    }
}

#[test]
fn phi_matrices_multiply_to_scalar() {
    for (a, n) in [(2, 5), (3, 6)] {
        for c in samples(a, n) {
            let ms = c.phi_matrices().unwrap();
            for m in &ms {
                for r in 0..a - 1 {
                    for s in 0..a {
                        assert_eq!(m.get(r, s), &int(if s == r + 1 { 1 } else { 0 }));
                    }
                }
            }
            let prod = ms[1..].iter().fold(ms[0].clone(), |acc, m| acc.mul(m).unwrap());
            let sign = if a % 2 == 1 { int(1) } else { int(-1) };
            assert_eq!(prod, RatMatrix::identity(a).scale(&(sign * c.monodromy())));
        }
    }
}

#[test]
fn unit_scalings_give_unit_monodromy() {
    let v = random_generic_matrix(2, 4, 1).unwrap();
    let c = DecoratedConfiguration::new(v, vec![int(1); 4]).unwrap();
    assert_eq!(c.monodromy(), int(1));
    assert_eq!(c.x_seed().unwrap().product_over(&grid_vertices(2, 2)).unwrap(), int(1));
}

#[test]
fn gz_round_trip() {
    let c = DecoratedConfiguration::random(3, 7, 2).unwrap();
    let (p, l) = c.gz_coordinates().unwrap();
    let x = x_from_gz(3, 7, &p, &l).unwrap();
    assert_eq!(x.values(), c.x_seed().unwrap().values());
    assert_eq!(theta_from_x(&x, 7).unwrap(), c.x_value(Grid(0, 0)).unwrap());
}

#[test]
fn configuration_json_round_trip() {
    let c = DecoratedConfiguration::random(3, 6, 9).unwrap();
    let s = serde_json::to_string(&c).unwrap();
    assert!(s.contains("\"V\""));
    let back: DecoratedConfiguration = serde_json::from_str(&s).unwrap();
    assert_eq!(back, c);
}
