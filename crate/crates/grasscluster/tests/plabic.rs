use grasscluster::confspace::plucker_set;
use grasscluster::exact::random_generic_matrix;
use grasscluster::plabic::*;
use grasscluster::quiver::{frozen_vertex, grid_vertices, rho_sequence, standard_quiver, VertexId};
use std::collections::BTreeSet;

const SIZES: [(usize, usize); 8] = [(1, 3), (2, 4), (2, 5), (2, 6), (3, 6), (3, 7), (4, 8), (3, 8)];

fn all_vertices(a: usize, n: usize) -> Vec<VertexId> {
    grid_vertices(a, n - a)
}

#[test]
fn gamma_dominating_sets_match_closed_form() {
    for (a, n) in SIZES {
        let g = standard_graph(a, n).unwrap();
        let got: BTreeSet<Vec<usize>> = g.dominating_sets().unwrap().into_values().collect();
        let want: BTreeSet<Vec<usize>> = all_vertices(a, n).into_iter().map(|v| plucker_set(a, n, v).unwrap()).collect();
        assert_eq!(got, want, "({a},{n})");
        assert_eq!(got.len(), a * (n - a) + 1);
    }
}

#[test]
fn gamma_strands_are_reduced() {
    for (a, n) in SIZES {
        let g = standard_graph(a, n).unwrap();
        g.check_reduced().unwrap();
        assert!(g.strand_defects().unwrap().is_empty());
    }
}

#[test]
fn quiver_of_gamma_is_standard() {
    for (a, n) in SIZES {
        let g = standard_graph(a, n).unwrap();
        assert!(g.quiver_of().unwrap().same_as(&standard_quiver(a, n).unwrap()), "({a},{n})");
    }
}

#[test]
fn boundary_faces_are_frozen() {
    let q = standard_graph(3, 7).unwrap().quiver_of().unwrap();
    for i in 1..=7 {
        assert!(q.is_frozen(frozen_vertex(3, 7, i)).unwrap());
    }
    assert_eq!(q.frozen_vertices().len(), 7);
}

#[test]
fn square_move_mutates_quiver_and_is_involutive() {
    for (a, n) in [(2, 4), (3, 6), (3, 7)] {
        let g = standard_graph(a, n).unwrap();
        let mut labels = standard_labels(a, n).unwrap();
        let k = rho_sequence(a, n).unwrap()[0];
        let old = plucker_set(a, n, k).unwrap();
        let g1 = g.normalized_square_move(&old).unwrap();
        g1.check_reduced().unwrap();
        let before: BTreeSet<_> = g.dominating_sets().unwrap().into_values().collect();
        let after: BTreeSet<_> = g1.dominating_sets().unwrap().into_values().collect();
        let new: Vec<_> = after.difference(&before).cloned().collect();
        assert_eq!(new.len(), 1);
        labels.remove(&old);
        labels.insert(new[0].clone(), k);
        let q1 = g1.quiver_with_labels(&labels).unwrap();
        assert!(q1.same_as(&standard_quiver(a, n).unwrap().mutate(k).unwrap()));
        let g2 = g1.normalized_square_move(&new[0]).unwrap();
        let back: BTreeSet<_> = g2.dominating_sets().unwrap().into_values().collect();
        assert_eq!(back, before);
    }
}

#[test]
fn contract_expand_preserves_quiver_and_sets() {
    for (a, n) in [(2, 5), (3, 6), (3, 7)] {
        let g = standard_graph(a, n).unwrap();
        let q = g.quiver_of().unwrap();
        let sets: BTreeSet<_> = g.dominating_sets().unwrap().into_values().collect();
        let mut flips = 0;
        for w in g.internal_vertices() {
            for swap in [false, true] {
                if let Ok(h) = g.contract_expand(w, swap) {
                    h.check_reduced().unwrap();
                    assert!(h.quiver_of().unwrap().same_as(&q));
                    let s2: BTreeSet<_> = h.dominating_sets().unwrap().into_values().collect();
                    assert_eq!(s2, sets);
                    flips += 1;
                }
            }
        }
        assert_eq!(flips > 0, a >= 3);
    }
}

#[test]
fn schedules_agree_and_reach_rotated_labels() {
    for (a, n) in [(2, 4), (2, 5), (3, 6), (3, 7), (4, 8)] {
        let (set_level, _) = set_level_schedule(a, n).unwrap();
        let (g, graph_level) = graph_level_schedule(a, n).unwrap();
        assert_eq!(set_level, graph_level, "({a},{n})");
        assert_eq!(set_level, rotated_labels(a, n).unwrap(), "({a},{n})");
        g.check_reduced().unwrap();
        let labels = graph_level.iter().map(|(v, s)| (s.clone(), *v)).collect();
        let rho_q = standard_quiver(a, n).unwrap().mutate_sequence(&rho_sequence(a, n).unwrap()).unwrap();
        assert!(g.quiver_with_labels(&labels).unwrap().same_as(&rho_q));
    }
}

#[test]
fn schedule_exchanges_satisfy_plucker_relations() {
    for (a, n) in [(2, 5), (3, 7)] {
        let (_, steps) = set_level_schedule(a, n).unwrap();
        for seed in 0..5 {
            let m = random_generic_matrix(a, n, seed).unwrap();
            for s in &steps {
                assert!(plucker_exchange_holds(&m, &s.old, &s.new, &s.neighbours).unwrap(), "{:?}", s.vertex);
            }
        }
    }
}

#[test]
fn dot_and_json_exports() {
    let g = standard_graph(2, 4).unwrap();
    let dot = g.to_dot();
    assert!(dot.starts_with("graph plabic"));
    assert_eq!(dot.matches(" -- ").count(), g.colors().len() + 2 + 4 - 2);
    let v: serde_json::Value = serde_json::to_value(&g).unwrap();
    assert!(v["rotation"].is_array());
}
