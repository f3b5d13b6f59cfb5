use grasscluster::quiver::*;
use grasscluster::Error;
use proptest::prelude::*;
use std::collections::HashMap;
use VertexId::Grid;

/// Mutation by the three-step picture: compose paths through k, reverse arrows at k,
/// cancel 2-cycles. Works on an explicit arrow multiset.
fn graphical_mutation(q: &Quiver, k: VertexId) -> HashMap<(VertexId, VertexId), i64> {
    let mut arrows: HashMap<(VertexId, VertexId), i64> = HashMap::new();
    for (u, v, m) in q.arrows() {
        *arrows.entry((u, v)).or_default() += m;
    }
    let into_k: Vec<(VertexId, i64)> = arrows.iter().filter(|((_, v), _)| *v == k).map(|((u, _), &m)| (*u, m)).collect();
    let out_of_k: Vec<(VertexId, i64)> = arrows.iter().filter(|((u, _), _)| *u == k).map(|((_, v), &m)| (*v, m)).collect();
    let mut next: HashMap<(VertexId, VertexId), i64> = HashMap::new();
    for (&(u, v), &m) in &arrows {
        let e = if u == k || v == k { (v, u) } else { (u, v) };
        *next.entry(e).or_default() += m;
    }
    for &(i, mi) in &into_k {
        for &(j, mj) in &out_of_k {
            *next.entry((i, j)).or_default() += mi * mj;
        }
    }
    let mut out = HashMap::new();
    for (&(u, v), &m) in &next {
        let net = m - next.get(&(v, u)).copied().unwrap_or(0);
        if net > 0 {
            out.insert((u, v), net);
        }
    }
    out
}

fn arrows_of(q: &Quiver) -> HashMap<(VertexId, VertexId), i64> {
    q.arrows().into_iter().map(|(u, v, m)| ((u, v), m)).collect()
}

#[test]
fn matrix_rule_matches_graphical_procedure() {
    for (a, n) in [(2, 5), (3, 6), (3, 7)] {
        let mut q = standard_quiver(a, n).unwrap();
        let unf = q.unfrozen();
        for step in 0..12 {
            let k = unf[(step * 5 + 1) % unf.len()];
            let want = graphical_mutation(&q, k);
            q = q.mutate(k).unwrap();
            assert_eq!(arrows_of(&q), want, "({a},{n}) step {step} at {k}");
        }
    }
}

#[test]
fn arrows_of_q24() {
    let q = standard_quiver(2, 4).unwrap();
    assert_eq!(q.eps(Grid(1, 1), Grid(0, 0)), 1);
    assert_eq!(q.eps(Grid(0, 0), Grid(2, 1)), 1);
    assert_eq!(q.eps(Grid(1, 2), Grid(1, 1)), 1);
    assert_eq!(q.unfrozen(), vec![Grid(1, 1)]);
}

#[test]
fn rho_rotates_plain_and_extended_quivers() {
    for a in 1..=4 {
        for n in a + 1..=8 {
            let perm = frozen_rotation(a, n).unwrap();
            let rho = rho_sequence(a, n).unwrap();
            let q = standard_quiver(a, n).unwrap();
            let grid: HashMap<_, _> = perm.iter().filter(|(k, _)| matches!(k, Grid(..))).map(|(k, v)| (*k, *v)).collect();
            assert!(q.mutate_sequence(&rho).unwrap().relabel(&grid).unwrap().same_as(&q), "({a},{n})");
            let e = extended_quiver(a, n).unwrap();
            assert!(e.mutate_sequence(&rho).unwrap().relabel(&perm).unwrap().same_as(&e), "({a},{n})");
        }
    }
}

#[test]
fn frozen_rotation_shifts_labels() {
    let perm = frozen_rotation(3, 7).unwrap();
    assert_eq!(perm[&Grid(0, 0)], Grid(1, 4));
    assert_eq!(perm[&Grid(1, 4)], Grid(2, 4));
    assert_eq!(perm[&Grid(3, 1)], Grid(0, 0));
    assert_eq!(perm[&Grid(3, 2)], Grid(3, 1));
    assert_eq!(perm[&Grid(2, 2)], Grid(2, 2));
}

#[test]
fn optimized_and_full_rank() {
    for a in 1..=4 {
        for n in a + 1..=8 {
            let b = n - a;
            let q = standard_quiver(a, n).unwrap();
            assert!(q.is_optimized(Grid(0, 0)).unwrap());
            assert!(q.is_optimized(Grid(a, b)).unwrap());
            assert_eq!(q.uf_rank(), (a - 1) * (b - 1));
            assert_eq!(q.uf_rank(), q.unfrozen().len());
        }
    }
    let q = standard_quiver(3, 6).unwrap();
    assert!(matches!(q.is_optimized(Grid(1, 1)), Err(Error::Parameter(_))));
}

#[test]
fn frozen_mutation_rejected() {
    let q = standard_quiver(3, 6).unwrap();
    assert!(matches!(q.mutate(Grid(0, 0)), Err(Error::MutationAtFrozen(_))));
    assert!(q.mutate(Grid(5, 5)).is_err());
}

#[test]
fn json_round_trip_after_mutation() {
    let q = standard_quiver(3, 7).unwrap().mutate(Grid(2, 2)).unwrap();
    let s = serde_json::to_string(&q).unwrap();
    let back: Quiver = serde_json::from_str(&s).unwrap();
    assert!(back.same_as(&q));
}

proptest! {
    #[test]
    fn mutation_is_an_involution(seq in prop::collection::vec(0usize..6, 0..10), k in 0usize..6) {
        let q = standard_quiver(3, 7).unwrap();
        let unf = q.unfrozen();
        let seq: Vec<_> = seq.iter().map(|&i| unf[i % unf.len()]).collect();
        let p = q.mutate_sequence(&seq).unwrap();
        let v = unf[k % unf.len()];
        prop_assert!(p.mutate(v).unwrap().mutate(v).unwrap().same_as(&p));
    }

    #[test]
    fn mutation_keeps_skew_symmetry(seq in prop::collection::vec(0usize..9, 1..12)) {
        let q = standard_quiver(4, 8).unwrap();
        let unf = q.unfrozen();
        let seq: Vec<_> = seq.iter().map(|&i| unf[i % unf.len()]).collect();
        let p = q.mutate_sequence(&seq).unwrap();
        let e = p.eps_matrix();
        for i in 0..e.len() {
            for j in 0..e.len() {
                prop_assert_eq!(e[i][j], -e[j][i]);
            }
        }
    }
}
