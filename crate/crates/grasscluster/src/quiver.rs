//! Quivers with frozen vertices, the grid quiver Q_{a,n}, its extension, mutation and ρ.

use crate::error::{Error, Result};
use crate::exact::{int, RatMatrix};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// A vertex of Q_{a,n} or of its extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    /// Grid vertex `(i, j)`; `(0, 0)` is the special top-left vertex.
    Grid(usize, usize),
    /// Primed frozen vertex `i'` of the extended quiver, `1 <= i <= n`.
    Primed(usize),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Grid(i, j) => write!(f, "({i},{j})"),
            VertexId::Primed(i) => write!(f, "{i}'"),
        }
    }
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not a vertex id: {s:?}"));
        if let Some(p) = t.strip_suffix('\'') {
            return Ok(VertexId::Primed(p.trim().parse().map_err(|_| bad())?));
        }
        let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let (i, j) = inner.split_once(',').ok_or_else(bad)?;
        Ok(VertexId::Grid(i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
    }
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Quiver with frozen vertices, stored as a skew-symmetric exchange matrix.
///
/// `eps[f][g]` counts arrows `g -> f` minus arrows `f -> g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    a: usize,
    n: usize,
    vertices: Vec<VertexId>,
    frozen: Vec<bool>,
    eps: Vec<Vec<i64>>,
    index: HashMap<VertexId, usize>,
}

pub(crate) fn check_params(a: usize, n: usize) -> Result<()> {
    if a == 0 || a >= n {
        return Err(Error::Parameter(format!("need 1 <= a < n, got a={a}, n={n}")));
    }
    Ok(())
}

impl Quiver {
    pub fn new(
        a: usize,
        n: usize,
        vertices: Vec<VertexId>,
        frozen: Vec<bool>,
        eps: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let m = vertices.len();
        if frozen.len() != m || eps.len() != m || eps.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("vertex, frozen and eps sizes disagree".into()));
        }
        for i in 0..m {
            for j in 0..m {
                if eps[i][j] != -eps[j][i] {
                    return Err(Error::Invariant(format!("eps not skew-symmetric at ({i},{j})")));
                }
            }
        }
        let index: HashMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        if index.len() != m {
            return Err(Error::Invariant("duplicate vertex id".into()));
        }
        Ok(Quiver { a, n, vertices, frozen, eps, index })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> usize {
        self.n - self.a
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn eps_matrix(&self) -> &[Vec<i64>] {
        &self.eps
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn index_of(&self, v: VertexId) -> Result<usize> {
        self.index.get(&v).copied().ok_or_else(|| Error::Index(format!("no vertex {v}")))
    }

    pub fn is_frozen(&self, v: VertexId) -> Result<bool> {
        Ok(self.frozen[self.index_of(v)?])
    }

    pub fn frozen_flags(&self) -> &[bool] {
        &self.frozen
    }

    /// ε_{fg}; zero when either vertex is absent.
    pub fn eps(&self, f: VertexId, g: VertexId) -> i64 {
        match (self.index.get(&f), self.index.get(&g)) {
            (Some(&i), Some(&j)) => self.eps[i][j],
            _ => 0,
        }
    }

    pub fn unfrozen(&self) -> Vec<VertexId> {
        self.vertices.iter().zip(&self.frozen).filter(|(_, &f)| !f).map(|(&v, _)| v).collect()
    }

    pub fn frozen_vertices(&self) -> Vec<VertexId> {
        self.vertices.iter().zip(&self.frozen).filter(|(_, &f)| f).map(|(&v, _)| v).collect()
    }

    /// Arrows `(from, to, multiplicity)` with positive multiplicity.
    pub fn arrows(&self) -> Vec<(VertexId, VertexId, i64)> {
        let mut out = Vec::new();
        for (f, &vf) in self.vertices.iter().enumerate() {
            for (g, &vg) in self.vertices.iter().enumerate() {
                if self.eps[g][f] > 0 {
                    out.push((vf, vg, self.eps[g][f]));
                }
            }
        }
        out
    }

    /// Matrix mutation at an unfrozen vertex.
    ///
    /// The rule is applied to every pair, frozen pairs included, so the frozen-frozen
    /// arrows of Q_{a,n} transform consistently and mutation stays an involution.
    pub fn mutate(&self, k: VertexId) -> Result<Quiver> {
        let kk = self.index_of(k)?;
        if self.frozen[kk] {
            return Err(Error::MutationAtFrozen(k.to_string()));
        }
        let m = self.len();
        let mut eps = self.eps.clone();
        for i in 0..m {
            for j in 0..m {
                eps[i][j] = if i == kk || j == kk {
                    -self.eps[i][j]
                } else {
                    let eik = self.eps[i][kk];
                    self.eps[i][j] + eik.signum() * (eik * self.eps[kk][j]).max(0)
                };
            }
        }
        Ok(Quiver { eps, ..self.clone() })
    }

    pub fn mutate_sequence(&self, seq: &[VertexId]) -> Result<Quiver> {
        seq.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    /// True iff ε_{ki} ≥ 0 for every unfrozen k.
    pub fn is_optimized(&self, i: VertexId) -> Result<bool> {
        let ii = self.index_of(i)?;
        if !self.frozen[ii] {
            return Err(Error::Parameter(format!("{i} is not frozen")));
        }
        Ok((0..self.len()).filter(|&k| !self.frozen[k]).all(|k| self.eps[k][ii] >= 0))
    }

    /// Rank of ε restricted to all rows and unfrozen columns.
    pub fn uf_rank(&self) -> usize {
        let cols: Vec<usize> = (0..self.len()).filter(|&k| !self.frozen[k]).collect();
        if cols.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<i64>> =
            self.eps.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        RatMatrix::from_i64(&rows).map(|m| m.rank()).unwrap_or(0)
    }

    /// Applies a vertex relabeling to produce a quiver on the renamed vertex set.
    pub fn relabel(&self, map: &HashMap<VertexId, VertexId>) -> Result<Quiver> {
        let vertices: Vec<VertexId> =
            self.vertices.iter().map(|v| map.get(v).copied().unwrap_or(*v)).collect();
        Quiver::new(self.a, self.n, vertices, self.frozen.clone(), self.eps.clone())
    }

    /// Equality of ε as functions of vertex ids, independent of vertex order.
    pub fn same_as(&self, other: &Quiver) -> bool {
        self.len() == other.len()
            && self.vertices.iter().all(|&v| {
                other.index.get(&v).map_or(false, |&j| other.frozen[j] == self.frozen[self.index[&v]])
            })
            && self
                .vertices
                .iter()
                .all(|&f| self.vertices.iter().all(|&g| self.eps(f, g) == other.eps(f, g)))
    }
}

/// The frozen vertex carrying boundary label `i` (1..=n).
pub fn frozen_vertex(a: usize, n: usize, i: usize) -> VertexId {
    let b = n - a;
    if i == n {
        VertexId::Grid(0, 0)
    } else if i <= a {
        VertexId::Grid(i, b)
    } else {
        VertexId::Grid(a, n - i)
    }
}

/// Boundary label of a frozen grid vertex, `None` for unfrozen or primed vertices.
pub fn frozen_label(a: usize, n: usize, v: VertexId) -> Option<usize> {
    let b = n - a;
    match v {
        VertexId::Grid(0, 0) => Some(n),
        VertexId::Grid(i, j) if j == b && (1..=a).contains(&i) => Some(i),
        VertexId::Grid(i, j) if i == a && (1..b).contains(&j) => Some(n - j),
        _ => None,
    }
}

/// Grid vertices of Q_{a,n}: `(0,0)` followed by the a×b grid in row-major order.
pub fn grid_vertices(a: usize, b: usize) -> Vec<VertexId> {
    std::iter::once(VertexId::Grid(0, 0))
        .chain((1..=a).flat_map(move |i| (1..=b).map(move |j| VertexId::Grid(i, j))))
        .collect()
}

fn add_arrow(eps: &mut [Vec<i64>], index: &HashMap<VertexId, usize>, from: VertexId, to: VertexId) {
    let (Some(&u), Some(&v)) = (index.get(&from), index.get(&to)) else { return };
    eps[v][u] += 1;
    eps[u][v] -= 1;
}

/// The quiver Q_{a,n}.
pub fn standard_quiver(a: usize, n: usize) -> Result<Quiver> {
    check_params(a, n)?;
    let b = n - a;
    let vertices = grid_vertices(a, b);
    let index: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let frozen: Vec<bool> = vertices.iter().map(|&v| frozen_label(a, n, v).is_some()).collect();
    let m = vertices.len();
    let mut eps = vec![vec![0i64; m]; m];
    use VertexId::Grid;
    for i in 1..a {
        for j in 2..=b {
            add_arrow(&mut eps, &index, Grid(i, j - 1), Grid(i, j));
        }
    }
    for i in 2..=a {
        for j in 1..=b {
            add_arrow(&mut eps, &index, Grid(i - 1, j), Grid(i, j));
        }
    }
    for i in 1..a {
        for j in 1..b {
            add_arrow(&mut eps, &index, Grid(i + 1, j + 1), Grid(i, j));
        }
    }
    add_arrow(&mut eps, &index, Grid(0, 0), Grid(1, 1));
    add_arrow(&mut eps, &index, Grid(a, 1), Grid(0, 0));
    Quiver::new(a, n, vertices, frozen, eps)
}

/// Q̃_{a,n}: Q_{a,n} plus a primed vertex i' and an arrow i -> i' per frozen vertex i.
pub fn extended_quiver(a: usize, n: usize) -> Result<Quiver> {
    let q = standard_quiver(a, n)?;
    let m0 = q.len();
    let mut vertices = q.vertices.clone();
    vertices.extend((1..=n).map(VertexId::Primed));
    let mut frozen = q.frozen.clone();
    frozen.extend(std::iter::repeat(true).take(n));
    let m = vertices.len();
    let mut eps = vec![vec![0i64; m]; m];
    for i in 0..m0 {
        eps[i][..m0].copy_from_slice(&q.eps[i]);
    }
    let index: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    for i in 1..=n {
        add_arrow(&mut eps, &index, frozen_vertex(a, n, i), VertexId::Primed(i));
    }
    Quiver::new(a, n, vertices, frozen, eps)
}

/// The mutation sequence ρ in application order: columns left to right, each bottom to top.
pub fn rho_sequence(a: usize, n: usize) -> Result<Vec<VertexId>> {
    check_params(a, n)?;
    let b = n - a;
    Ok((1..b).flat_map(|j| (1..a).rev().map(move |i| VertexId::Grid(i, j))).collect())
}

/// All bijections `from -> to` that fix unfrozen vertices and carry ε onto ε (up to `limit`).
pub fn isomorphisms_fixing_unfrozen(
    from: &Quiver,
    to: &Quiver,
    limit: usize,
) -> Vec<HashMap<VertexId, VertexId>> {
    let unf = from.unfrozen();
    if from.len() != to.len() || unf != to.unfrozen() {
        return Vec::new();
    }
    let ff = from.frozen_vertices();
    let tf = to.frozen_vertices();
    let candidates: Vec<Vec<VertexId>> = ff
        .iter()
        .map(|&f| {
            tf.iter()
                .copied()
                .filter(|&g| unf.iter().all(|&u| from.eps(f, u) == to.eps(g, u)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut assigned: Vec<VertexId> = Vec::new();
    let mut used: Vec<bool> = vec![false; tf.len()];
    fn go(
        k: usize,
        ff: &[VertexId],
        tf: &[VertexId],
        cands: &[Vec<VertexId>],
        from: &Quiver,
        to: &Quiver,
        assigned: &mut Vec<VertexId>,
        used: &mut Vec<bool>,
        out: &mut Vec<HashMap<VertexId, VertexId>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == ff.len() {
            let mut map: HashMap<VertexId, VertexId> =
                from.unfrozen().into_iter().map(|u| (u, u)).collect();
            map.extend(ff.iter().copied().zip(assigned.iter().copied()));
            out.push(map);
            return;
        }
        for &g in &cands[k] {
            let gi = tf.iter().position(|&x| x == g).unwrap();
            if used[gi] {
                continue;
            }
            let consistent = (0..k).all(|p| from.eps(ff[k], ff[p]) == to.eps(g, assigned[p]))
                && from.eps(ff[k], ff[k]) == to.eps(g, g);
            if !consistent {
                continue;
            }
            used[gi] = true;
            assigned.push(g);
            go(k + 1, ff, tf, cands, from, to, assigned, used, out, limit);
            assigned.pop();
            used[gi] = false;
        }
    }
    go(0, &ff, &tf, &candidates, from, to, &mut assigned, &mut used, &mut out, limit);
    out
}

/// Vertex map `v -> v'` such that relabeling ρ(Q̃_{a,n}) by it gives back Q̃_{a,n}.
///
/// It fixes unfrozen vertices and shifts boundary labels by one: the frozen vertex
/// with label `i` goes to the one with label `i+1`, and `i'` goes to `(i+1)'`.
/// For small (a,n) the quiver has extra symmetries, so the map is pinned by this
/// closed form and only checked against the quiver. Restrict to grid ids for Q_{a,n}.
pub fn frozen_rotation(a: usize, n: usize) -> Result<HashMap<VertexId, VertexId>> {
    let q = extended_quiver(a, n)?;
    let mut map: HashMap<VertexId, VertexId> = q.unfrozen().into_iter().map(|u| (u, u)).collect();
    for i in 1..=n {
        let j = i % n + 1;
        map.insert(frozen_vertex(a, n, i), frozen_vertex(a, n, j));
        map.insert(VertexId::Primed(i), VertexId::Primed(j));
    }
    let rq = q.mutate_sequence(&rho_sequence(a, n)?)?;
    if !rq.relabel(&map)?.same_as(&q) {
        return Err(Error::Internal(format!("label shift is not an isomorphism rho(Q~_{{{a},{n}}}) -> Q~_{{{a},{n}}}")));
    }
    Ok(map)
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: VertexId,
    frozen: bool,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    a: usize,
    n: usize,
    vertices: Vec<VertexJson>,
    eps: Vec<Vec<i64>>,
}

impl Serialize for Quiver {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuiverJson {
            a: self.a,
            n: self.n,
            vertices: self
                .vertices
                .iter()
                .zip(&self.frozen)
                .map(|(&id, &frozen)| VertexJson { id, frozen })
                .collect(),
            eps: self.eps.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = QuiverJson::deserialize(d)?;
        let (vertices, frozen) = j.vertices.into_iter().map(|v| (v.id, v.frozen)).unzip();
        Quiver::new(j.a, j.n, vertices, frozen, j.eps).map_err(serde::de::Error::custom)
    }
}

/// ε as an exact rational matrix (rows and columns in vertex order).
pub fn eps_as_matrix(q: &Quiver) -> RatMatrix {
    let rows: Vec<Vec<_>> = q.eps.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    RatMatrix::from_rows(rows).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use VertexId::Grid;

    #[test]
    fn vertex_id_round_trip() {
        for v in [Grid(0, 0), Grid(2, 3), VertexId::Primed(5)] {
            assert_eq!(v.to_string().parse::<VertexId>().unwrap(), v);
        }
        assert!("x".parse::<VertexId>().is_err());
    }

    #[test]
    fn q24_arrows() {
        let q = standard_quiver(2, 4).unwrap();
        assert_eq!(q.eps(Grid(0, 0), Grid(1, 1)), -1);
        assert_eq!(q.eps(Grid(1, 2), Grid(1, 1)), 1);
        assert_eq!(q.eps(Grid(2, 1), Grid(1, 1)), 1);
        assert_eq!(q.eps(Grid(2, 2), Grid(1, 1)), -1);
        assert_eq!(q.len(), 5);
    }

    #[test]
    fn frozen_labels_are_a_bijection() {
        for (a, n) in [(1, 3), (2, 4), (3, 7), (4, 8)] {
            for i in 1..=n {
                assert_eq!(frozen_label(a, n, frozen_vertex(a, n, i)), Some(i));
            }
        }
    }

    #[test]
    fn mutation_errors() {
        let q = standard_quiver(2, 4).unwrap();
        assert!(matches!(q.mutate(Grid(0, 0)), Err(Error::MutationAtFrozen(_))));
        assert!(matches!(q.mutate(Grid(7, 7)), Err(Error::Index(_))));
        assert!(standard_quiver(3, 3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = extended_quiver(2, 5).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        let back: Quiver = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }
}
