//! Tropical points in the Q_{a,n} chart (min-plus), GZ coordinates and the tropical rotation.

use crate::error::{Error, Result};
use crate::planepartition::{differences, PlanePartition};
use crate::quiver::{frozen_rotation, rho_sequence, standard_quiver, Quiver, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Integer tropical X-coordinates on the vertices of a quiver chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPoint {
    quiver: Quiver,
    x: Vec<i64>,
}

impl TropicalPoint {
    pub fn new(quiver: Quiver, x: Vec<i64>) -> Result<Self> {
        if x.len() != quiver.len() {
            return Err(Error::Dimension(format!("{} values for {} vertices", x.len(), quiver.len())));
        }
        Ok(TropicalPoint { quiver, x })
    }

    /// Point in the Q_{a,n} chart; `x` follows the vertex order of `standard_quiver`.
    pub fn standard(a: usize, n: usize, x: Vec<i64>) -> Result<Self> {
        Self::new(standard_quiver(a, n)?, x)
    }

    pub fn zero(a: usize, n: usize) -> Result<Self> {
        let q = standard_quiver(a, n)?;
        let m = q.len();
        Self::new(q, vec![0; m])
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn values(&self) -> &[i64] {
        &self.x
    }

    pub fn get(&self, v: VertexId) -> Result<i64> {
        Ok(self.x[self.quiver.index_of(v)?])
    }

    /// x'_k = −x_k, x'_i = x_i + ε_ik · min(0, sgn(ε_ik) x_k).
    pub fn mutate(&self, k: VertexId) -> Result<TropicalPoint> {
        let quiver = self.quiver.mutate(k)?;
        let kk = self.quiver.index_of(k)?;
        let col: Vec<i64> = self.quiver.eps_matrix().iter().map(|r| r[kk]).collect();
        let mut x = self.x.clone();
        trop_mutate_values(&mut x, kk, &col);
        Ok(TropicalPoint { quiver, x })
    }

    pub fn mutate_sequence(&self, seq: &[VertexId]) -> Result<TropicalPoint> {
        seq.iter().try_fold(self.clone(), |p, &k| p.mutate(k))
    }

    fn require_standard(&self) -> Result<()> {
        let q = standard_quiver(self.quiver.a(), self.quiver.n())?;
        if !q.same_as(&self.quiver) {
            return Err(Error::Parameter("point is not in the Q_{a,n} chart".into()));
        }
        Ok(())
    }
}

fn trop_mutate_values(x: &mut [i64], kk: usize, col: &[i64]) {
    let xk = x[kk];
    for (i, xi) in x.iter_mut().enumerate() {
        if i == kk {
            *xi = -xk;
        } else if col[i] != 0 {
            *xi += col[i] * 0.min(col[i].signum() * xk);
        }
    }
}

/// Tropical Gelfand-Zetlin coordinates: l_{0,0} and the a×b grid l_{i,j}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GZVector {
    pub l00: i64,
    pub grid: Vec<Vec<i64>>,
}

impl GZVector {
    pub fn a(&self) -> usize {
        self.grid.len()
    }

    pub fn b(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    /// l_{i,j} (1-based) with 0 outside the grid.
    pub fn at(&self, i: usize, j: usize) -> i64 {
        if i == 0 || j == 0 || i > self.a() || j > self.b() {
            0
        } else {
            self.grid[i - 1][j - 1]
        }
    }
}

/// l_{i,j} = Σ_{k≥i, l≥j} x_{k,l} and l_{0,0} = x_{0,0} + l_{1,1}.
pub fn gz_from_x(pt: &TropicalPoint) -> Result<GZVector> {
    pt.require_standard()?;
    let (a, b) = (pt.quiver.a(), pt.quiver.b());
    let mut l = vec![vec![0i64; b + 2]; a + 2];
    for i in (1..=a).rev() {
        for j in (1..=b).rev() {
            l[i][j] = pt.get(VertexId::Grid(i, j))? + l[i + 1][j] + l[i][j + 1] - l[i + 1][j + 1];
        }
    }
    Ok(GZVector { l00: pt.get(VertexId::Grid(0, 0))? + l[1][1], grid: (1..=a).map(|i| l[i][1..=b].to_vec()).collect() })
}

/// Inverse of [`gz_from_x`].
pub fn x_from_gz(l: &GZVector) -> Result<TropicalPoint> {
    let (a, b) = (l.a(), l.b());
    let q = standard_quiver(a, a + b)?;
    let x = q
        .vertices()
        .iter()
        .map(|&v| match v {
            VertexId::Grid(0, 0) => l.l00 - l.at(1, 1),
            VertexId::Grid(i, j) => l.at(i, j) + l.at(i + 1, j + 1) - l.at(i + 1, j) - l.at(i, j + 1),
            VertexId::Primed(_) => unreachable!("standard quiver has no primed vertices"),
        })
        .collect();
    TropicalPoint::new(q, x)
}

/// The terms whose minimum is the tropical potential.
pub fn trop_potential_terms(l: &GZVector) -> Vec<i64> {
    let (a, b) = (l.a(), l.b());
    let mut t = vec![l.l00 - l.at(1, 1), l.at(a, b)];
    for i in 1..a {
        for j in 1..=b {
            t.push(l.at(i, j) - l.at(i + 1, j));
        }
    }
    for j in 1..b {
        for i in 1..=a {
            t.push(l.at(i, j) - l.at(i, j + 1));
        }
    }
    t
}

/// 𝒲^t.
pub fn trop_potential(l: &GZVector) -> i64 {
    trop_potential_terms(l).into_iter().min().expect("non-empty")
}

/// P^t = l_{0,0}.
pub fn trop_monodromy(l: &GZVector) -> i64 {
    l.l00
}

/// M^t from diagonal sums of the GZ triangle, checked against Σ_{F_k} x.
pub fn trop_weight(pt: &TropicalPoint) -> Result<Vec<i64>> {
    let l = gz_from_x(pt)?;
    let by_diag = weight_from_gz(&l);
    let (a, n) = (pt.quiver.a(), pt.quiver.n());
    let by_f: Vec<i64> = (1..=n)
        .map(|k| {
            crate::confspace::f_set(a, n, k).iter().map(|&v| pt.get(v)).sum::<Result<i64>>()
        })
        .collect::<Result<_>>()?;
    if by_diag != by_f {
        return Err(Error::Internal(format!("weight disagreement: {by_diag:?} vs {by_f:?}")));
    }
    Ok(by_diag)
}

/// Weight from diagonal sums of the triangle (l_{0,0}-triangle, l block, 0-triangle).
pub fn weight_from_gz(l: &GZVector) -> Vec<i64> {
    let (a, b) = (l.a(), l.b());
    let n = a + b;
    let entry = |r: usize, s: usize| -> i64 {
        if r > a {
            0
        } else if s <= a {
            l.l00
        } else {
            l.at(r, s - a)
        }
    };
    let deltas: Vec<i64> = (1..=n).map(|i| (1..=i).map(|k| entry(k, n - i + k)).sum()).collect();
    differences(&deltas)
}

/// π ↦ (l_{0,0} = c, l = π).
pub fn bijection(pi: &PlanePartition, c: u32) -> Result<GZVector> {
    if !pi.in_box(c) {
        return Err(Error::Invariant(format!("partition exceeds c = {c}")));
    }
    Ok(GZVector { l00: c as i64, grid: pi.rows().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect() })
}

/// Reads (π, c) back from l with 𝒲^t ≥ 0.
pub fn bijection_inverse(l: &GZVector) -> Result<(PlanePartition, u32)> {
    if l.a() == 0 || l.b() == 0 {
        return Err(Error::Dimension("empty GZ grid".into()));
    }
    if trop_potential(l) < 0 {
        return Err(Error::NotInQ(format!("tropical potential {} < 0", trop_potential(l))));
    }
    let rows: Vec<Vec<u32>> = l.grid.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect();
    Ok((PlanePartition::from_rows(&rows)?, l.l00 as u32))
}

/// Precomputed data for the tropical rotation on Q_{a,n}.
#[derive(Clone, Debug)]
pub struct TropicalRotation {
    a: usize,
    n: usize,
    quiver: Quiver,
    /// Per ρ step: the index of the mutated vertex and the ε column before mutation.
    steps: Vec<(usize, Vec<i64>)>,
    /// Target index in the chart for each vertex index of the ρ-mutated chart.
    relabel: Vec<usize>,
}

impl TropicalRotation {
    pub fn new(a: usize, n: usize) -> Result<Self> {
        let quiver = standard_quiver(a, n)?;
        let mut q = quiver.clone();
        let mut steps = Vec::new();
        for k in rho_sequence(a, n)? {
            let kk = q.index_of(k)?;
            steps.push((kk, q.eps_matrix().iter().map(|r| r[kk]).collect()));
            q = q.mutate(k)?;
        }
        let perm: HashMap<VertexId, VertexId> = frozen_rotation(a, n)?;
        let relabel = quiver
            .vertices()
            .iter()
            .map(|v| quiver.index_of(perm[v]))
            .collect::<Result<Vec<_>>>()?;
        Ok(TropicalRotation { a, n, quiver, steps, relabel })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Tropical ρ followed by the frozen relabeling.
    pub fn by_mutation(&self, pt: &TropicalPoint) -> Result<TropicalPoint> {
        pt.require_standard()?;
        let mut x = self.reorder_in(pt)?;
        for (kk, col) in &self.steps {
            trop_mutate_values(&mut x, *kk, col);
        }
        let mut out = vec![0; x.len()];
        for (i, &t) in self.relabel.iter().enumerate() {
            out[t] = x[i];
        }
        TropicalPoint::new(self.quiver.clone(), out)
    }

    fn reorder_in(&self, pt: &TropicalPoint) -> Result<Vec<i64>> {
        self.quiver.vertices().iter().map(|&v| pt.get(v)).collect()
    }

    /// Tropical toggle recursion on GZ coordinates.
    pub fn by_toggles(&self, pt: &TropicalPoint) -> Result<TropicalPoint> {
        let l = gz_from_x(pt)?;
        x_from_gz(&trop_eta_gz(&l))
    }

    /// Both implementations; errors if they disagree.
    pub fn rotate(&self, pt: &TropicalPoint) -> Result<TropicalPoint> {
        let a = self.by_mutation(pt)?;
        let b = self.by_toggles(pt)?;
        if a.x != b.x {
            return Err(Error::Internal(format!(
                "tropical rotation disagreement on Q_{{{},{}}}: {:?} vs {:?}",
                self.a, self.n, a.x, b.x
            )));
        }
        Ok(a)
    }
}

/// l'_{i,j} = min(l'_{i,j-1}, l_{i-1,j}) + max(l'_{i+1,j}, l_{i,j+1}) − l_{i,j} in η order.
///
/// Out-of-grid neighbours are dropped, with l_{0,0} at the top-left corner and 0 at the
/// bottom-right corner. On Q(a,b,c) this is the piecewise-linear toggle with boundary c and 0.
pub fn trop_eta_gz(l: &GZVector) -> GZVector {
    let (a, b) = (l.a(), l.b());
    let mut new = l.grid.clone();
    for j in 0..b {
        for i in (0..a).rev() {
            let mut lo: Option<i64> = None;
            if j > 0 {
                lo = Some(new[i][j - 1]);
            }
            if i > 0 {
                lo = Some(lo.map_or(l.grid[i - 1][j], |m| m.min(l.grid[i - 1][j])));
            }
            let lo = lo.unwrap_or(l.l00);
            let mut hi: Option<i64> = None;
            if i + 1 < a {
                hi = Some(new[i + 1][j]);
            }
            if j + 1 < b {
                hi = Some(hi.map_or(l.grid[i][j + 1], |m| m.max(l.grid[i][j + 1])));
            }
            let hi = hi.unwrap_or(0);
            new[i][j] = lo + hi - l.grid[i][j];
        }
    }
    GZVector { l00: l.l00, grid: new }
}

/// Tropical rotation with both implementations cross-checked.
pub fn trop_rotate(pt: &TropicalPoint) -> Result<TropicalPoint> {
    TropicalRotation::new(pt.quiver.a(), pt.quiver.n())?.rotate(pt)
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    chart: String,
    x: BTreeMap<String, i64>,
}

impl Serialize for TropicalPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointJson {
            chart: format!("Q_{{{},{}}}", self.quiver.a(), self.quiver.n()),
            x: self.quiver.vertices().iter().zip(&self.x).map(|(v, &x)| (v.to_string(), x)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TropicalPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PointJson::deserialize(d)?;
        let inner = j
            .chart
            .strip_prefix("Q_{")
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| D::Error::custom("chart must look like Q_{a,n}"))?;
        let (a, n) = inner.split_once(',').ok_or_else(|| D::Error::custom("bad chart"))?;
        let a: usize = a.trim().parse().map_err(D::Error::custom)?;
        let n: usize = n.trim().parse().map_err(D::Error::custom)?;
        let q = standard_quiver(a, n).map_err(D::Error::custom)?;
        let mut x = vec![0; q.len()];
        for (k, val) in j.x {
            let v: VertexId = k.parse().map_err(D::Error::custom)?;
            x[q.index_of(v).map_err(D::Error::custom)?] = val;
        }
        TropicalPoint::new(q, x).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gz_of_top_corner() {
        let q = standard_quiver(2, 5).unwrap();
        let mut x = vec![0; q.len()];
        x[q.index_of(VertexId::Grid(2, 3)).unwrap()] = 1;
        let l = gz_from_x(&TropicalPoint::new(q, x).unwrap()).unwrap();
        assert_eq!(l.l00, 1);
        assert!(l.grid.iter().flatten().all(|&v| v == 1));
    }

    #[test]
    fn worked_example_rotation() {
        let pi = PlanePartition::from_rows(&[vec![3, 2, 2], vec![3, 1, 0]]).unwrap();
        let pt = x_from_gz(&bijection(&pi, 6).unwrap()).unwrap();
        let r = trop_rotate(&pt).unwrap();
        let (back, c) = bijection_inverse(&gz_from_x(&r).unwrap()).unwrap();
        assert_eq!(c, 6);
        assert_eq!(back.rows(), vec![vec![5, 5, 3], vec![1, 0, 0]]);
    }

    #[test]
    fn potential_signs() {
        let l = GZVector { l00: 2, grid: vec![vec![3, 0], vec![0, 0]] };
        assert!(trop_potential(&l) < 0);
        assert!(bijection_inverse(&l).is_err());
        let z = GZVector { l00: 0, grid: vec![vec![0, 0], vec![0, 0]] };
        assert_eq!(trop_potential(&z), 0);
    }
}
