//! Exact rationals, dense rational matrices, determinants and Plücker minors.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

const RESAMPLE_CAP: usize = 1000;

/// Builds the rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer `p` as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Formats as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Integer power with negative exponents allowed.
pub fn pow(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "rational_vec")]
    entries: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| format_rational(self.get(r, c))).collect())
            .collect();
        write!(f, "RatMatrix{rows:?}")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|col| col.len() != r) {
            return Err(Error::Dimension("ragged columns".into()));
        }
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        self.entries[r * self.cols + c] = x;
    }

    /// Column `c` (0-based) as a vector.
    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect()).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Rational::zero();
                for k in 0..self.cols {
                    let x = self.get(i, k);
                    if !x.is_zero() {
                        s += x * other.get(k, j);
                    }
                }
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn determinant(&self) -> Result<Rational> {
        determinant(self)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for r in rank + 1..self.rows {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &pivot;
                for k in c..self.cols {
                    let t = &f * &m[rank][k];
                    m[r][k] -= t;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Solves `self * x = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.rows;
        if self.cols != n || rhs.len() != n {
            return Err(Error::Dimension("solve needs a square system".into()));
        }
        let mut m: Vec<Vec<Rational>> = self.to_rows();
        for (row, b) in m.iter_mut().zip(rhs) {
            row.push(b.clone());
        }
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !m[r][c].is_zero())
                .ok_or_else(|| Error::NonGeneric("singular linear system".into()))?;
            m.swap(c, p);
            let pivot = m[c][c].clone();
            for k in c..=n {
                m[c][k] = &m[c][k] / &pivot;
            }
            for r in 0..n {
                if r == c || m[r][c].is_zero() {
                    continue;
                }
                let f = m[r][c].clone();
                for k in c..=n {
                    let t = &f * &m[c][k];
                    m[r][k] -= t;
                }
            }
        }
        Ok(m.into_iter().map(|row| row[n].clone()).collect())
    }
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn determinant(m: &RatMatrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.to_rows();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    Ok(det)
}

/// Determinant of the matrix whose columns are `cols`, in the given order.
pub fn det_of_columns(cols: &[Vec<Rational>]) -> Result<Rational> {
    determinant(&RatMatrix::from_columns(cols)?)
}

/// The Plücker coordinate Δ_I: minor on the 1-based ascending column set `I`.
pub fn plucker(m: &RatMatrix, set: &[usize]) -> Result<Rational> {
    if set.len() != m.rows {
        return Err(Error::Index(format!("|I| = {} but a = {}", set.len(), m.rows)));
    }
    if set.iter().any(|&i| i == 0 || i > m.cols) {
        return Err(Error::Index(format!("index out of range 1..={} in {set:?}", m.cols)));
    }
    if set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Index(format!("indices not strictly ascending: {set:?}")));
    }
    let cols: Vec<Vec<Rational>> = set.iter().map(|&i| m.column(i - 1)).collect();
    det_of_columns(&cols)
}

/// Reduces possibly wrapped indices mod `n` into `1..=n` and sorts them.
pub fn normalize_set(set: &[i64], n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&i| (i - 1).rem_euclid(n as i64) as usize + 1).collect();
    out.sort_unstable();
    out
}

/// Δ of a wrapped index set, sorted ascending before extraction.
pub fn plucker_wrapped(m: &RatMatrix, set: &[i64]) -> Result<Rational> {
    plucker(m, &normalize_set(set, m.cols))
}

/// All `a`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, a: usize) -> impl Iterator<Item = Vec<usize>> {
    use itertools::Itertools;
    (1..=n).combinations(a)
}

fn check_params(a: usize, n: usize) -> Result<()> {
    if a == 0 || a >= n {
        return Err(Error::Parameter(format!("need 1 <= a < n, got a={a}, n={n}")));
    }
    Ok(())
}

/// A deterministic-for-seed a×n integer matrix with every maximal minor nonzero.
pub fn random_generic_matrix(a: usize, n: usize, seed: u64) -> Result<RatMatrix> {
    check_params(a, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESAMPLE_CAP {
        let rows: Vec<Vec<i64>> =
            (0..a).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = RatMatrix::from_i64(&rows)?;
        if all_minors_nonzero(&m) {
            return Ok(m);
        }
    }
    Err(Error::Internal(format!("no generic matrix after {RESAMPLE_CAP} attempts")))
}

/// True iff every maximal minor is nonzero.
pub fn all_minors_nonzero(m: &RatMatrix) -> bool {
    subsets(m.cols, m.rows).all(|s| !plucker(m, &s).map_or(true, |d| d.is_zero()))
}

/// Vandermonde-type matrix with columns (1, t_k, t_k², …); totally positive when 0 < t_1 < … < t_n.
pub fn totally_positive_matrix(a: usize, ts: &[Rational]) -> Result<RatMatrix> {
    check_params(a, ts.len())?;
    if ts.windows(2).any(|w| w[0] >= w[1]) || ts.first().map_or(false, |t| !t.is_positive()) {
        return Err(Error::Parameter("need 0 < t_1 < ... < t_n".into()));
    }
    let cols: Vec<Vec<Rational>> =
        ts.iter().map(|t| (0..a).map(|e| num_traits::pow(t.clone(), e)).collect()).collect();
    RatMatrix::from_columns(&cols)
}

/// Serde helpers storing rationals as `"p/q"` strings.
pub mod rational_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect()
    }
}
