//! Plane partitions in a box, piecewise-linear toggles, η, MacMahon's formula and GT patterns.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An a×b array of non-negative integers, weakly decreasing along rows and columns.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct PlanePartition {
    a: usize,
    b: usize,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    a: usize,
    b: usize,
    entries: Vec<Vec<u32>>,
}

impl TryFrom<PartitionJson> for PlanePartition {
    type Error = Error;

    fn try_from(j: PartitionJson) -> Result<Self> {
        let p = PlanePartition::from_rows(&j.entries)?;
        if p.a != j.a || p.b != j.b {
            return Err(Error::Dimension("entries disagree with a, b".into()));
        }
        Ok(p)
    }
}

impl From<PlanePartition> for PartitionJson {
    fn from(p: PlanePartition) -> Self {
        PartitionJson { a: p.a, b: p.b, entries: p.rows() }
    }
}

impl fmt::Debug for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl PlanePartition {
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let a = rows.len();
        let b = rows.first().map_or(0, Vec::len);
        if a == 0 || b == 0 || rows.iter().any(|r| r.len() != b) {
            return Err(Error::Dimension("plane partition needs a non-empty rectangular array".into()));
        }
        let p = PlanePartition { a, b, entries: rows.concat() };
        p.check_monotone()?;
        Ok(p)
    }

    pub fn zero(a: usize, b: usize) -> Self {
        PlanePartition { a, b, entries: vec![0; a * b] }
    }

    fn check_monotone(&self) -> Result<()> {
        for i in 1..=self.a {
            for j in 1..=self.b {
                let x = self.get(i, j);
                if (j < self.b && self.get(i, j + 1) > x) || (i < self.a && self.get(i + 1, j) > x) {
                    return Err(Error::Invariant(format!("not weakly decreasing at ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Entry π_{i,j}, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.b + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.b).map(<[u32]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// |π|, the sum of entries.
    pub fn size(&self) -> u64 {
        self.entries.iter().map(|&x| x as u64).sum()
    }

    pub fn in_box(&self, c: u32) -> bool {
        self.entries.first().map_or(true, |&x| x <= c)
    }

    fn require_box(&self, c: u32) -> Result<()> {
        if self.in_box(c) {
            Ok(())
        } else {
            Err(Error::Invariant(format!("largest entry {} exceeds c = {c}", self.entries[0])))
        }
    }

    /// Entry with the boundary convention: c above and left, 0 below and right.
    fn ext(&self, i: usize, j: usize, c: u32) -> u32 {
        if i == 0 || j == 0 {
            c
        } else if i > self.a || j > self.b {
            0
        } else {
            self.get(i, j)
        }
    }

    fn toggle_in_place(&mut self, i: usize, j: usize, c: u32) {
        let hi = self.ext(i, j + 1, c).max(self.ext(i + 1, j, c));
        let lo = self.ext(i - 1, j, c).min(self.ext(i, j - 1, c));
        let k = (i - 1) * self.b + (j - 1);
        self.entries[k] = hi + lo - self.entries[k];
    }

    /// τ_{i,j}: π_{i,j} ↦ max(π_{i,j+1}, π_{i+1,j}) + min(π_{i-1,j}, π_{i,j-1}) − π_{i,j}.
    pub fn toggle(&self, i: usize, j: usize, c: u32) -> Result<PlanePartition> {
        self.require_box(c)?;
        if !(1..=self.a).contains(&i) || !(1..=self.b).contains(&j) {
            return Err(Error::Index(format!("toggle position ({i},{j}) outside {}x{}", self.a, self.b)));
        }
        let mut p = self.clone();
        p.toggle_in_place(i, j, c);
        Ok(p)
    }

    /// Every intermediate partition of η, one per toggle, in application order.
    pub fn eta_frames(&self, c: u32) -> Result<Vec<((usize, usize), PlanePartition)>> {
        self.require_box(c)?;
        let mut p = self.clone();
        let mut out = Vec::with_capacity(self.a * self.b);
        for (i, j) in eta_order(self.a, self.b) {
            p.toggle_in_place(i, j, c);
            out.push(((i, j), p.clone()));
        }
        Ok(out)
    }

    /// η: columns left to right, each column bottom to top.
    pub fn eta(&self, c: u32) -> Result<PlanePartition> {
        self.require_box(c)?;
        let mut p = self.clone();
        p.eta_unchecked(c);
        Ok(p)
    }

    pub(crate) fn eta_unchecked(&mut self, c: u32) {
        for j in 1..=self.b {
            for i in (1..=self.a).rev() {
                self.toggle_in_place(i, j, c);
            }
        }
    }

    /// η^d.
    pub fn eta_pow(&self, c: u32, d: usize) -> Result<PlanePartition> {
        self.require_box(c)?;
        let mut p = self.clone();
        for _ in 0..d {
            p.eta_unchecked(c);
        }
        Ok(p)
    }
}

/// The toggle positions of η in application order.
pub fn eta_order(a: usize, b: usize) -> Vec<(usize, usize)> {
    (1..=b).flat_map(|j| (1..=a).rev().map(move |i| (i, j))).collect()
}

/// Lexicographic enumeration of P(a,b,c) over row-major entry vectors.
pub struct PartitionIter {
    a: usize,
    b: usize,
    c: u32,
    cur: Option<Vec<u32>>,
}

impl PartitionIter {
    fn upper(&self, e: &[u32], k: usize) -> u32 {
        let (i, j) = (k / self.b, k % self.b);
        let left = if j > 0 { e[k - 1] } else { self.c };
        let up = if i > 0 { e[k - self.b] } else { self.c };
        left.min(up)
    }

    /// Smallest completion after position k: all zeros.
    fn fill_zero(e: &mut [u32], from: usize) {
        e[from..].iter_mut().for_each(|x| *x = 0);
    }
}

impl Iterator for PartitionIter {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        let e = self.cur.take()?;
        let out = PlanePartition { a: self.a, b: self.b, entries: e.clone() };
        let mut e = e;
        let len = e.len();
        let mut k = len;
        loop {
            if k == 0 {
                self.cur = None;
                break;
            }
            k -= 1;
            if e[k] < self.upper(&e, k) {
                e[k] += 1;
                Self::fill_zero(&mut e, k + 1);
                self.cur = Some(e);
                break;
            }
        }
        Some(out)
    }
}

/// All of P(a,b,c), lexicographic in the row-major entries.
pub fn enumerate(a: usize, b: usize, c: u32) -> PartitionIter {
    PartitionIter { a, b, c, cur: if a == 0 || b == 0 { None } else { Some(vec![0; a * b]) } }
}

/// Integer polynomial, coefficients by ascending degree, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn mul(&self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, o: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(o.coeffs.len());
        let z = BigInt::zero();
        IntPolynomial::new(
            (0..len)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) - o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    /// Division with remainder by a monic divisor.
    pub fn div_rem_monic(&self, d: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let dd = d.degree().ok_or_else(|| Error::Internal("division by zero polynomial".into()))?;
        if !d.coeffs[dd].is_one() {
            return Err(Error::Internal("divisor is not monic".into()));
        }
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((IntPolynomial::default(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let f = r[k].clone();
            if f.is_zero() {
                continue;
            }
            q[k - dd] = f.clone();
            for (t, c) in d.coeffs.iter().enumerate() {
                r[k - dd + t] -= &f * c;
            }
        }
        Ok((IntPolynomial::new(q), IntPolynomial::new(r)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &IntPolynomial) -> Result<IntPolynomial> {
        let (q, r) = self.div_rem_monic(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }
}

/// [m]_q = 1 + q + … + q^{m-1}.
pub fn quantum_int(m: usize) -> IntPolynomial {
    IntPolynomial::from_i64(&vec![1; m])
}

/// Σ_{π ∈ P(a,b,c)} q^{|π|} by enumeration.
pub fn macmahon_by_enumeration(a: usize, b: usize, c: u32) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); a * b * c as usize + 1];
    for p in enumerate(a, b, c) {
        coeffs[p.size() as usize] += 1;
    }
    IntPolynomial::new(coeffs)
}

/// ∏_{i,j,k} [i+j+k-1]_q / [i+j+k-2]_q by exact polynomial arithmetic.
pub fn macmahon_by_product(a: usize, b: usize, c: u32) -> Result<IntPolynomial> {
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c as usize {
                num = num.mul(&quantum_int(i + j + k - 1));
                den = den.mul(&quantum_int(i + j + k - 2));
            }
        }
    }
    num.div_exact(&den)
}

/// MacMahon's polynomial, computed both ways; errors if they disagree.
pub fn macmahon(a: usize, b: usize, c: u32) -> Result<IntPolynomial> {
    let p = macmahon_by_product(a, b, c)?;
    let e = macmahon_by_enumeration(a, b, c);
    if p != e {
        return Err(Error::Internal(format!("MacMahon product and enumeration disagree for ({a},{b},{c})")));
    }
    Ok(p)
}

/// Upper-triangular array λ_{r,s}, 1 ≤ r ≤ s ≤ n.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GTPattern {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl GTPattern {
    pub fn n(&self) -> usize {
        self.n
    }

    /// λ_{r,s} for 1 ≤ r ≤ s ≤ n.
    pub fn get(&self, r: usize, s: usize) -> i64 {
        self.rows[r - 1][s - r]
    }

    /// Diagonal sums δ_i = Σ_{k=1}^{i} λ_{k, n-i+k}.
    pub fn diagonal_sums(&self) -> Vec<i64> {
        (1..=self.n).map(|i| (1..=i).map(|k| self.get(k, self.n - i + k)).sum()).collect()
    }

    /// Rows and columns are non-increasing.
    pub fn is_valid(&self) -> bool {
        (1..=self.n).all(|r| {
            (r..=self.n).all(|s| {
                (s == self.n || self.get(r, s) >= self.get(r, s + 1))
                    && (r == s || self.get(r, s) >= self.get(r + 1, s))
            })
        })
    }
}

/// Λ_π: a c-triangle, the π block and a 0-triangle.
pub fn gt_pattern(pi: &PlanePartition, c: u32) -> Result<GTPattern> {
    pi.require_box(c)?;
    let (a, b) = (pi.a, pi.b);
    let n = a + b;
    let rows = (1..=n)
        .map(|r| {
            (r..=n)
                .map(|s| {
                    if r > a {
                        0
                    } else if s <= a {
                        c as i64
                    } else {
                        pi.get(r, s - a) as i64
                    }
                })
                .collect()
        })
        .collect();
    Ok(GTPattern { n, rows })
}

/// wt(Λ) = (δ_1, δ_2 − δ_1, …, δ_n − δ_{n−1}).
pub fn gt_weight(g: &GTPattern) -> Vec<i64> {
    differences(&g.diagonal_sums())
}

pub(crate) fn differences(d: &[i64]) -> Vec<i64> {
    let mut prev = 0;
    d.iter()
        .map(|&x| {
            let out = x - prev;
            prev = x;
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let p = PlanePartition::from_rows(&[vec![3, 2, 2], vec![3, 1, 0]]).unwrap();
        assert_eq!(p.eta(6).unwrap().rows(), vec![vec![5, 5, 3], vec![1, 0, 0]]);
    }

    #[test]
    fn enumerate_small() {
        let v: Vec<_> = enumerate(1, 1, 1).map(|p| p.rows()).collect();
        assert_eq!(v, vec![vec![vec![0]], vec![vec![1]]]);
        assert_eq!(enumerate(2, 2, 1).count(), 6);
        assert_eq!(enumerate(2, 2, 2).count(), 20);
        assert_eq!(enumerate(2, 2, 0).count(), 1);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let v: Vec<_> = enumerate(2, 3, 2).collect();
        assert!(v.windows(2).all(|w| w[0].entries < w[1].entries));
    }

    #[test]
    fn macmahon_small() {
        assert_eq!(macmahon(1, 1, 1).unwrap(), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(macmahon(2, 2, 1).unwrap(), IntPolynomial::from_i64(&[1, 1, 2, 1, 1]));
        assert_eq!(macmahon(1, 1, 4).unwrap(), quantum_int(5));
    }

    #[test]
    fn invalid_inputs() {
        assert!(PlanePartition::from_rows(&[vec![1, 2]]).is_err());
        assert!(PlanePartition::from_rows(&[vec![1], vec![2]]).is_err());
        let p = PlanePartition::from_rows(&[vec![3]]).unwrap();
        assert!(p.toggle(1, 1, 2).is_err());
        assert!(p.toggle(2, 1, 5).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = PlanePartition::from_rows(&[vec![3, 2, 2], vec![3, 1, 0]]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"a":2,"b":3,"entries":[[3,2,2],[3,1,0]]}"#);
        assert_eq!(serde_json::from_str::<PlanePartition>(&s).unwrap(), p);
    }
}
