//! Cyclic sieving for plane partitions under η, with exact cyclotomic arithmetic.

use crate::error::{Error, Result};
use crate::planepartition::{enumerate, gt_pattern, gt_weight, macmahon, IntPolynomial, PlanePartition};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Default bound on |P(a,b,c)| · n for [`verify_csp`].
pub const DEFAULT_CAP: u128 = 200_000_000;

/// Φ_n by dividing q^n − 1 by Φ_d for every proper divisor d of n.
pub fn cyclotomic_poly(n: usize) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = BigInt::from(-1);
    c[n] = BigInt::from(1);
    let mut p = IntPolynomial::new(c);
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.div_exact(&cyclotomic_poly(d)).expect("Φ_d divides q^n - 1");
    }
    p
}

/// An element of ℤ[q]/Φ_n(q), reduced to degree below φ(n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicInt {
    n: usize,
    coeffs: IntPolynomial,
}

impl CyclotomicInt {
    pub fn new(n: usize, p: IntPolynomial) -> Self {
        let (_, r) = p.div_rem_monic(&cyclotomic_poly(n)).expect("Φ_n is monic");
        CyclotomicInt { n, coeffs: r }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &IntPolynomial {
        &self.coeffs
    }

    pub fn add(&self, o: &CyclotomicInt) -> CyclotomicInt {
        let neg = IntPolynomial::default().sub(&o.coeffs);
        CyclotomicInt::new(self.n, self.coeffs.sub(&neg))
    }

    pub fn mul(&self, o: &CyclotomicInt) -> CyclotomicInt {
        CyclotomicInt::new(self.n, self.coeffs.mul(&o.coeffs))
    }

    /// The rational integer m with self = m, if any.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.coeffs.coeffs() {
            [] => Some(BigInt::zero()),
            [m] => Some(m.clone()),
            _ => None,
        }
    }

    pub fn equals_integer(&self, m: &BigInt) -> bool {
        self.coeffs.sub(&IntPolynomial::new(vec![m.clone()])).is_zero()
    }
}

impl std::fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.as_integer() {
            Some(m) => write!(f, "{m}"),
            None => {
                let terms: Vec<String> = self
                    .coeffs
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| match k {
                        0 => c.to_string(),
                        1 => format!("{c}q"),
                        _ => format!("{c}q^{k}"),
                    })
                    .collect();
                write!(f, "{}", terms.join(" + "))
            }
        }
    }
}

/// Σ_r counts[r] ζ^{d r} for residues r mod n.
pub fn eval_residues(counts: &[BigInt], n: usize, d: usize) -> CyclotomicInt {
    let mut folded = vec![BigInt::zero(); n];
    for (r, c) in counts.iter().enumerate() {
        folded[(r * d) % n] += c;
    }
    CyclotomicInt::new(n, IntPolynomial::new(folded))
}

/// F(ζ^d) with ζ a primitive n-th root of unity.
pub fn eval_at_root(f: &IntPolynomial, n: usize, d: usize) -> CyclotomicInt {
    let mut counts = vec![BigInt::zero(); n];
    for (k, c) in f.coeffs().iter().enumerate() {
        counts[k % n] += c;
    }
    eval_residues(&counts, n, d)
}

/// |P(a,b,c)| from the product formula at q = 1.
pub fn count_partitions(a: usize, b: usize, c: u32) -> BigInt {
    let mut r = BigRational::from_integer(BigInt::from(1));
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c as usize {
                r *= BigRational::new(BigInt::from(i + j + k - 1), BigInt::from(i + j + k - 2));
            }
        }
    }
    r.to_integer()
}

fn check_cap(a: usize, b: usize, c: u32, cap: u128) -> Result<()> {
    let est = count_partitions(a, b, c) * BigInt::from(a + b);
    let est = est.to_u128().unwrap_or(u128::MAX);
    if est > cap {
        return Err(Error::Resource { estimated: est, cap });
    }
    Ok(())
}

/// Orbit length of π under η.
pub fn orbit_length(pi: &PlanePartition, c: u32) -> usize {
    let mut p = pi.clone();
    let mut k = 0;
    loop {
        p.eta_unchecked(c);
        k += 1;
        if &p == pi {
            return k;
        }
    }
}

fn orbit_histogram(a: usize, b: usize, c: u32) -> BTreeMap<usize, u64> {
    let all: Vec<PlanePartition> = enumerate(a, b, c).collect();
    all.par_iter()
        .fold(BTreeMap::new, |mut m, p| {
            *m.entry(orbit_length(p, c)).or_insert(0u64) += 1;
            m
        })
        .reduce(BTreeMap::new, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        })
}

/// #{π ∈ P(a,b,c) : η^d(π) = π}.
pub fn fixed_points(a: usize, b: usize, c: u32, d: usize) -> u64 {
    let n = a + b;
    let d = d % n;
    let all: Vec<PlanePartition> = enumerate(a, b, c).collect();
    all.par_iter()
        .filter(|p| p.eta_pow(c, d).map_or(false, |q| &q == *p))
        .count() as u64
}

/// One line of a CSP check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CSPRow {
    pub d: usize,
    pub fixed: u64,
    pub value: CyclotomicInt,
    pub equal: bool,
}

/// Fixed-point counts against M_{a,b,c}(ζ^d) for every d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CSPReport {
    pub a: usize,
    pub b: usize,
    pub c: u32,
    pub n: usize,
    pub rows: Vec<CSPRow>,
    pub all_equal: bool,
}

impl CSPReport {
    /// Human-readable table.
    pub fn table(&self) -> String {
        let mut s = format!("P({},{},{}), n = {}\n{:>3}  {:>10}  {:>24}  ok\n", self.a, self.b, self.c, self.n, "d", "fixed", "M(zeta^d)");
        for r in &self.rows {
            let v = match r.value.as_integer() {
                Some(m) => m.to_string(),
                None => format!("non-integral: {}", r.value),
            };
            s.push_str(&format!("{:>3}  {:>10}  {:>24}  {}\n", r.d, r.fixed, v, if r.equal { "yes" } else { "NO" }));
        }
        s
    }
}

/// Checks the cyclic sieving identity for P(a,b,c) under η with an explicit cost cap.
pub fn verify_csp_capped(a: usize, b: usize, c: u32, cap: u128) -> Result<CSPReport> {
    if a == 0 || b == 0 {
        return Err(Error::Parameter("need a, b >= 1".into()));
    }
    check_cap(a, b, c, cap)?;
    let n = a + b;
    let hist = orbit_histogram(a, b, c);
    let mut counts = vec![BigInt::zero(); n];
    for p in enumerate(a, b, c) {
        counts[(p.size() % n as u64) as usize] += 1;
    }
    let rows: Vec<CSPRow> = (0..n)
        .map(|d| {
            let fixed: u64 = hist.iter().filter(|(&len, _)| d % len == 0).map(|(_, &c)| c).sum();
            let value = eval_residues(&counts, n, d);
            let equal = value.equals_integer(&BigInt::from(fixed));
            CSPRow { d, fixed, value, equal }
        })
        .collect();
    let all_equal = rows.iter().all(|r| r.equal);
    Ok(CSPReport { a, b, c, n, rows, all_equal })
}

/// [`verify_csp_capped`] with [`DEFAULT_CAP`].
pub fn verify_csp(a: usize, b: usize, c: u32) -> Result<CSPReport> {
    verify_csp_capped(a, b, c, DEFAULT_CAP)
}

/// CSP values computed from the full MacMahon polynomial rather than residue counts.
pub fn macmahon_at_roots(a: usize, b: usize, c: u32) -> Result<Vec<CyclotomicInt>> {
    let m = macmahon(a, b, c)?;
    let n = a + b;
    Ok((0..n).map(|d| eval_at_root(&m, n, d)).collect())
}

/// Census of wt(Λ_π) over P(a,b,c).
pub fn weight_census(a: usize, b: usize, c: u32) -> BTreeMap<Vec<i64>, u64> {
    let mut out = BTreeMap::new();
    for p in enumerate(a, b, c) {
        let w = gt_weight(&gt_pattern(&p, c).expect("in box"));
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), IntPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity_values() {
        let one = IntPolynomial::one();
        assert_eq!(eval_at_root(&one, 5, 3).as_integer(), Some(BigInt::from(1)));
        let m = macmahon(2, 2, 1).unwrap();
        assert_eq!(eval_at_root(&m, 4, 1).as_integer(), Some(BigInt::from(0)));
        for c in 0..6 {
            let q = crate::planepartition::quantum_int(c + 1);
            let want = if c % 2 == 0 { 1 } else { 0 };
            assert_eq!(eval_at_root(&q, 2, 1).as_integer(), Some(BigInt::from(want)));
        }
    }

    #[test]
    fn fixed_point_counts() {
        assert_eq!(fixed_points(2, 2, 1, 2), 2);
        assert_eq!(fixed_points(1, 1, 4, 1), 1);
        assert_eq!(fixed_points(1, 1, 3, 1), 0);
        assert_eq!(fixed_points(2, 2, 2, 0), 20);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(verify_csp_capped(3, 3, 3, 10), Err(Error::Resource { .. })));
    }

    #[test]
    fn census_of_single_box() {
        let c = weight_census(1, 1, 1);
        assert_eq!(c.len(), 2);
        assert!(c.values().all(|&v| v == 1));
    }
}
