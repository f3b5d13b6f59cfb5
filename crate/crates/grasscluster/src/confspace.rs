//! Decorated configurations as (matrix, scaling factors) pairs and their cluster coordinates.

use crate::error::{Error, Result};
use crate::exact::{
    det_of_columns, format_rational, int, parse_rational, plucker, random_generic_matrix, rat,
    RatMatrix, Rational,
};
use crate::quiver::{extended_quiver, standard_quiver, VertexId};
use crate::seed::{ASeed, XSeed};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// I(i,j) for a vertex of Q_{a,n}, ascending, 1-based.
pub fn plucker_set(a: usize, n: usize, v: VertexId) -> Result<Vec<usize>> {
    let b = n - a;
    match v {
        VertexId::Grid(0, 0) => Ok((b + 1..=n).collect()),
        VertexId::Grid(i, j) if (1..=a).contains(&i) && (1..=b).contains(&j) => {
            Ok((b - j + 1..=b - j + i).chain(b + i + 1..=n).collect())
        }
        _ => Err(Error::Index(format!("{v} has no Plücker set in Q_{{{a},{n}}}"))),
    }
}

/// I'(i,j): each index of I(i,j) shifted down by one, mod n, ascending.
pub fn plucker_set_rotated(a: usize, n: usize, v: VertexId) -> Result<Vec<usize>> {
    let mut s: Vec<usize> =
        plucker_set(a, n, v)?.into_iter().map(|k| if k == 1 { n } else { k - 1 }).collect();
    s.sort_unstable();
    Ok(s)
}

/// F_k: vertices of Q_{a,n} whose Plücker set contains k.
pub fn f_set(a: usize, n: usize, k: usize) -> Vec<VertexId> {
    crate::quiver::grid_vertices(a, n - a)
        .into_iter()
        .filter(|&v| plucker_set(a, n, v).map_or(false, |s| s.contains(&k)))
        .collect()
}

fn wrap(k: i64, n: usize) -> usize {
    (k - 1).rem_euclid(n as i64) as usize + 1
}

fn window(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).collect()
}

/// A point of the decorated configuration space: columns v_1..v_n and scalings λ_1..λ_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedConfiguration {
    a: usize,
    n: usize,
    v: RatMatrix,
    lambda: Vec<Rational>,
}

impl DecoratedConfiguration {
    pub fn new(v: RatMatrix, lambda: Vec<Rational>) -> Result<Self> {
        let (a, n) = (v.rows(), v.cols());
        crate::quiver::check_params(a, n)?;
        if lambda.len() != n {
            return Err(Error::Dimension(format!("{} scalings for {n} columns", lambda.len())));
        }
        if lambda.iter().any(Zero::is_zero) {
            return Err(Error::NonGeneric("zero scaling factor".into()));
        }
        let cfg = DecoratedConfiguration { a, n, v, lambda };
        for k in 1..=n as i64 {
            if cfg.window_det(k - a as i64 + 1, k)?.is_zero() {
                return Err(Error::NonGeneric(format!("window ending at {k} is dependent")));
            }
        }
        Ok(cfg)
    }

    /// Random configuration with every maximal minor nonzero.
    pub fn random(a: usize, n: usize, seed: u64) -> Result<Self> {
        let v = random_generic_matrix(a, n, seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let lambda = (0..n)
            .map(|_| {
                let p: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
                rat(p, rng.gen_range(1..=5))
            })
            .collect();
        Self::new(v, lambda)
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

    pub fn matrix(&self) -> &RatMatrix {
        &self.v
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    /// λ_k with k taken mod n.
    pub fn lambda_at(&self, k: i64) -> &Rational {
        &self.lambda[wrap(k, self.n) - 1]
    }

    /// v_k with k taken mod n.
    pub fn col(&self, k: i64) -> Vec<Rational> {
        self.v.column(wrap(k, self.n) - 1)
    }

    /// Δ of a wrapped index set, sorted ascending.
    pub fn delta(&self, set: &[i64]) -> Result<Rational> {
        plucker(&self.v, &crate::exact::normalize_set(set, self.n))
    }

    fn window_det(&self, lo: i64, hi: i64) -> Result<Rational> {
        let cols: Vec<_> = (lo..=hi).map(|k| self.col(k)).collect();
        det_of_columns(&cols)
    }

    fn nonzero(x: Rational, what: impl FnOnce() -> String) -> Result<Rational> {
        if x.is_zero() {
            Err(Error::NonGeneric(what()))
        } else {
            Ok(x)
        }
    }

    /// φ(v_{i+1}) ∈ l_i: λ_i v_i, with the extra sign (-1)^{a-1} when i = n.
    pub fn phi_image(&self, i: i64) -> Vec<Rational> {
        let i = wrap(i, self.n);
        let mut s = self.lambda[i - 1].clone();
        if i == self.n && self.a % 2 == 0 {
            s = -s;
        }
        self.col(i as i64).into_iter().map(|x| x * &s).collect()
    }

    /// ϑ_i = det(φ(v_{i-a+1}), v_{i-a+2}, …, v_i) / det(v_{i-a+1}, …, v_i), ordered columns.
    pub fn theta(&self, i: usize) -> Result<Rational> {
        let (a, i) = (self.a as i64, i as i64);
        let mut num = vec![self.phi_image(i - a)];
        num.extend((i - a + 2..=i).map(|k| self.col(k)));
        let den = Self::nonzero(self.window_det(i - a + 1, i)?, || format!("window at {i}"))?;
        Ok(det_of_columns(&num)? / den)
    }

    /// A-coordinate: Δ_{I(i,j)} on grid vertices, λ_{i-a} Δ_{i-a..i-1}/Δ_{i-a+1..i} on i'.
    pub fn a_value(&self, v: VertexId) -> Result<Rational> {
        match v {
            VertexId::Grid(..) => {
                let set = plucker_set(self.a, self.n, v)?;
                let d = plucker(&self.v, &set)?;
                Self::nonzero(d, || format!("Δ at {v} vanishes"))
            }
            VertexId::Primed(i) => {
                let (a, i) = (self.a as i64, i as i64);
                let num = self.delta(&window(i - a, i - 1))?;
                let den = Self::nonzero(self.delta(&window(i - a + 1, i))?, || format!("Δ at {v}"))?;
                Self::nonzero(self.lambda_at(i - a) * num / den, || format!("A at {v} vanishes"))
            }
        }
    }

    /// A-seed on Q̃_{a,n}.
    pub fn a_seed_extended(&self) -> Result<ASeed> {
        ASeed::from_fn(extended_quiver(self.a, self.n)?, |v| self.a_value(v))
    }

    /// A-seed on Q_{a,n} (grid vertices only).
    pub fn a_seed(&self) -> Result<ASeed> {
        ASeed::from_fn(standard_quiver(self.a, self.n)?, |v| self.a_value(v))
    }

    /// X-seed on Q_{a,n}, frozen values included, via the p-map of the extended A-seed.
    pub fn x_seed(&self) -> Result<XSeed> {
        let ext = self.a_seed_extended()?.p_map();
        let q = standard_quiver(self.a, self.n)?;
        let vals = q.vertices().iter().map(|&v| ext.value(v).cloned()).collect::<Result<Vec<_>>>()?;
        XSeed::new(q, vals)
    }

    pub fn x_value(&self, g: VertexId) -> Result<Rational> {
        let ext = self.a_seed_extended()?;
        let q = ext.quiver();
        q.index_of(g)?;
        q.vertices().iter().try_fold(Rational::one(), |acc, &f| {
            let e = q.eps(f, g);
            Ok(if e == 0 { acc } else { acc * crate::exact::pow(ext.value(f)?, e) })
        })
    }

    /// Twisted monodromy P = ∏ λ_i.
    pub fn monodromy(&self) -> Rational {
        self.lambda.iter().fold(Rational::one(), |acc, l| acc * l)
    }

    /// M_k = det(φ(v_{k-a+1}), …, φ(v_k)) / det(v_{k-a+1}, …, v_k), ordered columns.
    pub fn weight(&self, k: usize) -> Result<Rational> {
        let (a, k) = (self.a as i64, k as i64);
        let num: Vec<_> = (k - a + 1..=k).map(|j| self.phi_image(j - 1)).collect();
        let den = Self::nonzero(self.window_det(k - a + 1, k)?, || format!("window at {k}"))?;
        Ok(det_of_columns(&num)? / den)
    }

    /// L_{i,j}: product of X over the lower-right rectangle; L_{0,0} includes X_{0,0}.
    pub fn gz_value(&self, i: usize, j: usize) -> Result<Rational> {
        gz_from_x(&self.x_seed()?, i, j)
    }

    /// (L_{0,0}, grid L_{i,j}) in one pass.
    pub fn gz_coordinates(&self) -> Result<(Rational, Vec<Vec<Rational>>)> {
        let x = self.x_seed()?;
        gz_all(&x, self.a, self.b())
    }

    /// (A_{i-1,j-1}/A_{i,j}) ∏_{k=i-a}^{b-j} λ_k with A_{i,0} = A_{0,j} = A_{0,0}.
    pub fn gz_product_formula(&self, i: usize, j: usize) -> Result<Rational> {
        let av = |p: usize, q: usize| {
            let v = if p == 0 || q == 0 { VertexId::Grid(0, 0) } else { VertexId::Grid(p, q) };
            self.a_value(v)
        };
        let lam = (i as i64 - self.a as i64..=self.b() as i64 - j as i64)
            .fold(Rational::one(), |acc, k| acc * self.lambda_at(k));
        Ok(av(i - 1, j - 1)? / av(i, j)? * lam)
    }

    /// Σ ϑ_i from the geometric definition.
    pub fn potential(&self) -> Result<Rational> {
        (1..=self.n).try_fold(Rational::zero(), |acc, i| Ok(acc + self.theta(i)?))
    }

    /// ϑ_i as a sum of monomials in the X-coordinates.
    pub fn theta_cluster(&self, i: usize) -> Result<Rational> {
        theta_from_x(&self.x_seed()?, i)
    }

    /// The potential from the X-coordinates.
    pub fn potential_cluster(&self) -> Result<Rational> {
        let x = self.x_seed()?;
        (1..=self.n).try_fold(Rational::zero(), |acc, i| Ok(acc + theta_from_x(&x, i)?))
    }

    /// The potential from the Gelfand-Zetlin coordinates.
    pub fn potential_gz(&self) -> Result<Rational> {
        let (l00, l) = self.gz_coordinates()?;
        Ok(potential_from_gz(&l00, &l))
    }

    /// R: columns ((-1)^{a-1} v_n, v_1, …, v_{n-1}), scalings λ'_k = λ_{k-1}.
    pub fn rotate(&self) -> DecoratedConfiguration {
        let v = apply_c(&self.v);
        let lambda = (1..=self.n as i64).map(|k| self.lambda_at(k - 1).clone()).collect();
        DecoratedConfiguration { a: self.a, n: self.n, v, lambda }
    }

    /// Left action of an invertible a×a matrix on the columns.
    pub fn act(&self, g: &RatMatrix) -> Result<DecoratedConfiguration> {
        DecoratedConfiguration::new(g.mul(&self.v)?, self.lambda.clone())
    }

    /// φ-orbit vectors w_k for k = n, n-1, …, 1-a with w_n = v_n and w_{k-1} = φ_k(w_k).
    fn phi_orbit(&self) -> Result<Vec<(i64, Vec<Rational>)>> {
        let (a, n) = (self.a as i64, self.n as i64);
        let mut out = vec![(n, self.col(n))];
        let mut scale = Rational::one();
        for k in (1 - a + 1..=n).rev() {
            // w_k = scale * v_k; φ_k(v_k) = phi_image(k - 1) ∈ l_{k-1}
            let img: Vec<Rational> = self.phi_image(k - 1).into_iter().map(|x| x * &scale).collect();
            let base = self.col(k - 1);
            let p = base
                .iter()
                .position(|x| !x.is_zero())
                .ok_or_else(|| Error::NonGeneric("zero column".into()))?;
            scale = &img[p] / &base[p];
            out.push((k - 1, img));
        }
        Ok(out)
    }

    /// Φ_1, …, Φ_n in companion form; their product is (-1)^{a-1} P · Id.
    pub fn phi_matrices(&self) -> Result<Vec<RatMatrix>> {
        let a = self.a;
        let orbit = self.phi_orbit()?;
        let w = |k: i64| -> Vec<Rational> {
            orbit.iter().find(|(j, _)| *j == k).map(|(_, v)| v.clone()).expect("orbit index")
        };
        (1..=self.n as i64)
            .map(|i| {
                let basis: Vec<Vec<Rational>> = (0..a as i64).map(|r| w(i - r)).collect();
                let target = w(i - a as i64);
                let coeffs = RatMatrix::from_columns(&basis)?.solve(&target)?;
                let mut m = RatMatrix::zeros(a, a);
                for r in 0..a - 1 {
                    m.set(r, r + 1, Rational::one());
                }
                for (c, x) in coeffs.into_iter().enumerate() {
                    m.set(a - 1, c, x);
                }
                Ok(m)
            })
            .collect()
    }

    /// Grassmannian representative (v, φ(v), …, φ^{n-1}(v)) with v = v_n.
    pub fn orbit_matrix(&self) -> Result<RatMatrix> {
        let orbit = self.phi_orbit()?;
        let cols: Vec<Vec<Rational>> = orbit.iter().take(self.n).map(|(_, v)| v.clone()).collect();
        RatMatrix::from_columns(&cols)
    }

    /// The Rietsch-Williams potential evaluated at the image point with q = P.
    pub fn rw_potential(&self) -> Result<Rational> {
        let (a, n, b) = (self.a as i64, self.n as i64, self.b() as i64);
        let g = self.orbit_matrix()?;
        let d = |s: &[i64]| plucker(&g, &crate::exact::normalize_set(s, self.n));
        let mut first: Vec<i64> = (b + 1..n).collect();
        first.push(1);
        let mut w = self.monodromy() * d(&first)? / d(&window(b + 1, n))?;
        for i in 1..n {
            let mut num = window(i - a + 1, i - 1);
            num.push(i + 1);
            w += d(&num)? / d(&window(i - a + 1, i))?;
        }
        Ok(w)
    }
}

/// X-monomial sums for ϑ_i.
pub fn theta_from_x(x: &XSeed, i: usize) -> Result<Rational> {
    let q = x.quiver();
    let (a, n, b) = (q.a(), q.n(), q.b());
    let g = |p: usize, r: usize| x.value(VertexId::Grid(p, r)).cloned();
    if i == n {
        return g(0, 0);
    }
    if i == a {
        return g(a, b);
    }
    let mut sum = Rational::zero();
    let mut prod = Rational::one();
    if i < a {
        for j in (1..=b).rev() {
            prod *= g(i, j)?;
            sum += &prod;
        }
    } else {
        let j = n - i;
        for r in (1..=a).rev() {
            prod *= g(r, j)?;
            sum += &prod;
        }
    }
    Ok(sum)
}

/// L_{i,j} from an X-seed on Q_{a,n}.
pub fn gz_from_x(x: &XSeed, i: usize, j: usize) -> Result<Rational> {
    let q = x.quiver();
    let (a, b) = (q.a(), q.b());
    let mut p = Rational::one();
    if (i, j) == (0, 0) {
        for v in q.vertices() {
            p *= x.value(*v)?;
        }
        return Ok(p);
    }
    if !(1..=a).contains(&i) || !(1..=b).contains(&j) {
        return Err(Error::Index(format!("no GZ coordinate ({i},{j})")));
    }
    for k in i..=a {
        for l in j..=b {
            p *= x.value(VertexId::Grid(k, l))?;
        }
    }
    Ok(p)
}

fn gz_all(x: &XSeed, a: usize, b: usize) -> Result<(Rational, Vec<Vec<Rational>>)> {
    let mut l = vec![vec![Rational::one(); b + 2]; a + 2];
    for i in (1..=a).rev() {
        for j in (1..=b).rev() {
            l[i][j] = x.value(VertexId::Grid(i, j))? * &l[i + 1][j] * &l[i][j + 1] / &l[i + 1][j + 1];
        }
    }
    let l00 = x.value(VertexId::Grid(0, 0))? * &l[1][1];
    Ok((l00, (1..=a).map(|i| l[i][1..=b].to_vec()).collect()))
}

/// X-coordinates back from GZ coordinates (grid `l` is a×b, 0-based storage).
pub fn x_from_gz(a: usize, n: usize, l00: &Rational, l: &[Vec<Rational>]) -> Result<XSeed> {
    let b = n - a;
    let at = |i: usize, j: usize| -> Rational {
        if i == 0 || j == 0 || i > a || j > b { Rational::one() } else { l[i - 1][j - 1].clone() }
    };
    XSeed::from_fn(standard_quiver(a, n)?, |v| match v {
        VertexId::Grid(0, 0) => Ok(l00 / at(1, 1)),
        VertexId::Grid(i, j) => Ok(at(i, j) * at(i + 1, j + 1) / (at(i + 1, j) * at(i, j + 1))),
        VertexId::Primed(_) => Err(Error::Index("primed".into())),
    })
}

/// L_{0,0}/L_{1,1} + L_{a,b} + Σ L_{i,j}/L_{i+1,j} + Σ L_{i,j}/L_{i,j+1}.
pub fn potential_from_gz(l00: &Rational, l: &[Vec<Rational>]) -> Rational {
    let a = l.len();
    let b = l[0].len();
    let mut w = l00 / &l[0][0] + &l[a - 1][b - 1];
    for i in 0..a - 1 {
        for j in 0..b {
            w += &l[i][j] / &l[i + 1][j];
        }
    }
    for j in 0..b - 1 {
        for i in 0..a {
            w += &l[i][j] / &l[i][j + 1];
        }
    }
    w
}

/// One application of the birational toggle sequence to GZ coordinates.
///
/// Toggles bottom to top within each column, columns left to right. Neighbours outside
/// the grid are omitted from the sums, except that the top-left corner contributes P
/// and the bottom-right corner contributes 1.
pub fn birational_eta(p: &Rational, l: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let a = l.len();
    let b = l[0].len();
    let mut new = l.to_vec();
    for j in 0..b {
        for i in (0..a).rev() {
            let mut up = Rational::zero();
            if j > 0 {
                up += &new[i][j - 1];
            }
            if i > 0 {
                up += &l[i - 1][j];
            }
            if i == 0 && j == 0 {
                up = p.clone();
            }
            let mut down = Rational::zero();
            if i + 1 < a {
                down += new[i + 1][j].recip();
            }
            if j + 1 < b {
                down += l[i][j + 1].recip();
            }
            if i + 1 == a && j + 1 == b {
                down = Rational::one();
            }
            new[i][j] = up / (&l[i][j] * down);
        }
    }
    new
}

/// C_a: e_i ↦ e_{i-1} for i > 1 and e_1 ↦ (-1)^{a-1} e_n, as an n×n matrix.
pub fn twisted_rotation_matrix(a: usize, n: usize) -> Result<RatMatrix> {
    crate::quiver::check_params(a, n)?;
    let mut c = RatMatrix::zeros(n, n);
    for i in 1..n {
        c.set(i - 1, i, Rational::one());
    }
    c.set(n - 1, 0, if a % 2 == 1 { int(1) } else { int(-1) });
    Ok(c)
}

/// Right multiplication by C_a: columns become ((-1)^{a-1} v_n, v_1, …, v_{n-1}).
pub fn apply_c(m: &RatMatrix) -> RatMatrix {
    let c = twisted_rotation_matrix(m.rows(), m.cols()).expect("valid shape");
    m.mul(&c).expect("shapes agree")
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    a: usize,
    n: usize,
    #[serde(rename = "V")]
    v: Vec<Vec<String>>,
    lambda: Vec<String>,
}

impl Serialize for DecoratedConfiguration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigJson {
            a: self.a,
            n: self.n,
            v: self.v.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
            lambda: self.lambda.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DecoratedConfiguration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ConfigJson::deserialize(d)?;
        let rows = j
            .v
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let lambda = j.lambda.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        let v = RatMatrix::from_rows(rows).map_err(D::Error::custom)?;
        if v.rows() != j.a || v.cols() != j.n {
            return Err(D::Error::custom("V shape disagrees with a, n"));
        }
        DecoratedConfiguration::new(v, lambda).map_err(D::Error::custom)
    }
}
