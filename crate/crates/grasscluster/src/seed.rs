//! A- and X-seeds: exact rational values on quiver vertices and their mutations.

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, pow, Rational};
use crate::quiver::{Quiver, VertexId};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

macro_rules! seed_type {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name {
            quiver: Quiver,
            values: Vec<Rational>,
        }

        impl $name {
            /// Values are given in the quiver's vertex order and must be nonzero.
            pub fn new(quiver: Quiver, values: Vec<Rational>) -> Result<Self> {
                if values.len() != quiver.len() {
                    return Err(Error::Dimension(format!(
                        "{} values for {} vertices",
                        values.len(),
                        quiver.len()
                    )));
                }
                if let Some(k) = values.iter().position(Zero::is_zero) {
                    return Err(Error::Degenerate(format!("zero value at {}", quiver.vertices()[k])));
                }
                Ok($name { quiver, values })
            }

            pub fn from_fn(quiver: Quiver, mut f: impl FnMut(VertexId) -> Result<Rational>) -> Result<Self> {
                let values = quiver.vertices().iter().map(|&v| f(v)).collect::<Result<Vec<_>>>()?;
                Self::new(quiver, values)
            }

            pub fn quiver(&self) -> &Quiver {
                &self.quiver
            }

            pub fn values(&self) -> &[Rational] {
                &self.values
            }

            pub fn value(&self, v: VertexId) -> Result<&Rational> {
                Ok(&self.values[self.quiver.index_of(v)?])
            }

            /// Renames vertices; values travel with their vertex.
            pub fn relabel(&self, map: &std::collections::HashMap<VertexId, VertexId>) -> Result<Self> {
                Ok($name { quiver: self.quiver.relabel(map)?, values: self.values.clone() })
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                use serde::ser::Error as _;
                let mut v = serde_json::to_value(&self.quiver).map_err(S::Error::custom)?;
                let values: BTreeMap<String, String> = self
                    .quiver
                    .vertices()
                    .iter()
                    .zip(&self.values)
                    .map(|(id, x)| (id.to_string(), format_rational(x)))
                    .collect();
                v["values"] = serde_json::to_value(values).map_err(S::Error::custom)?;
                v.serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                use serde::de::Error as _;
                let mut v = serde_json::Value::deserialize(d)?;
                let raw = v
                    .as_object_mut()
                    .and_then(|o| o.remove("values"))
                    .ok_or_else(|| D::Error::custom("missing values"))?;
                let quiver: Quiver = serde_json::from_value(v).map_err(D::Error::custom)?;
                let map: BTreeMap<String, String> = serde_json::from_value(raw).map_err(D::Error::custom)?;
                let mut values = vec![Rational::zero(); quiver.len()];
                for (k, x) in map {
                    let id: VertexId = k.parse().map_err(D::Error::custom)?;
                    let i = quiver.index_of(id).map_err(D::Error::custom)?;
                    values[i] = parse_rational(&x).map_err(D::Error::custom)?;
                }
                $name::new(quiver, values).map_err(D::Error::custom)
            }
        }
    };
}

seed_type!(ASeed, "K_2-type cluster seed: an A-value per vertex.");
seed_type!(XSeed, "Poisson-type cluster seed: an X-value per vertex.");

impl ASeed {
    /// A'_k = (∏ A_j^{[ε_jk]+} + ∏ A_j^{[-ε_jk]+}) / A_k.
    pub fn mutate(&self, k: VertexId) -> Result<ASeed> {
        let quiver = self.quiver.mutate(k)?;
        let kk = self.quiver.index_of(k)?;
        let eps = self.quiver.eps_matrix();
        let mut pos = Rational::one();
        let mut neg = Rational::one();
        for (j, x) in self.values.iter().enumerate() {
            let e = eps[j][kk];
            if e > 0 {
                pos *= pow(x, e);
            } else if e < 0 {
                neg *= pow(x, -e);
            }
        }
        let new = (pos + neg) / &self.values[kk];
        if new.is_zero() {
            return Err(Error::Degenerate(format!("A-mutation at {k} produced zero")));
        }
        let mut values = self.values.clone();
        values[kk] = new;
        Ok(ASeed { quiver, values })
    }

    pub fn mutate_sequence(&self, seq: &[VertexId]) -> Result<ASeed> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// The p-map X_g = ∏_f A_f^{ε_fg}.
    pub fn p_map(&self) -> XSeed {
        let eps = self.quiver.eps_matrix();
        let m = self.values.len();
        let values = (0..m)
            .map(|g| {
                (0..m).fold(Rational::one(), |acc, f| {
                    let e = eps[f][g];
                    if e == 0 { acc } else { acc * pow(&self.values[f], e) }
                })
            })
            .collect();
        XSeed { quiver: self.quiver.clone(), values }
    }
}

impl XSeed {
    /// X'_k = X_k^{-1}, X'_i = X_i (1 + X_k^{sgn ε_ik})^{ε_ik}.
    pub fn mutate(&self, k: VertexId) -> Result<XSeed> {
        let quiver = self.quiver.mutate(k)?;
        let kk = self.quiver.index_of(k)?;
        let xk = &self.values[kk];
        if xk.is_zero() {
            return Err(Error::Degenerate(format!("X at {k} is zero")));
        }
        let eps = self.quiver.eps_matrix();
        let plus = Rational::one() + xk;
        let minus = Rational::one() + xk.recip();
        let mut values = self.values.clone();
        for (i, v) in values.iter_mut().enumerate() {
            if i == kk {
                *v = xk.recip();
                continue;
            }
            let e = eps[i][kk];
            if e == 0 {
                continue;
            }
            let base = if e > 0 { &plus } else { &minus };
            if base.is_zero() {
                return Err(Error::Degenerate(format!("1 + X^(±1) vanishes at {k}")));
            }
            *v *= pow(base, e);
        }
        Ok(XSeed { quiver, values })
    }

    pub fn mutate_sequence(&self, seq: &[VertexId]) -> Result<XSeed> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    pub fn is_positive(&self) -> bool {
        self.values.iter().all(Signed::is_positive)
    }

    /// ∏ of X over the given vertices.
    pub fn product_over(&self, vs: &[VertexId]) -> Result<Rational> {
        vs.iter().try_fold(Rational::one(), |acc, &v| Ok(acc * self.value(v)?))
    }
}
