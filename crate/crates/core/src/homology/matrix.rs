use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest accepted dimension.
pub const MAX_DIM: usize = 12;

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Invalid(format!("matrix dimension must be 1..={MAX_DIM}, got {dim}")));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid("matrix must be square".into()));
        }
        Ok(IntMatrix { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn zero(dim: usize) -> Self {
        IntMatrix { dim, data: vec![BigInt::zero(); dim * dim] }
    }

    /// Parse a JSON array of rows; entries must be integers.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = v.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
        let mut out = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
            let mut row = Vec::new();
            for x in r {
                let n = match x {
                    serde_json::Value::Number(n) if n.is_i64() => BigInt::from(n.as_i64().unwrap()),
                    serde_json::Value::Number(n) if n.is_u64() => BigInt::from(n.as_u64().unwrap()),
                    serde_json::Value::String(s) => parse_entry(s)?,
                    other => return Err(Error::Invalid(format!("non-integer entry {other}"))),
                };
                row.push(n);
            }
            out.push(row);
        }
        Self::new(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add_scaled_identity(&self, c: &BigInt) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m[(i, i)] += c;
        }
        m
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix { dim: self.dim, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        IntMatrix { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self[(i, i)].clone()).sum()
    }

    /// Max absolute entry.
    pub fn max_norm(&self) -> BigInt {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..n {
                    a.swap(p * n + j, rank * n + j);
                }
            }
            let piv = a[rank * n + col].clone();
            for r in rank + 1..n {
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let v = (&piv * &a[r * n + j] - &f * &a[rank * n + j]).div_floor(&prev);
                    a[r * n + j] = v;
                }
            }
            prev = piv;
            rank += 1;
            if rank == n {
                break;
            }
        }
        rank
    }

    pub fn determinant(&self) -> BigInt {
        // c_0 of the characteristic polynomial, up to sign
        let cp = super::poly::charpoly(self);
        if self.dim % 2 == 0 {
            cp[0].clone()
        } else {
            -cp[0].clone()
        }
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows().iter().map(|r| r.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()).collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.dim + j]
    }
}

fn parse_entry(s: &str) -> Result<BigInt> {
    let s = s.trim();
    s.parse::<BigInt>().map_err(|_| Error::Invalid(format!("non-integer entry {s:?}")))
}

/// `"1,1;0,1"`, or a JSON array of rows.
impl FromStr for IntMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            return Self::from_json(s);
        }
        let rows = s
            .split(';')
            .map(|r| r.split(',').map(parse_entry).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

/// Same text form as the parser accepts.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = self
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| match v.to_i64() {
                        Some(x) => serde_json::Value::from(x),
                        None => serde_json::Value::from(v.to_string()),
                    })
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        IntMatrix::from_json(&v.to_string()).map_err(serde::de::Error::custom)
    }
}
