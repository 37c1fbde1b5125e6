use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result};

/// Finite non-decreasing nonnegative sequence `a(1..=N)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>")]
#[serde(bound = "T: Real")]
pub struct GrowthSequence<T> {
    values: Vec<T>,
}

impl<T: Real> GrowthSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("empty growth sequence".into()));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() || *v < T::zero() {
                return Err(Error::Invalid(format!("value {} at n={} is not a finite nonnegative real", v, i + 1)));
            }
            if i > 0 && *v < values[i - 1] {
                return Err(Error::Invalid(format!("sequence decreases at n={}", i + 1)));
            }
        }
        Ok(Self { values })
    }

    /// Running maximum of `f(1), ..., f(n)`, negatives clamped to zero.
    pub fn hull_from_fn(n: usize, mut f: impl FnMut(usize) -> T) -> Result<Self> {
        let mut acc = T::zero();
        let mut values = Vec::with_capacity(n);
        for k in 1..=n {
            let v = f(k);
            if !v.is_finite() {
                return Err(Error::Invalid(format!("non-finite value at n={k}")));
            }
            acc = acc.max(v);
            values.push(acc);
        }
        Self::new(values)
    }

    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        Self::hull_from_fn(counts.len(), |k| T::usize(counts[k - 1]))
    }

    pub fn window(&self) -> usize {
        self.values.len()
    }

    /// `a(n)` with 1-based `n`.
    pub fn at(&self, n: usize) -> T {
        self.values[n - 1]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn prefix(&self, n: usize) -> Self {
        Self { values: self.values[..n.min(self.values.len()).max(1)].to_vec() }
    }

    pub fn scale(&self, c: T) -> Result<Self> {
        Self::new(self.values.iter().map(|&v| v * c).collect())
    }

    pub fn pointwise_max(&self, other: &Self) -> Self {
        let n = self.window().min(other.window());
        Self { values: (0..n).map(|i| self.values[i].max(other.values[i])).collect() }
    }

    pub fn is_constant(&self) -> bool {
        self.values.first() == self.values.last()
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("n\tvalue\n");
        for (i, v) in self.values.iter().enumerate() {
            s.push_str(&format!("{}\t{}\n", i + 1, v));
        }
        s
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('n') {
                continue;
            }
            let mut cols = line.split('\t');
            let n: usize = cols
                .next()
                .and_then(|c| c.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: bad index", ln + 1)))?;
            let v: f64 = cols
                .next()
                .and_then(|c| c.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: bad value", ln + 1)))?;
            if n != values.len() + 1 {
                return Err(Error::Parse(format!("line {}: expected n={}", ln + 1, values.len() + 1)));
            }
            values.push(T::lit(v));
        }
        Self::new(values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite values serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl<T: Real> TryFrom<Vec<T>> for GrowthSequence<T> {
    type Error = Error;
    fn try_from(v: Vec<T>) -> Result<Self> {
        Self::new(v)
    }
}

impl<T> From<GrowthSequence<T>> for Vec<T> {
    fn from(s: GrowthSequence<T>) -> Vec<T> {
        s.values
    }
}
