//! Cascade parameters. Exact integers and rationals serialise as strings.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::convergents::convergent_pairs;
use super::exact::{qu, sqrt_ceil, to_f64, Q};
use super::target::Target;

/// Serde adapters rendering `Display` values as strings.
pub mod big {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
        where
            T: FromStr,
            T::Err: Display,
            D: Deserializer<'de>,
        {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| s.parse().map_err(D::Error::custom))
                .collect()
        }
    }
}

/// Stage data of the skew product `(x, y) -> (x + alpha, y + sum_k b_k cos(2 pi q_k (x + alpha)))`.
///
/// Stage `k` (1-based) owns `b_k`, `m_k` and the quotient `r_{k+1}`;
/// `partial_quotients[0]` is `r_1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeParams {
    pub target: Target,
    #[serde(with = "big::vec")]
    pub partial_quotients: Vec<BigUint>,
    /// `(p_k, q_k)` for `k = 1..=K+1`.
    #[serde(with = "pairs")]
    pub convergents: Vec<(BigUint, BigUint)>,
    #[serde(with = "big::vec")]
    pub amplitudes: Vec<Q>,
    #[serde(with = "big::vec")]
    pub cutpoints: Vec<BigUint>,
    /// `ceil(n_k)`, `n_k = sqrt(q_{k+1} / (b_k q_k))`.
    #[serde(with = "big::vec")]
    pub linear_ranges: Vec<BigUint>,
    /// `C_k = sum_{j >= k} b_j q_j`, truncated at `K`.
    #[serde(with = "big::vec")]
    pub envelope_slopes: Vec<Q>,
    /// `D_k = sum_{j < k} b_j q_j q_{j+1}`, `k = 1..=K+1`.
    #[serde(with = "big::vec")]
    pub envelope_offsets: Vec<Q>,
    /// Stages whose separation lower bound is enforced.
    pub witness_stages: usize,
    /// Stage chosen so the orbit graph wraps the torus vertically, if any.
    pub wrap_stage: Option<usize>,
}

mod pairs {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[(BigUint, BigUint)], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|(p, q)| [p.to_string(), q.to_string()]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(BigUint, BigUint)>, D::Error> {
        Vec::<[String; 2]>::deserialize(d)?
            .iter()
            .map(|[p, q]| Ok((p.parse().map_err(D::Error::custom)?, q.parse().map_err(D::Error::custom)?)))
            .collect()
    }
}

impl CascadeParams {
    /// Assemble parameters and the derived envelope data from raw choices.
    pub fn assemble(
        target: Target,
        partial_quotients: Vec<BigUint>,
        amplitudes: Vec<Q>,
        cutpoints: Vec<BigUint>,
        witness_stages: usize,
        wrap_stage: Option<usize>,
    ) -> Self {
        let convergents = convergent_pairs(&partial_quotients);
        let k = amplitudes.len();
        let qk = |i: usize| qu(&convergents[i].1);
        let beta: Vec<Q> = (0..k).map(|i| &amplitudes[i] * qk(i)).collect();
        let mut envelope_slopes = vec![Q::zero(); k];
        let mut acc = Q::zero();
        for i in (0..k).rev() {
            acc += &beta[i];
            envelope_slopes[i] = acc.clone();
        }
        let mut envelope_offsets = vec![Q::zero()];
        for i in 0..k {
            let d = envelope_offsets[i].clone() + &beta[i] * qk(i + 1);
            envelope_offsets.push(d);
        }
        let linear_ranges = (0..k).map(|i| sqrt_ceil(&(qk(i + 1) / &beta[i]))).collect();
        CascadeParams {
            target,
            partial_quotients,
            convergents,
            amplitudes,
            cutpoints,
            linear_ranges,
            envelope_slopes,
            envelope_offsets,
            witness_stages,
            wrap_stage,
        }
    }

    pub fn stages(&self) -> usize {
        self.amplitudes.len()
    }

    /// `q_k`, 1-based, `k <= K + 1`.
    pub fn q(&self, k: usize) -> &BigUint {
        &self.convergents[k - 1].1
    }

    /// `b_k`, 1-based.
    pub fn b(&self, k: usize) -> &Q {
        &self.amplitudes[k - 1]
    }

    /// `m_k`, 1-based; `m_0 = 0`.
    pub fn m(&self, k: usize) -> BigUint {
        if k == 0 {
            BigUint::zero()
        } else {
            self.cutpoints[k - 1].clone()
        }
    }

    /// `Delta_k = b_k q_k q_{k+1}`.
    pub fn increment(&self, k: usize) -> Q {
        self.b(k) * qu(self.q(k)) * qu(self.q(k + 1))
    }

    pub fn alpha_f64(&self) -> f64 {
        let (p, q) = super::convergents::alpha_approximant(&self.partial_quotients, 64);
        to_f64(&Q::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Integer `a(m_k)` data for reports: `m_K` bit length.
    pub fn horizon_bits(&self) -> u64 {
        self.cutpoints.last().map_or(0, |m| m.bits())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("params serialise")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }

    pub fn is_degenerate(&self) -> bool {
        self.amplitudes.is_empty() || self.partial_quotients.iter().any(|r| r < &BigUint::one())
    }
}
