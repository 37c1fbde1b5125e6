use num_bigint::BigUint;

use super::exact::{qu, to_f64, Q};
use super::params::CascadeParams;
use crate::{Error, Result};

/// `e(n) = C_k n + D_k` for `m_{k-1} < n < m_k`, and `e(m_k) = D_{k+1}`.
pub fn envelope_eval(p: &CascadeParams, n: &BigUint) -> Result<Q> {
    for k in 1..=p.stages() {
        let m = p.m(k);
        if *n == m {
            return Ok(p.envelope_offsets[k].clone());
        }
        if *n < m {
            return Ok(&p.envelope_slopes[k - 1] * qu(n) + &p.envelope_offsets[k - 1]);
        }
    }
    Err(Error::BeyondHorizon { n: n.to_string() })
}

pub fn envelope_f64(p: &CascadeParams, n: u64) -> Result<f64> {
    envelope_eval(p, &BigUint::from(n)).map(|e| to_f64(&e))
}
