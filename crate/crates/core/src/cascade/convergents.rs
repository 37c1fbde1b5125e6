//! Continued-fraction convergents in exact arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::exact::{qu, to_f64, Q};

/// `p_k / q_k` with the distance `||q_k alpha||` and its bracket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Convergent {
    #[serde(with = "super::params::big")]
    pub p: BigUint,
    #[serde(with = "super::params::big")]
    pub q: BigUint,
    /// `||q_k alpha|| * q_{k+1}`; lies in `[1/2, 1]` for every `k` but the last.
    pub scaled_dist: f64,
    /// Whether `1/((r_{k+1}+2) q_k) <= ||q_k alpha|| <= 1/(r_{k+1} q_k)` holds exactly.
    pub in_bracket: Option<bool>,
}

/// `(p_k, q_k)` for `k = 1..=len`, from `p_0/q_0 = 0/1`, `p_-1/q_-1 = 1/0`.
pub fn convergent_pairs(quotients: &[BigUint]) -> Vec<(BigUint, BigUint)> {
    let (mut p0, mut q0) = (BigUint::one(), BigUint::zero());
    let (mut p1, mut q1) = (BigUint::zero(), BigUint::one());
    let mut out = Vec::with_capacity(quotients.len());
    for r in quotients {
        let p2 = r * &p1 + &p0;
        let q2 = r * &q1 + &q0;
        out.push((p2.clone(), q2.clone()));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    out
}

/// Convergents of `alpha = [0; r_1, ..., r_len]` with exact distance brackets.
pub fn convergents(quotients: &[BigUint]) -> Vec<Convergent> {
    assert!(quotients.iter().all(|r| !r.is_zero()), "partial quotients must be positive");
    let pairs = convergent_pairs(quotients);
    let Some((pa, qa)) = pairs.last().cloned() else {
        return Vec::new();
    };
    let alpha = Q::new(BigInt::from(pa), BigInt::from(qa));
    pairs
        .iter()
        .enumerate()
        .map(|(i, (p, q))| {
            let dist = (qu(q) * &alpha - qu(p)).abs();
            let next = pairs.get(i + 1);
            let scaled_dist = next.map_or(0.0, |(_, qn)| to_f64(&(&dist * qu(qn))));
            let in_bracket = quotients.get(i + 1).map(|r| {
                let lo = Q::new(BigInt::one(), BigInt::from((r + 2u32) * q));
                let hi = Q::new(BigInt::one(), BigInt::from(r * q));
                lo <= dist && dist <= hi
            });
            Convergent { p: p.clone(), q: q.clone(), scaled_dist, in_bracket }
        })
        .collect()
}

/// Rational stand-in for the irrational angle: the quotients followed by a
/// tail of ones, truncated after `tail` terms. The error is below `1/Q^2`.
pub fn alpha_approximant(quotients: &[BigUint], tail: usize) -> (BigUint, BigUint) {
    let mut all = quotients.to_vec();
    all.extend(std::iter::repeat(BigUint::one()).take(tail));
    convergent_pairs(&all).pop().expect("at least one quotient")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn qs(v: &[u64]) -> Vec<u64> {
        convergents(&big(v)).iter().map(|c| c.q.to_u64_digits().first().copied().unwrap_or(0)).collect()
    }

    #[test]
    fn golden_is_fibonacci() {
        assert_eq!(qs(&[1; 8]), vec![1, 2, 3, 5, 8, 13, 21, 34]);
    }

    #[test]
    fn silver() {
        assert_eq!(qs(&[2; 5]), vec![2, 5, 12, 29, 70]);
    }

    #[test]
    fn single_quotient() {
        assert_eq!(qs(&[7]), vec![7]);
    }

    #[test]
    fn brackets_hold() {
        let c = convergents(&big(&[3, 1, 4, 1, 5, 9, 2, 6]));
        for (k, ck) in c.iter().enumerate() {
            if k + 1 < c.len() {
                assert_eq!(ck.in_bracket, Some(true), "k = {k}");
                assert!(ck.scaled_dist > 0.49 && ck.scaled_dist <= 1.0);
            } else {
                assert_eq!(ck.in_bracket, None);
            }
        }
    }

    #[test]
    fn huge_quotients_do_not_saturate() {
        let r = vec![BigUint::one() << 200usize, BigUint::from(3u32), BigUint::one() << 300usize];
        let c = convergents(&r);
        // q_2 = 3 * 2^200 + 1 has 202 bits
        assert_eq!(c[2].q.bits(), 502);
        assert_eq!(c[0].in_bracket, Some(true));
    }
}
