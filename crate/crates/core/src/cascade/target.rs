//! Symbolic targets `a(n)`. Cut points grow far beyond any stored window, so
//! the builder needs certified comparisons at arbitrary integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::exact::{pow2, qu, Q};
use crate::growth_order::GrowthSequence;
use crate::{Error, Result};

/// Guard on the `f64` part of the logarithm bound.
const LOG_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// `log2(n + 2)`
    Log2,
    /// `n^(1/degree)`
    Root { degree: u32 },
}

impl Target {
    pub fn eval(&self, n: f64) -> f64 {
        match *self {
            Target::Log2 => (n + 2.0).log2(),
            Target::Root { degree } => n.powf(1.0 / degree as f64),
        }
    }

    /// Certified lower bound on `a(n)`.
    pub fn lower(&self, n: &BigUint) -> Q {
        match *self {
            Target::Log2 => {
                let big = n + 2u32;
                let bits = big.bits() as i64;
                let shift = (bits - 64).max(0);
                let top = (&big >> shift as usize).to_u64().expect("64-bit window");
                let frac = (top as f64).log2() - LOG_GUARD;
                Q::from_float(frac).expect("finite") + Q::from_integer(BigInt::from(shift))
            }
            Target::Root { degree } => {
                let scaled: BigUint = n << (32 * degree as usize);
                qu(&scaled.nth_root(degree)) * pow2(-32)
            }
        }
    }

    /// Certified `a(n) >= t`; may answer `false` inside the guard band.
    pub fn at_least(&self, n: &BigUint, t: &Q) -> bool {
        if !t.is_positive() {
            return true;
        }
        match *self {
            Target::Log2 => self.lower(n) >= *t,
            Target::Root { degree } => {
                let (u, v) = (t.numer().magnitude(), t.denom().magnitude());
                n * v.pow(degree) >= u.pow(degree)
            }
        }
    }

    /// Certified `a(n) > t`.
    pub fn exceeds(&self, n: &BigUint, t: &Q) -> bool {
        if t.is_negative() {
            return true;
        }
        match *self {
            Target::Log2 => self.lower(n) > *t,
            Target::Root { degree } => {
                let (u, v) = (t.numer().magnitude(), t.denom().magnitude());
                n * v.pow(degree) > u.pow(degree)
            }
        }
    }

    /// Smallest `n >= floor` with `a(n) >= t`, refusing answers wider than `max_bits`.
    pub fn min_arg(&self, t: &Q, floor: &BigUint, max_bits: u64) -> Result<BigUint> {
        if self.at_least(floor, t) {
            return Ok(floor.clone());
        }
        let approx_bits = match *self {
            Target::Log2 => t.to_f64().unwrap_or(f64::INFINITY),
            Target::Root { degree } => t.to_f64().unwrap_or(f64::INFINITY).log2() * degree as f64,
        };
        if !(approx_bits < max_bits as f64) {
            return Err(Error::Invalid(format!("cut point would need about {approx_bits:.3e} bits")));
        }
        let mut hi = floor.clone().max(BigUint::one());
        while !self.at_least(&hi, t) {
            hi <<= 1u32;
        }
        let mut lo = floor.clone();
        while &hi - &lo > BigUint::one() {
            let mid = (&lo + &hi) >> 1u32;
            if self.at_least(&mid, t) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    pub fn sequence(&self, window: usize) -> Result<GrowthSequence<f64>> {
        GrowthSequence::new((1..=window).map(|n| self.eval(n as f64)).collect())
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Log2 => f.write_str("log2"),
            Target::Root { degree } => write!(f, "root{degree}"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "log2" || s == "log2(n+2)" {
            return Ok(Target::Log2);
        }
        let degree = s
            .strip_prefix("root")
            .or_else(|| s.strip_prefix("n^1/"))
            .and_then(|d| d.parse::<u32>().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Parse(format!("unknown target {s:?}; expected log2 or rootD")))?;
        Ok(Target::Root { degree })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::exact::q;

    #[test]
    fn log_bounds_bracket() {
        let t = Target::Log2;
        for n in [1u64, 2, 6, 1000, 1 << 40] {
            let lo = t.lower(&BigUint::from(n)).to_f64().unwrap();
            let exact = ((n + 2) as f64).log2();
            assert!(lo <= exact && exact - lo < 1e-9, "n = {n}");
        }
        let huge = BigUint::one() << 5000usize;
        assert!((t.lower(&huge).to_f64().unwrap() - 5000.0).abs() < 1e-9);
    }

    #[test]
    fn root_is_exact() {
        let t = Target::Root { degree: 4 };
        assert!(t.at_least(&BigUint::from(16u32), &q(2, 1)));
        assert!(!t.exceeds(&BigUint::from(16u32), &q(2, 1)));
        assert!(!t.at_least(&BigUint::from(15u32), &q(2, 1)));
        assert_eq!(t.min_arg(&q(3, 1), &BigUint::one(), 64).unwrap(), BigUint::from(81u32));
    }

    #[test]
    fn log_min_arg() {
        let t = Target::Log2;
        // exact hit at m = 1022 sits inside the guard band
        assert_eq!(t.min_arg(&q(10, 1), &BigUint::one(), 64).unwrap(), BigUint::from(1023u32));
        assert!(t.min_arg(&q(1 << 40, 1), &BigUint::one(), 1 << 20).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["log2", "root4", "root6"] {
            assert_eq!(s.parse::<Target>().unwrap().to_string(), s);
        }
        assert!("sqrt".parse::<Target>().is_err());
    }
}
