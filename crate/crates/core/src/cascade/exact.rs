//! Exact rational helpers shared by the builder and the verifier.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qu(n: &BigUint) -> Q {
    Q::from_integer(BigInt::from(n.clone()))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// `2^e` for any sign of `e`.
pub fn pow2(e: i64) -> Q {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Q::from_integer(p)
    } else {
        Q::new(BigInt::one(), p)
    }
}

pub fn floor_u(x: &Q) -> BigUint {
    assert!(!x.is_negative(), "floor_u of a negative rational");
    x.floor().to_integer().to_biguint().expect("non-negative")
}

pub fn ceil_u(x: &Q) -> BigUint {
    assert!(!x.is_negative(), "ceil_u of a negative rational");
    x.ceil().to_integer().to_biguint().expect("non-negative")
}

/// Smallest integer `s` with `s^2 >= x`.
pub fn sqrt_ceil(x: &Q) -> BigUint {
    let c = ceil_u(x);
    let mut s = c.sqrt();
    while qu(&(&s * &s)) < *x {
        s += 1u32;
    }
    s
}

/// Lower bound on `sqrt(x)` with `bits` fractional bits.
pub fn sqrt_lo(x: &Q, bits: u32) -> Q {
    let scaled = floor_u(&(x * pow2(2 * bits as i64)));
    qu(&scaled.sqrt()) * pow2(-(bits as i64))
}

/// Largest power of two not exceeding `x > 0`.
pub fn pow2_floor(x: &Q) -> Q {
    assert!(x.is_positive());
    let (n, d) = (x.numer().bits() as i64, x.denom().bits() as i64);
    let mut e = n - d;
    while pow2(e) > *x {
        e -= 1;
    }
    while pow2(e + 1) <= *x {
        e += 1;
    }
    pow2(e)
}

/// `x mod m` in `[0, m)` for a positive integer modulus.
pub fn rem_euclid(x: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from(m.clone());
    x.mod_floor(&m).to_biguint().expect("non-negative remainder")
}

/// `num / den` reduced into `[-1, 1)` modulo 2, as `f64`.
pub fn mod2_f64(num: &BigInt, den: &BigUint) -> f64 {
    let two_den = den << 1u32;
    let r = rem_euclid(num, &two_den);
    // absolute error about 2^-60; avoids reducing a huge fraction
    let shift = den.bits().saturating_sub(62) as usize;
    let v = (r >> shift).to_f64().unwrap_or(f64::NAN) / (den >> shift).to_f64().unwrap_or(f64::NAN);
    if v >= 1.0 {
        v - 2.0
    } else {
        v
    }
}

/// Signed representative of `num / den` modulo 1, in `[-1/2, 1/2)`.
pub fn signed_frac(num: &BigUint, den: &BigUint) -> Q {
    let r = num % den;
    let twice: BigUint = &r << 1u32;
    let r = BigInt::from(r);
    let d = BigInt::from(den.clone());
    if twice >= *den {
        Q::new(r - &d, d)
    } else {
        Q::new(r, d)
    }
}

/// Approximate decimal rendering that survives values far outside `f64`.
pub fn sci(x: &Q) -> String {
    let f = to_f64(x);
    if f.is_finite() && (f == 0.0 || f.abs() > 1e-300) {
        return format!("{f:e}");
    }
    let neg = x.is_negative();
    let a = x.abs();
    let l2 = a.numer().bits() as f64 - a.denom().bits() as f64;
    let shift = (l2 as i64) - 60;
    let m = to_f64(&(a * pow2(-shift)));
    let l10 = (m.log2() + shift as f64) * std::f64::consts::LOG10_2;
    let e = l10.floor();
    format!("{}{:.6}e{}", if neg { "-" } else { "" }, 10f64.powf(l10 - e), e as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_and_pow2() {
        assert_eq!(sqrt_ceil(&q(17, 1)), BigUint::from(5u32));
        assert_eq!(sqrt_ceil(&q(16, 1)), BigUint::from(4u32));
        assert_eq!(sqrt_ceil(&q(1, 4)), BigUint::from(1u32));
        assert_eq!(pow2_floor(&q(3, 1)), q(2, 1));
        assert_eq!(pow2_floor(&q(1, 3)), q(1, 4));
        assert_eq!(pow2_floor(&q(1, 4)), q(1, 4));
        let s = sqrt_lo(&q(2, 1), 30);
        assert!(s <= q(2, 1) && to_f64(&s) > 1.41421);
    }

    #[test]
    fn modular_phases() {
        let d = BigUint::from(10u32);
        assert_eq!(signed_frac(&BigUint::from(13u32), &d), q(3, 10));
        assert_eq!(signed_frac(&BigUint::from(17u32), &d), q(-3, 10));
        assert!((mod2_f64(&BigInt::from(35), &d) - (-0.5)).abs() < 1e-15);
        assert!((mod2_f64(&BigInt::from(-5), &d) - (-0.5)).abs() < 1e-15);
    }

    #[test]
    fn sci_handles_huge() {
        let x = pow2(5000);
        assert!(sci(&x).ends_with("e1505"));
        assert_eq!(sci(&q(3, 2)), "1.5e0");
    }
}
