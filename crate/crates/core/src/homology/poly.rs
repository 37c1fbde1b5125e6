//! Integer polynomials, ascending coefficients.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;

pub type Poly = Vec<BigInt>;

pub fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// `det(x I - A)`, monic, by Faddeev-LeVerrier; every division is exact.
pub fn charpoly(a: &IntMatrix) -> Poly {
    let n = a.dim();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = IntMatrix::zero(n);
    for k in 1..=n {
        m = a.mul(&m).add_scaled_identity(&c[n - k + 1]);
        let t = a.mul(&m).trace();
        c[n - k] = -(t / BigInt::from(k));
    }
    c
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Division by a monic polynomial: `(quotient, remainder)`.
pub fn divmod_monic(p: &Poly, d: &Poly) -> (Poly, Poly) {
    assert!(d.last().is_some_and(|c| c.is_one()), "divisor must be monic");
    let dd = degree(d);
    if p.len() <= dd {
        return (vec![BigInt::zero()], p.clone());
    }
    let mut r = p.clone();
    let mut q = vec![BigInt::zero(); p.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    r.truncate(dd.max(1));
    (trim(q), trim(r))
}

pub fn is_zero(p: &Poly) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// `p(A)` by Horner.
pub fn eval_matrix(p: &Poly, a: &IntMatrix) -> IntMatrix {
    let mut acc = IntMatrix::zero(a.dim());
    for c in p.iter().rev() {
        acc = acc.mul(a).add_scaled_identity(c);
    }
    acc
}

pub fn euler_phi(m: u64) -> u64 {
    let (mut n, mut out, mut p) = (m, m, 2);
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// `Phi_m`, from `x^m - 1 = prod_{d | m} Phi_d`.
pub fn cyclotomic(m: u64) -> Poly {
    assert!(m >= 1);
    let mut p: Poly = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m % d == 0) {
        p = divmod_monic(&p, &cyclotomic(d)).0;
    }
    p
}

/// Unit-circle structure of a monic integer polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitFactorisation {
    /// Multiplicity of the root 0.
    pub zero: usize,
    /// `(m, e)`: `Phi_m^e` divides exactly.
    pub cyclotomic: Vec<(u64, usize)>,
    /// What is left; no root of unity and no zero among its roots.
    pub rest: Poly,
}

pub fn unit_factorisation(p: &Poly) -> UnitFactorisation {
    let zero = p.iter().take_while(|c| c.is_zero()).count();
    let mut rest: Poly = p[zero..].to_vec();
    let mut cyc = Vec::new();
    // phi(m) >= sqrt(m / 2), so phi(m) <= deg forces m <= 2 deg^2
    let bound = 2 * (degree(&rest) as u64).pow(2) + 2;
    for m in 1..=bound {
        if euler_phi(m) as usize > degree(&rest) {
            continue;
        }
        let phi = cyclotomic(m);
        let mut e = 0;
        loop {
            let (q, r) = divmod_monic(&rest, &phi);
            if !is_zero(&r) || degree(&rest) < degree(&phi) {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            cyc.push((m, e));
        }
    }
    UnitFactorisation { zero, cyclotomic: cyc, rest }
}

/// Strict Schur-Cohn test: every root of `p` has modulus `< r`.
pub fn roots_inside(p: &Poly, r: &BigRational) -> bool {
    let n = degree(p);
    if n == 0 {
        return true;
    }
    // integer coefficients of v^n p(u z / v)
    let (u, v) = (r.numer().clone(), r.denom().clone());
    let mut q: Vec<BigInt> = (0..=n).map(|k| &p[k] * u.pow(k as u32) * v.pow((n - k) as u32)).collect();
    while q.len() > 1 {
        let m = q.len() - 1;
        let (a0, an) = (q[0].clone(), q[m].clone());
        if a0.abs() >= an.abs() {
            return false;
        }
        let mut next: Vec<BigInt> = (0..m).map(|j| &an * &q[j + 1] - &a0 * &q[m - 1 - j]).collect();
        let g = next.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut next {
                *c /= &g;
            }
        }
        q = next;
    }
    true
}

/// Floating-point roots by Durand-Kerner iteration.
pub fn approximate_roots(p: &Poly) -> Vec<Complex64> {
    let n = degree(p);
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n].to_f64().unwrap_or(1.0);
    let c: Vec<f64> = p.iter().map(|x| x.to_f64().unwrap_or(f64::NAN) / lead).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * z + k);
    let bound = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (bound / 2.0).max(0.5)).collect();
    for _ in 0..2000 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-6, 1e-6);
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Certified bracket `[lo, hi]` for the largest root modulus of `p`, with
/// `hi - lo <= width`.
pub fn root_modulus_bracket(p: &Poly, width: f64) -> (f64, f64) {
    if degree(p) == 0 {
        return (0.0, 0.0);
    }
    let dyadic = |x: f64, up: bool| -> BigRational {
        let s = (x.max(0.0) * (1u64 << 34) as f64).floor() as i64 + i64::from(up);
        BigRational::new(BigInt::from(s.max(0)), BigInt::from(1u64 << 34))
    };
    let est = approximate_roots(p).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let (lo, hi) = (dyadic(est - width / 4.0, false), dyadic(est + width / 4.0, true));
    let ok_lo = lo.is_zero() || !roots_inside(p, &lo);
    if ok_lo && roots_inside(p, &hi) {
        return (lo.to_f64().unwrap(), hi.to_f64().unwrap());
    }
    // fall back to bisection from the Cauchy bound
    let lead = p[degree(p)].abs();
    let cauchy = p[..degree(p)].iter().map(|c| BigRational::new(c.abs(), lead.clone())).fold(BigRational::zero(), |a, b| a.max(b))
        + BigRational::one();
    let (mut lo, mut hi) = (BigRational::zero(), cauchy);
    let w = BigRational::from_float(width).expect("finite width");
    while &hi - &lo > w {
        let mid = dyadic(((&lo + &hi) / BigRational::from_integer(2.into())).to_f64().unwrap(), false);
        if mid <= lo || mid >= hi {
            break;
        }
        if roots_inside(p, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo.to_f64().unwrap(), hi.to_f64().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn charpoly_small() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(charpoly(&a), p(&[1, -3, 1]));
        let r = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]).unwrap();
        assert_eq!(charpoly(&r), p(&[1, 0, 1]));
        let j = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]).unwrap();
        assert_eq!(charpoly(&j), p(&[-1, 3, -3, 1]));
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(degree(&cyclotomic(42)), 12);
    }

    #[test]
    fn factorisation() {
        // x^2 (x - 1)^2 (x^2 + 1) (x^2 - 3x + 1)
        let f = mul(&mul(&mul(&p(&[0, 0, 1]), &mul(&cyclotomic(1), &cyclotomic(1))), &cyclotomic(4)), &p(&[1, -3, 1]));
        let u = unit_factorisation(&f);
        assert_eq!(u.zero, 2);
        assert_eq!(u.cyclotomic, vec![(1, 2), (4, 1)]);
        assert_eq!(u.rest, p(&[1, -3, 1]));
    }

    #[test]
    fn schur_cohn() {
        let q = p(&[1, -3, 1]);
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        let r = |x: f64| BigRational::from_float(x).unwrap();
        assert!(roots_inside(&q, &r(golden_sq + 1e-9)));
        assert!(!roots_inside(&q, &r(golden_sq - 1e-9)));
        assert!(!roots_inside(&cyclotomic(4), &r(1.0)));
        assert!(roots_inside(&cyclotomic(4), &r(1.0 + 1e-12)));
    }

    #[test]
    fn bracket_width() {
        let (lo, hi) = root_modulus_bracket(&p(&[1, -3, 1]), 1e-9);
        let exact = (3.0 + 5f64.sqrt()) / 2.0;
        assert!(lo <= exact && exact <= hi && hi - lo <= 1e-9);
    }
}
