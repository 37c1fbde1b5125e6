//! Lower bounds on entropy order from an integer action on first homology.

mod matrix;
mod poly;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::growth_order::{project_onto_family, Family, GrowthSequence};
use crate::{Error, Result};

pub use matrix::{IntMatrix, MAX_DIM};
pub use poly::{charpoly, cyclotomic, euler_phi, roots_inside, unit_factorisation, Poly, UnitFactorisation};

/// Width of the certified spectral-radius bracket.
pub const SP_TOLERANCE: f64 = 1e-9;
/// Constant in the norm inequality `||A^(n-1)|| <= 12 (1 + g(n))`.
pub const MANNING_CONSTANT: f64 = 12.0;
/// Largest entry, in bits, kept by [`power_norm_growth`].
pub const NORM_BITS: u64 = 1000;

/// Real-Jordan blocks of one eigenvalue class on the unit circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockClass {
    /// `"1"`, `"-1"`, or `"Phi_m"` for the primitive `m`-th roots of unity.
    pub label: String,
    pub order: u64,
    /// Algebraic multiplicity of the whole class.
    pub multiplicity: usize,
    /// Conjugate pairs sharing the block list (1 for real eigenvalues).
    pub copies: usize,
    /// Real-Jordan block dimensions of one copy, largest first.
    pub blocks: Vec<usize>,
}

impl BlockClass {
    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    pub fn largest(&self) -> usize {
        self.blocks.first().copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomologyAction {
    pub matrix: IntMatrix,
    /// `det(x I - A)`, ascending, as decimal strings.
    pub char_poly: Vec<String>,
    pub sp: f64,
    /// Certified `[lo, hi]` around `sp`.
    pub sp_bracket: (f64, f64),
    /// Every eigenvalue is zero or a root of unity, and at least one is not zero.
    pub sp_is_one: bool,
    pub block_profile: Vec<BlockClass>,
    pub k_r: usize,
    pub k_c: usize,
}

fn bracket(a: &IntMatrix) -> (UnitFactorisation, (f64, f64)) {
    let u = unit_factorisation(&charpoly(a));
    let (lo, hi) = poly::root_modulus_bracket(&u.rest, SP_TOLERANCE);
    let unit = if u.cyclotomic.is_empty() { 0.0 } else { 1.0 };
    (u, (lo.max(unit), hi.max(unit)))
}

/// Certified bracket for the spectral radius, of width at most [`SP_TOLERANCE`].
pub fn spectral_bracket(a: &IntMatrix) -> (f64, f64) {
    bracket(a).1
}

/// Largest eigenvalue modulus; exactly 1 when every nonzero eigenvalue is a
/// root of unity.
pub fn spectral_radius(a: &IntMatrix) -> f64 {
    let (u, (lo, hi)) = bracket(a);
    if poly::degree(&u.rest) == 0 {
        return lo;
    }
    (lo + hi) / 2.0
}

fn rank_drops(n: &IntMatrix, steps: usize) -> Vec<usize> {
    let d = n.dim();
    let mut ranks = vec![d];
    let mut p = IntMatrix::identity(d);
    for _ in 0..steps {
        p = p.mul(n);
        let r = p.rank();
        ranks.push(r);
        if r == *ranks.get(ranks.len() - 2).unwrap() {
            break;
        }
    }
    ranks.windows(2).map(|w| w[0] - w[1]).collect()
}

/// Block sizes from `ge[j]` = number of blocks of size `>= j+1`.
fn sizes(ge: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for j in (0..ge.len()).rev() {
        let exactly = ge[j] - ge.get(j + 1).copied().unwrap_or(0);
        out.extend(std::iter::repeat(j + 1).take(exactly));
    }
    out
}

/// Real-Jordan block dimensions at each root-of-unity class, from exact rank
/// sequences of `(A -+ I)^j` and `Phi_m(A)^j`.
pub fn block_profile(a: &IntMatrix) -> Vec<BlockClass> {
    let d = a.dim();
    let u = unit_factorisation(&charpoly(a));
    u.cyclotomic
        .iter()
        .map(|&(m, e)| {
            let phi = euler_phi(m) as usize;
            let n = poly::eval_matrix(&cyclotomic(m), a);
            let drops = rank_drops(&n, d);
            // each conjugate root carries the same Jordan structure
            let per_root: Vec<usize> = drops.iter().map(|k| k / phi).filter(|&k| k > 0).collect();
            let complex = m > 2;
            let mut blocks = sizes(&per_root);
            if complex {
                blocks.iter_mut().for_each(|b| *b *= 2);
            }
            let class = BlockClass {
                label: match m {
                    1 => "1".into(),
                    2 => "-1".into(),
                    _ => format!("Phi_{m}"),
                },
                order: m,
                multiplicity: e * phi,
                copies: if complex { phi / 2 } else { 1 },
                blocks,
            };
            debug_assert_eq!(class.blocks.iter().sum::<usize>() * class.copies, class.multiplicity);
            class
        })
        .collect()
}

fn k_values(profile: &[BlockClass]) -> (usize, usize) {
    let k_r = profile.iter().filter(|c| c.is_real()).map(BlockClass::largest).max().unwrap_or(0);
    let k_c = profile.iter().filter(|c| !c.is_real()).map(BlockClass::largest).max().unwrap_or(0);
    (k_r, k_c)
}

pub fn analyze(a: &IntMatrix) -> HomologyAction {
    let (u, sp_bracket) = bracket(a);
    let sp_is_one = poly::degree(&u.rest) == 0 && !u.cyclotomic.is_empty();
    let block_profile = block_profile(a);
    let (k_r, k_c) = k_values(&block_profile);
    HomologyAction {
        matrix: a.clone(),
        char_poly: charpoly(a).iter().map(|c| c.to_string()).collect(),
        sp: spectral_radius(a),
        sp_bracket,
        sp_is_one,
        block_profile,
        k_r,
        k_c,
    }
}

/// `max{k_R, k_C / 2} - 1`, with `k_C` in real-Jordan dimension.
pub fn shub_exponent(a: &IntMatrix) -> Result<Rational64> {
    let h = analyze(a);
    if !h.sp_is_one {
        if h.sp_bracket.0 > 1.0 {
            return Err(Error::Hyperbolic(h.sp));
        }
        return Err(Error::Invalid("spectral radius below 1: the action is not invertible".into()));
    }
    let k = Rational64::from_integer(h.k_r as i64).max(Rational64::new(h.k_c as i64, 2));
    Ok(k - Rational64::one())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerGrowth {
    /// `n -> ||A^(n-1)||`, max absolute entry.
    pub sequence: GrowthSequence<f64>,
    /// Polynomial projection of the sequence.
    pub degree: f64,
    /// Last `n` kept; below the request when entries exceed [`NORM_BITS`].
    pub horizon: usize,
}

/// Exact norms of the powers, fitted against the polynomial family.
pub fn power_norm_growth(a: &IntMatrix, n_max: usize) -> Result<PowerGrowth> {
    if n_max < 32 {
        return Err(Error::Invalid(format!("n_max must be at least 32, got {n_max}")));
    }
    let mut values = Vec::with_capacity(n_max);
    let mut p = IntMatrix::identity(a.dim());
    for _ in 0..n_max {
        let norm = p.max_norm();
        if norm.bits() > NORM_BITS {
            break;
        }
        values.push(norm.to_f64().unwrap_or(f64::INFINITY));
        p = p.mul(a);
    }
    let horizon = values.len();
    let sequence = GrowthSequence::new(values)?;
    let degree = project_onto_family(&sequence, &Family::Polynomial);
    Ok(PowerGrowth { sequence, degree, horizon })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManningReport {
    pub eps: f64,
    pub window: usize,
    pub pass: bool,
    /// First `n` with `||A^(n-1)|| > 12 (1 + g(n))`.
    pub first_failure: Option<usize>,
    /// `min_n (12 (1 + g(n)) - ||A^(n-1)||) / (12 (1 + g(n)))`. A greedy
    /// spanning count only over-estimates the minimum, so this is the slack
    /// left after the greedy inflation.
    pub min_slack: f64,
}

/// Pointwise `||A^(n-1)|| <= 12 (1 + g(n))` on the curve's window.
pub fn manning_check(a: &IntMatrix, curve: &GrowthSequence<f64>, eps: f64) -> ManningReport {
    let window = curve.window();
    let mut p = IntMatrix::identity(a.dim());
    let mut first_failure = None;
    let mut min_slack = f64::INFINITY;
    for n in 1..=window {
        let norm = p.max_norm().to_f64().unwrap_or(f64::INFINITY);
        let rhs = MANNING_CONSTANT * (1.0 + curve.at(n));
        min_slack = min_slack.min((rhs - norm) / rhs);
        if norm > rhs && first_failure.is_none() {
            first_failure = Some(n);
        }
        p = p.mul(a);
    }
    ManningReport { eps, window, pass: first_failure.is_none(), first_failure, min_slack }
}

/// Matrices with spectral radius 1, sizes 2 to 6.
pub fn catalog() -> Vec<(&'static str, IntMatrix)> {
    let m = |rows: &[&[i64]]| IntMatrix::from_i64(rows).expect("catalog matrix");
    vec![
        ("identity2", IntMatrix::identity(2)),
        ("dehn_twist", m(&[&[1, 1], &[0, 1]])),
        ("quarter_turn", m(&[&[0, -1], &[1, 0]])),
        ("negative_twist", m(&[&[-1, -1], &[0, -1]])),
        ("jordan3", m(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]])),
        ("twist_and_flip", m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -1]])),
        ("rotation_block4", m(&[&[0, -1, 1, 0], &[1, 0, 0, 1], &[0, 0, 0, -1], &[0, 0, 1, 0]])),
        (
            "jordan4_flip",
            m(&[&[1, 1, 0, 0, 0], &[0, 1, 1, 0, 0], &[0, 0, 1, 1, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, -1]]),
        ),
        ("cube_root_cubed", companion(&cube_of_phi3())),
        (
            "six_cycle",
            m(&[
                &[0, 0, 0, 0, 0, 1],
                &[1, 0, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
            ]),
        ),
    ]
}

fn cube_of_phi3() -> Poly {
    let p = cyclotomic(3);
    poly::mul(&poly::mul(&p, &p), &p)
}

/// Companion matrix of a monic polynomial.
pub fn companion(p: &Poly) -> IntMatrix {
    let n = poly::degree(p);
    let mut rows = vec![vec![BigInt::from(0); n]; n];
    for i in 1..n {
        rows[i][i - 1] = BigInt::one();
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[n - 1] = -p[i].clone();
    }
    IntMatrix::new(rows).expect("companion matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> IntMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(spectral_radius(&IntMatrix::identity(2)), 1.0);
        assert_eq!(spectral_radius(&m("1,1;0,1")), 1.0);
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((spectral_radius(&m("2,1;1,1")) - golden_sq).abs() < 1e-9);
        let (lo, hi) = spectral_bracket(&m("2,1;1,1"));
        assert!(lo <= golden_sq && golden_sq <= hi);
    }

    #[test]
    fn profiles() {
        let twist = block_profile(&m("1,1;0,1"));
        assert_eq!(twist.len(), 1);
        assert_eq!((twist[0].label.as_str(), twist[0].blocks.clone()), ("1", vec![2]));
        let id = block_profile(&IntMatrix::identity(3));
        assert_eq!(id[0].blocks, vec![1, 1, 1]);
        let rot = block_profile(&m("0,-1;1,0"));
        assert_eq!((rot[0].label.as_str(), rot[0].blocks.clone(), rot[0].copies), ("Phi_4", vec![2], 1));
        let a = analyze(&m("0,-1;1,0"));
        assert_eq!((a.k_r, a.k_c), (0, 2));
    }

    #[test]
    fn exponents() {
        assert_eq!(shub_exponent(&IntMatrix::identity(3)).unwrap(), Rational64::from_integer(0));
        assert_eq!(shub_exponent(&m("1,1;0,1")).unwrap(), Rational64::from_integer(1));
        assert_eq!(shub_exponent(&m("0,-1;1,0")).unwrap(), Rational64::from_integer(0));
        assert!(matches!(shub_exponent(&m("2,1;1,1")), Err(Error::Hyperbolic(_))));
    }

    #[test]
    fn companion_has_its_polynomial() {
        let p = cube_of_phi3();
        assert_eq!(charpoly(&companion(&p)), p);
    }
}
