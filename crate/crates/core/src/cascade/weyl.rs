//! Weyl sums of `phi_k = b_k cos(2 pi q_k x)` along the rotation orbit.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::convergents::alpha_approximant;
use super::exact::{mod2_f64, qu, signed_frac, to_f64, Q};
use super::params::CascadeParams;
use super::ALPHA_TAIL;

/// Neumaier-compensated accumulator.
#[derive(Default, Clone, Copy)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(self) -> f64 {
        self.s + self.c
    }
}

/// `S_n(phi)(x) = sum_{j<n} phi(x + j alpha)` by direct summation, or the
/// same sum of `phi'` when `derivative` is set.
pub fn weyl_sum(b: f64, q: u64, alpha: f64, n: usize, x: f64, derivative: bool) -> f64 {
    let step = (q as f64 * alpha).rem_euclid(1.0);
    let start = (q as f64 * x).rem_euclid(1.0);
    let tau = std::f64::consts::TAU;
    let mut acc = Sum::default();
    for j in 0..n {
        let phase = (start + (j as f64 * step).rem_euclid(1.0)).rem_euclid(1.0);
        if derivative {
            acc.add(-tau * b * q as f64 * (tau * phase).sin());
        } else {
            acc.add(b * (tau * phase).cos());
        }
    }
    acc.value()
}

/// Exact phase data of one stage against the rational angle `P / Qn`.
#[derive(Debug, Clone)]
pub(crate) struct StagePhase {
    pub q: BigUint,
    /// Signed residue: `q alpha = rho / Qn` mod 1 with `|rho| <= Qn / 2`.
    pub rho: BigInt,
    pub den: BigUint,
    /// Signed `theta = q alpha` mod 1 in `[-1/2, 1/2)`, as `f64` (may underflow).
    pub theta: f64,
    /// `theta * q_next`, an O(1) quantity.
    pub scaled: f64,
    /// `Delta = b q q_next`.
    pub delta: f64,
    pub b: f64,
    pub beta: f64,
}

impl StagePhase {
    pub fn new(params: &CascadeParams, k: usize, alpha: &(BigUint, BigUint)) -> Self {
        let (p, den) = alpha;
        let q = params.q(k).clone();
        let theta_q = signed_frac(&(&q * p), den);
        let rho = (&theta_q * qu(den)).to_integer();
        let q_next = qu(params.q(k + 1));
        let b = params.b(k);
        StagePhase {
            theta: to_f64(&theta_q),
            scaled: to_f64(&(&theta_q * &q_next)),
            delta: to_f64(&params.increment(k)),
            b: to_f64(b),
            beta: to_f64(&(b * qu(&q))),
            q,
            rho,
            den: den.clone(),
        }
    }

    /// `t theta` reduced modulo 2, in `[-1, 1)`.
    pub fn times_mod2(&self, t: &BigUint) -> f64 {
        mod2_f64(&(BigInt::from(t.clone()) * &self.rho), &self.den)
    }

    /// `b / sin(pi theta)` without forming either tiny factor.
    pub fn amplitude(&self) -> f64 {
        // b / sin(pi theta) = Delta / (q * pi * scaled * sinc(theta))
        let qf = to_f64(&qu(&self.q));
        self.delta / (qf * std::f64::consts::PI * self.scaled * sinc(self.theta))
    }

    /// `frac(q * i / g)` exactly, for grid points `i / g`.
    pub fn grid_phase(&self, i: u64, g: u64) -> f64 {
        let qm = (&self.q % g).to_u64().expect("below grid size") as u128;
        ((qm * i as u128) % g as u128) as f64 / g as f64
    }
}

/// `sin(pi x) / (pi x)`.
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - (std::f64::consts::PI * x).powi(2) / 6.0
    } else {
        (std::f64::consts::PI * x).sin() / (std::f64::consts::PI * x)
    }
}

/// Closed form `S_n(phi_k')(x)` on the grid point `x = i / g`:
/// `-2 pi b q sin(2 pi q x + pi (n-1) theta) sin(pi n theta) / sin(pi theta)`.
pub(crate) struct DerivativeSums<'a> {
    stage: &'a StagePhase,
    /// `(n, sin(pi n theta), (n-1) theta mod 2)` per requested `n`.
    rows: Vec<(f64, f64, f64)>,
}

impl<'a> DerivativeSums<'a> {
    pub fn new(stage: &'a StagePhase, ns: &[BigUint]) -> Self {
        let pi = std::f64::consts::PI;
        let rows = ns
            .iter()
            .map(|n| {
                let z = stage.times_mod2(n);
                let shift = if n.is_zero() { 0.0 } else { stage.times_mod2(&(n - 1u32)) };
                (to_f64(&qu(n)), (pi * z).sin(), shift)
            })
            .collect();
        DerivativeSums { stage, rows }
    }

    /// `|S_n(phi')|` for row `r` at grid phase `xq = frac(q x)`.
    pub fn abs_at(&self, r: usize, xq: f64) -> f64 {
        let (_, sn, shift) = self.rows[r];
        let pi = std::f64::consts::PI;
        let amp = 2.0 * pi * to_f64(&qu(&self.stage.q)) * self.stage.amplitude();
        (amp * (2.0 * pi * xq + pi * shift).sin() * sn).abs()
    }

    pub fn n(&self, r: usize) -> f64 {
        self.rows[r].0
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }
}

/// Outcome of one lemma on one stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylCheck {
    pub stage: usize,
    pub lemma: String,
    pub grid: u64,
    pub n_values: usize,
    /// Largest `|S_n(phi')| / bound` seen.
    pub max_ratio: f64,
    pub pass: bool,
}

fn log_spaced(max: &BigUint, count: usize) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = (1..=count.min(64) as u64).map(BigUint::from).filter(|n| n <= max).collect();
    let bits = max.bits();
    if bits > 6 {
        for i in 0..count {
            let e = 6.0 + (bits as f64 - 6.0) * i as f64 / (count - 1).max(1) as f64;
            let whole = e.floor() as u64;
            let frac = ((e - whole as f64).exp2() * 1024.0) as u64;
            let n = (BigUint::from(frac) << whole as usize) >> 10usize;
            if &n <= max && !n.is_zero() {
                out.push(n);
            }
        }
    }
    out.push(max.clone());
    out.sort();
    out.dedup();
    out
}

/// Both Weyl-sum lemmas for stage `k` on the grid `x = i / grid`:
/// `|S_n(phi_k')| <= 4 pi b_k q_k q_{k+1}` for all `n`, and
/// `|S_n(phi_k')| <= 2 pi b_k q_k n + 1` for `n <= sqrt(q_{k+1}) / (pi sqrt(2 b_k q_k))`.
pub fn weyl_grid_check(params: &CascadeParams, k: usize, grid: u64) -> Vec<WeylCheck> {
    let alpha = alpha_approximant(&params.partial_quotients, ALPHA_TAIL);
    let stage = StagePhase::new(params, k, &alpha);
    let pi = std::f64::consts::PI;

    // all n: the maximum sits near n theta = 1/2, so sample a full period
    let q_next = params.q(k + 1);
    let mut ns1 = log_spaced(&(q_next * 2u32), 48);
    ns1.extend((1..=16u32).map(|j| q_next * j / 16u32));
    ns1.retain(|n| !n.is_zero());
    let rows1 = DerivativeSums::new(&stage, &ns1);
    let bound1 = 4.0 * pi * stage.delta;

    // linear range
    let beta = params.b(k) * qu(params.q(k));
    let lim_sq = qu(q_next) / (Q::from_integer(BigInt::from(2)) * &beta) / Q::from_float(pi * pi).expect("finite");
    let lim = lim_sq.floor().to_integer().to_biguint().unwrap_or_default().sqrt();
    let ns2 = if lim.is_zero() { Vec::new() } else { log_spaced(&lim, 48) };
    let rows2 = DerivativeSums::new(&stage, &ns2);

    let sweep = |rows: &DerivativeSums, bound: &(dyn Fn(f64) -> f64 + Sync)| -> f64 {
        use rayon::prelude::*;
        (0..grid)
            .into_par_iter()
            .map(|i| {
                let xq = stage.grid_phase(i, grid);
                (0..rows.len()).map(|r| rows.abs_at(r, xq) / bound(rows.n(r))).fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    };
    let r1 = sweep(&rows1, &|_| bound1);
    let beta_f = stage.beta;
    let r2 = sweep(&rows2, &|n| 2.0 * pi * beta_f * n + 1.0);
    vec![
        WeylCheck { stage: k, lemma: "bounded".into(), grid, n_values: rows1.len(), max_ratio: r1, pass: r1 <= 1.0 },
        WeylCheck { stage: k, lemma: "linear".into(), grid, n_values: rows2.len(), max_ratio: r2, pass: r2 <= 1.0 },
    ]
}
