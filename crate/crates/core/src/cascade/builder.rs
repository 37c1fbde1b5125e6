//! Inductive choice of `(Delta_k, m_k, b_k, q_{k+1})`, stage by stage.
//!
//! Each stage first fixes the offset increment `Delta_k = b_k q_k q_{k+1}`
//! (as small as the lower-bound inequalities allow), then the cut point
//! `m_k`, then the slope `b_k q_k` below every upper-bound cap, and finally
//! the next denominator through a partial quotient.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::exact::{pow2, pow2_floor, q, qu, sqrt_ceil, sqrt_lo, Q};
use super::params::CascadeParams;
use super::target::Target;
use super::{LAMBDA_MEASURE, SEPARATION_EPS};
use crate::growth_order::GrowthSequence;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BuildOptions {
    pub first_quotient: u64,
    /// Stages `k <= witness_stages` enforce the separation inequality.
    pub witness_stages: usize,
    /// Stage whose increment is raised so the orbit graph wraps vertically.
    pub wrap_stage: Option<usize>,
    pub wrap_min_q: u64,
    pub max_cut_bits: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { first_quotient: 1, witness_stages: 3, wrap_stage: Some(3), wrap_min_q: 40, max_cut_bits: 1 << 15 }
    }
}

fn fail(stage: usize, inequality: &str, detail: impl Into<String>) -> Error {
    Error::Construction { stage, inequality: inequality.into(), detail: detail.into() }
}

fn qmin(a: Q, b: Q) -> Q {
    if b < a {
        b
    } else {
        a
    }
}

/// Build with default options, dropping the wrap requirement when it makes
/// the cut points infeasible.
pub fn build_cascade(target: Target, stages: usize) -> Result<CascadeParams> {
    match build_with(target, stages, &BuildOptions::default()) {
        Err(Error::Construction { .. }) => build_with(target, stages, &BuildOptions { wrap_stage: None, ..Default::default() }),
        r => r,
    }
}

/// Recognise a stored target curve. Bounded curves are rejected.
pub fn target_from_sequence(seq: &GrowthSequence<f64>) -> Result<Target> {
    if seq.is_constant() {
        return Err(Error::Invalid("target must be unbounded; got a constant sequence".into()));
    }
    let candidates = [Target::Log2, Target::Root { degree: 2 }, Target::Root { degree: 3 }, Target::Root { degree: 4 }];
    let fits = |t: &Target| {
        seq.values().iter().enumerate().all(|(i, &v)| {
            let a = t.eval((i + 1) as f64);
            (v - a).abs() <= 1e-9 * a.max(1.0)
        })
    };
    candidates
        .into_iter()
        .find(fits)
        .ok_or_else(|| Error::Invalid("target curve matches neither log2(n+2) nor n^(1/d), d <= 4".into()))
}

pub fn build_with(target: Target, stages: usize, opts: &BuildOptions) -> Result<CascadeParams> {
    if stages < 2 {
        return Err(Error::Invalid("a cascade needs at least two stages".into()));
    }
    if opts.first_quotient == 0 {
        return Err(Error::Invalid("partial quotients must be positive".into()));
    }
    let sep = {
        let (e, a) = (q(SEPARATION_EPS.0, SEPARATION_EPS.1), q(LAMBDA_MEASURE.0, LAMBDA_MEASURE.1));
        q(4, 1) * &e * &e / (&a * &a)
    };
    let mut quotients = vec![BigUint::from(opts.first_quotient)];
    let (mut q_prev, mut q_cur) = (BigUint::one(), BigUint::from(opts.first_quotient));
    let mut d = Q::zero();
    let mut beta_prev: Option<Q> = None;
    let mut m_prev = BigUint::zero();
    let mut n_prev: Option<BigUint> = None;
    let (mut amplitudes, mut cutpoints) = (Vec::new(), Vec::new());

    for k in 1..=stages {
        let qc = qu(&q_cur);
        let mut lower = q(4, 1) * &d * &d;
        if k <= opts.witness_stages {
            lower = lower.max(&sep * &qc * &qc);
        }
        if opts.wrap_stage == Some(k) {
            if q_cur < BigUint::from(opts.wrap_min_q) {
                return Err(fail(k, "WRAP", format!("q_{k} = {q_cur} below {}", opts.wrap_min_q)));
            }
            lower = lower.max(q(4, 1) * &qc);
        }
        let delta = Q::new((lower * q(8, 1)).floor().to_integer() + BigInt::one(), BigInt::from(8));
        let d_next = &d + &delta;
        let margin = pow2(-(k as i64));
        let floor = (&m_prev + 1u32).max(BigUint::from(2u32));
        let m = target
            .min_arg(&(&d_next + &margin), &floor, opts.max_cut_bits)
            .map_err(|e| fail(k, "CUB4", format!("no admissible m_{k}: {e}")))?;
        let mq = qu(&m);

        let mut cap = match &beta_prev {
            None => q(1, 4),
            Some(b) => b / q(2, 1),
        };
        if k >= 2 {
            cap = qmin(cap, &margin / (q(2, 1) * qu(&m_prev)));
        }
        if let Some(np) = &n_prev {
            cap = qmin(cap, &margin / qu(np));
        }
        let m1 = qu(&(&m - 1u32)).max(Q::one());
        cap = qmin(cap, &delta / (q(2, 1) * &m1));
        let root = sqrt_lo(&delta, 32);
        cap = qmin(cap, &root / (q(2, 1) * &mq));
        if let Some(np) = &n_prev {
            cap = qmin(cap, &root / qu(&(np + 1u32)));
        }
        let first = &m_prev + 1u32;
        for n in [first.clone(), &m - 1u32] {
            if n >= first && n < m {
                let room = target.lower(&n) - &d - &margin;
                if room <= Q::zero() {
                    return Err(fail(k, "CUB3", format!("no slope room at n = {n}")));
                }
                cap = qmin(cap, room / (q(2, 1) * qu(&n)));
            }
        }
        if opts.wrap_stage == Some(k + 1) {
            cap = qmin(cap, &delta / Q::from_integer(BigInt::from(opts.wrap_min_q)));
        }
        let beta_t = pow2_floor(&cap);
        let want = (&delta / &beta_t - qu(&q_prev)) / &qc;
        let r = want.ceil().to_integer().to_biguint().unwrap_or_default().max(BigUint::one());
        let q_next = &r * &q_cur + &q_prev;
        let b = &delta / (&qc * qu(&q_next));
        let beta = &delta / qu(&q_next);
        let n_ceil = sqrt_ceil(&(qu(&q_next) / &beta));

        quotients.push(r);
        amplitudes.push(b);
        cutpoints.push(m.clone());
        d = d_next;
        beta_prev = Some(beta);
        m_prev = m;
        n_prev = Some(n_ceil);
        q_prev = std::mem::replace(&mut q_cur, q_next);
    }
    Ok(CascadeParams::assemble(target, quotients, amplitudes, cutpoints, opts.witness_stages, opts.wrap_stage))
}
