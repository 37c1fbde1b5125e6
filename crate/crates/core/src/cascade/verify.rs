//! Independent re-check of built parameters.
//!
//! Everything is recomputed from the partial quotients, amplitudes and cut
//! points; the derived fields stored in the parameters are only compared
//! against the recomputation.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::convergents::alpha_approximant;
use super::exact::{pow2, qu, sci, Q};
use super::params::CascadeParams;
use super::weyl::{weyl_grid_check, WeylCheck};
use super::witness::{grid_visit_witness, lambda_witness, VisitReport, WitnessReport};
use super::{ALPHA_TAIL, LAMBDA_MEASURE, SLACK_FACTOR};
use crate::{Error, Result};

/// Grid of the transitivity surrogate.
pub const VISIT_CELLS: u64 = 20;
/// Times sampled by the transitivity surrogate; the horizon is `q_{K+1}`.
pub const VISIT_SAMPLES: u64 = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertEntry {
    pub id: String,
    pub stage: usize,
    pub lhs: String,
    pub rhs: String,
    /// `(rhs - lhs) / max(|lhs|, |rhs|)`; negative means violated.
    pub slack: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub slack_factor: f64,
    pub entries: Vec<CertEntry>,
    pub weyl: Vec<WeylCheck>,
    pub witnesses: Vec<WitnessReport>,
    /// Reported separately; not part of `all_pass`.
    pub transitivity: Option<VisitReport>,
    pub all_pass: bool,
}

impl Certificate {
    pub fn failures(&self) -> Vec<&CertEntry> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }

    /// At least one entry with this id, and all of them pass.
    pub fn passes(&self, id: &str) -> bool {
        let mut it = self.entries.iter().filter(|e| e.id == id).peekable();
        it.peek().is_some() && it.all(|e| e.pass)
    }

    pub fn ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.entries.iter().map(|e| e.id.clone()).collect();
        ids.dedup();
        ids
    }
}

fn rel(lhs: &Q, rhs: &Q) -> f64 {
    let scale = lhs.abs().max(rhs.abs());
    if scale.is_zero() {
        return 0.0;
    }
    let s = (rhs - lhs) / scale;
    s.to_f64().unwrap_or(if s.is_negative() { -1.0 } else { 1.0 })
}

fn entry(id: &str, stage: usize, lhs: &Q, rhs: &Q, pass: bool) -> CertEntry {
    CertEntry { id: id.into(), stage, lhs: sci(lhs), rhs: sci(rhs), slack: rel(lhs, rhs), pass }
}

fn le(id: &str, stage: usize, lhs: &Q, rhs: &Q) -> CertEntry {
    entry(id, stage, lhs, rhs, lhs <= rhs)
}

fn lt(id: &str, stage: usize, lhs: &Q, rhs: &Q) -> CertEntry {
    entry(id, stage, lhs, rhs, lhs < rhs)
}

fn int_entry(id: &str, stage: usize, lhs: &BigUint, rhs: &BigUint, pass: bool) -> CertEntry {
    entry(id, stage, &qu(lhs), &qu(rhs), pass)
}

struct Raw {
    q: Vec<BigUint>,
    p: Vec<BigUint>,
    beta: Vec<Q>,
    delta: Vec<Q>,
    /// `D_1..D_{K+1}`
    offsets: Vec<Q>,
    /// `C_1..C_K`
    slopes: Vec<Q>,
}

impl Raw {
    fn new(params: &CascadeParams) -> Raw {
        let k = params.stages();
        let (mut p, mut q) = (vec![BigUint::zero()], vec![BigUint::one()]);
        let (mut pm, mut qm) = (BigUint::one(), BigUint::zero());
        for r in &params.partial_quotients {
            let pn = r * p.last().unwrap() + &pm;
            let qn = r * q.last().unwrap() + &qm;
            pm = p.last().unwrap().clone();
            qm = q.last().unwrap().clone();
            p.push(pn);
            q.push(qn);
        }
        // index 0 is q_0; beta_k uses q[k]
        let beta: Vec<Q> = (1..=k).map(|i| &params.amplitudes[i - 1] * qu(&q[i])).collect();
        let delta: Vec<Q> = (1..=k).map(|i| &beta[i - 1] * qu(&q[i + 1])).collect();
        let mut offsets = vec![Q::zero()];
        for d in &delta {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut slopes = vec![Q::zero(); k];
        let mut acc = Q::zero();
        for i in (0..k).rev() {
            acc += &beta[i];
            slopes[i] = acc.clone();
        }
        Raw { q, p, beta, delta, offsets, slopes }
    }

    /// `e(n)` on the piece `m_{k-1} < n < m_k`.
    fn env(&self, k: usize, n: &BigUint) -> Q {
        &self.slopes[k - 1] * qu(n) + &self.offsets[k - 1]
    }
}

/// Re-derive every inequality, check both Weyl-sum lemmas on `x = i/grid`,
/// and run the separation and grid-visit witnesses at scale `eps`.
pub fn verify_bounds(params: &CascadeParams, grid: u64, eps: f64) -> Result<Certificate> {
    let mut cert = inequalities(params, eps)?;
    let k_max = params.stages();
    let mut weyl = Vec::new();
    if grid > 0 {
        for k in 1..=k_max {
            weyl.extend(weyl_grid_check(params, k, grid));
        }
    }
    let clb3_ok = |k: usize| cert.entries.iter().any(|e| e.id == "CLB3" && e.stage == k && e.pass);
    let witnesses: Vec<WitnessReport> =
        (1..=params.witness_stages.min(k_max)).filter(|&k| clb3_ok(k)).map(|k| lambda_witness(params, k, eps)).collect();
    let transitivity = Some(grid_visit_witness(params, VISIT_CELLS, params.q(k_max + 1), VISIT_SAMPLES));
    cert.all_pass = cert.all_pass && weyl.iter().all(|w| w.pass) && witnesses.iter().all(|w| w.pass);
    cert.weyl = weyl;
    cert.witnesses = witnesses;
    cert.transitivity = transitivity;
    Ok(cert)
}

/// The exact part of [`verify_bounds`]: no grids, no witnesses.
pub fn inequalities(params: &CascadeParams, eps: f64) -> Result<Certificate> {
    let k_max = params.stages();
    if k_max < 1
        || params.partial_quotients.len() != k_max + 1
        || params.cutpoints.len() != k_max
        || params.convergents.len() != k_max + 1
    {
        return Err(Error::Invalid("inconsistent stage counts in parameters".into()));
    }
    if params.partial_quotients.iter().any(|r| r.is_zero()) || params.amplitudes.iter().any(|b| !b.is_positive()) {
        return Err(Error::Invalid("quotients and amplitudes must be positive".into()));
    }
    let eps_q = Q::from_float(eps).filter(|e| e.is_positive()).ok_or_else(|| Error::Invalid(format!("bad scale {eps}")))?;
    let raw = Raw::new(params);
    let target = params.target;
    let m = |k: usize| params.m(k);
    let margin = |k: usize| pow2(-(k as i64));
    let mut out = Vec::new();

    // recurrence, stored data, distance brackets
    let (pa, qa) = alpha_approximant(&params.partial_quotients, ALPHA_TAIL);
    let alpha = Q::new(BigInt::from(pa), BigInt::from(qa));
    for k in 1..=k_max + 1 {
        let (sp, sq) = &params.convergents[k - 1];
        let stored_ok = *sp == raw.p[k] && *sq == raw.q[k];
        let dist = (qu(&raw.q[k]) * &alpha - qu(&raw.p[k])).abs();
        let r_next = params.partial_quotients.get(k).cloned().unwrap_or_else(BigUint::one);
        let lo = Q::new(BigInt::one(), BigInt::from((&r_next + 2u32) * &raw.q[k]));
        let hi = Q::new(BigInt::one(), BigInt::from(&r_next * &raw.q[k]));
        let bracket = lo <= dist && dist <= hi;
        out.push(int_entry("CONV", k, sq, &raw.q[k], stored_ok && bracket));
    }
    for k in 1..=k_max {
        let q_next = qu(&raw.q[k + 1]);
        let n_ceil = {
            let ratio = &q_next / &raw.beta[k - 1];
            super::exact::sqrt_ceil(&ratio)
        };
        let ok = params.envelope_slopes.get(k - 1) == Some(&raw.slopes[k - 1])
            && params.envelope_offsets.get(k) == Some(&raw.offsets[k])
            && params.linear_ranges.get(k - 1) == Some(&n_ceil);
        out.push(entry("DATA", k, &raw.offsets[k], &raw.offsets[k], ok));
    }

    for k in 1..=k_max {
        let beta = &raw.beta[k - 1];
        let delta = &raw.delta[k - 1];
        let d = &raw.offsets[k - 1];
        let d_next = &raw.offsets[k];
        let q_next = qu(&raw.q[k + 1]);
        let mk = m(k);
        let m_prev = m(k - 1);

        // C^1 summability
        if k < k_max {
            out.push(le("CC1", k, &raw.beta[k], &(beta / Q::from_integer(BigInt::from(2)))));
        } else {
            let total: Q = raw.beta.iter().sum();
            out.push(le("CC1", k, &total, &Q::new(BigInt::one(), BigInt::from(2))));
        }

        // m_k below the linear range: m_k^2 beta_k < q_{k+1}
        out.push(lt("CUB1", k, &(qu(&mk) * qu(&mk) * beta), &q_next));

        // the new slope is negligible on the previous pieces
        if k >= 2 {
            out.push(lt("CUB2", k, &(beta * qu(&m_prev)), &margin(k)));
        }

        // stage-k envelope on its own piece; concave target, so endpoints suffice
        let first = &m_prev + 1u32;
        let last = if mk > BigUint::zero() { &mk - 1u32 } else { BigUint::zero() };
        let mut points = vec![first.clone()];
        if last > first {
            points.push(last);
        }
        for n in points.into_iter().filter(|n| *n < mk && *n >= first) {
            let lhs = beta * qu(&n) + d;
            let pass = target.exceeds(&n, &(&lhs + margin(k)));
            out.push(entry("CUB3", k, &lhs, &(target.lower(&n) - margin(k)), pass));
        }

        // the next offset fits under the target at the cut
        let pass = target.at_least(&mk, &(d_next + margin(k)));
        out.push(entry("CUB4", k, d_next, &(target.lower(&mk) - margin(k)), pass));

        // C^1 distance of the truncation over n_k iterates
        if k < k_max {
            let n_k = &params.linear_ranges[k - 1];
            let mut tail = Q::zero();
            for j in k + 1..=k_max {
                let bj = &raw.beta[j - 1];
                let inside = qu(n_k) * qu(n_k) * bj <= qu(&raw.q[j + 1]);
                tail += if inside { bj * qu(n_k) } else { raw.delta[j - 1].clone() };
            }
            out.push(le("CLB1", k, &tail, &margin(k)));
        }

        // offsets are small against the increment
        out.push(le("CLB2", k, &(Q::from_integer(BigInt::from(4)) * d * d), delta));

        // separation at n_k: (A / 2 eps)^2 Delta_k > q_k^2
        if k <= params.witness_stages {
            let a = Q::new(BigInt::from(LAMBDA_MEASURE.0), BigInt::from(LAMBDA_MEASURE.1));
            let c = &a / (Q::from_integer(BigInt::from(2)) * &eps_q);
            let qk = qu(&raw.q[k]);
            out.push(lt("CLB3", k, &(&qk * &qk), &(&c * &c * delta)));
        }

        // monotone across the cut
        let left = &raw.slopes[k - 1] * qu(&(&mk - 1u32).max(BigUint::zero())) + d;
        out.push(le("MONO", k, &left, d_next));

        // full envelope against the final margin
        let fin = margin(k_max);
        let mut checks: Vec<(BigUint, Q)> = vec![(mk.clone(), d_next.clone())];
        if first < mk {
            checks.push((first.clone(), raw.env(k, &first)));
            let last = &mk - 1u32;
            checks.push((last.clone(), raw.env(k, &last)));
        }
        for (n, e) in checks {
            let pass = target.at_least(&n, &(&e + &fin));
            out.push(entry("ENV", k, &e, &(target.lower(&n) - &fin), pass));
        }
    }

    if let Some(w) = params.wrap_stage.filter(|&w| w <= k_max) {
        out.push(le("WRAP", w, &(Q::from_integer(BigInt::from(4)) * qu(&raw.q[w])), &raw.delta[w - 1]));
    }

    let all_pass = out.iter().all(|e| e.pass);
    Ok(Certificate { slack_factor: SLACK_FACTOR, entries: out, weyl: Vec::new(), witnesses: Vec::new(), transitivity: None, all_pass })
}
