//! Finite witnesses for the lower bound and for orbit spreading.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::convergents::alpha_approximant;
use super::exact::{floor_u, qu};
use super::params::CascadeParams;
use super::weyl::StagePhase;
use super::ALPHA_TAIL;
use crate::systems::GOLDEN;

const TIME_SAMPLES: u64 = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub stage: usize,
    /// `floor(n_k)`
    pub horizon: String,
    /// `q_k`
    pub required: String,
    pub found: usize,
    pub candidates: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VisitReport {
    pub cells: u64,
    /// Largest admissible time.
    pub horizon: String,
    /// Times evaluated.
    pub samples: u64,
    pub visited: u64,
    /// Latest witness time among the visited cells.
    pub latest: Option<String>,
    pub pass: bool,
}

fn circle(d: f64) -> f64 {
    let d = d.rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Height `y_t` of the orbit of `(x, 0)`, as `sum_j c_j cos(2 pi frac(q_j x) + s_j)`,
/// one `(c_j, s_j)` per stage for a fixed time `t`.
fn time_row(stages: &[StagePhase], t: &BigUint) -> Vec<(f64, f64)> {
    let pi = std::f64::consts::PI;
    stages
        .iter()
        .map(|s| {
            // S_t(phi)(x + alpha) = b cos(2 pi q x + pi (t+1) theta) sin(pi t theta) / sin(pi theta)
            let z = s.times_mod2(t);
            let c = s.times_mod2(&(t + 1u32));
            (s.amplitude() * (pi * z).sin(), pi * c)
        })
        .collect()
}

/// Greedy `(n_k, eps)`-separated set inside
/// `Lambda_k = {|sin(2 pi q_k x)| > 1/sqrt 2} x {0}`, checked pair by pair at
/// exactly evaluated times `t <= floor(n_k)`.
pub fn lambda_witness(params: &CascadeParams, k: usize, eps: f64) -> WitnessReport {
    let alpha = alpha_approximant(&params.partial_quotients, ALPHA_TAIL);
    let stages: Vec<StagePhase> = (1..=params.stages()).map(|j| StagePhase::new(params, j, &alpha)).collect();
    let beta = params.b(k) * qu(params.q(k));
    let horizon = floor_u(&(qu(params.q(k + 1)) / beta)).sqrt();
    let qk = params.q(k).clone();
    let need = qk.to_usize().unwrap_or(usize::MAX);
    let report = |found: usize, candidates: usize| WitnessReport {
        stage: k,
        horizon: horizon.to_string(),
        required: qk.to_string(),
        found,
        candidates,
        pass: found >= need,
    };
    if need > 1 << 16 {
        return report(0, 0);
    }

    let grid = (64 * need as u64).max(4096);
    let lam = &stages[k - 1];
    let mut cand: Vec<u64> = (0..grid)
        .filter(|&i| (std::f64::consts::TAU * lam.grid_phase(i, grid)).sin().abs() > std::f64::consts::FRAC_1_SQRT_2)
        .collect();
    cand.sort_by(|a, b| (*a as f64 * GOLDEN).fract().total_cmp(&(*b as f64 * GOLDEN).fract()));

    let times: Vec<BigUint> = if horizon <= BigUint::from(TIME_SAMPLES) {
        (1..=horizon.to_u64().unwrap_or(0)).map(BigUint::from).collect()
    } else {
        (1..=TIME_SAMPLES).map(|s| &horizon * s / TIME_SAMPLES).filter(|t| !t.is_zero()).collect()
    };
    let rows: Vec<Vec<(f64, f64)>> = times.par_iter().map(|t| time_row(&stages, t)).collect();
    let tau = std::f64::consts::TAU;
    let heights: Vec<Vec<f64>> = cand
        .par_iter()
        .map(|&i| {
            let phases: Vec<f64> = stages.iter().map(|s| s.grid_phase(i, grid)).collect();
            rows.iter().map(|row| row.iter().zip(&phases).map(|(&(c, s), &p)| c * (tau * p + s).cos()).sum()).collect()
        })
        .collect();

    let separated = |a: usize, b: usize| -> bool {
        let dx = circle((cand[a] as f64 - cand[b] as f64) / grid as f64);
        dx > eps || heights[a].iter().zip(&heights[b]).any(|(ya, yb)| circle(ya - yb) > eps)
    };
    let mut kept: Vec<usize> = Vec::new();
    for c in 0..cand.len() {
        if kept.len() >= need.saturating_mul(4) {
            break;
        }
        if kept.iter().all(|&j| separated(c, j)) {
            kept.push(c);
        }
    }
    report(kept.len(), cand.len())
}

/// Cells of a `cells x cells` grid on the torus hit by the orbit of `(0, 0)`
/// at times `t <= horizon`.
///
/// Times come from a Weyl sequence scaled to the horizon, and each position is
/// evaluated in closed form with exact phase residues:
/// `x_t = t alpha`, `y_t = sum_k b_k sin(pi t theta_k) cos(pi (t+1) theta_k) / sin(pi theta_k)`.
/// Each hit cell therefore carries an explicit time.
pub fn grid_visit_witness(params: &CascadeParams, cells: u64, horizon: &BigUint, samples: u64) -> VisitReport {
    let alpha = alpha_approximant(&params.partial_quotients, ALPHA_TAIL);
    let (p, den) = &alpha;
    let stages: Vec<StagePhase> = (1..=params.stages()).map(|j| StagePhase::new(params, j, &alpha)).collect();
    let pi = std::f64::consts::PI;
    let hf = super::exact::to_f64(&qu(horizon));
    // stages whose height stays below 1e-12 up to the horizon are dropped
    let live: Vec<&StagePhase> = stages
        .iter()
        .filter(|s| s.amplitude().abs().min(s.b.abs() * hf) > 1e-12)
        .collect();
    let shift = den.bits().saturating_sub(60);
    let den_top = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    let position = |t: &BigUint| -> (f64, f64) {
        let r = (t * p) % den;
        let x = (r >> shift).to_f64().unwrap_or(0.0) / den_top;
        let y: f64 = live
            .iter()
            .map(|s| {
                let z = s.times_mod2(t);
                let c = s.times_mod2(&(t + 1u32));
                s.amplitude() * (pi * z).sin() * (pi * c).cos()
            })
            .sum();
        (x, y.rem_euclid(1.0))
    };
    let mut seen = vec![false; (cells * cells) as usize];
    let mut visited = 0u64;
    let mut latest: Option<BigUint> = None;
    let mut done = 0u64;
    // |y_t| <= reach, so fewer rows than this can never be hit
    let reach: f64 = live.iter().map(|s| s.amplitude().abs()).sum();
    let rows = (2.0 * reach * cells as f64).ceil() + 1.0;
    let budget = if rows < cells as f64 { samples.min(4096) } else { samples };
    // chunks, so a complete visit stops early
    while done < budget && visited < cells * cells {
        let end = (done + 4096).min(budget);
        let times: Vec<BigUint> =
            (done..end).map(|i| (horizon * BigUint::from(i.wrapping_mul(0x9E37_79B9_7F4A_7C15))) >> 64usize).collect();
        let cell_of: Vec<u64> = times
            .par_iter()
            .map(|t| {
                let (x, y) = position(t);
                let cx = ((x * cells as f64) as u64).min(cells - 1);
                let cy = ((y * cells as f64) as u64).min(cells - 1);
                cx * cells + cy
            })
            .collect();
        for (t, &c) in times.iter().zip(&cell_of) {
            if !seen[c as usize] {
                seen[c as usize] = true;
                visited += 1;
                if latest.as_ref().map_or(true, |l| t > l) {
                    latest = Some(t.clone());
                }
            }
        }
        done = end;
    }
    VisitReport {
        cells,
        horizon: horizon.to_string(),
        samples: done,
        visited,
        latest: latest.map(|t| t.to_string()),
        pass: visited == cells * cells,
    }
}
