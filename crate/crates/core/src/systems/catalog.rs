use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::budget::{self, circle_count};
use super::{DynamicalSystemSpec, Geometry, MapFn, MetricFn, PointSet, SystemKind};
use crate::{Error, Real, Result};

pub const GOLDEN: f64 = 0.618_033_988_749_894_9;

fn circle_metric<T: Real>() -> MetricFn<T> {
    Arc::new(|x: &[T], y: &[T]| x[0].circle_dist(y[0]))
}

/// `max` of per-axis distances; periodic axes use arc length.
fn axes_metric<T: Real>(periodic: Vec<bool>) -> MetricFn<T> {
    Arc::new(move |x: &[T], y: &[T]| {
        let mut d = T::zero();
        for (i, p) in periodic.iter().enumerate() {
            let di = if *p { x[i].circle_dist(y[i]) } else { (x[i] - y[i]).abs() };
            d = d.max(di);
        }
        d
    })
}

fn circle_grid<T: Real>(delta: T) -> Result<PointSet<T>> {
    let d = delta.f64();
    budget::check(d, |d| circle_count(d) as u128)?;
    let n = circle_count(d);
    Ok(PointSet::from_flat(1, (0..n).map(|i| T::usize(i) / T::usize(n)).collect()))
}

fn circle_spec<T: Real>(name: String, kind: SystemKind, step: MapFn<T>, inverse: MapFn<T>) -> DynamicalSystemSpec<T> {
    DynamicalSystemSpec {
        name,
        kind,
        dim: 1,
        step,
        inverse: Some(inverse),
        metric: circle_metric(),
        sampler: Arc::new(circle_grid),
        omega_sampler: Some(Arc::new(circle_grid)),
        geometry: Geometry::Axes(vec![Some(1.0)]),
    }
}

/// One-sided shift on `{0..k-1}^L`, padded with `0` past the word end.
pub fn full_shift<T: Real>(k: usize, word_len: usize) -> Result<DynamicalSystemSpec<T>> {
    if k < 2 || word_len == 0 {
        return Err(Error::Invalid(format!("full shift needs k >= 2 and L >= 1, got k={k}, L={word_len}")));
    }
    let l = word_len;
    let count = move |_: f64| (k as u128).saturating_pow(l as u32);
    let sampler = move |delta: T| -> Result<PointSet<T>> {
        budget::check(delta.f64(), count)?;
        let total = count(0.0) as usize;
        let mut pts = Vec::with_capacity(total * l);
        for w in 0..total {
            let mut rem = w;
            let mut word = vec![T::zero(); l];
            for c in word.iter_mut().rev() {
                *c = T::usize(rem % k);
                rem /= k;
            }
            pts.extend(word);
        }
        Ok(PointSet::from_flat(l, pts))
    };
    let sampler: super::SamplerFn<T> = Arc::new(sampler);
    Ok(DynamicalSystemSpec {
        name: format!("full_shift(k={k},L={l})"),
        kind: SystemKind::FullShift { k, word_len: l },
        dim: l,
        step: Arc::new(|x: &[T], out: &mut [T]| {
            let l = x.len();
            out[..l - 1].copy_from_slice(&x[1..]);
            out[l - 1] = T::zero();
        }),
        inverse: None,
        metric: Arc::new(|x: &[T], y: &[T]| match x.iter().zip(y).position(|(a, b)| a != b) {
            Some(j) => T::lit(0.5f64.powi(j as i32)),
            None => T::zero(),
        }),
        sampler: sampler.clone(),
        omega_sampler: Some(sampler),
        geometry: Geometry::Prefix,
    })
}

pub fn rotation<T: Real>(alpha: f64) -> Result<DynamicalSystemSpec<T>> {
    if !alpha.is_finite() {
        return Err(Error::Invalid("rotation angle must be finite".into()));
    }
    let a = T::lit(alpha.rem_euclid(1.0));
    Ok(circle_spec(
        format!("rotation({alpha})"),
        SystemKind::Rotation { alpha },
        Arc::new(move |x: &[T], out: &mut [T]| out[0] = (x[0] + a).frac1()),
        Arc::new(move |x: &[T], out: &mut [T]| out[0] = (x[0] - a).frac1()),
    ))
}

/// Lift of `h(x) = x + c sin(2 pi x) / (2 pi)`, bi-Lipschitz for `|c| < 1`.
fn bump<T: Real>(c: T, x: T) -> T {
    let tau = T::TAU();
    x + c * (tau * x).sin() / tau
}

/// Solve `g(y) = target` for an increasing lift `g` with `g' in [1-c, 1+c]`.
fn invert_lift<T: Real>(g: impl Fn(T) -> T, dg: impl Fn(T) -> T, target: T) -> T {
    let mut y = target;
    for _ in 0..60 {
        let step = (g(y) - target) / dg(y);
        y = y - step;
        if step.abs() <= T::epsilon() * T::lit(4.0) {
            break;
        }
    }
    y
}

/// `h R_alpha h^-1` for the bump conjugacy `h`.
pub fn conjugated_rotation<T: Real>(alpha: f64, amplitude: f64) -> Result<DynamicalSystemSpec<T>> {
    if !(amplitude.abs() < 1.0) {
        return Err(Error::Invalid(format!("conjugacy amplitude must lie in (-1, 1), got {amplitude}")));
    }
    let a = T::lit(alpha.rem_euclid(1.0));
    let c = T::lit(amplitude);
    let tau = T::TAU();
    let h_inv = move |x: T| invert_lift(|y| bump(c, y), |y| T::one() + c * (tau * y).cos(), x);
    Ok(circle_spec(
        format!("conjugated_rotation({alpha},{amplitude})"),
        SystemKind::ConjugatedRotation { alpha, amplitude },
        Arc::new(move |x: &[T], out: &mut [T]| out[0] = bump(c, h_inv(x[0]) + a).frac1()),
        Arc::new(move |x: &[T], out: &mut [T]| out[0] = bump(c, h_inv(x[0]) - a).frac1()),
    ))
}

/// Representative of `x mod 1` in `(-1/2, 1/2]`.
fn centered<T: Real>(x: T) -> T {
    x - (x - T::lit(0.5)).ceil()
}

/// `x + A sin(2 pi x)`: repelling fixed point 0, attracting 1/2.
///
/// Coordinates live in `(-1/2, 1/2]` so the repeller keeps full precision on
/// both sides. The sample adds backward orbits of two fundamental domains;
/// without them the grid cannot resolve separation times beyond
/// `log(1/delta)`.
pub fn morse_smale_circle<T: Real>(amplitude: f64, backward_depth: usize) -> Result<DynamicalSystemSpec<T>> {
    let bound = 1.0 / (2.0 * std::f64::consts::PI);
    if !(amplitude > 0.0 && amplitude < bound) {
        return Err(Error::Invalid(format!("amplitude must lie in (0, 1/(2 pi)), got {amplitude}")));
    }
    let amp = T::lit(amplitude);
    let tau = T::TAU();
    let lift = move |x: T| x + amp * (tau * x).sin();
    let dlift = move |x: T| T::one() + amp * tau * (tau * x).cos();
    let inv = move |y: T| centered(invert_lift(lift, dlift, y));
    let sampler = move |delta: T| -> Result<PointSet<T>> {
        let d = delta.f64();
        let per_domain = ((amplitude / d).ceil() as usize).max(1);
        budget::check(d, |d| {
            circle_count(d) as u128 + 2 * ((amplitude / d).ceil() as u128).max(1) * (backward_depth as u128 + 1)
        })?;
        let mut pts = PointSet::new(1);
        let n = circle_count(d);
        for i in 0..n {
            pts.push(&[centered(T::usize(i) / T::usize(n))]);
        }
        for start in [T::lit(0.25), T::lit(-0.25)] {
            let end = lift(start);
            for i in 0..per_domain {
                let mut x = start + (end - start) * T::usize(i) / T::usize(per_domain);
                pts.push(&[x]);
                for _ in 0..backward_depth {
                    x = inv(x);
                    if x == T::zero() {
                        break;
                    }
                    pts.push(&[x]);
                }
            }
        }
        Ok(pts)
    };
    Ok(DynamicalSystemSpec {
        name: format!("morse_smale_circle({amplitude})"),
        kind: SystemKind::MorseSmaleCircle { amplitude, backward_depth },
        dim: 1,
        step: Arc::new(move |x: &[T], out: &mut [T]| out[0] = centered(lift(x[0]))),
        inverse: Some(Arc::new(move |x: &[T], out: &mut [T]| out[0] = inv(x[0]))),
        metric: circle_metric(),
        sampler: Arc::new(sampler),
        omega_sampler: Some(Arc::new(|_| Ok(PointSet::from_flat(1, vec![T::zero(), T::lit(0.5)])))),
        geometry: Geometry::Axes(vec![Some(1.0)]),
    })
}

/// Twist profile `t -> alpha(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TwistProfile {
    Linear { slope: f64, offset: f64 },
    /// Piecewise-linear through `(t, alpha)` knots sorted by `t`.
    Table { knots: Vec<(f64, f64)> },
}

impl TwistProfile {
    pub fn identity() -> Self {
        TwistProfile::Linear { slope: 1.0, offset: 0.0 }
    }

    fn validate(&self) -> Result<()> {
        match self {
            TwistProfile::Linear { slope, offset } if slope.is_finite() && offset.is_finite() && *slope != 0.0 => Ok(()),
            TwistProfile::Linear { .. } => Err(Error::Invalid("twist slope must be finite and nonzero".into())),
            TwistProfile::Table { knots } => {
                if knots.len() < 2 {
                    return Err(Error::Invalid("twist table needs at least two knots".into()));
                }
                let inc = knots.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1);
                let dec = knots.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 < w[0].1);
                if inc || dec {
                    Ok(())
                } else {
                    Err(Error::Invalid("twist profile must be strictly monotone".into()))
                }
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            TwistProfile::Linear { slope, offset } => slope * t + offset,
            TwistProfile::Table { knots } => {
                let i = knots.partition_point(|k| k.0 <= t).clamp(1, knots.len() - 1);
                let (t0, a0) = knots[i - 1];
                let (t1, a1) = knots[i];
                a0 + (a1 - a0) * (t - t0) / (t1 - t0)
            }
        }
    }
}

/// `(s, t) -> (s + alpha(t), t)` on `S^1 x [t_min, t_max]`.
///
/// The `t` grid is `t_refine` times finer than the `s` grid: neighbouring
/// circles separate only after `~eps / (spacing * alpha')` steps.
pub fn twist_annulus<T: Real>(profile: TwistProfile, t_min: f64, t_max: f64, t_refine: usize) -> Result<DynamicalSystemSpec<T>> {
    profile.validate()?;
    if !(t_max > t_min) || t_refine == 0 {
        return Err(Error::Invalid("twist annulus needs t_min < t_max and t_refine >= 1".into()));
    }
    let p1 = profile.clone();
    let p2 = profile.clone();
    let alpha = move |t: T| T::lit(p1.eval(t.f64()));
    let alpha_inv = move |t: T| T::lit(p2.eval(t.f64()));
    let width = t_max - t_min;
    let rows = move |d: f64| ((width * t_refine as f64 / d) - 1e-9).ceil().max(1.0) as usize + 1;
    let sampler = move |delta: T| -> Result<PointSet<T>> {
        let d = delta.f64();
        budget::check(d, |d| circle_count(d) as u128 * rows(d) as u128)?;
        let ns = circle_count(d);
        let nt = rows(d);
        let mut pts = Vec::with_capacity(ns * nt * 2);
        // rows are shifted per column by a Kronecker offset so that
        // resonances between the grid and the twist do not stack up
        let step = width / (nt - 1).max(1) as f64;
        for j in 0..nt {
            for i in 0..ns {
                let jitter = if j + 1 < nt { (i as f64 * GOLDEN).fract() } else { 0.0 };
                pts.push(T::usize(i) / T::usize(ns));
                pts.push(T::lit(t_min + step * (j as f64 + jitter)));
            }
        }
        Ok(PointSet::from_flat(2, pts))
    };
    let sampler: super::SamplerFn<T> = Arc::new(sampler);
    Ok(DynamicalSystemSpec {
        name: "twist_annulus".into(),
        kind: SystemKind::TwistAnnulus { profile, t_min, t_max, t_refine },
        dim: 2,
        step: Arc::new(move |x: &[T], out: &mut [T]| {
            out[0] = (x[0] + alpha(x[1])).frac1();
            out[1] = x[1];
        }),
        inverse: Some(Arc::new(move |x: &[T], out: &mut [T]| {
            out[0] = (x[0] - alpha_inv(x[1])).frac1();
            out[1] = x[1];
        })),
        metric: axes_metric(vec![true, false]),
        sampler: sampler.clone(),
        omega_sampler: Some(sampler),
        geometry: Geometry::Axes(vec![Some(1.0), None]),
    })
}

fn torus_grid<T: Real>(delta: T) -> Result<PointSet<T>> {
    let d = delta.f64();
    budget::check(d, |d| (circle_count(d) as u128).pow(2))?;
    let n = circle_count(d);
    let mut pts = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            pts.push(T::usize(i) / T::usize(n));
            pts.push(T::usize(j) / T::usize(n));
        }
    }
    Ok(PointSet::from_flat(2, pts))
}

pub(crate) fn torus_spec<T: Real>(name: String, kind: SystemKind, step: MapFn<T>, inverse: Option<MapFn<T>>) -> DynamicalSystemSpec<T> {
    DynamicalSystemSpec {
        name,
        kind,
        dim: 2,
        step,
        inverse,
        metric: axes_metric(vec![true, true]),
        sampler: Arc::new(torus_grid),
        omega_sampler: None,
        geometry: Geometry::Axes(vec![Some(1.0), Some(1.0)]),
    }
}

/// Linear automorphism of `T^2` induced by `A`, `|det A| = 1`.
pub fn torus_linear<T: Real>(matrix: [[i64; 2]; 2]) -> Result<DynamicalSystemSpec<T>> {
    let [[a, b], [c, d]] = matrix;
    let det = a * d - b * c;
    if det.abs() != 1 {
        return Err(Error::Invalid(format!("torus matrix must have |det| = 1, got det = {det}")));
    }
    let m = [a, b, c, d].map(|v| T::lit(v as f64));
    let inv = [d * det, -b * det, -c * det, a * det].map(|v| T::lit(v as f64));
    let lin = |m: [T; 4]| -> MapFn<T> {
        Arc::new(move |x: &[T], out: &mut [T]| {
            let (x0, x1) = (x[0], x[1]);
            out[0] = (m[0] * x0 + m[1] * x1).frac1();
            out[1] = (m[2] * x0 + m[3] * x1).frac1();
        })
    };
    Ok(torus_spec(
        format!("torus_linear({a},{b};{c},{d})"),
        SystemKind::TorusLinear { matrix },
        lin(m),
        Some(lin(inv)),
    ))
}
