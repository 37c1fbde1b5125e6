use std::sync::Arc;

use super::budget::{self, circle_count};
use super::{DynamicalSystemSpec, Geometry, PointSet, SystemKind};
use crate::{Error, Real, Result};

/// Total length of the inserted wandering intervals.
pub const INSERTED_LENGTH: f64 = 0.9;

/// Piecewise-affine circle homeomorphism with wandering intervals
/// `I_j`, `|j| <= depth`, placed along the rotation orbit of 0 and mapped
/// `I_j -> I_(j+1)`. `I_(depth+1)` exists only as the image of `I_depth`.
#[derive(Debug, Clone)]
pub struct DenjoyMap {
    pub alpha: f64,
    pub depth: usize,
    /// `(left, right)` endpoints of `I_j`, indexed by `j + depth`.
    pub intervals: Vec<(f64, f64)>,
    forward: PiecewiseLift,
    backward: PiecewiseLift,
    lengths_total: f64,
    origin_shift: f64,
}

#[derive(Debug, Clone)]
struct PiecewiseLift {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PiecewiseLift {
    /// `pairs` are `(x, f(x))` with `x, f(x)` in `[0,1)`, from a degree-one
    /// orientation-preserving map.
    fn new(mut pairs: Vec<(f64, f64)>) -> Self {
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let mut ys = Vec::with_capacity(pairs.len());
        let mut prev = pairs[0].1;
        ys.push(prev);
        for p in &pairs[1..] {
            prev += (p.1 - prev).rem_euclid(1.0);
            ys.push(prev);
        }
        Self { xs, ys }
    }

    /// Lifted value, not reduced mod 1.
    fn lift(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = self.xs.partition_point(|k| *k <= x);
        let (x0, y0, x1, y1) = if i == 0 {
            (self.xs[n - 1] - 1.0, self.ys[n - 1] - 1.0, self.xs[0], self.ys[0])
        } else if i == n {
            (self.xs[n - 1], self.ys[n - 1], self.xs[0] + 1.0, self.ys[0] + 1.0)
        } else {
            (self.xs[i - 1], self.ys[i - 1], self.xs[i], self.ys[i])
        };
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    fn eval(&self, x: f64) -> f64 {
        let y = self.lift(x).rem_euclid(1.0);
        if y >= 1.0 {
            0.0
        } else {
            y
        }
    }
}

fn rationality_witness(alpha: f64, qmax: usize) -> Option<usize> {
    (1..=qmax).find(|&q| {
        let v = (q as f64 * alpha).rem_euclid(1.0);
        v.min(1.0 - v) < 1e-12
    })
}

impl DenjoyMap {
    pub fn new(alpha: f64, tail_exponent: f64, depth: usize) -> Result<Self> {
        if depth < 100 {
            return Err(Error::Invalid(format!("Denjoy depth must be >= 100, got {depth}")));
        }
        if !(tail_exponent > 1.0) {
            return Err(Error::Invalid(format!("tail exponent must exceed 1, got {tail_exponent}")));
        }
        let alpha = alpha.rem_euclid(1.0);
        if let Some(q) = rationality_witness(alpha, 2 * depth + 2) {
            return Err(Error::Invalid(format!("rotation number {alpha} is rational to working precision (denominator {q})")));
        }
        let d = depth as i64;
        let js: Vec<i64> = (-d..=d + 1).collect();
        let raw: Vec<f64> = js.iter().map(|j| (j.unsigned_abs() as f64 + 2.0).powf(-tail_exponent)).collect();
        let c = INSERTED_LENGTH / raw.iter().sum::<f64>();
        let len: Vec<f64> = raw.iter().map(|r| c * r).collect();
        let theta: Vec<f64> = js.iter().map(|&j| (j as f64 * alpha).rem_euclid(1.0)).collect();

        let mut order: Vec<usize> = (0..js.len()).collect();
        order.sort_by(|&a, &b| theta[a].partial_cmp(&theta[b]).unwrap());
        let mut left = vec![0.0; js.len()];
        let mut acc = 0.0;
        for &i in &order {
            left[i] = (1.0 - INSERTED_LENGTH) * theta[i] + acc;
            acc += len[i];
        }
        let intervals: Vec<(f64, f64)> = (0..js.len()).map(|i| (left[i], left[i] + len[i])).collect();

        let mut pairs = Vec::with_capacity(4 * depth + 2);
        for i in 0..(2 * depth + 1) {
            pairs.push((intervals[i].0, intervals[i + 1].0));
            pairs.push((intervals[i].1, intervals[i + 1].1));
        }
        let forward = PiecewiseLift::new(pairs.clone());
        let backward = PiecewiseLift::new(pairs.iter().map(|p| (p.1, p.0)).collect());
        // Lift normalisation: F(x) - x must average to alpha, not alpha - 1.
        let origin_shift = (forward.lift(0.0) - alpha).round();
        Ok(Self { alpha, depth, intervals, forward, backward, lengths_total: acc, origin_shift })
    }

    pub fn interval(&self, j: i64) -> (f64, f64) {
        self.intervals[(j + self.depth as i64) as usize]
    }

    pub fn inserted_length(&self) -> f64 {
        self.lengths_total
    }

    pub fn apply(&self, x: f64) -> f64 {
        self.forward.eval(x)
    }

    pub fn apply_inverse(&self, x: f64) -> f64 {
        self.backward.eval(x)
    }

    /// Orbit average of the lifted displacement.
    pub fn rotation_number(&self, x: f64, iterations: usize) -> f64 {
        let mut lifted = x;
        for _ in 0..iterations {
            let frac = lifted.rem_euclid(1.0);
            lifted += self.forward.lift(frac) - self.origin_shift - frac;
        }
        (lifted - x) / iterations as f64
    }

    /// Semi-conjugacy section `theta -> x` onto the complement of the intervals.
    pub fn section(&self, theta: f64) -> f64 {
        let theta = theta.rem_euclid(1.0);
        let d = self.depth as i64;
        let before: f64 = (-d..=d + 1)
            .filter(|&j| (j as f64 * self.alpha).rem_euclid(1.0) < theta)
            .map(|j| {
                let (l, r) = self.interval(j);
                r - l
            })
            .sum();
        (1.0 - INSERTED_LENGTH) * theta + before
    }

    /// Nonwandering samples: images of a theta grid and the endpoints of
    /// `I_j` for `|j| <= depth / 10`.
    pub fn omega_sample(&self, n: usize) -> Vec<f64> {
        let mut pts: Vec<f64> = (0..n).map(|i| self.section(i as f64 / n as f64)).collect();
        let reach = (self.depth / 10) as i64;
        for j in -reach..=reach {
            let (l, r) = self.interval(j);
            pts.push(l);
            pts.push(r.rem_euclid(1.0));
        }
        pts
    }
}

pub fn denjoy<T: Real>(alpha: f64, tail_exponent: f64, depth: usize) -> Result<DynamicalSystemSpec<T>> {
    let map = Arc::new(DenjoyMap::new(alpha, tail_exponent, depth)?);
    let omega_count = move |d: f64| circle_count(d) as u128 + 2 * (depth as u128 / 10 * 2 + 1);
    let m1 = map.clone();
    let omega = move |delta: T| -> Result<PointSet<T>> {
        budget::check(delta.f64(), omega_count)?;
        let pts = m1.omega_sample(circle_count(delta.f64()));
        Ok(PointSet::from_flat(1, pts.into_iter().map(T::lit).collect()))
    };
    let m2 = map.clone();
    let full = move |delta: T| -> Result<PointSet<T>> {
        let d = delta.f64();
        budget::check(d, |d| circle_count(d) as u128 + omega_count(d))?;
        let n = circle_count(d);
        let mut pts: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
        pts.extend(m2.omega_sample(n));
        Ok(PointSet::from_flat(1, pts.into_iter().map(T::lit).collect()))
    };
    let (mf, mb) = (map.clone(), map);
    Ok(DynamicalSystemSpec {
        name: format!("denjoy({alpha},{tail_exponent},{depth})"),
        kind: SystemKind::Denjoy { alpha, tail_exponent, depth },
        dim: 1,
        step: Arc::new(move |x: &[T], out: &mut [T]| out[0] = T::lit(mf.apply(x[0].f64()))),
        inverse: Some(Arc::new(move |x: &[T], out: &mut [T]| out[0] = T::lit(mb.apply_inverse(x[0].f64())))),
        metric: Arc::new(|x: &[T], y: &[T]| x[0].circle_dist(y[0])),
        sampler: Arc::new(full),
        omega_sampler: Some(Arc::new(omega)),
        geometry: Geometry::Axes(vec![Some(1.0)]),
    })
}
