use rayon::prelude::*;

use crate::systems::{DynamicalSystemSpec, Geometry, MetricFn, PointSet};
use crate::{Error, Real, Result};

/// Relative slack on `eps` when deciding closeness. Grid samples produce
/// exact ties `d = eps` that rounding would otherwise flip between steps.
pub const CLOSE_TOL: f64 = 1e-9;

/// Hard cap on stored orbit coordinates.
pub const MAX_TABLE_COORDS: usize = 1 << 28;

/// Memoized orbits `f^t(x_i)`, `0 <= t <= n_max`.
#[derive(Clone)]
pub struct OrbitTable<T> {
    dim: usize,
    len: usize,
    n_max: usize,
    data: Vec<T>,
    pub(crate) metric: MetricFn<T>,
    pub(crate) geometry: Geometry,
    truncated_at: Option<usize>,
}

/// Result of an early-exit distance evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceBound<T> {
    Exact(T),
    AtLeast(T),
}

impl<T: Real> OrbitTable<T> {
    /// Iterates every sample `n_max` times. If some coordinate stops being
    /// finite the table keeps only the steps before it.
    pub fn build(spec: &DynamicalSystemSpec<T>, points: &PointSet<T>, n_max: usize) -> Result<Self> {
        let dim = spec.dim;
        if points.dim() != dim {
            return Err(Error::Invalid(format!("points have dim {}, system has {}", points.dim(), dim)));
        }
        let len = points.len();
        let row = (n_max + 1) * dim;
        if len.saturating_mul(row) > MAX_TABLE_COORDS {
            return Err(Error::Invalid(format!(
                "orbit table of {len} points x {} steps exceeds {MAX_TABLE_COORDS} coordinates",
                n_max + 1
            )));
        }
        let mut data = vec![T::zero(); len * row];
        let bad_step: Option<usize> = data
            .par_chunks_mut(row.max(1))
            .enumerate()
            .map(|(i, orbit)| {
                orbit[..dim].copy_from_slice(points.point(i));
                for t in 0..n_max {
                    let (head, tail) = orbit.split_at_mut((t + 1) * dim);
                    (spec.step)(&head[t * dim..], &mut tail[..dim]);
                    if tail[..dim].iter().any(|v| !v.is_finite()) {
                        return Some(t + 1);
                    }
                }
                None
            })
            .filter_map(|s| s)
            .min();
        let mut table = Self {
            dim,
            len,
            n_max,
            data,
            metric: spec.metric.clone(),
            geometry: spec.geometry.clone(),
            truncated_at: None,
        };
        if let Some(s) = bad_step {
            table.truncate(s - 1);
            table.truncated_at = Some(s);
        }
        Ok(table)
    }

    fn truncate(&mut self, keep: usize) {
        let old = (self.n_max + 1) * self.dim;
        let new = (keep + 1) * self.dim;
        let mut data = Vec::with_capacity(self.len * new);
        for i in 0..self.len {
            data.extend_from_slice(&self.data[i * old..i * old + new]);
        }
        self.data = data;
        self.n_max = keep;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Largest stored time index.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Step at which the orbit left the representable range, if it did.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    pub fn at(&self, i: usize, t: usize) -> &[T] {
        let row = (self.n_max + 1) * self.dim;
        let o = i * row + t * self.dim;
        &self.data[o..o + self.dim]
    }

    pub fn metric_at(&self, i: usize, j: usize, t: usize) -> T {
        (self.metric)(self.at(i, t), self.at(j, t))
    }

    /// `max_{0<=t<=last} d(f^t x_i, f^t x_j) <= eps (1 + CLOSE_TOL)`.
    pub fn close(&self, i: usize, j: usize, last: usize, eps: T) -> bool {
        let lim = eps * (T::one() + T::lit(CLOSE_TOL));
        if self.metric_at(i, j, last) > lim {
            return false;
        }
        (0..last).all(|t| self.metric_at(i, j, t) <= lim)
    }
}

/// `d_n(x_i, x_j) = max_{0<=t<=n} d(f^t x_i, f^t x_j)`.
pub fn dynamical_distance<T: Real>(table: &OrbitTable<T>, i: usize, j: usize, n: usize) -> T {
    assert!(n <= table.n_max(), "n = {n} beyond table horizon {}", table.n_max());
    (0..=n).map(|t| table.metric_at(i, j, t)).fold(T::zero(), T::max)
}

/// As [`dynamical_distance`], stopping once `threshold` is exceeded.
pub fn dynamical_distance_until<T: Real>(table: &OrbitTable<T>, i: usize, j: usize, n: usize, threshold: T) -> DistanceBound<T> {
    assert!(n <= table.n_max());
    let mut d = T::zero();
    for t in 0..=n {
        d = d.max(table.metric_at(i, j, t));
        if d > threshold {
            return DistanceBound::AtLeast(d);
        }
    }
    DistanceBound::Exact(d)
}
