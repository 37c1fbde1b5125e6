use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::PointSet;
use crate::{Error, Real, Result};

pub type MapFn<T> = Arc<dyn Fn(&[T], &mut [T]) + Send + Sync>;
pub type MetricFn<T> = Arc<dyn Fn(&[T], &[T]) -> T + Send + Sync>;
pub type SamplerFn<T> = Arc<dyn Fn(T) -> Result<PointSet<T>> + Send + Sync>;

/// How the metric relates to coordinates; used to bucket close pairs.
#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    /// Metric dominates the per-axis distance; `Some(p)` marks a period.
    Axes(Vec<Option<f64>>),
    /// `d(x, y) = 2^-j`, `j` the first disagreeing coordinate.
    Prefix,
    Opaque,
}

/// Catalog kinds with their parameters, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemKind {
    FullShift { k: usize, word_len: usize },
    Rotation { alpha: f64 },
    ConjugatedRotation { alpha: f64, amplitude: f64 },
    MorseSmaleCircle { amplitude: f64, backward_depth: usize },
    Denjoy { alpha: f64, tail_exponent: f64, depth: usize },
    TwistAnnulus { profile: super::TwistProfile, t_min: f64, t_max: f64, t_refine: usize },
    TorusLinear { matrix: [[i64; 2]; 2] },
    CylindricalCascade { stages: usize, alpha: f64 },
    Derived { base: Box<SystemKind>, op: String },
}

/// A sampled compact metric space with a continuous self-map.
#[derive(Clone)]
pub struct DynamicalSystemSpec<T> {
    pub name: String,
    pub kind: SystemKind,
    pub dim: usize,
    pub step: MapFn<T>,
    pub inverse: Option<MapFn<T>>,
    pub metric: MetricFn<T>,
    pub sampler: SamplerFn<T>,
    pub omega_sampler: Option<SamplerFn<T>>,
    pub geometry: Geometry,
}

impl<T: Real> std::fmt::Debug for DynamicalSystemSpec<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DynamicalSystemSpec")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("dim", &self.dim)
            .field("invertible", &self.inverse.is_some())
            .finish()
    }
}

impl<T: Real> DynamicalSystemSpec<T> {
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.dim];
        (self.step)(x, &mut y);
        y
    }

    pub fn distance(&self, x: &[T], y: &[T]) -> T {
        (self.metric)(x, y)
    }

    /// `f^n(x)`; errors when a coordinate stops being finite.
    pub fn step_n(&self, x: &[T], n: usize) -> Result<Vec<T>> {
        let mut cur = x.to_vec();
        let mut next = vec![T::zero(); self.dim];
        for k in 0..n {
            (self.step)(&cur, &mut next);
            if next.iter().any(|v| !v.is_finite()) {
                return Err(Error::Overflow { step: k + 1 });
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur)
    }

    pub fn sample_space(&self, delta: T) -> Result<PointSet<T>> {
        if !(delta > T::zero()) {
            return Err(Error::Invalid(format!("mesh must be positive, got {delta}")));
        }
        (self.sampler)(delta)
    }

    pub fn sample_omega(&self, delta: T) -> Result<PointSet<T>> {
        match &self.omega_sampler {
            Some(s) => s(delta),
            None => Err(Error::NoOmegaSampler(self.name.clone())),
        }
    }

    fn derived(&self, op: &str) -> SystemKind {
        SystemKind::Derived { base: Box::new(self.kind.clone()), op: op.into() }
    }

    /// `f^k` on the same space.
    pub fn power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let step = self.step.clone();
        let dim = self.dim;
        let inverse = self.inverse.clone().map(|inv| -> MapFn<T> {
            Arc::new(move |x: &[T], out: &mut [T]| iterate(&inv, dim, k, x, out))
        });
        Self {
            name: format!("{}^{}", self.name, k),
            kind: self.derived(&format!("power {k}")),
            step: Arc::new(move |x: &[T], out: &mut [T]| iterate(&step, dim, k, x, out)),
            inverse,
            ..self.clone()
        }
    }

    /// `f^-1`, when the inverse is known.
    pub fn inverted(&self) -> Option<Self> {
        let inv = self.inverse.clone()?;
        Some(Self {
            name: format!("{}^-1", self.name),
            kind: self.derived("inverse"),
            step: inv,
            inverse: Some(self.step.clone()),
            ..self.clone()
        })
    }

    /// Same dynamics sampled only on points where `keep` holds.
    pub fn restricted(&self, label: &str, keep: Arc<dyn Fn(&[T]) -> bool + Send + Sync>) -> Self {
        let sampler = self.sampler.clone();
        Self {
            name: format!("{}|{}", self.name, label),
            kind: self.derived(&format!("restrict {label}")),
            sampler: Arc::new(move |d| Ok(sampler(d)?.filter(|p| keep(p)))),
            ..self.clone()
        }
    }

    /// Same dynamics with a replacement sampler.
    pub fn with_sampler(&self, label: &str, sampler: SamplerFn<T>) -> Self {
        Self {
            name: format!("{}|{}", self.name, label),
            kind: self.derived(&format!("sample {label}")),
            sampler,
            ..self.clone()
        }
    }
}

fn iterate<T: Real>(f: &MapFn<T>, dim: usize, k: usize, x: &[T], out: &mut [T]) {
    let mut cur = x.to_vec();
    let mut next = vec![T::zero(); dim];
    for _ in 0..k {
        f(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    out.copy_from_slice(&cur);
}
