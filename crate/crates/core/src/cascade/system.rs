use std::sync::Arc;

use num_traits::ToPrimitive;

use super::exact::to_f64;
use super::params::CascadeParams;
use crate::systems::torus_spec;
use crate::systems::{DynamicalSystemSpec, MapFn, SystemKind};
use crate::{Error, Real, Result};

/// Stages with `q_k` at or above this are dropped from the floating-point map.
pub const MAX_FLOAT_Q: u64 = 1 << 40;

/// `(x, y) -> (x + alpha, y + sum_k b_k cos(2 pi q_k (x + alpha)))` on `T^2`,
/// truncated to the stages that are meaningful in floating point.
pub fn cylindrical_cascade<T: Real>(params: &CascadeParams) -> Result<DynamicalSystemSpec<T>> {
    let mut terms: Vec<(T, T)> = Vec::new();
    for k in 1..=params.stages() {
        let q = match params.q(k).to_u64() {
            Some(q) if q < MAX_FLOAT_Q => q,
            _ => continue,
        };
        let b = to_f64(params.b(k));
        if !(b.is_finite()) {
            return Err(Error::Invalid(format!("amplitude of stage {k} is not finite")));
        }
        if b > 1e-300 {
            terms.push((T::lit(b), T::lit(q as f64)));
        }
    }
    let alpha = params.alpha_f64();
    let a = T::lit(alpha);
    let tau = T::TAU();
    let phi = move |terms: &[(T, T)], x: T| -> T {
        terms.iter().fold(T::zero(), |acc, &(b, q)| acc + b * (tau * (q * x).frac1()).cos())
    };
    let fwd_terms = terms.clone();
    let step: MapFn<T> = Arc::new(move |p: &[T], out: &mut [T]| {
        let x = (p[0] + a).frac1();
        out[0] = x;
        out[1] = (p[1] + phi(&fwd_terms, x)).frac1();
    });
    let inverse: MapFn<T> = Arc::new(move |p: &[T], out: &mut [T]| {
        out[0] = (p[0] - a).frac1();
        out[1] = (p[1] - phi(&terms, p[0])).frac1();
    });
    Ok(torus_spec(
        format!("cascade({}, K={})", params.target, params.stages()),
        SystemKind::CylindricalCascade { stages: params.stages(), alpha },
        step,
        Some(inverse),
    ))
}
