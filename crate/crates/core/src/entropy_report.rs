//! Per-scale aggregation of growth curves into an entropy profile and the
//! pair of entropy numbers `(o(f|Omega), o(f))`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::estimators::{curve_on_points, separated_curve, OrbitTable};
use crate::growth_order::{
    classify_sequence, compare_symbolic, default_catalog, project_onto_family, Classification, Family, GrowthSequence,
    OrderRelation,
};
use crate::systems::{DynamicalSystemSpec, PointSet};
use crate::{Error, Real, Result};

/// Relative tolerance when matching exponential rates across scales.
pub const RATE_AGREEMENT: f64 = 0.05;

/// Sample mesh as a function of the scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "value", rename_all = "snake_case")]
pub enum DeltaRule {
    /// One mesh shared by every scale.
    Fixed(f64),
    /// `delta = c * eps`, `c <= 1/4`.
    Fraction(f64),
}

impl Default for DeltaRule {
    fn default() -> Self {
        DeltaRule::Fraction(0.25)
    }
}

impl DeltaRule {
    pub fn delta(&self, eps: f64) -> f64 {
        match *self {
            DeltaRule::Fixed(d) => d,
            DeltaRule::Fraction(c) => c * eps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct EntropyProfile<T> {
    pub system: String,
    pub epsilons: Vec<T>,
    pub curves: Vec<GrowthSequence<T>>,
    pub fitted: Vec<Classification>,
    pub residuals: Vec<f64>,
    pub h: T,
    pub h_pol: T,
    pub stable_class: Classification,
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct EntropyNumbers<T> {
    pub omega: Classification,
    pub full: Classification,
    pub omega_profile: EntropyProfile<T>,
    pub full_profile: EntropyProfile<T>,
}

impl<T> EntropyNumbers<T> {
    pub fn pretty(&self) -> String {
        format!("({}, {})", self.omega.pretty(), self.full.pretty())
    }
}

/// Same class up to [`RATE_AGREEMENT`] on exponential rates.
pub fn classes_agree(a: &Classification, b: &Classification) -> bool {
    match (a.class(), b.class()) {
        (Some(x), Some(y)) if x.sentinel.is_none() && y.sentinel.is_none() && x.exp_rate > 0.0 && y.exp_rate > 0.0 => {
            (x.exp_rate - y.exp_rate).abs() <= RATE_AGREEMENT * x.exp_rate.max(y.exp_rate)
                && x.poly_deg == y.poly_deg
                && x.log_deg == y.log_deg
        }
        (Some(x), Some(y)) => compare_symbolic(x, y) == OrderRelation::Equivalent,
        _ => false,
    }
}

fn check_epsilons<T: Real>(epsilons: &[T]) -> Result<()> {
    if epsilons.len() < 3 {
        return Err(Error::Invalid("need at least three scales".into()));
    }
    if epsilons.iter().any(|e| !(e.f64() > 0.0)) || epsilons.windows(2).any(|w| !(w[0] > w[1])) {
        return Err(Error::Invalid("scales must be positive and strictly descending".into()));
    }
    Ok(())
}

/// Fit one curve against the default catalog, with the exponential entry
/// at the curve's own projected rate.
pub fn fit_curve<T: Real>(curve: &GrowthSequence<T>) -> (Classification, f64) {
    let rate = project_onto_family(curve, &Family::Exponential).f64();
    let rate = (rate.is_finite() && rate > 0.0).then_some(rate);
    classify_sequence(curve, &default_catalog(rate))
}

/// Assemble a profile from curves ordered by descending scale.
///
/// A set separated at a larger scale is separated at every smaller one,
/// so each curve is first raised to the running maximum over larger scales.
pub fn profile_from_curves<T: Real>(system: &str, epsilons: &[T], curves: Vec<GrowthSequence<T>>) -> Result<EntropyProfile<T>> {
    check_epsilons(epsilons)?;
    if curves.len() != epsilons.len() {
        return Err(Error::Invalid("one curve per scale".into()));
    }
    let mut hulled: Vec<GrowthSequence<T>> = Vec::with_capacity(curves.len());
    for c in curves {
        let c = match hulled.last() {
            Some(prev) => c.pointwise_max(prev),
            None => c,
        };
        hulled.push(c);
    }
    let (fitted, residuals): (Vec<_>, Vec<_>) = hulled.iter().map(fit_curve).unzip();
    let finest = hulled.last().expect("at least three curves");
    let h = project_onto_family(finest, &Family::Exponential);
    let h_pol = project_onto_family(finest, &Family::Polynomial);
    let k = fitted.len();
    let stabilized = classes_agree(&fitted[k - 1], &fitted[k - 2]);
    let stable_class = if stabilized { fitted[k - 1].clone() } else { Classification::Unresolved };
    Ok(EntropyProfile {
        system: system.to_string(),
        epsilons: epsilons.to_vec(),
        curves: hulled,
        fitted,
        residuals,
        h,
        h_pol,
        stable_class,
        stabilized,
    })
}

fn curves_on<T: Real>(
    spec: &DynamicalSystemSpec<T>,
    epsilons: &[T],
    n_max: usize,
    rule: DeltaRule,
    sample: impl Fn(T) -> Result<PointSet<T>> + Sync,
) -> Result<Vec<GrowthSequence<T>>> {
    match rule {
        DeltaRule::Fixed(d) => {
            if epsilons.iter().any(|e| d > e.f64() / 4.0 * (1.0 + 1e-12)) {
                let limit = epsilons.last().unwrap().f64() / 4.0;
                return Err(Error::MeshTooCoarse { delta: d, limit });
            }
            let pts = sample(T::lit(d))?;
            let table = OrbitTable::build(spec, &pts, n_max.saturating_sub(1))?;
            epsilons.par_iter().map(|&e| separated_curve(&table, e, n_max)).collect()
        }
        DeltaRule::Fraction(c) => {
            if !(c > 0.0 && c <= 0.25) {
                return Err(Error::Invalid(format!("mesh fraction {c} outside (0, 1/4]")));
            }
            epsilons
                .par_iter()
                .map(|&e| {
                    let pts = sample(T::lit(rule.delta(e.f64())))?;
                    curve_on_points(spec, &pts, e, n_max)
                })
                .collect()
        }
    }
}

/// Growth curves over the full sample at every scale, fitted and projected.
pub fn entropy_profile<T: Real>(
    spec: &DynamicalSystemSpec<T>,
    epsilons: &[T],
    n_max: usize,
    rule: DeltaRule,
) -> Result<EntropyProfile<T>> {
    check_epsilons(epsilons)?;
    let curves = curves_on(spec, epsilons, n_max, rule, |d| spec.sample_space(d))?;
    profile_from_curves(&spec.name, epsilons, curves)
}

/// Entropy numbers with the default mesh rule.
pub fn entropy_numbers<T: Real>(spec: &DynamicalSystemSpec<T>, epsilons: &[T], n_max: usize) -> Result<EntropyNumbers<T>> {
    entropy_numbers_with(spec, epsilons, n_max, DeltaRule::default())
}

/// `(o(f|Omega), o(f))` on a common scale grid. Fails if the first exceeds
/// the second.
pub fn entropy_numbers_with<T: Real>(
    spec: &DynamicalSystemSpec<T>,
    epsilons: &[T],
    n_max: usize,
    rule: DeltaRule,
) -> Result<EntropyNumbers<T>> {
    if spec.omega_sampler.is_none() {
        return Err(Error::NoOmegaSampler(spec.name.clone()));
    }
    check_epsilons(epsilons)?;
    let omega_curves = curves_on(spec, epsilons, n_max, rule, |d| spec.sample_omega(d))?;
    let omega_profile = profile_from_curves(&spec.name, epsilons, omega_curves)?;
    let full_profile = entropy_profile(spec, epsilons, n_max, rule)?;
    let omega = omega_profile.stable_class.clone();
    let full = full_profile.stable_class.clone();
    if let (Some(a), Some(b)) = (omega.class(), full.class()) {
        let strictly_above = compare_symbolic(a, b) == OrderRelation::Greater && !classes_agree(&omega, &full);
        if strictly_above {
            return Err(Error::Inconsistent(format!("o(f|Omega) = {} exceeds o(f) = {}", a.pretty(), b.pretty())));
        }
    }
    Ok(EntropyNumbers { omega, full, omega_profile, full_profile })
}

/// Plain-text table: one row per scale.
pub fn summary_table<T: Real>(p: &EntropyProfile<T>) -> String {
    let mut out = format!("{:<12} {:>10} {:<14} {:>10}\n", "eps", "g(n_max)", "class", "residual");
    for i in 0..p.epsilons.len() {
        let c = &p.curves[i];
        out.push_str(&format!(
            "{:<12} {:>10} {:<14} {:>10.4}\n",
            p.epsilons[i],
            c.at(c.window()),
            p.fitted[i].pretty(),
            p.residuals[i]
        ));
    }
    out.push_str(&format!(
        "h = {}  h_pol = {}  stable = {}{}\n",
        p.h,
        p.h_pol,
        p.stable_class.pretty(),
        if p.stabilized { "" } else { " (not stabilized)" }
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth_order::SymbolicOrder;
    use crate::systems::{full_shift, morse_smale_circle, rotation, GOLDEN, MORSE_SMALE_DEPTH};

    #[test]
    fn rotation_profile_is_zero() {
        let spec = rotation::<f64>(GOLDEN).unwrap();
        let p = entropy_profile(&spec, &[0.2, 0.1, 0.05], 500, DeltaRule::default()).unwrap();
        assert!(p.curves.iter().all(|c| c.is_constant()));
        assert_eq!(p.stable_class, Classification::Class(SymbolicOrder::zero()));
        assert_eq!((p.h, p.h_pol), (0.0, 0.0));
    }

    #[test]
    fn shift_profile_is_exponential() {
        let spec = full_shift::<f64>(2, 14).unwrap();
        let p = entropy_profile(&spec, &[0.25, 0.125, 0.0625], 10, DeltaRule::Fixed(1.0 / 65536.0)).unwrap();
        assert!((p.h - std::f64::consts::LN_2).abs() < 0.05 * std::f64::consts::LN_2);
        let c = p.stable_class.class().unwrap();
        assert!(c.exp_rate > 0.0);
    }

    #[test]
    fn morse_smale_numbers() {
        let spec = morse_smale_circle::<f64>(0.05, MORSE_SMALE_DEPTH).unwrap();
        let e = entropy_numbers(&spec, &[0.2, 0.1, 0.05], 200).unwrap();
        assert_eq!(e.omega, Classification::Class(SymbolicOrder::zero()));
        assert_eq!(e.full, Classification::Class(SymbolicOrder::poly(1)));
    }

    #[test]
    fn rejects_bad_scales() {
        let spec = rotation::<f64>(GOLDEN).unwrap();
        assert!(entropy_profile(&spec, &[0.1, 0.2, 0.05], 10, DeltaRule::default()).is_err());
        assert!(entropy_profile(&spec, &[0.2, 0.1], 10, DeltaRule::default()).is_err());
    }

    #[test]
    fn missing_omega_sampler() {
        let spec = crate::systems::torus_linear::<f64>([[1, 1], [0, 1]]).unwrap();
        let err = entropy_numbers(&spec, &[0.2, 0.1, 0.05], 10).unwrap_err();
        assert!(matches!(err, Error::NoOmegaSampler(_)));
    }
}
