//! One line per acceptance criterion. Criteria recorded as unattainable are
//! printed as FAIL and checked against the expected set at the end.

use std::f64::consts::LN_2;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use oge::cascade::{build_cascade, envelope_f64, verify_bounds, Target};
use oge::entropy_report::{classes_agree, entropy_numbers, entropy_profile, fit_curve, DeltaRule};
use oge::estimators::{covers_samples, curve_on_points, greedy_separated, greedy_spanning, separated_curve, spanning_curve, OrbitTable};
use oge::growth_order::{compare_sequences, project_onto_family, Classification, Family, OrderRelation, SymbolicOrder, DEFAULT_TAIL};
use oge::homology::{catalog, manning_check, power_norm_growth, shub_exponent, IntMatrix};
use oge::systems::*;

/// Criteria that cannot be met; see the decisions ledger.
const UNATTAINABLE: &[u32] = &[5, 7];

struct Line {
    id: u32,
    pass: bool,
    detail: String,
}

/// Written to the raw stdout handle so the lines survive output capture.
fn report(id: u32, pass: bool, secs: f64, detail: String) -> Line {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stdout(), "criterion {id}: {verdict} ({secs:.1} s) {detail}");
    Line { id, pass, detail }
}

fn timed(id: u32, limit: f64, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (pass, detail) = f();
    let secs = t.elapsed().as_secs_f64();
    let in_time = secs < limit;
    report(id, pass && in_time, secs, if in_time { detail } else { format!("{detail}; over {limit} s") })
}

fn equivalent(a: &oge::growth_order::GrowthSequence<f64>, b: &oge::growth_order::GrowthSequence<f64>) -> bool {
    compare_sequences(a, b, DEFAULT_TAIL) == OrderRelation::Equivalent || classes_agree(&fit_curve(a).0, &fit_curve(b).0)
}

fn shift() -> (bool, String) {
    let spec = full_shift::<f64>(2, 14).unwrap();
    let eps = [0.25, 0.125, 0.0625];
    let p = entropy_profile(&spec, &eps, 10, DeltaRule::Fixed(1.0 / 65536.0)).unwrap();
    let rel = (p.h - LN_2).abs() / LN_2;
    let pairwise = (0..3).all(|i| (0..3).all(|j| compare_sequences(&p.curves[i], &p.curves[j], DEFAULT_TAIL) == OrderRelation::Equivalent));
    (rel <= 0.05 && pairwise, format!("h = {:.4} (rel err {rel:.4}), pairwise equivalent = {pairwise}", p.h))
}

fn rotation_zero() -> (bool, String) {
    let spec = rotation::<f64>(GOLDEN).unwrap();
    let e = entropy_numbers(&spec, &[0.2, 0.1, 0.05], 500).unwrap();
    let constant = e.full_profile.curves.iter().chain(&e.omega_profile.curves).all(|c| c.is_constant());
    let zero = Classification::Class(SymbolicOrder::zero());
    let pass = constant && e.omega == zero && e.full == zero;
    (pass, format!("constant curves = {constant}, numbers = {}", e.pretty()))
}

fn morse_smale() -> (bool, String) {
    let spec = morse_smale_circle::<f64>(0.05, MORSE_SMALE_DEPTH).unwrap();
    let curve = curve_on_points(&spec, &spec.sample_space(0.0125).unwrap(), 0.05, 200).unwrap();
    let pol = project_onto_family(&curve, &Family::Polynomial);
    let e = entropy_numbers(&spec, &[0.2, 0.1, 0.05], 200).unwrap();
    let omega_bounded = e.omega_profile.curves.iter().all(|c| c.is_constant());
    let pass = (0.8..=1.2).contains(&pol)
        && omega_bounded
        && e.omega == Classification::Class(SymbolicOrder::zero())
        && e.full == Classification::Class(SymbolicOrder::poly(1));
    (pass, format!("h_pol = {pol:.3}, omega bounded = {omega_bounded}, numbers = {}", e.pretty()))
}

fn denjoy_omega() -> (bool, String) {
    let spec = denjoy::<f64>(GOLDEN, 2.0, 2000).unwrap();
    let pts = spec.sample_omega(0.0125).unwrap();
    let curve = curve_on_points(&spec, &pts, 0.05, 200).unwrap();
    let pol = project_onto_family(&curve, &Family::Polynomial);
    ((0.8..=1.2).contains(&pol), format!("{} omega samples, h_pol = {pol:.3}", pts.len()))
}

fn twist() -> (bool, String) {
    let (eps, a, b) = (0.1, 0.0, 0.05);
    let spec = twist_annulus::<f64>(TwistProfile::identity(), a, b, 120).unwrap();
    let table = OrbitTable::build(&spec, &spec.sample_space(eps / 4.0).unwrap(), 299).unwrap();
    let l = 2.0 / eps;
    let mut worst: f64 = 1.0;
    let mut cells = Vec::new();
    for n in [100, 200, 300] {
        let (_, count) = greedy_spanning(&table, n, eps);
        let closed = (2.0 * l * n as f64 * (b - a) / eps).ceil();
        let ratio = closed / count as f64;
        worst = worst.max(ratio.max(1.0 / ratio));
        cells.push(format!("n={n}: {count} vs {closed}"));
    }
    let curve = separated_curve(&table, eps, 300).unwrap();
    let pol = project_onto_family(&curve, &Family::Polynomial);
    let pass = worst <= 4.0 && (0.8..=1.2).contains(&pol);
    (pass, format!("{}; worst factor {worst:.1} (limit 4); h_pol = {pol:.3}", cells.join(", ")))
}

/// `(spec, n_max, eps)`. On the shift, `eps = 1/2` reads only the first
/// symbol, so `f^2` at `n = 8` stays inside the 16-symbol words.
fn catalog_systems() -> Vec<(DynamicalSystemSpec<f64>, usize, f64)> {
    vec![
        (full_shift(2, 16).unwrap(), 8, 0.5),
        (rotation(GOLDEN).unwrap(), 40, 0.1),
        (conjugated_rotation(GOLDEN, 0.05).unwrap(), 40, 0.1),
        (morse_smale_circle(0.05, 64).unwrap(), 40, 0.1),
        (denjoy(GOLDEN, 2.0, 400).unwrap(), 40, 0.1),
        (twist_annulus(TwistProfile::identity(), 0.0, 1.0, 1).unwrap(), 40, 0.1),
        (torus_linear([[1, 1], [0, 1]]).unwrap(), 40, 0.1),
        (torus_linear([[2, 1], [1, 1]]).unwrap(), 12, 0.1),
    ]
}

fn sandwich() -> (bool, String) {
    let mut bad = Vec::new();
    for (spec, n_max, eps) in catalog_systems() {
        let pts = spec.sample_space(eps / 4.0).unwrap();
        let table = OrbitTable::build(&spec, &pts, n_max).unwrap();
        for n in [1, n_max / 2, n_max] {
            let (mut centers, _) = greedy_separated(&table, n, eps);
            centers.sort_unstable();
            if !covers_samples(&table, n, eps, &centers) {
                bad.push(format!("{} spans at n={n}", spec.name));
            }
        }
        let curves: Vec<_> = [2.0 * eps, eps, eps / 2.0].iter().map(|&e| separated_curve(&table, e, n_max).unwrap()).collect();
        let in_n = curves.iter().all(|c| c.values().windows(2).all(|w| w[0] <= w[1]));
        let in_eps = curves.windows(2).all(|w| w[0].values().iter().zip(w[1].values()).all(|(a, b)| a <= b));
        if !(in_n && in_eps) {
            bad.push(format!("{} monotone", spec.name));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "8 systems".into() } else { bad.join(", ") })
}

fn cascade() -> (bool, String) {
    let required = ["CC1", "CUB1", "CUB2", "CUB3", "CUB4", "CLB1", "CLB2", "CLB3"];
    let mut pass = true;
    let mut parts = Vec::new();
    for (target, k) in [(Target::Log2, 5), (Target::Log2, 6), (Target::Root { degree: 4 }, 5), (Target::Root { degree: 4 }, 6)] {
        let name = format!("{} K={k}", target.name());
        let params = match build_cascade(target, k) {
            Ok(p) => p,
            Err(e) => {
                pass = false;
                parts.push(format!("{name}: {e}"));
                continue;
            }
        };
        let cert = verify_bounds(&params, 10_000, 0.05).unwrap();
        let ids = required.iter().all(|id| cert.passes(id));
        let envelope = (1..=4096u64).all(|n| envelope_f64(&params, n).unwrap() <= target.eval(n as f64));
        let weyl = cert.weyl.iter().all(|w| w.pass);
        let lambda = !cert.witnesses.is_empty() && cert.witnesses.iter().all(|w| w.pass);
        let ok = cert.all_pass && ids && envelope && weyl && lambda;
        pass &= ok;
        let visit = cert.transitivity.as_ref().map(|v| format!("{}/{}", v.visited, v.cells * v.cells)).unwrap_or_default();
        parts.push(format!("{name}: {} (grid visit {visit})", if ok { "ok" } else { "fail" }));
    }
    (pass, parts.join("; "))
}

fn homology() -> (bool, String) {
    let mut worst: f64 = 0.0;
    for (name, a) in catalog() {
        let k = shub_exponent(&a).unwrap();
        let k = *k.numer() as f64 / *k.denom() as f64;
        let g = power_norm_growth(&a, 512).unwrap();
        worst = worst.max((g.degree - k).abs());
        let _ = name;
    }
    let spec = torus_linear::<f64>([[1, 1], [0, 1]]).unwrap();
    let table = OrbitTable::build(&spec, &spec.sample_space(0.0125).unwrap(), 99).unwrap();
    let curve = spanning_curve(&table, 0.05, 100).unwrap();
    let m = manning_check(&IntMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap(), &curve, 0.05);
    (worst <= 0.15 && m.pass, format!("max |degree - k| = {worst:.3} over 10 matrices, norm inequality = {}", m.pass))
}

fn power_inverse_union() -> (bool, String) {
    let mut bad = Vec::new();
    for (spec, n_max, eps) in catalog_systems() {
        let delta = eps / 4.0;
        let curve = |s: &DynamicalSystemSpec<f64>| curve_on_points(s, &s.sample_space(delta).unwrap(), eps, n_max).unwrap();
        let base = curve(&spec);
        let sq = curve(&spec.power(2));
        if !compare_sequences(&sq, &base, DEFAULT_TAIL).is_ge() {
            bad.push(format!("{} power", spec.name));
        }
        if let Some(inv) = spec.inverted() {
            if !equivalent(&curve(&inv), &base) {
                bad.push(format!("{} inverse", spec.name));
            }
        }
        let left = spec.restricted("left", Arc::new(|p: &[f64]| p[0] < 0.5));
        let right = spec.restricted("right", Arc::new(|p: &[f64]| p[0] >= 0.5));
        if !equivalent(&base, &curve(&left).pointwise_max(&curve(&right))) {
            bad.push(format!("{} union", spec.name));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "8 systems".into() } else { bad.join(", ") })
}

#[test]
fn acceptance() {
    let lines = vec![
        timed(1, 60.0, shift),
        timed(2, 10.0, rotation_zero),
        timed(3, f64::INFINITY, morse_smale),
        timed(4, f64::INFINITY, denjoy_omega),
        timed(5, f64::INFINITY, twist),
        timed(6, f64::INFINITY, sandwich),
        timed(7, 300.0, cascade),
        timed(8, f64::INFINITY, homology),
        timed(9, f64::INFINITY, power_inverse_union),
    ];
    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    for l in lines.iter().filter(|l| !l.pass && !UNATTAINABLE.contains(&l.id)) {
        eprintln!("unexpected failure {}: {}", l.id, l.detail);
    }
    assert_eq!(failed, UNATTAINABLE);
}
