use num_rational::Rational64;
use oge::growth_order::*;
use proptest::prelude::*;

fn seq(n: usize, f: impl Fn(f64) -> f64) -> GrowthSequence<f64> {
    GrowthSequence::new((1..=n).map(|k| f(k as f64)).collect()).unwrap()
}

/// Non-decreasing sequences from nonnegative increments.
fn increasing() -> impl Strategy<Value = GrowthSequence<f64>> {
    (1.0f64..100.0, prop::collection::vec(0.0f64..50.0, 16..200)).prop_map(|(start, steps)| {
        let mut v = start;
        let vals = steps
            .into_iter()
            .map(|s| {
                v += s;
                v
            })
            .collect();
        GrowthSequence::new(vals).unwrap()
    })
}

/// `c * exp(t n) n^a ln(n+1)^b` on a window.
fn generated() -> impl Strategy<Value = GrowthSequence<f64>> {
    (0.5f64..5.0, 0.0f64..0.5, 0u8..4, 0u8..3, 32usize..160)
        .prop_map(|(c, t, a, b, n)| seq(n, |k| c * (t * k).exp() * k.powi(a as i32) * (k + 1.0).ln().powi(b as i32)))
}

fn symbolic_catalog() -> Vec<SymbolicOrder> {
    let mut out = Vec::new();
    for t in [0.0, 0.5, 1.0] {
        for a in [0, 1, 2] {
            for (bn, bd) in [(0, 1), (1, 2), (1, 1), (2, 1)] {
                out.push(SymbolicOrder::new(t, a.into(), Rational64::new(bn, bd)).unwrap());
            }
        }
    }
    out.push(SymbolicOrder::poly_log(Rational64::new(1, 2), 0.into()));
    out.push(SymbolicOrder::poly_log(Rational64::new(3, 2), 1.into()));
    out.push(SymbolicOrder::poly_log(Rational64::new(5, 2), 0.into()));
    out.push(SymbolicOrder::poly(3));
    out.push(SymbolicOrder::poly(5));
    out.push(SymbolicOrder::exp(2.0));
    out.push(SymbolicOrder::exp(0.25));
    out.push(SymbolicOrder::new(0.25, 4.into(), 0.into()).unwrap());
    out.push(SymbolicOrder::new(2.0, 0.into(), 3.into()).unwrap());
    for s in [Sentinel::SupE, Sentinel::InfE, Sentinel::SupP, Sentinel::InfP, Sentinel::Zero] {
        out.push(SymbolicOrder::sentinel(s));
    }
    out
}

#[test]
fn symbolic_catalog_is_total_and_transitive() {
    let cat = symbolic_catalog();
    assert_eq!(cat.len(), 50);
    let rel: Vec<Vec<OrderRelation>> = cat.iter().map(|a| cat.iter().map(|b| compare_symbolic(a, b)).collect()).collect();
    for i in 0..50 {
        assert_eq!(rel[i][i], OrderRelation::Equivalent, "{}", cat[i].pretty());
        for j in 0..50 {
            assert_ne!(rel[i][j], OrderRelation::Inconclusive);
            assert_eq!(rel[i][j], rel[j][i].reverse(), "{} vs {}", cat[i].pretty(), cat[j].pretty());
            if !rel[i][j].is_le() {
                continue;
            }
            for k in 0..50 {
                if rel[j][k].is_le() {
                    assert!(rel[i][k].is_le(), "{} <= {} <= {}", cat[i].pretty(), cat[j].pretty(), cat[k].pretty());
                    let strict = rel[i][j] == OrderRelation::Less || rel[j][k] == OrderRelation::Less;
                    assert_eq!(strict, rel[i][k] == OrderRelation::Less);
                }
            }
        }
    }
}

#[test]
fn classify_examples() {
    let cat = vec![SymbolicOrder::zero(), SymbolicOrder::poly_log(0.into(), 1.into()), SymbolicOrder::poly(1), SymbolicOrder::poly(2)];
    let (c, _) = classify_sequence(&seq(200, |n| 5.0 * n), &cat);
    assert_eq!(c, Classification::Class(SymbolicOrder::poly(1)));
    let (c, _) = classify_sequence(&seq(200, |_| 7.0), &cat);
    assert_eq!(c, Classification::Class(SymbolicOrder::zero()));
}

/// Direct residual: min over `rho` in [0, 1] of the variance of
/// `ln a - ln(g / g(N) + rho)` on 64 log-spaced points of `[sqrt N, N]`.
fn residual_oracle(a: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64, n_max: usize) -> f64 {
    let n = n_max as f64;
    let lo = n.sqrt().ln();
    let pts: Vec<f64> = (0..64).map(|i| (lo + (n.ln() - lo) * i as f64 / 63.0).exp().round()).collect();
    (0..=1000)
        .map(|j| {
            let rho = j as f64 / 1000.0;
            let d: Vec<f64> = pts.iter().map(|&k| a(k).ln() - (g(k) / g(n) + rho).ln()).collect();
            let mean = d.iter().sum::<f64>() / 64.0;
            d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 64.0
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn n_log_n_is_unresolved_between_n_and_n_squared() {
    let n_max = 4000;
    let f = |n: f64| n * (n + 1.0).ln();
    let (c, r) = classify_sequence(&seq(n_max, f), &[SymbolicOrder::poly(1), SymbolicOrder::poly(2)]);
    let r1 = residual_oracle(f, |n| n, n_max);
    let r2 = residual_oracle(f, |n| n * n, n_max);
    assert!(r1 > RESIDUAL_THRESHOLD && r2 > RESIDUAL_THRESHOLD, "{r1} {r2}");
    assert_eq!(c, Classification::Unresolved);
    assert!((r - r1.min(r2)).abs() < 0.2 * r1.min(r2), "{r} vs {}", r1.min(r2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compare_is_reflexive(a in increasing()) {
        prop_assert_eq!(compare_sequences(&a, &a, DEFAULT_TAIL), OrderRelation::Equivalent);
    }

    #[test]
    fn compare_is_antisymmetric(a in generated(), b in generated(), tail in 0.2f64..1.0) {
        let ab = compare_sequences(&a, &b, tail);
        let ba = compare_sequences(&b, &a, tail);
        if matches!(ab, OrderRelation::Less | OrderRelation::Greater) {
            prop_assert_eq!(ba, ab.reverse());
        }
    }

    #[test]
    fn compare_ignores_constant_factors(a in increasing(), i in 0usize..3) {
        let c = [0.1, 1.0, 10.0][i];
        prop_assert_eq!(compare_sequences(&a.scale(c).unwrap(), &a, DEFAULT_TAIL), OrderRelation::Equivalent);
    }

    #[test]
    fn exponential_rate_is_recovered(t in 0.05f64..1.0, c in 0.5f64..10.0, n in 48usize..200) {
        let a = seq(n, |k| c * (t * k).exp());
        let h = project_onto_family(&a, &Family::Exponential);
        prop_assert!((h - t).abs() <= 0.05 * t, "t = {t}, h = {h}");
    }

    #[test]
    fn poly_bounded_has_no_exponential_rate(a in 0u8..5, b in 0u8..3, c in 0.5f64..10.0, n in 32usize..400) {
        let s = seq(n, |k| c * k.powi(a as i32) * (k + 1.0).ln().powi(b as i32));
        prop_assert_eq!(project_onto_family(&s, &Family::Exponential), 0.0);
    }
}
