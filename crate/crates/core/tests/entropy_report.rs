use oge::entropy_report::*;
use oge::growth_order::{compare_symbolic, Classification, OrderRelation, SymbolicOrder};
use oge::systems::*;

fn class(c: &Classification) -> &SymbolicOrder {
    c.class().expect("stabilised class")
}

#[test]
fn circle_trichotomy() {
    let eps = [0.2, 0.1, 0.05];
    let zero = SymbolicOrder::zero();
    let linear = SymbolicOrder::poly(1);
    let r = entropy_numbers(&rotation::<f64>(GOLDEN).unwrap(), &eps, 300).unwrap();
    assert_eq!((class(&r.omega), class(&r.full)), (&zero, &zero));
    let m = entropy_numbers(&morse_smale_circle::<f64>(0.05, MORSE_SMALE_DEPTH).unwrap(), &eps, 200).unwrap();
    assert_eq!((class(&m.omega), class(&m.full)), (&zero, &linear));
    // depth 3000 keeps n = 300 inside the trusted range n <= depth / 10
    let d = entropy_numbers(&denjoy::<f64>(GOLDEN, 2.0, 3000).unwrap(), &eps, 300).unwrap();
    assert_eq!((class(&d.omega), class(&d.full)), (&linear, &linear), "{}", d.pretty());
}

#[test]
fn omega_never_exceeds_full() {
    let eps = [0.2, 0.1, 0.05];
    for spec in [conjugated_rotation::<f64>(GOLDEN, 0.1).unwrap(), twist_annulus(TwistProfile::identity(), 0.0, 1.0, 1).unwrap()] {
        let Ok(e) = entropy_numbers(&spec, &eps, 60) else { continue };
        if let (Some(a), Some(b)) = (e.omega.class(), e.full.class()) {
            assert_ne!(compare_symbolic(a, b), OrderRelation::Greater, "{}", spec.name);
        }
    }
}

/// A fitted rate never exceeds the log of the sample size at that scale.
#[test]
fn rates_stay_below_sample_entropy() {
    let spec = torus_linear::<f64>([[2, 1], [1, 1]]).unwrap();
    let eps = [0.2, 0.1, 0.05];
    let p = entropy_profile(&spec, &eps, 12, DeltaRule::default()).unwrap();
    let largest = spec.sample_space(0.05 / 4.0).unwrap().len() as f64;
    assert!(p.h <= largest.ln());
    for c in p.fitted.iter().filter_map(|c| c.class()) {
        assert!(c.sentinel.is_none() || compare_symbolic(c, &SymbolicOrder::exp(1.0)) != OrderRelation::Greater);
    }
}

#[test]
fn summary_lists_every_scale() {
    let p = entropy_profile(&rotation::<f64>(GOLDEN).unwrap(), &[0.2, 0.1, 0.05], 50, DeltaRule::default()).unwrap();
    let table = summary_table(&p);
    assert_eq!(table.lines().count(), 5);
    assert!(table.contains("stable = 0"));
}
