use oge::systems::*;
use proptest::prelude::*;

fn invertible() -> Vec<DynamicalSystemSpec<f64>> {
    vec![
        rotation(GOLDEN).unwrap(),
        conjugated_rotation(GOLDEN, 0.1).unwrap(),
        morse_smale_circle(0.05, 16).unwrap(),
        denjoy(GOLDEN, 2.0, 300).unwrap(),
        twist_annulus(TwistProfile::identity(), 0.0, 1.0, 1).unwrap(),
        torus_linear([[1, 1], [0, 1]]).unwrap(),
        torus_linear([[2, 1], [1, 1]]).unwrap(),
    ]
}

fn point(spec: &DynamicalSystemSpec<f64>, u: f64, v: f64) -> Vec<f64> {
    if spec.dim == 1 {
        vec![u]
    } else {
        vec![u, v]
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inverse_undoes_step(i in 0usize..7, u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let spec = &invertible()[i];
        let x = point(spec, u, v);
        let back = spec.inverted().unwrap().apply(&spec.apply(&x));
        prop_assert!(spec.distance(&back, &x) < 1e-9, "{}", spec.name);
    }

    #[test]
    fn metric_is_a_metric(i in 0usize..7, p in prop::array::uniform6(0.0f64..1.0)) {
        let spec = &invertible()[i];
        let (x, y, z) = (point(spec, p[0], p[1]), point(spec, p[2], p[3]), point(spec, p[4], p[5]));
        prop_assert_eq!(spec.distance(&x, &x), 0.0);
        prop_assert_eq!(spec.distance(&x, &y), spec.distance(&y, &x));
        prop_assert!(spec.distance(&x, &z) <= spec.distance(&x, &y) + spec.distance(&y, &z) + 1e-12);
    }

    #[test]
    fn step_n_composes(i in 0usize..7, u in 0.0f64..1.0, v in 0.0f64..1.0, a in 0usize..20, b in 0usize..20) {
        let spec = &invertible()[i];
        let x = point(spec, u, v);
        prop_assert_eq!(spec.step_n(&x, 0).unwrap(), x.clone());
        let ab = spec.step_n(&spec.step_n(&x, a).unwrap(), b).unwrap();
        prop_assert!(spec.distance(&ab, &spec.step_n(&x, a + b).unwrap()) < 1e-9);
    }

    #[test]
    fn shift_step_drops_the_first_symbol(word in prop::collection::vec(0u8..3, 16), n in 0usize..16) {
        let s = full_shift::<f64>(3, 16).unwrap();
        let w: Vec<f64> = word.iter().map(|&c| c as f64).collect();
        let out = s.step_n(&w, n).unwrap();
        prop_assert_eq!(&out[..16 - n], &w[n..]);
    }

    #[test]
    fn denjoy_rotation_number(depth in 100usize..600, tail in 1.5f64..3.0) {
        let d = DenjoyMap::new(GOLDEN, tail, depth).unwrap();
        prop_assert!(d.inserted_length() < 1.0);
        prop_assert!((d.rotation_number(0.1, 20_000) - GOLDEN).abs() < 1e-3);
    }
}
