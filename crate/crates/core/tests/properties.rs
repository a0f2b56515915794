use critline::sum::neumaier;
use critline::{EvalConfig, Evaluator, Exec};
use proptest::prelude::*;

fn ev() -> Evaluator {
    Evaluator::new(EvalConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exec_modes_agree_in_order(xs in prop::collection::vec(-1e6f64..1e6, 0..200)) {
        let f = |x: &f64| x.sin() * x;
        prop_assert_eq!(Exec::Sequential.map(&xs, f), Exec::Parallel.map(&xs, f));
    }

    #[test]
    fn hardy_z_squared_is_zeta_modulus_squared(t in 20.0f64..900.0) {
        let e = ev();
        let z = e.hardy_z(t).unwrap();
        let zeta = e.zeta_half(t).unwrap();
        prop_assert!((z * z - zeta.norm_sqr()).abs() <= 1e-8 * (1.0 + z * z));
    }

    #[test]
    fn zeta_is_conjugate_symmetric(sigma in 0.1f64..3.0, t in 1.0f64..200.0) {
        let e = ev();
        let s = num_complex::Complex64::new(sigma, t);
        let a = e.zeta_em(s).unwrap();
        let b = e.zeta_em(s.conj()).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn compensated_sum_is_permutation_stable(mut xs in prop::collection::vec(-1e3f64..1e3, 1..300)) {
        let forward = neumaier(xs.iter().copied());
        xs.reverse();
        let backward = neumaier(xs.iter().copied());
        prop_assert!((forward - backward).abs() <= 1e-12 * xs.iter().map(|x| x.abs()).sum::<f64>().max(1.0));
    }
}
