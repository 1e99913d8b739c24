use proptest::prelude::*;
use repscan_core::entropy::{
    renyi_entropy, renyi_entropy_power, shannon_entropy, Base, Convention,
};
use repscan_core::estimation::CheckTolerances;
use repscan_core::grid::{convolve_gaussian, normalize, GridSpec, GriddedDensity};
use repscan_core::infodist::moment_identity_check;
use repscan_core::io::{density_json, fmt_f64, parse_grid};
use repscan_core::DMatrix;

fn mixture(w: f64, m1: f64, v1: f64, m2: f64, v2: f64) -> GriddedDensity {
    let spec = GridSpec::line(-12.0, 12.0, 512).unwrap();
    let g = |x: f64, m: f64, v: f64| {
        (-(x - m).powi(2) / (2.0 * v)).exp() / (2.0 * std::f64::consts::PI * v).sqrt()
    };
    let values = spec
        .axis(0)
        .coords()
        .iter()
        .map(|&x| w * g(x, m1, v1) + (1.0 - w) * g(x, m2, v2))
        .collect();
    normalize(&GriddedDensity::from_raw(spec, values).unwrap()).unwrap()
}

fn arb_mixture() -> impl Strategy<Value = GriddedDensity> {
    (
        0.1f64..0.9,
        -2.0f64..2.0,
        0.3f64..1.5,
        -2.0f64..2.0,
        0.3f64..1.5,
    )
        .prop_map(|(w, m1, v1, m2, v2)| mixture(w, m1, v1, m2, v2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn renyi_entropy_decreases_with_order(d in arb_mixture(), q in 0.3f64..3.0, dq in 0.05f64..1.0) {
        let lo = renyi_entropy(&d, q, Base::Nats).unwrap().value;
        let hi = renyi_entropy(&d, q + dq, Base::Nats).unwrap().value;
        prop_assert!(hi <= lo + 1e-12);
    }

    #[test]
    fn entropy_is_translation_invariant(d in arb_mixture(), shift in -5.0f64..5.0, q in 0.5f64..2.5) {
        let t = d.translated(&[shift]).unwrap();
        let a = renyi_entropy(&d, q, Base::Bits).unwrap().value;
        let b = renyi_entropy(&t, q, Base::Bits).unwrap().value;
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn entropy_power_scales_quadratically(d in arb_mixture(), s in 0.3f64..3.0, p in 0.6f64..3.0) {
        let n = renyi_entropy_power(&d, p, Convention::NatsExp).unwrap();
        let ns = renyi_entropy_power(&d.scaled(s).unwrap(), p, Convention::NatsExp).unwrap();
        prop_assert!((ns / (s * s * n) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn noise_raises_shannon_entropy(d in arb_mixture(), eps in 0.05f64..1.0) {
        let sigma = DMatrix::identity(1, 1);
        let noisy = convolve_gaussian(&d, &sigma, eps).unwrap();
        prop_assert!(shannon_entropy(&noisy, Base::Nats).value > shannon_entropy(&d, Base::Nats).value);
    }

    #[test]
    fn moment_identity_holds(d in arb_mixture(), p in 0.5f64..3.0) {
        let r = moment_identity_check(&d, p, CheckTolerances::default()).unwrap();
        prop_assert!(r.satisfied, "{r:?}");
    }

    #[test]
    fn grid_files_round_trip(d in arb_mixture()) {
        let back = parse_grid(&density_json(&d).unwrap()).unwrap().density().unwrap();
        prop_assert_eq!(back.values(), d.values());
    }

    #[test]
    fn floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }
}
