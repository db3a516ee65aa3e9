use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinon_dcf::kinematics::*;
use std::f64::consts::{PI, TAU};

/// Random point strictly inside the band, away from both edges.
fn in_band(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let k: f64 = rng.gen_range(0.01..TAU - 0.01);
        let (lo, hi) = band_boundaries(k);
        let t: f64 = rng.gen_range(1e-6..1.0 - 1e-6);
        let omega = lo + (hi - lo) * t;
        if classify(k, omega).region == Region::Inside {
            return (k, omega);
        }
    }
}

#[test]
fn thousand_point_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let (k, omega) = in_band(&mut rng);
        let pair = invert_kinematics(k, omega).unwrap();
        let e = spinon_energy(pair.beta1) + spinon_energy(pair.beta2);
        let p = fold_momentum(-spinon_momentum(pair.beta1) - spinon_momentum(pair.beta2));
        assert!((e - omega).abs() < 1e-10, "energy at ({k}, {omega})");
        let dk = (p - k).abs();
        assert!(dk.min(TAU - dk) < 1e-10, "momentum at ({k}, {omega})");
    }
}

proptest! {
    #[test]
    fn momentum_decreasing(b in -30.0f64..30.0, d in 1e-3f64..5.0) {
        prop_assert!(spinon_momentum(b + d) < spinon_momentum(b));
    }

    #[test]
    fn energy_is_even(b in -30.0f64..30.0) {
        prop_assert_eq!(spinon_energy(b), spinon_energy(-b));
        prop_assert!((spinon_momentum(b) + spinon_momentum(-b) + PI).abs() < 1e-14);
    }

    #[test]
    fn forward_then_invert(b1 in -8.0f64..8.0, b2 in -8.0f64..8.0) {
        prop_assume!((b1 - b2).abs() > 1e-3);
        let pair = RapidityPair::new(b1, b2);
        let (k, omega) = pair.forward();
        prop_assume!(classify(k, omega).region == Region::Inside);
        let back = invert_kinematics(k, omega).unwrap();
        let (k2, w2) = back.forward();
        prop_assert!((w2 - omega).abs() < 1e-9);
        let dk = (k2 - k).abs();
        prop_assert!(dk.min(TAU - dk) < 1e-9);
    }

    #[test]
    fn swap_symmetric(b1 in -8.0f64..8.0, b2 in -8.0f64..8.0) {
        prop_assert_eq!(RapidityPair::new(b1, b2), RapidityPair::new(b2, b1));
        prop_assert!(RapidityPair::new(b1, b2).difference() <= 0.0);
    }

    #[test]
    fn reflection_symmetric_band(k in 0.0f64..TAU) {
        let (l1, u1) = band_boundaries(k);
        let (l2, u2) = band_boundaries(TAU - k);
        prop_assert!((l1 - l2).abs() < 1e-12 && (u1 - u2).abs() < 1e-12);
        prop_assert!(l1 <= u1 + 1e-15);
    }

    #[test]
    fn reflection_negates_rapidity_difference(k in 0.05f64..(TAU - 0.05), t in 0.01f64..0.99) {
        let (lo, hi) = band_boundaries(k);
        let omega = lo + (hi - lo) * t;
        prop_assume!(classify(k, omega).region == Region::Inside);
        let a = invert_kinematics(k, omega).unwrap();
        let b = invert_kinematics(TAU - k, omega).unwrap();
        prop_assert!((a.difference() - b.difference()).abs() < 1e-8);
    }
}
