use spinon_dcf::dcf::*;
use spinon_dcf::kinematics::{band_boundaries, Region};
use spinon_dcf::specfun::QuadratureSpec;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn outside_band_is_exact_zero() {
    let v = s2_pm(PI, 7.0, &spec()).unwrap();
    assert_eq!((v.s_pm, v.s_zz, v.region), (0.0, 0.0, Region::Above));
    let v = s2_pm(0.0, 1.0, &spec()).unwrap();
    assert_eq!(v.s_zz, 0.0);
    let v = s2_pm(FRAC_PI_2, 3.0, &spec()).unwrap();
    assert_eq!((v.s_zz, v.region), (0.0, Region::Below));
    // on the boundaries themselves
    assert_eq!(s2_pm(FRAC_PI_2, PI, &spec()).unwrap().s_zz, 0.0);
    assert_eq!(s2_pm(PI, TAU, &spec()).unwrap().s_zz, 0.0);
}

#[test]
fn worked_point_by_composition() {
    // C |A₋(γ)|² / √(w_u² − ω²) at k = ω = π, with the 25-digit form-factor
    // value at γ = −2 asinh √3 and w_u = 2π.
    let c = 0.563_735_248_4;
    let expected = c * 2.991_466_990_328_708 / (3.0f64.sqrt() * PI);
    let v = s2_pm(PI, PI, &spec()).unwrap();
    assert!((v.s_pm - expected).abs() < 1e-8 * expected, "{} vs {expected}", v.s_pm);
    assert_eq!(v.s_zz, 4.0 * v.s_pm);
}

#[test]
fn reflection_and_positivity() {
    for i in 0..20 {
        let k = 0.15 + 0.14 * i as f64;
        let (lo, hi) = band_boundaries(k);
        let omega = lo + (hi - lo) * (0.05 + 0.045 * i as f64);
        let a = s2_pm(k, omega, &spec()).unwrap();
        let b = s2_pm(TAU - k, omega, &spec()).unwrap();
        assert!(a.s_pm > 0.0);
        assert!((a.s_pm - b.s_pm).abs() < 1e-9 * a.s_pm.max(1.0));
        assert_eq!(a.s_zz, 4.0 * a.s_pm);
        assert_eq!(s2_component(Component::Xx, k, omega, &spec()).unwrap(), a.s_zz);
        assert_eq!(s2_component(Component::Pm, k, omega, &spec()).unwrap(), a.s_pm);
    }
}

#[test]
fn vanishes_at_upper_edge() {
    let values: Vec<f64> = (1..=8)
        .map(|j| s2_pm(PI, TAU * (1.0 - 4f64.powi(-j)), &spec()).unwrap().s_pm)
        .collect();
    let tail = &values[3..];
    assert!(tail.windows(2).all(|w| w[1] < w[0]), "{values:?}");
    assert!(*values.last().unwrap() < 1e-2 * values[0]);
}

#[test]
fn diverges_at_lower_edge() {
    let (lo, hi) = band_boundaries(FRAC_PI_2);
    let values: Vec<f64> = (1..=8)
        .map(|j| s2_pm(FRAC_PI_2, lo + (hi - lo) * 4f64.powi(-j), &spec()).unwrap().s_pm)
        .collect();
    assert!(values.windows(2).all(|w| w[1] > w[0]), "{values:?}");
    assert!(values[7] > 10.0 * values[0]);
}

#[test]
fn lineshape_is_deterministic_and_sorted() {
    let a = lineshape(2.0, 64, &spec()).unwrap();
    let b = lineshape(2.0, 64, &spec()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.omega_grid.len(), 64);
    assert!(a.omega_grid.windows(2).all(|w| w[0] <= w[1]));
    assert!(a.values.iter().all(|v| *v >= 0.0));
}
