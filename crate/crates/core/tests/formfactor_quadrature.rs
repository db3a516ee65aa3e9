use spinon_dcf::formfactor::*;
use spinon_dcf::specfun::QuadratureSpec;
use std::f64::consts::{FRAC_PI_2, PI};

fn half() -> FormFactorArg {
    FormFactorArg::new(0.0, FRAC_PI_2).unwrap()
}

#[test]
fn trivial_point_is_one() {
    let spec = QuadratureSpec::default();
    for sign in [Sign::Plus, Sign::Minus] {
        let v = a_sq(sign, FormFactorArg::new(0.0, PI).unwrap(), &spec).unwrap();
        assert!((v.value - 1.0).abs() < 1e-10);
    }
}

#[test]
fn half_period_matches_high_precision_reference() {
    // References from an independent 25-digit evaluation of the integral.
    let spec = QuadratureSpec::default();
    let p = a_sq(Sign::Plus, half(), &spec).unwrap().value;
    let m = a_sq(Sign::Minus, half(), &spec).unwrap().value;
    assert!((p - 0.870_372_194_435_008_8).abs() < 1e-9);
    assert!((m - 0.574_466_881_176_700_2).abs() < 1e-9);
}

#[test]
fn independent_of_split_point_and_tolerance() {
    let base = QuadratureSpec::default();
    for sign in [Sign::Plus, Sign::Minus] {
        let reference = a_sq(sign, half(), &base).unwrap().value;
        for split in [30.0, 40.0, 60.0] {
            let spec = base.with_split_point(split);
            for s in [spec, spec.with_tolerances_scaled(0.5)] {
                let v = a_sq(sign, half(), &s).unwrap().value;
                assert!(
                    (v - reference).abs() < 1e-9,
                    "{sign:?} split {split}: {v} vs {reference}"
                );
            }
        }
    }
}

#[test]
fn real_argument_reference() {
    let spec = QuadratureSpec::default();
    let v = a_sq(Sign::Minus, FormFactorArg::real(2.633_915_793_849_633).unwrap(), &spec).unwrap();
    assert!((v.value - 2.991_466_990_328_708).abs() < 1e-8);
}

#[test]
fn continuous_and_even_in_gamma() {
    let spec = QuadratureSpec::default();
    let mut previous = None;
    for i in 0..60 {
        let g = 1.0 + 0.1 * i as f64;
        let v = a_sq(Sign::Minus, FormFactorArg::real(g).unwrap(), &spec).unwrap().value;
        let w = a_sq(Sign::Minus, FormFactorArg::real(-g).unwrap(), &spec)
            .unwrap()
            .value;
        assert!((v - w).abs() < 1e-10 * v.max(1.0));
        if let Some(p) = previous {
            // smooth and growing: neighbouring ratios stay close to 1
            let r: f64 = v / p;
            assert!(r > 1.0 && r < 1.5, "jump at gamma = {g}: {p} -> {v}");
        }
        previous = Some(v);
    }
}

#[test]
fn quadratic_vanishing_at_origin() {
    let spec = QuadratureSpec::default();
    let v = |g: f64| a_sq(Sign::Minus, FormFactorArg::real(g).unwrap(), &spec).unwrap().value;
    let r = v(2e-3) / v(1e-3);
    assert!((r - 4.0).abs() < 1e-2, "{r}");
}

#[test]
fn boundary_point_is_flagged() {
    let spec = QuadratureSpec::default();
    let r = a_sq(Sign::Minus, FormFactorArg::real(0.0).unwrap(), &spec);
    assert!(matches!(r, Err(spinon_dcf::Error::BoundaryDivergent)));
    assert!(a_sq(Sign::Plus, FormFactorArg::real(0.0).unwrap(), &spec).is_ok());
}

#[test]
fn prefactor_constants() {
    let c = constants(&QuadratureSpec::default()).unwrap();
    assert!((c.prefactor - 0.563_735_248_4).abs() < 1e-9);
    assert!(c.prefactor_rel_err() < 1e-9);
}
