use spinon_dcf::xxz::*;
use std::f64::consts::PI;

const DELTAS: [f64; 4] = [-1.1, -1.5, -2.0, -5.0];

fn alphas() -> impl Iterator<Item = f64> {
    // 50 points across one period, avoiding nothing in particular
    (0..50).map(|i| -PI / 2.0 + PI * (i as f64 + 0.37) / 50.0)
}

#[test]
fn momentum_forms_agree() {
    for d in DELTAS {
        let a = anisotropy_from_delta(d).unwrap();
        for alpha in alphas() {
            let theta = momentum_theta(&a, alpha).unwrap();
            let ell = momentum_elliptic(&a, alpha);
            let diff = wrap_angle(theta - ell).abs();
            assert!(diff < 1e-6, "Delta {d}, alpha {alpha}: {theta} vs {ell}");
        }
    }
}

#[test]
fn energy_forms_agree() {
    for d in DELTAS {
        let a = anisotropy_from_delta(d).unwrap();
        for alpha in alphas() {
            let direct = xxz_energy(&a, alpha);
            let logd = xxz_energy_log_derivative(&a, alpha).unwrap();
            assert!(
                (direct - logd).abs() < 1e-6 * direct.max(1.0),
                "Delta {d}, alpha {alpha}: {direct} vs {logd}"
            );
        }
    }
}

#[test]
fn energy_bounds() {
    for d in DELTAS {
        let a = anisotropy_from_delta(d).unwrap();
        for alpha in alphas() {
            let e = xxz_energy(&a, alpha);
            assert!(e >= a.min_energy() - 1e-12 && e <= a.energy_scale() + 1e-12);
        }
    }
}
