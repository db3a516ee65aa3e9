// Published coefficients, kept digit for digit.
#![allow(clippy::excessive_precision)]

//! Lanczos approximation of the gamma function for positive real arguments.

use crate::error::{Error, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;

const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for x > 0.
///
/// Arguments below 1/2 are shifted up once with Γ(x) = Γ(x + 1) / x so the
/// series is always evaluated where it is most accurate.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("gamma requires finite x > 0, got {x}")));
    }
    if x < 0.5 {
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}
