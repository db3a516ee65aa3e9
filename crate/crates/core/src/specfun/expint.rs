//! Exponential integral E₁ in the closed right half-plane and the cosine
//! integral derived from it.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_RADIUS: f64 = 2.0;
const MAX_TERMS: usize = 10_000;

/// E₁(z) = ∫_z^∞ e^{-t}/t dt for Re z ≥ 0, z ≠ 0.
///
/// Power series inside |z| < 2, modified-Lentz continued fraction outside.
pub fn exp_integral_e1(z: Complex64) -> Result<Complex64> {
    if z.re < 0.0 || z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("E1 requires Re z >= 0 and z != 0, got {z}")));
    }
    if z.norm() < SERIES_RADIUS {
        Ok(e1_series(z))
    } else {
        Ok(e1_continued_fraction(z))
    }
}

fn e1_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for k in 1..MAX_TERMS {
        power *= -z / k as f64;
        let term = power / k as f64;
        sum += term;
        if term.norm() < 1e-17 * sum.norm().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

fn e1_continued_fraction(z: Complex64) -> Complex64 {
    let tiny = 1e-300;
    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_TERMS {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (d * an + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h * (-z).exp()
}

/// Ci(x) = −∫_x^∞ cos t / t dt for x > 0.
pub fn cosine_integral(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("cosine integral requires x > 0, got {x}")));
    }
    Ok(-exp_integral_e1(Complex64::new(0.0, x))?.re)
}
