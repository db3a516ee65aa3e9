//! Infinite q-products: the q-Pochhammer symbol and the product theta
//! function built from it.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Default truncation threshold: a factor `1 - y x^n` is dropped (and the
/// product stopped) once `|y x^n|` falls below this.
pub const DEFAULT_PRODUCT_TOL: f64 = 1e-17;

/// Hard cap on the number of factors, reached only for `|x|` within about
/// 1e-5 of the unit circle.
const MAX_FACTORS: usize = 10_000_000;

/// A truncated infinite product together with the number of factors used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Product {
    pub value: Complex64,
    pub factors: usize,
}

/// `(y; x)_∞ = ∏_{n≥0} (1 − y xⁿ)`.
pub fn q_pochhammer(y: Complex64, x: Complex64) -> Result<Complex64> {
    q_pochhammer_with_tol(y, x, DEFAULT_PRODUCT_TOL).map(|p| p.value)
}

/// Same as [`q_pochhammer`] with an explicit truncation threshold, reporting
/// the truncation index.
pub fn q_pochhammer_with_tol(y: Complex64, x: Complex64, tol: f64) -> Result<Product> {
    let modulus = x.norm();
    if !(modulus < 1.0) {
        return Err(Error::Divergence { modulus });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("product tolerance must be positive, got {tol}")));
    }
    let mut value = Complex64::new(1.0, 0.0);
    let mut term = y;
    let mut factors = 0;
    while term.norm() >= tol {
        value *= Complex64::new(1.0, 0.0) - term;
        term *= x;
        factors += 1;
        if factors >= MAX_FACTORS {
            return Err(Error::Divergence { modulus });
        }
    }
    Ok(Product { value, factors })
}

/// `θ_x(y) = (x; x)_∞ (y; x)_∞ (x/y; x)_∞`.
pub fn theta_fn(x: Complex64, y: Complex64) -> Result<Complex64> {
    if y == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("theta function requires y != 0".into()));
    }
    Ok(q_pochhammer(x, x)? * q_pochhammer(y, x)? * q_pochhammer(x / y, x)?)
}
