//! Spinon dispersion of the massive antiferromagnetic XXZ chain (Δ < −1).
//!
//! The spinon momentum and energy are available in two equivalent forms:
//! a theta-function quotient `τ(ξ) = ξ⁻¹ θ_{q⁴}(qξ²) / θ_{q⁴}(qξ⁻²)` on the
//! unit circle `ξ = i e^{iα}`, and the elliptic form
//! `p(α) = am(2Kα/π) − π/2`, `e(α) = (2K/π) sinh(πK'/K) dn(2Kα/π)`.
//!
//! The two momentum forms differ by a constant winding: numerically
//! `τ(ξ) = −e^{−i p(α)}` for every α and Δ, i.e. the arguments agree modulo
//! 2π only after a shift of π ([`THETA_WINDING_OFFSET`]). The energy, a
//! logarithmic derivative, is insensitive to it.
//!
//! Nothing here feeds the isotropic structure factor.

use crate::error::{Error, Result};
use crate::specfun::{elliptic_from_nome, jacobi_with_complement, theta_fn, EllipticPair};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// `arg τ(ξ) = −p(α) + THETA_WINDING_OFFSET (mod 2π)`.
pub const THETA_WINDING_OFFSET: f64 = PI;

/// Central-difference step in α for the log-derivative energy.
pub const DERIVATIVE_STEP: f64 = 1e-5;

const UNIT_CIRCLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anisotropy {
    /// Δ < −1.
    pub delta_param: f64,
    /// q ∈ (−1, 0) with Δ = (q + 1/q)/2.
    pub q: f64,
    /// −q = exp(−πK'/K).
    pub nome: f64,
    pub elliptic: EllipticPair,
}

pub fn anisotropy_from_delta(delta_param: f64) -> Result<Anisotropy> {
    if !(delta_param < -1.0) || !delta_param.is_finite() {
        return Err(Error::Domain(format!(
            "massive antiferromagnetic regime needs Delta < -1, got {delta_param}"
        )));
    }
    // q = Δ + √(Δ²−1), written as the reciprocal of the other root
    let q = 1.0 / (delta_param - (delta_param * delta_param - 1.0).sqrt());
    anisotropy_from_q(q)
}

pub fn anisotropy_from_q(q: f64) -> Result<Anisotropy> {
    if !(q > -1.0 && q < 0.0) {
        return Err(Error::Domain(format!("q must lie in (-1, 0), got {q}")));
    }
    Ok(Anisotropy {
        delta_param: 0.5 * (q + 1.0 / q),
        q,
        nome: -q,
        elliptic: elliptic_from_nome(-q)?,
    })
}

impl Anisotropy {
    /// Scale 2K/π mapping α to the elliptic argument.
    fn scale(&self) -> f64 {
        2.0 * self.elliptic.k / PI
    }

    /// (2K/π) sinh(πK'/K): the spinon bandwidth prefactor.
    pub fn energy_scale(&self) -> f64 {
        self.scale() * (PI * self.elliptic.k_prime / self.elliptic.k).sinh()
    }

    /// Gap: the minimum of the spinon energy, reached at α = π/2.
    pub fn min_energy(&self) -> f64 {
        self.energy_scale() * self.elliptic.m1.sqrt()
    }
}

pub fn spectral_point(alpha: f64) -> Complex64 {
    Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, alpha)
}

pub fn tau_fn(a: &Anisotropy, xi: Complex64) -> Result<Complex64> {
    if (xi.norm() - 1.0).abs() > UNIT_CIRCLE_TOL {
        return Err(Error::Domain(format!(
            "xi must lie on the unit circle, |xi| = {}",
            xi.norm()
        )));
    }
    let q = Complex64::new(a.q, 0.0);
    let base = q.powu(4);
    let xi2 = xi * xi;
    Ok(theta_fn(base, q * xi2)? / theta_fn(base, q / xi2)? / xi)
}

/// p(α) = am(2Kα/π) − π/2.
pub fn momentum_elliptic(a: &Anisotropy, alpha: f64) -> f64 {
    let e = &a.elliptic;
    jacobi_with_complement(a.scale() * alpha, e.m, e.m1).am - FRAC_PI_2
}

/// Momentum read off the theta quotient, `−arg τ + THETA_WINDING_OFFSET`,
/// as a principal value in (−π, π].
pub fn momentum_theta(a: &Anisotropy, alpha: f64) -> Result<f64> {
    let tau = tau_fn(a, spectral_point(alpha))?;
    Ok(wrap_angle(-tau.arg() + THETA_WINDING_OFFSET))
}

/// Maps an angle into (−π, π].
pub fn wrap_angle(x: f64) -> f64 {
    let w = (x + PI).rem_euclid(TAU) - PI;
    if w == -PI {
        PI
    } else {
        w
    }
}

/// e(α) = (2K/π) sinh(πK'/K) dn(2Kα/π).
pub fn xxz_energy(a: &Anisotropy, alpha: f64) -> f64 {
    let e = &a.elliptic;
    a.energy_scale() * jacobi_with_complement(a.scale() * alpha, e.m, e.m1).dn
}

/// e(ξ) = ((1 − q²)/2q) ξ d/dξ log τ(ξ), with the derivative taken by a
/// central difference along the circle (ξ d/dξ = −i d/dα there).
pub fn xxz_energy_log_derivative(a: &Anisotropy, alpha: f64) -> Result<f64> {
    let h = DERIVATIVE_STEP;
    let ahead = tau_fn(a, spectral_point(alpha + h))?;
    let behind = tau_fn(a, spectral_point(alpha - h))?;
    let dlog_dalpha = (ahead / behind).ln() / (2.0 * h);
    let xi_dlog = Complex64::new(0.0, -1.0) * dlog_dalpha;
    Ok(((1.0 - a.q * a.q) / (2.0 * a.q) * xi_dlog).re)
}
