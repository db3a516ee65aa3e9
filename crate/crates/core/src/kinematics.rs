//! Isotropic spinon dispersion, the two-spinon band, and the closed-form
//! inversion of the energy and momentum constraints.
//!
//! A spinon with rapidity β has momentum p ∈ [−π, 0] fixed by
//! `cot p = sinh β` and energy `e = π / cosh β = −π sin p`. The momentum is
//! the continuous decreasing branch `p = −π/2 − atan(sinh β)`: p = −π/2 at
//! β = 0, p → 0⁻ as β → −∞ and p → −π⁺ as β → +∞.
//!
//! Momentum transfers are folded into [0, 2π). The band
//! `π|sin k| < ω < 2π sin(k/2)` and every quantity derived from it is
//! symmetric under k → 2π − k.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Absolute tolerance for classifying a point as on a band boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinonState {
    pub beta: f64,
    pub p: f64,
    pub e: f64,
}

impl SpinonState {
    pub fn from_rapidity(beta: f64) -> Self {
        SpinonState {
            beta,
            p: spinon_momentum(beta),
            e: spinon_energy(beta),
        }
    }
}

pub fn spinon_momentum(beta: f64) -> f64 {
    -FRAC_PI_2 - beta.sinh().atan()
}

pub fn spinon_energy(beta: f64) -> f64 {
    PI / beta.cosh()
}

/// Rapidity of a spinon with momentum p ∈ (−π, 0).
pub fn rapidity_from_momentum(p: f64) -> Result<f64> {
    if !(p < 0.0 && p > -PI) {
        return Err(Error::BranchEndpoint(p));
    }
    let (s, c) = p.sin_cos();
    Ok((c / s).asinh())
}

pub fn fold_momentum(k: f64) -> f64 {
    let folded = k.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative k
    if folded >= TAU {
        0.0
    } else {
        folded
    }
}

/// Lower (des Cloizeaux–Pearson) and upper edges of the two-spinon band.
pub fn band_boundaries(k: f64) -> (f64, f64) {
    let k = fold_momentum(k);
    (PI * k.sin().abs(), TAU * (0.5 * k).sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Inside,
    Below,
    Above,
    OnLower,
    OnUpper,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::Inside => "INSIDE",
            Region::Below => "BELOW",
            Region::Above => "ABOVE",
            Region::OnLower => "ON_LOWER",
            Region::OnUpper => "ON_UPPER",
        }
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "INSIDE" => Region::Inside,
            "BELOW" => Region::Below,
            "ABOVE" => Region::Above,
            "ON_LOWER" => Region::OnLower,
            "ON_UPPER" => Region::OnUpper,
            _ => return Err(Error::Domain(format!("unknown region {s:?}"))),
        })
    }
}

/// A transfer (k, ω) with its band classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandPoint {
    pub k: f64,
    pub omega: f64,
    pub region: Region,
}

pub fn classify(k: f64, omega: f64) -> BandPoint {
    let k = fold_momentum(k);
    let (lower, upper) = band_boundaries(k);
    let region = if (omega - lower).abs() <= BOUNDARY_TOL {
        Region::OnLower
    } else if (omega - upper).abs() <= BOUNDARY_TOL {
        Region::OnUpper
    } else if omega < lower {
        Region::Below
    } else if omega > upper {
        Region::Above
    } else {
        Region::Inside
    };
    BandPoint { k, omega, region }
}

/// Unordered pair of rapidities, stored with `beta1 <= beta2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RapidityPair {
    pub beta1: f64,
    pub beta2: f64,
}

impl RapidityPair {
    pub fn new(a: f64, b: f64) -> Self {
        if a <= b {
            RapidityPair { beta1: a, beta2: b }
        } else {
            RapidityPair { beta1: b, beta2: a }
        }
    }

    /// β̄₁ − β̄₂ (never positive).
    pub fn difference(&self) -> f64 {
        self.beta1 - self.beta2
    }

    /// The transfer (k, ω) carried by the two spinons, k folded.
    pub fn forward(&self) -> (f64, f64) {
        let k = -spinon_momentum(self.beta1) - spinon_momentum(self.beta2);
        let omega = spinon_energy(self.beta1) + spinon_energy(self.beta2);
        (fold_momentum(k), omega)
    }
}

/// Solves `ω = e(β̄₁) + e(β̄₂)`, `k = −p(β̄₁) − p(β̄₂)` for a point strictly
/// inside the band.
///
/// With `p₁ + p₂ = −k` the energy condition becomes
/// `cos((p₁ − p₂)/2) = ω / (2π sin(k/2))`, so
/// `p₁,₂ = −k/2 ± arccos(ω / w_u)`.
pub fn invert_kinematics(k: f64, omega: f64) -> Result<RapidityPair> {
    let point = classify(k, omega);
    if point.region != Region::Inside {
        return Err(Error::OutOfBand { k, omega });
    }
    let (_, upper) = band_boundaries(point.k);
    let half_gap = (omega / upper).clamp(-1.0, 1.0).acos();
    let centre = -0.5 * point.k;
    let b1 = rapidity_from_momentum(centre + half_gap)?;
    let b2 = rapidity_from_momentum(centre - half_gap)?;
    Ok(RapidityPair::new(b1, b2))
}
