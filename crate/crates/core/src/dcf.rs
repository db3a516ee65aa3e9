//! The exact two-spinon dynamical structure factor.
//!
//! Inside the band `π|sin k| < ω < 2π sin(k/2)`
//!
//! ```text
//! S₂⁺⁻(k, ω) = C |A₋(β̄₁ − β̄₂)|² / √((2π sin(k/2))² − ω²),
//! C = π² Γ(3/4)² / (4 Γ(1/4)² |A₊(iπ/2)|² |A₋(iπ/2)|²),
//! ```
//!
//! and zero elsewhere, including on the two boundaries themselves. The
//! normalisation is the literal one of
//! `S(k, ω) = ∫dt Σₙ e^{i(ωt + kn)} ⟨σ⁺(t, n) σ⁻(0, 0)⟩` per boundary sector,
//! with no extra factors of 2π. Both sectors together give
//! `Sˣˣ = Sʸʸ = Sᶻᶻ = 4 S⁺⁻`.

use crate::error::{Error, Result};
use crate::formfactor::{a_sq, constants, FormFactorArg, Sign};
use crate::kinematics::{band_boundaries, classify, fold_momentum, invert_kinematics, Region};
use crate::specfun::{gauss_legendre, QuadratureSpec};
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeFlag {
    None,
    /// |β̄₁ − β̄₂| exceeded the form-factor cap; the value is the one at the cap.
    NearLower,
    /// Rapidities coincided numerically; the vanishing upper-edge limit is returned.
    NearUpper,
}

impl EdgeFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            EdgeFlag::None => "NONE",
            EdgeFlag::NearLower => "NEAR_LOWER",
            EdgeFlag::NearUpper => "NEAR_UPPER",
        }
    }
}

impl std::fmt::Display for EdgeFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EdgeFlag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "NONE" => EdgeFlag::None,
            "NEAR_LOWER" => EdgeFlag::NearLower,
            "NEAR_UPPER" => EdgeFlag::NearUpper,
            _ => return Err(Error::Domain(format!("unknown edge flag {s:?}"))),
        })
    }
}

/// One evaluated point. Outside the band `s_pm`, `s_zz` and `gamma_arg` are 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcfValue {
    pub k: f64,
    pub omega: f64,
    pub s_pm: f64,
    pub s_zz: f64,
    pub region: Region,
    /// β̄₁ − β̄₂ passed to the form factor.
    pub gamma_arg: f64,
    pub edge_flag: EdgeFlag,
}

/// S₂⁺⁻(k, ω). `k` is folded into [0, 2π).
pub fn s2_pm(k: f64, omega: f64, spec: &QuadratureSpec) -> Result<DcfValue> {
    if !(omega >= 0.0) || !omega.is_finite() || !k.is_finite() {
        return Err(Error::Domain(format!(
            "need finite k and omega >= 0, got ({k}, {omega})"
        )));
    }
    let point = classify(k, omega);
    let mut value = DcfValue {
        k: point.k,
        omega,
        s_pm: 0.0,
        s_zz: 0.0,
        region: point.region,
        gamma_arg: 0.0,
        edge_flag: EdgeFlag::None,
    };
    if point.region != Region::Inside {
        return Ok(value);
    }
    let pair = invert_kinematics(point.k, omega)?;
    let gamma = pair.difference();
    value.gamma_arg = gamma;
    let amplitude = match a_sq(Sign::Minus, FormFactorArg::real(gamma)?, spec) {
        Ok(a) => {
            if a.capped {
                value.edge_flag = EdgeFlag::NearLower;
            }
            a.value
        }
        Err(Error::BoundaryDivergent) => {
            value.edge_flag = EdgeFlag::NearUpper;
            0.0
        }
        Err(e) => return Err(e),
    };
    let c = constants(spec)?;
    let (_, upper) = band_boundaries(point.k);
    let root = ((upper - omega) * (upper + omega)).sqrt();
    value.s_pm = c.prefactor * amplitude / root;
    value.s_zz = 4.0 * value.s_pm;
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Xx,
    Yy,
    Zz,
    Pm,
}

impl std::str::FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "xx" => Component::Xx,
            "yy" => Component::Yy,
            "zz" => Component::Zz,
            "pm" | "+-" => Component::Pm,
            _ => return Err(Error::Domain(format!("unknown component {s:?}"))),
        })
    }
}

pub fn s2_component(component: Component, k: f64, omega: f64, spec: &QuadratureSpec) -> Result<f64> {
    let v = s2_pm(k, omega, spec)?;
    Ok(match component {
        Component::Pm => v.s_pm,
        Component::Xx | Component::Yy | Component::Zz => v.s_zz,
    })
}

/// Sᶻᶻ along ω at fixed k.
#[derive(Debug, Clone, PartialEq)]
pub struct Lineshape {
    pub k: f64,
    pub omega_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
}

/// Frequency grid on `[0, 1.05 w_u]` (on `[0, 1]` when the band is empty).
///
/// An eighth of the points sample the two gaps outside the band. Of the rest,
/// half sit at cell centres of a uniform interior grid and half approach the
/// two edges geometrically with ratio 1/2, starting inside the first
/// uniform cell.
pub fn lineshape_grid(k: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(Error::Domain(format!("lineshape needs at least 2 points, got {count}")));
    }
    let (lower, upper) = band_boundaries(k);
    let width = upper - lower;
    if width <= 0.0 {
        let end = if upper > 0.0 { 1.05 * upper } else { 1.0 };
        return Ok((0..count).map(|i| end * i as f64 / (count - 1) as f64).collect());
    }
    let top = 1.05 * upper;
    let n_out = count / 8;
    let n_below = n_out / 2;
    let n_above = n_out - n_below;
    let n_in = count - n_out;
    let n_uniform = n_in / 2;
    let n_cluster = n_in - n_uniform;
    let n_low = n_cluster - n_cluster / 2;
    let n_high = n_cluster / 2;

    let mut grid = Vec::with_capacity(count);
    grid.extend((0..n_below).map(|i| lower * i as f64 / n_below as f64));
    let first_cell = if n_uniform > 0 {
        width / (2.0 * n_uniform as f64)
    } else {
        0.5 * width
    };
    grid.extend((1..=n_low).map(|j| lower + first_cell * 0.5f64.powi(j as i32)));
    grid.extend((0..n_uniform).map(|i| lower + width * (i as f64 + 0.5) / n_uniform as f64));
    grid.extend((1..=n_high).map(|j| upper - first_cell * 0.5f64.powi(j as i32)));
    grid.extend((1..=n_above).map(|i| upper + (top - upper) * i as f64 / n_above as f64));
    grid.sort_by(f64::total_cmp);
    Ok(grid)
}

pub fn lineshape(k: f64, omega_count: usize, spec: &QuadratureSpec) -> Result<Lineshape> {
    let k = fold_momentum(k);
    let omega_grid = lineshape_grid(k, omega_count)?;
    let values = omega_grid
        .par_iter()
        .map(|&w| s2_pm(k, w, spec).map(|v| v.s_zz))
        .collect::<Result<Vec<_>>>()?;
    let (lower, upper) = band_boundaries(k);
    Ok(Lineshape {
        k,
        omega_grid,
        values,
        lower,
        upper,
    })
}

/// ∫ dω Sᶻᶻ(k, ω) over `[w_l + lower_cut, w_u]`, by `points`-node
/// Gauss–Legendre after the substitution `ω = ω₀ + (w_u − ω₀) u²` that
/// absorbs the integrable lower-edge singularity.
pub fn omega_integral(k: f64, lower_cut: f64, points: usize, spec: &QuadratureSpec) -> Result<f64> {
    let (lower, upper) = band_boundaries(k);
    let start = lower + lower_cut.max(0.0);
    if !(start < upper) {
        return Ok(0.0);
    }
    let (nodes, weights) = gauss_legendre(points);
    let span = upper - start;
    nodes
        .par_iter()
        .zip(weights.par_iter())
        .map(|(&x, &w)| {
            let u = 0.5 * (x + 1.0);
            let omega = start + span * u * u;
            let s = s2_pm(k, omega, spec)?.s_zz;
            Ok(0.5 * w * 2.0 * u * span * s)
        })
        .sum()
}

/// Converged two-spinon intensity I₂.
///
/// From [`intensity_sumrule`] at 64², 128² and 256² points (0.821812,
/// 0.821824, 0.821827), which converge like n⁻²; extrapolated. The exact
/// sum rule would give 1.
pub const TWO_SPINON_INTENSITY: f64 = 0.821_83;

/// Result of the static intensity integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumRule {
    /// I₂ = (2π)⁻² ∫₀^{2π} dk ∫ dω Sᶻᶻ₂.
    pub value: f64,
    /// |I₂ − I₂(half resolution)|.
    pub error_estimate: f64,
    pub k_points: usize,
    pub omega_points: usize,
}

/// Two-spinon share of the static sum rule `(2π)⁻² ∫dk ∫dω Sᶻᶻ = ⟨(σᶻ)²⟩ = 1`.
///
/// Uses k ↔ 2π − k symmetry, `k = π(1 − v²)` to soften the logarithmic
/// pile-up of weight at k = π, and the `u²` substitution of
/// [`omega_integral`] in ω.
pub fn intensity_sumrule(spec: &QuadratureSpec, k_points: usize, omega_points: usize) -> Result<SumRule> {
    if k_points < 16 || omega_points < 16 {
        return Err(Error::Domain(format!(
            "sum rule resolutions must be at least 16, got ({k_points}, {omega_points})"
        )));
    }
    let fine = sumrule_at(spec, k_points, omega_points)?;
    let coarse = sumrule_at(spec, k_points / 2, omega_points / 2)?;
    Ok(SumRule {
        value: fine,
        error_estimate: (fine - coarse).abs(),
        k_points,
        omega_points,
    })
}

fn sumrule_at(spec: &QuadratureSpec, k_points: usize, omega_points: usize) -> Result<f64> {
    let (vs, wv) = gauss_legendre(k_points);
    let half_zone: f64 = vs
        .par_iter()
        .zip(wv.par_iter())
        .map(|(&x, &w)| {
            let v = 0.5 * (x + 1.0);
            let k = PI * (1.0 - v * v);
            let inner = omega_integral(k, 0.0, omega_points, spec)?;
            Ok(0.5 * w * 2.0 * PI * v * inner)
        })
        .sum::<Result<f64>>()?;
    Ok(2.0 * half_zone / (TAU * TAU))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn outside_band_is_zero() {
        let v = s2_pm(PI, 7.0, &spec()).unwrap();
        assert_eq!((v.s_pm, v.s_zz, v.region), (0.0, 0.0, Region::Above));
        let v = s2_pm(0.0, 1.0, &spec()).unwrap();
        assert_eq!(v.s_zz, 0.0);
        let v = s2_pm(FRAC_PI_2, PI, &spec()).unwrap();
        assert_eq!((v.s_pm, v.region), (0.0, Region::OnLower));
    }

    #[test]
    fn negative_omega_rejected() {
        assert!(s2_pm(1.0, -0.1, &spec()).is_err());
    }

    #[test]
    fn components() {
        let (k, w) = (2.2, 4.0);
        let pm = s2_component(Component::Pm, k, w, &spec()).unwrap();
        for c in [Component::Xx, Component::Yy, Component::Zz] {
            assert_eq!(s2_component(c, k, w, &spec()).unwrap(), 4.0 * pm);
        }
        assert!(pm > 0.0);
    }

    #[test]
    fn worked_point_composition() {
        let v = s2_pm(PI, PI, &spec()).unwrap();
        let c = constants(&spec()).unwrap();
        let amp = a_sq(Sign::Minus, FormFactorArg::real(v.gamma_arg).unwrap(), &spec()).unwrap();
        let expected = c.prefactor * amp.value / (PI * 3f64.sqrt());
        assert!((v.s_pm - expected).abs() < 1e-14 * expected);
        assert!((v.gamma_arg + 2.633_915_793_849_633).abs() < 1e-13);
    }

    #[test]
    fn grid_is_increasing_and_clustered() {
        for (k, n) in [(PI, 2), (PI, 3), (1.0, 17), (2.5, 64), (0.0, 5)] {
            let g = lineshape_grid(k, n).unwrap();
            assert_eq!(g.len(), n);
            assert!(g.windows(2).all(|w| w[0] < w[1]), "{k} {n}: {g:?}");
        }
        let (lower, upper) = band_boundaries(2.5);
        let g = lineshape_grid(2.5, 64).unwrap();
        let near = |edge: f64| g.iter().filter(|&&w| (w - edge).abs() < 1e-3 * (upper - lower)).count();
        assert!(near(lower) >= 2 && near(upper) >= 2);
        assert!(lineshape_grid(1.0, 1).is_err());
    }

    #[test]
    fn empty_band_lineshape() {
        let l = lineshape(0.0, 8, &spec()).unwrap();
        assert!(l.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn sumrule_resolution_guard() {
        assert!(intensity_sumrule(&spec(), 8, 32).is_err());
    }
}
