//! Complete elliptic integrals, nome inversion, and the Jacobi amplitude and
//! delta functions.
//!
//! Everything here is parameterised by the parameter `m = k²` (not the
//! modulus `k`). Internally the complement `m1 = 1 - m` is carried alongside
//! `m` so that parameters very close to 1, which arise for anisotropies just
//! below the isotropic point, keep full relative precision in `m1`.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

const AGM_MAX_STEPS: usize = 64;

/// Complete elliptic integrals at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticPair {
    /// Parameter `m` in (0, 1).
    pub m: f64,
    /// Complement `1 - m`, stored separately for precision.
    pub m1: f64,
    /// K(m).
    pub k: f64,
    /// K'(m) = K(1 - m).
    pub k_prime: f64,
}

impl EllipticPair {
    /// Nome `exp(-π K'/K)`.
    pub fn nome(&self) -> f64 {
        (-PI * self.k_prime / self.k).exp()
    }
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..AGM_MAX_STEPS {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// K(m) and K'(m) by the AGM.
pub fn elliptic_complete(m: f64) -> Result<EllipticPair> {
    check_parameter(m)?;
    Ok(pair_from_parts(m, 1.0 - m))
}

fn pair_from_parts(m: f64, m1: f64) -> EllipticPair {
    EllipticPair {
        m,
        m1,
        k: FRAC_PI_2 / agm(1.0, m1.sqrt()),
        k_prime: FRAC_PI_2 / agm(1.0, m.sqrt()),
    }
}

fn check_parameter(m: f64) -> Result<()> {
    if m > 0.0 && m < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("elliptic parameter must lie in (0, 1), got {m}")))
    }
}

/// Jacobi theta constants θ₂, θ₃, θ₄ at a real nome in (0, 1).
pub fn theta_constants(nome: f64) -> (f64, f64, f64) {
    let mut t2 = 0.0;
    let mut t3 = 0.0;
    let mut t4 = 0.0;
    let mut n = 0u32;
    loop {
        let nf = n as f64;
        let a = nome.powf(nf * (nf + 1.0));
        let b = if n == 0 { 0.0 } else { nome.powf(nf * nf) };
        t2 += a;
        t3 += b;
        t4 += if n.is_multiple_of(2) { b } else { -b };
        if a < 1e-18 && b < 1e-18 && n > 0 {
            break;
        }
        n += 1;
    }
    (2.0 * nome.powf(0.25) * t2, 1.0 + 2.0 * t3, 1.0 + 2.0 * t4)
}

/// Recovers the elliptic pair whose nome `exp(-π K'/K)` equals `nome`.
///
/// The theta-quotient series is summed at whichever of the nome and its
/// complementary nome `exp(π² / ln nome)` is smaller, so both `m` and `1 - m`
/// come out without cancellation.
pub fn elliptic_from_nome(nome: f64) -> Result<EllipticPair> {
    if !(nome > 0.0 && nome < 1.0) {
        return Err(Error::Domain(format!("nome must lie in (0, 1), got {nome}")));
    }
    let log_nome = nome.ln();
    let complementary = (PI * PI / log_nome).exp();
    if nome <= complementary {
        let (t2, t3, t4) = theta_constants(nome);
        let k = FRAC_PI_2 * t3 * t3;
        Ok(EllipticPair {
            m: (t2 / t3).powi(4),
            m1: (t4 / t3).powi(4),
            k,
            k_prime: -k * log_nome / PI,
        })
    } else {
        let (t2, t3, t4) = theta_constants(complementary);
        let k_prime = FRAC_PI_2 * t3 * t3;
        Ok(EllipticPair {
            m: (t4 / t3).powi(4),
            m1: (t2 / t3).powi(4),
            k: -k_prime * complementary.ln() / PI,
            k_prime,
        })
    }
}

/// Jacobi elliptic functions at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiValues {
    pub am: f64,
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// am(u|m).
pub fn jacobi_am(u: f64, m: f64) -> Result<f64> {
    check_parameter(m)?;
    Ok(jacobi_with_complement(u, m, 1.0 - m).am)
}

/// dn(u|m).
pub fn jacobi_dn(u: f64, m: f64) -> Result<f64> {
    check_parameter(m)?;
    Ok(jacobi_with_complement(u, m, 1.0 - m).dn)
}

/// All four Jacobi functions via the descending Landen (AGM) scheme, with the
/// complementary parameter supplied explicitly.
pub fn jacobi_with_complement(u: f64, m: f64, m1: f64) -> JacobiValues {
    let mut a = [0.0f64; AGM_MAX_STEPS + 1];
    let mut c = [0.0f64; AGM_MAX_STEPS + 1];
    a[0] = 1.0;
    let mut b = m1.sqrt();
    c[0] = m.sqrt();
    let mut n = 0;
    while c[n].abs() > f64::EPSILON * a[n] && n < AGM_MAX_STEPS {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
    }
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] * phi.sin() / a[j]).asin());
    }
    let (sn, cn) = phi.sin_cos();
    JacobiValues {
        am: phi,
        sn,
        cn,
        dn: (m1 + m * cn * cn).sqrt(),
    }
}
