//! Two-spinon dynamical structure factor of the spin-½ Heisenberg chain.
//!
//! The structure factor is available in closed form inside the two-spinon
//! band `π|sin k| < ω < 2π sin(k/2)`:
//!
//! ```
//! use spinon_dcf::dcf::s2_pm;
//! use spinon_dcf::specfun::QuadratureSpec;
//! use std::f64::consts::PI;
//!
//! let v = s2_pm(PI, PI, &QuadratureSpec::default())?;
//! assert!(v.s_pm > 0.0);
//! # Ok::<(), spinon_dcf::Error>(())
//! ```
//!
//! [`kinematics`] maps (k, ω) to spinon rapidities, [`formfactor`] supplies
//! the amplitudes, [`dcf`] puts them together. [`xxz`] covers the gapped
//! anisotropic dispersion and [`ed`] is an exact-diagonalization oracle for
//! short chains. The guide in `book/` walks through each of them.

// `!(x > 0.0)` style checks are deliberate: NaN has to fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dcf;
pub mod ed;
pub mod error;
pub mod formfactor;
pub mod kinematics;
pub mod specfun;
pub mod xxz;

pub use error::{Error, Result};

// The book chapters, so their snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/kinematics.md")]
    mod kinematics {}
    #[doc = include_str!("../../../book/src/form-factors.md")]
    mod form_factors {}
    #[doc = include_str!("../../../book/src/structure-factor.md")]
    mod structure_factor {}
    #[doc = include_str!("../../../book/src/xxz.md")]
    mod xxz {}
    #[doc = include_str!("../../../book/src/exact-diagonalization.md")]
    mod exact_diagonalization {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
