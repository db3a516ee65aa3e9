//! Special functions and quadrature.
//!
//! All functions are pure and safe to call from any number of threads.

mod elliptic;
mod expint;
mod gamma;
mod qseries;
mod quad;

pub use elliptic::{
    agm, elliptic_complete, elliptic_from_nome, jacobi_am, jacobi_dn, jacobi_with_complement, theta_constants,
    EllipticPair, JacobiValues,
};
pub use expint::{cosine_integral, exp_integral_e1, EULER_GAMMA};
pub use gamma::gamma_fn;
pub use qseries::{q_pochhammer, q_pochhammer_with_tol, theta_fn, Product, DEFAULT_PRODUCT_TOL};
pub use quad::{gauss_legendre, integrate_adaptive, integrate_with_breakpoints, Estimate, QuadratureSpec};
