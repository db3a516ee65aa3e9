use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("infinite product diverges: |x| = {modulus} >= 1")]
    Divergence { modulus: f64 },

    #[error(
        "quadrature failed to converge on [{a}, {b}]: estimate {estimate:e} with error {error:e} \
         after {intervals} intervals"
    )]
    NonConvergence {
        a: f64,
        b: f64,
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    /// The form-factor integral diverges (coincident rapidities). The squared
    /// amplitude tends to zero there; callers decide how to map the limit.
    #[error("form-factor integral diverges at gamma = 0, delta = 0")]
    BoundaryDivergent,

    #[error("point (k = {k}, omega = {omega}) is not strictly inside the two-spinon band")]
    OutOfBand { k: f64, omega: f64 },

    #[error("spinon momentum hit the branch endpoint {0}")]
    BranchEndpoint(f64),

    #[error("invalid chain: {0}")]
    Chain(String),

    #[error("ground state is degenerate (splitting {splitting:e})")]
    DegenerateGroundState { splitting: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
