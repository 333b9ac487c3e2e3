use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("invalid numerical control: {0}")]
    Validation(String),

    #[error("integrand is not finite at {node}")]
    Evaluation { node: Complex64 },

    #[error("quadrature did not converge: order {order} changed the result by {delta:e}")]
    NoConvergence { order: usize, delta: f64 },

    #[error("imaginary residue {residue:e} exceeds {limit:e}")]
    Inconsistent { residue: f64, limit: f64 },

    #[error("Fock truncation at cutoff {cutoff} leaves {tail:e} of the norm in the top levels")]
    Truncation { cutoff: usize, tail: f64 },

    #[error("heralding probability {0:e} is zero")]
    Herald(f64),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
