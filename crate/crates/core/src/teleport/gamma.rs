//! The operator mapping a TMSV-resource quantity, viewed as a function of
//! `gamma`, onto its TPS-resource counterpart.

use crate::error::{domain, Result};
use crate::numerics::{derivative, DerivOrder, DiffSpec};

/// Fraction of the distance to the nearest edge of `(0, 1)` that the widest
/// stencil may span.
const EDGE_FRACTION: f64 = 0.5;

/// `f + c(gamma) [((1-gamma)/(1+gamma))^2 f'' - 4 (1-gamma)/(1+gamma)^2 f']`
/// with `c(gamma) = gamma^2 (1+gamma)^2 / (2 (1+gamma^2))`, using default
/// difference controls.
pub fn gamma_apply<F: Fn(f64) -> f64>(f: F, gamma: f64) -> Result<f64> {
    gamma_apply_with(f, gamma, &DiffSpec::default())
}

pub fn gamma_apply_with<F: Fn(f64) -> f64>(f: F, gamma: f64, diff: &DiffSpec) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(domain(format!("gamma = {gamma} must lie strictly inside (0, 1)")));
    }
    let spec = diff.with_domain(0.0, 1.0).fitted_to(gamma, EDGE_FRACTION);
    let d1 = derivative(&f, gamma, DerivOrder::First, &spec)?;
    let d2 = derivative(&f, gamma, DerivOrder::Second, &spec)?;
    let g2 = gamma * gamma;
    let p = 1.0 + gamma;
    let m = 1.0 - gamma;
    let weight = g2 * p * p / (2.0 * (1.0 + g2));
    Ok(f(gamma) + weight * ((m / p).powi(2) * d2 - 4.0 * m / (p * p) * d1))
}
