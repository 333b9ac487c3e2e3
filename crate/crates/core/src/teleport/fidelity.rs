//! Teleportation fidelity `F = (1/pi) int chi_in(a) chi_in(-a) chi_res(-a*, -a) d^2 a`.

use num_complex::Complex64;

use super::gamma::gamma_apply_with;
use super::TeleportJob;
use crate::error::{Error, Result};
use crate::numerics::{integrate_phase_plane, IMAGINARY_RESIDUE_LIMIT};
use crate::states::{chi_input_unchecked, chi_resource_unchecked, InputKind, ResourceKind};

/// Slack allowed above one before a fidelity is rejected as unphysical.
const UPPER_SLACK: f64 = 1e-9;

/// Tolerance for the closed-form entry that is checked against the integral.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FidelityRoute {
    ClosedForm,
    Integral,
    GammaOperator,
}

impl FidelityRoute {
    pub fn label(self) -> &'static str {
        match self {
            FidelityRoute::ClosedForm => "closed-form",
            FidelityRoute::Integral => "integral",
            FidelityRoute::GammaOperator => "gamma-operator",
        }
    }
}

/// Disagreement between a closed-form value and the integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discrepancy {
    pub integral: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityResult {
    pub value: f64,
    pub route: FidelityRoute,
    pub error_estimate: f64,
    /// Set when this value disagrees with the integral beyond
    /// [`CROSS_CHECK_TOLERANCE`].
    pub discrepancy: Option<Discrepancy>,
}

impl FidelityResult {
    fn new(value: f64, route: FidelityRoute, error_estimate: f64) -> Result<Self> {
        if !(-UPPER_SLACK..=1.0 + UPPER_SLACK).contains(&value) {
            return Err(Error::Numeric(format!("{} fidelity {value} outside [0, 1]", route.label())));
        }
        Ok(Self {
            value,
            route,
            error_estimate,
            discrepancy: None,
        })
    }
}

/// Fidelity by quadrature. Works at any resource phase.
pub fn fidelity_numeric(job: &TeleportJob) -> Result<FidelityResult> {
    job.validate()?;
    let spec = job.quadrature.with_envelope(job.envelope(true)?);
    let input = job.input;
    let integral = integrate_phase_plane(
        |a| {
            let chi_in = chi_input_unchecked(&input, a).unwrap_or(Complex64::new(f64::NAN, 0.0))
                * chi_input_unchecked(&input, -a).unwrap_or(Complex64::new(f64::NAN, 0.0));
            chi_in * chi_resource_unchecked(job.resource, &job.sq, -a.conj(), -a)
        },
        &spec,
    )?;
    if integral.value.im.abs() > IMAGINARY_RESIDUE_LIMIT {
        return Err(Error::Inconsistent {
            residue: integral.value.im.abs(),
            limit: IMAGINARY_RESIDUE_LIMIT,
        });
    }
    FidelityResult::new(integral.value.re, FidelityRoute::Integral, integral.error_estimate)
}

/// Fidelity from closed forms, valid at the optimal resource phase.
///
/// TPS with a cat-like input goes through [`super::gamma_apply`]. The
/// squeezed-vacuum TPS entry is always cross-checked against
/// [`fidelity_numeric`] and carries a [`Discrepancy`] when they disagree.
pub fn fidelity_closed(job: &TeleportJob) -> Result<FidelityResult> {
    job.validate()?;
    job.require_optimal_phase()?;
    let g = job.gamma();
    match (job.input, job.resource) {
        (InputKind::Coherent { .. }, ResourceKind::Tmsv) => {
            FidelityResult::new(coherent_tmsv(g), FidelityRoute::ClosedForm, 0.0)
        }
        (InputKind::Coherent { .. }, ResourceKind::Tps) => {
            FidelityResult::new(coherent_tps(g), FidelityRoute::ClosedForm, 0.0)
        }
        (InputKind::SqueezedVacuum { rho, .. }, ResourceKind::Tmsv) => {
            FidelityResult::new(squeezed_tmsv(g, rho), FidelityRoute::ClosedForm, 0.0)
        }
        (InputKind::SqueezedVacuum { rho, .. }, ResourceKind::Tps) => {
            let mut result = FidelityResult::new(squeezed_tps(g, rho), FidelityRoute::ClosedForm, 0.0)?;
            let integral = fidelity_numeric(job)?.value;
            let deviation = (result.value - integral).abs();
            if deviation > CROSS_CHECK_TOLERANCE {
                result.discrepancy = Some(Discrepancy { integral, deviation });
            }
            Ok(result)
        }
        (InputKind::CatLike { rho, .. }, ResourceKind::Tmsv) => {
            FidelityResult::new(cat_tmsv(g, rho), FidelityRoute::ClosedForm, 0.0)
        }
        (InputKind::CatLike { rho, .. }, ResourceKind::Tps) => {
            let f = |x: f64| cat_tmsv(x, rho);
            let value = gamma_apply_with(f, g, &job.diff)?;
            let coarse = crate::numerics::DiffSpec {
                levels: job.diff.levels - 1,
                ..job.diff
            };
            let error_estimate = match gamma_apply_with(f, g, &coarse) {
                Ok(v) => (v - value).abs(),
                Err(_) => 0.0,
            };
            FidelityResult::new(value, FidelityRoute::GammaOperator, error_estimate)
        }
        (InputKind::IdealCat { .. }, _) => Err(Error::Unsupported(
            "no closed-form fidelity for the ideal cat input".into(),
        )),
    }
}

fn coherent_tmsv(g: f64) -> f64 {
    1.0 / (1.0 + g)
}

fn coherent_tps(g: f64) -> f64 {
    (1.0 + 2.0 * g + 5.0 * g * g) / ((1.0 + g).powi(3) * (1.0 + g * g))
}

fn squeezed_tmsv(g: f64, rho: f64) -> f64 {
    1.0 / (1.0 + 2.0 * g * (2.0 * rho).cosh() + g * g).sqrt()
}

/// Tabulated squeezed-vacuum TPS entry, with the linear coefficient taken
/// as multiplying `gamma`.
fn squeezed_tps(g: f64, rho: f64) -> f64 {
    let c2r = (2.0 * rho).cosh();
    let c4r = (4.0 * rho).cosh();
    let coeffs = [
        4.0,
        16.0 * c2r,
        11.0 * c4r + 8.0 * c2r + 21.0,
        2.0 * c4r + 32.0 * c2r + 14.0,
        3.0 * c4r + 8.0 * c2r + 9.0,
    ];
    let poly = coeffs.iter().rev().fold(0.0, |acc, c| acc * g + c);
    let base = 1.0 + 2.0 * g * c2r + g * g;
    poly / (4.0 * (1.0 + g).powi(2) * base.powf(2.5))
}

fn cat_tmsv(g: f64, rho: f64) -> f64 {
    let c2 = (2.0 * rho).cosh();
    let c4 = (4.0 * rho).cosh();
    let num = 2.0 + 4.0 * g * c2 + (1.0 + 3.0 * c4) * g * g + 4.0 * g.powi(3) * c2 + 2.0 * g.powi(4);
    num / (2.0 * (1.0 + 2.0 * g * c2 + g * g).powf(2.5))
}
