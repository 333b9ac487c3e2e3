//! Teleportation of single-mode states through the entangled resources.
//!
//! At unit gain the output characteristic function is
//! `chi_out(alpha) = chi_in(alpha) chi_res(alpha*, alpha)`. In this crate's
//! phase convention the resource phase that minimises the added noise is
//! `phi = 0`, where `|chi_res(alpha*, alpha)| = exp(-gamma |alpha|^2)` with
//! `gamma = e^{-2r}`.

mod fidelity;
mod gamma;
mod wigner;

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::numerics::{DiffSpec, Envelope, Grid2D, QuadratureSpec};
use crate::states::{self, InputKind, ResourceKind, SqueezeParams};

pub use fidelity::{
    fidelity_closed, fidelity_numeric, Discrepancy, FidelityResult, FidelityRoute, CROSS_CHECK_TOLERANCE,
};
pub use gamma::{gamma_apply, gamma_apply_with};
pub use wigner::{
    negativity_minimum, threshold, w0_scan, wigner_output, wigner_output_closed, wigner_output_field,
    wigner_output_numeric, zero_crossing, THRESHOLD_TOLERANCE,
};

/// Resource phase at which the closed-form fidelities and Wigner functions hold.
pub const OPTIMAL_PHASE: f64 = 0.0;

/// One teleportation computation: input, resource and numerical controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportJob {
    pub input: InputKind,
    pub resource: ResourceKind,
    pub sq: SqueezeParams,
    pub quadrature: QuadratureSpec,
    pub grid: Grid2D,
    pub diff: DiffSpec,
}

impl TeleportJob {
    /// Job at the optimal resource phase with default controls: order-64
    /// quadrature with escalation and a 121 x 121 grid on `[-3, 3]^2`.
    pub fn new(input: InputKind, resource: ResourceKind, r: f64) -> Result<Self> {
        let job = Self {
            input,
            resource,
            sq: SqueezeParams::new(r, OPTIMAL_PHASE)?,
            quadrature: QuadratureSpec::default(),
            grid: Grid2D::new(3.0, 121)?,
            diff: DiffSpec::default(),
        };
        job.validate()?;
        Ok(job)
    }

    pub fn with_phase(self, phi: f64) -> Result<Self> {
        let job = Self {
            sq: SqueezeParams::new(self.sq.r(), phi)?,
            ..self
        };
        job.validate()?;
        Ok(job)
    }

    pub fn with_quadrature(self, quadrature: QuadratureSpec) -> Self {
        Self { quadrature, ..self }
    }

    pub fn with_grid(self, grid: Grid2D) -> Self {
        Self { grid, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        self.input.validate()?;
        self.resource.check(&self.sq)?;
        self.quadrature.validate()?;
        self.diff.validate()
    }

    pub fn gamma(&self) -> f64 {
        self.sq.gamma()
    }

    /// Whether the resource phase is a multiple of `2 pi`.
    pub fn at_optimal_phase(&self) -> bool {
        let reduced = (self.sq.phi() - OPTIMAL_PHASE).rem_euclid(TAU);
        reduced < 1e-12 || TAU - reduced < 1e-12
    }

    pub(crate) fn require_optimal_phase(&self) -> Result<()> {
        if self.at_optimal_phase() {
            Ok(())
        } else {
            Err(domain(format!(
                "closed forms hold at resource phase {OPTIMAL_PHASE}, got {}",
                self.sq.phi()
            )))
        }
    }

    /// Envelope of `chi_out`, or of the fidelity integrand when `doubled`.
    pub(crate) fn envelope(&self, doubled: bool) -> Result<Envelope> {
        let (angle, du, dv) = self
            .input
            .chi_decay()
            .ok_or_else(|| crate::Error::Unsupported(format!("{} input has no characteristic function", self.input.label())))?;
        let k = if doubled { 2.0 } else { 1.0 };
        let kappa = self.sq.teleport_decay();
        Ok(Envelope::rotated(angle, k * du + kappa, k * dv + kappa))
    }
}

/// `chi_in(alpha) chi_res(alpha*, alpha)`.
pub fn chi_output(job: &TeleportJob, alpha: Complex64) -> Result<Complex64> {
    job.validate()?;
    let input = states::chi_input(job.input, alpha)?;
    let resource = states::chi_resource(job.resource, job.sq, alpha.conj(), alpha)?;
    Ok(input * resource)
}

/// `|chi_res(alpha*, alpha)|^2 - exp(-|alpha|^2 / 2)`; positive where the
/// resource beats the classical benchmark.
pub fn benchmark_margin(resource: ResourceKind, sq: SqueezeParams, alpha: Complex64) -> Result<f64> {
    let chi = states::chi_resource(resource, sq, alpha.conj(), alpha)?;
    Ok(chi.norm_sqr() - (-0.5 * alpha.norm_sqr()).exp())
}
