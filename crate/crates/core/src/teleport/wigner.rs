//! Output Wigner functions, their negativity, and the resource squeezing at
//! which the origin turns negative.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::gamma_apply_with;
use super::TeleportJob;
use crate::error::{domain, Error, Result};
use crate::numerics::{bisect, wigner_from_characteristic, FieldMinimum, ScanSeries, WignerField};
use crate::states::{chi_input_unchecked, chi_resource_unchecked, InputKind, ResourceKind};

/// Bracket width at which [`zero_crossing`] stops bisecting.
pub const THRESHOLD_TOLERANCE: f64 = 1e-6;

/// Output Wigner function of a cat-like input through the TMSV resource at
/// the optimal phase, as a function of `gamma`.
fn w1_closed(gamma: f64, rho: f64, phase: f64, alpha: Complex64) -> f64 {
    let c2 = (2.0 * rho).cosh();
    let tilde = alpha * rho.cosh() - Complex64::from_polar(1.0, phase) * alpha.conj() * rho.sinh();
    let n = alpha.norm_sqr();
    let nt = tilde.norm_sqr();
    let g = gamma;
    let d = 1.0 + 4.0 * g * c2 + 4.0 * g * g;
    let bracket = (4.0 * nt - 1.0)
        + 4.0 * (4.0 * n - c2) * g
        + 16.0 * (2.0 * n * c2 - nt) * g * g
        + 16.0 * g.powi(3) * c2
        + 16.0 * g.powi(4);
    2.0 / (PI * d.powf(2.5)) * (-2.0 / d * (2.0 * g * n + nt)).exp() * bracket
}

/// Closed-form output Wigner function for cat-like inputs at the optimal
/// resource phase. The TPS value is the gamma operator applied to the TMSV one.
pub fn wigner_output_closed(job: &TeleportJob, alpha: Complex64) -> Result<f64> {
    job.validate()?;
    job.require_optimal_phase()?;
    let InputKind::CatLike { rho, phase } = job.input else {
        return Err(Error::Unsupported(format!(
            "closed-form output Wigner function needs a cat-like input, got {}",
            job.input.label()
        )));
    };
    let g = job.gamma();
    match job.resource {
        ResourceKind::Tmsv => Ok(w1_closed(g, rho, phase, alpha)),
        ResourceKind::Tps => gamma_apply_with(|x| w1_closed(x, rho, phase, alpha), g, &job.diff),
    }
}

/// Output Wigner function by Fourier transform of [`chi_output`].
pub fn wigner_output_numeric(job: &TeleportJob, alpha: Complex64) -> Result<f64> {
    job.validate()?;
    let spec = job.quadrature.with_envelope(job.envelope(false)?);
    let input = job.input;
    wigner_from_characteristic(
        |a| {
            chi_input_unchecked(&input, a).unwrap_or(Complex64::new(f64::NAN, 0.0))
                * chi_resource_unchecked(job.resource, &job.sq, a.conj(), a)
        },
        alpha,
        &spec,
    )
}

/// Closed form where available, quadrature otherwise.
pub fn wigner_output(job: &TeleportJob, alpha: Complex64) -> Result<f64> {
    if matches!(job.input, InputKind::CatLike { .. }) && job.at_optimal_phase() {
        wigner_output_closed(job, alpha)
    } else {
        wigner_output_numeric(job, alpha)
    }
}

/// [`wigner_output`] sampled on the job grid.
pub fn wigner_output_field(job: &TeleportJob) -> Result<WignerField> {
    job.validate()?;
    WignerField::sample(job.grid, |a| wigner_output(job, a))
}

/// Most negative value of the output Wigner function, refined off-grid.
pub fn negativity_minimum(job: &TeleportJob) -> Result<FieldMinimum> {
    wigner_output_field(job)?.refined_minimum(|a| wigner_output(job, a))
}

fn w0_at(rho: f64, phase: f64, resource: ResourceKind, r: f64) -> Result<f64> {
    let job = TeleportJob::new(InputKind::CatLike { rho, phase }, resource, r)?;
    wigner_output(&job, Complex64::default())
}

/// Output Wigner function at the origin across resource squeezing.
pub fn w0_scan(rho: f64, phase: f64, resource: ResourceKind, r_start: f64, r_end: f64, steps: usize) -> Result<ScanSeries> {
    ScanSeries::sample(format!("W(0) {}", resource.label()), r_start, r_end, steps, |r| {
        w0_at(rho, phase, resource, r)
    })
}

/// First squeezing at which `W(0)` descends through zero, bisected inside the
/// bracket found by the scan. `None` when the scan never turns negative.
pub fn zero_crossing(series: &ScanSeries, rho: f64, phase: f64, resource: ResourceKind) -> Result<Option<f64>> {
    let Some((lo, hi)) = series.first_descent_through_zero() else {
        return Ok(None);
    };
    bisect(|r| w0_at(rho, phase, resource, r), lo, hi, THRESHOLD_TOLERANCE).map(Some)
}

/// Scan plus bisection.
pub fn threshold(rho: f64, phase: f64, resource: ResourceKind, r_start: f64, r_end: f64, steps: usize) -> Result<Option<f64>> {
    if !(r_start > 0.0 && r_end > r_start) {
        return Err(domain(format!("threshold scan needs 0 < start < end, got [{r_start}, {r_end}]")));
    }
    let series = w0_scan(rho, phase, resource, r_start, r_end, steps)?;
    zero_crossing(&series, rho, phase, resource)
}
