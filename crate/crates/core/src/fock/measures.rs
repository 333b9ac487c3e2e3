use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::displacement::displacement_matrix;
use super::state::{overlap, FockState, Modes};
use crate::error::{validation, Result};
use crate::numerics::{hermite_functions, CompensatedComplexSum, CompensatedSum};

/// Oracle value with a flag telling whether the query stayed inside the
/// range where the truncation is trustworthy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Windowed<T> {
    pub value: T,
    pub within_window: bool,
}

fn check_arity(state: &FockState, count: usize) -> Result<()> {
    if state.modes().count() != count {
        return Err(validation(format!(
            "{count} arguments given for a {}-mode state",
            state.modes().count()
        )));
    }
    Ok(())
}

fn as_matrix(state: &FockState) -> DMatrix<Complex64> {
    let dim = state.dim();
    DMatrix::from_row_slice(dim, dim, state.amplitudes())
}

/// `<psi| D(alpha_1) (x) D(alpha_2) |psi>`, or the single-mode version.
///
/// Reliable while every `|alpha|^2` stays below a quarter of the cutoff.
pub fn numeric_characteristic(state: &FockState, alphas: &[Complex64]) -> Result<Windowed<Complex64>> {
    check_arity(state, alphas.len())?;
    let dim = state.dim();
    let within_window = alphas.iter().all(|a| a.norm_sqr() <= state.cutoff() as f64 / 4.0);
    let value = match state.modes() {
        Modes::One => {
            let d = displacement_matrix(alphas[0], dim, dim);
            let psi = nalgebra::DVector::from_column_slice(state.amplitudes());
            let moved = &d * &psi;
            psi.iter()
                .zip(moved.iter())
                .map(|(p, q)| p.conj() * q)
                .collect::<CompensatedComplexSum>()
                .value()
        }
        Modes::Two => {
            let psi = as_matrix(state);
            let d1 = displacement_matrix(alphas[0], dim, dim);
            let d2 = displacement_matrix(alphas[1], dim, dim);
            let moved = &d1 * &psi * d2.transpose();
            psi.iter()
                .zip(moved.iter())
                .map(|(p, q)| p.conj() * q)
                .collect::<CompensatedComplexSum>()
                .value()
        }
    };
    Ok(Windowed { value, within_window })
}

/// Rows kept after displacing by `alpha`: enough to hold the displaced
/// support of a state with `cutoff` photons.
fn displaced_rows(cutoff: usize, alpha: Complex64) -> usize {
    let reach = (cutoff as f64).sqrt() + alpha.norm() + 7.0;
    ((reach * reach).ceil() as usize).max(cutoff + 1)
}

/// Wigner function from the displaced-parity expectation
/// `W = (2/pi)^modes <psi| D P D^dag |psi>`.
pub fn numeric_wigner(state: &FockState, point: &[Complex64]) -> Result<Windowed<f64>> {
    check_arity(state, point.len())?;
    let dim = state.dim();
    let within_window = point.iter().all(|a| a.norm_sqr() <= state.cutoff() as f64 / 4.0);
    let parity = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let value = match state.modes() {
        Modes::One => {
            let rows = displaced_rows(state.cutoff(), point[0]);
            let d = displacement_matrix(-point[0], rows, dim);
            let moved = &d * nalgebra::DVector::from_column_slice(state.amplitudes());
            let s: CompensatedSum = moved.iter().enumerate().map(|(k, z)| parity(k) * z.norm_sqr()).collect();
            2.0 / PI * s.value()
        }
        Modes::Two => {
            let rows_a = displaced_rows(state.cutoff(), point[0]);
            let rows_b = displaced_rows(state.cutoff(), point[1]);
            let da = displacement_matrix(-point[0], rows_a, dim);
            let db = displacement_matrix(-point[1], rows_b, dim);
            let moved = &da * as_matrix(state) * db.transpose();
            let mut acc = CompensatedSum::default();
            for k in 0..rows_a {
                for l in 0..rows_b {
                    acc.add(parity(k + l) * moved[(k, l)].norm_sqr());
                }
            }
            4.0 / (PI * PI) * acc.value()
        }
    };
    Ok(Windowed { value, within_window })
}

/// Position-space amplitude from the Hermite-function expansion.
pub fn numeric_quadrature(state: &FockState, xs: &[f64]) -> Result<Windowed<Complex64>> {
    check_arity(state, xs.len())?;
    let limit = (2.0 * state.cutoff() as f64).sqrt();
    let within_window = xs.iter().all(|x| x.abs() <= limit);
    let cutoff = state.cutoff();
    let value = match state.modes() {
        Modes::One => {
            let h = hermite_functions(xs[0], cutoff);
            state
                .amplitudes()
                .iter()
                .zip(&h)
                .map(|(c, hn)| c * *hn)
                .collect::<CompensatedComplexSum>()
                .value()
        }
        Modes::Two => {
            let ha = hermite_functions(xs[0], cutoff);
            let hb = hermite_functions(xs[1], cutoff);
            let dim = state.dim();
            state
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(k, c)| c * (ha[k / dim] * hb[k % dim]))
                .collect::<CompensatedComplexSum>()
                .value()
        }
    };
    Ok(Windowed { value, within_window })
}

/// Variance of `X_theta` for the mode `d = (a + b)/sqrt 2`, minus 1/2.
///
/// `X_theta = (d e^{-i theta} + d^dag e^{i theta}) / sqrt 2`.
pub fn numeric_squeezing(state: &FockState, theta: f64) -> Result<f64> {
    if state.modes() != Modes::Two {
        return Err(validation("squeezing of the summed mode needs a two-mode state"));
    }
    let a = state.lower(0)?;
    let b = state.lower(1)?;
    let mean = |s: &FockState| overlap(state, s);
    let a_mean = mean(&a)?;
    let b_mean = mean(&b)?;
    let aa = mean(&a.lower(0)?)?;
    let bb = mean(&b.lower(1)?)?;
    let ab = mean(&a.lower(1)?)?;
    let na = a.norm_sqr();
    let nb = b.norm_sqr();
    let a_dag_b = overlap(&a, &b)?;
    let d_mean = (a_mean + b_mean) / 2f64.sqrt();
    let dd = 0.5 * (aa + 2.0 * ab + bb);
    let n_d = 0.5 * (na + nb + 2.0 * a_dag_b.re);
    let rot = Complex64::from_polar(1.0, -theta);
    let second = (rot * rot * dd).re + n_d + 0.5;
    let first = 2f64.sqrt() * (rot * d_mean).re;
    Ok(second - first * first - 0.5)
}
