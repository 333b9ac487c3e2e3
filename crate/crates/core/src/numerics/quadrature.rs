//! Phase-plane integration with Gauss-Hermite rules.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::hermite::{GaussHermite, MAX_ORDER};
use super::sum::CompensatedComplexSum;
use crate::error::{validation, Error, Result};

/// Agreement required between successive orders during escalation,
/// measured relative to `max(|value|, 1)`.
pub const ESCALATION_TOLERANCE: f64 = 1e-9;

/// Imaginary part tolerated in a Wigner value reconstructed from a
/// characteristic function.
pub const IMAGINARY_RESIDUE_LIMIT: f64 = 1e-8;

/// Gaussian envelope the integrand is expected to carry.
///
/// The integration variable is written as
/// `alpha = e^{i angle} (u / sqrt(decay_u) + i v / sqrt(decay_v))`, so an
/// integrand behaving like `exp(-decay_u x^2 - decay_v y^2)` in the rotated
/// frame becomes `exp(-u^2 - v^2)` times something smooth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub angle: f64,
    pub decay_u: f64,
    pub decay_v: f64,
}

impl Envelope {
    pub fn isotropic(decay: f64) -> Self {
        Self {
            angle: 0.0,
            decay_u: decay,
            decay_v: decay,
        }
    }

    pub fn rotated(angle: f64, decay_u: f64, decay_v: f64) -> Self {
        Self {
            angle,
            decay_u,
            decay_v,
        }
    }

    /// Product of two envelopes sharing a frame. Decays add.
    pub fn combine(self, decay_u: f64, decay_v: f64) -> Self {
        Self {
            angle: self.angle,
            decay_u: self.decay_u + decay_u,
            decay_v: self.decay_v + decay_v,
        }
    }

    /// Envelope of the Fourier transform of a Gaussian with this envelope.
    pub fn dual(self) -> Self {
        Self {
            angle: self.angle,
            decay_u: 1.0 / self.decay_v,
            decay_v: 1.0 / self.decay_u,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = |d: f64| d.is_finite() && d > 0.0;
        if !ok(self.decay_u) || !ok(self.decay_v) || !self.angle.is_finite() {
            return Err(validation(format!("invalid envelope {self:?}")));
        }
        Ok(())
    }
}

impl Default for Envelope {
    fn default() -> Self {
        Self::isotropic(1.0)
    }
}

/// Quadrature order and envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub order: usize,
    pub envelope: Envelope,
    /// Double the order until successive results agree.
    pub escalate: bool,
}

impl QuadratureSpec {
    pub const DEFAULT_ORDER: usize = 64;

    pub fn new(order: usize, envelope: Envelope) -> Self {
        Self {
            order,
            envelope,
            escalate: true,
        }
    }

    pub fn fixed(order: usize, envelope: Envelope) -> Self {
        Self {
            order,
            envelope,
            escalate: false,
        }
    }

    pub fn with_envelope(self, envelope: Envelope) -> Self {
        Self { envelope, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 8 || self.order > MAX_ORDER {
            return Err(validation(format!(
                "quadrature order {} outside 8..={MAX_ORDER}",
                self.order
            )));
        }
        self.envelope.validate()
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::new(Self::DEFAULT_ORDER, Envelope::default())
    }
}

/// Integral value with the order that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub order: usize,
    /// Change from the previous order, zero when no escalation happened.
    pub error_estimate: f64,
}

fn frame_nodes(rule: &GaussHermite, envelope: &Envelope) -> (Vec<Complex64>, Vec<Complex64>) {
    let rot = Complex64::from_polar(1.0, envelope.angle);
    let su = 1.0 / envelope.decay_u.sqrt();
    let sv = 1.0 / envelope.decay_v.sqrt();
    let us = rule.nodes.iter().map(|&u| rot * (u * su)).collect();
    let vs = rule
        .nodes
        .iter()
        .map(|&v| rot * Complex64::new(0.0, v * sv))
        .collect();
    (us, vs)
}

/// `(1/pi) * int f(alpha) d^2 alpha` at a fixed order.
///
/// Rows are evaluated in parallel and then summed in a fixed order, so the
/// result does not depend on the thread count.
pub fn integrate_fixed<F>(f: &F, order: usize, envelope: &Envelope) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let rule = GaussHermite::cached(order)?;
    let (us, vs) = frame_nodes(&rule, envelope);
    let w = &rule.scaled_weights;
    let rows: Vec<Result<Complex64>> = (0..rule.order())
        .into_par_iter()
        .map(|i| {
            let mut acc = CompensatedComplexSum::default();
            for (j, v) in vs.iter().enumerate() {
                let node = us[i] + v;
                let value = f(node);
                if !(value.re.is_finite() && value.im.is_finite()) {
                    return Err(Error::Evaluation { node });
                }
                acc.add(value * w[j]);
            }
            Ok(acc.value() * w[i])
        })
        .collect();
    let mut total = CompensatedComplexSum::default();
    for row in rows {
        total.add(row?);
    }
    let jacobian = 1.0 / (envelope.decay_u * envelope.decay_v).sqrt();
    Ok(total.value() * (jacobian / PI))
}

fn escalate<I>(spec: &QuadratureSpec, mut at_order: I) -> Result<Integral>
where
    I: FnMut(usize) -> Result<Complex64>,
{
    spec.validate()?;
    let mut order = spec.order;
    let mut previous = at_order(order)?;
    if !spec.escalate {
        return Ok(Integral {
            value: previous,
            order,
            error_estimate: 0.0,
        });
    }
    loop {
        let next_order = order * 2;
        if next_order > MAX_ORDER {
            return Err(Error::NoConvergence {
                order,
                delta: f64::NAN,
            });
        }
        let next = at_order(next_order)?;
        let delta = (next - previous).norm();
        if delta <= ESCALATION_TOLERANCE * next.norm().max(1.0) {
            return Ok(Integral {
                value: next,
                order: next_order,
                error_estimate: delta,
            });
        }
        if next_order * 2 > MAX_ORDER {
            return Err(Error::NoConvergence {
                order: next_order,
                delta,
            });
        }
        order = next_order;
        previous = next;
    }
}

/// `(1/pi) * int f(alpha) d^2 alpha` over the complex plane.
///
/// With escalation enabled the order doubles from `spec.order` until two
/// successive orders agree to [`ESCALATION_TOLERANCE`].
pub fn integrate_phase_plane<F>(f: F, spec: &QuadratureSpec) -> Result<Integral>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    escalate(spec, |order| integrate_fixed(&f, order, &spec.envelope))
}

/// `W(beta) = (1/pi^2) int chi(alpha) exp(beta alpha* - beta* alpha) d^2 alpha`.
///
/// The envelope in `spec` must describe `chi`. Fails with
/// [`Error::Inconsistent`] when the result has a significant imaginary part,
/// which signals a characteristic function that is not Hermitian.
pub fn wigner_from_characteristic<F>(chi: F, beta: Complex64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let integral = integrate_phase_plane(
        |alpha| {
            let kernel = beta * alpha.conj() - beta.conj() * alpha;
            chi(alpha) * kernel.exp()
        },
        spec,
    )?;
    let value = integral.value / PI;
    if value.im.abs() > IMAGINARY_RESIDUE_LIMIT {
        return Err(Error::Inconsistent {
            residue: value.im.abs(),
            limit: IMAGINARY_RESIDUE_LIMIT,
        });
    }
    Ok(value.re)
}

/// `(1/pi^2) int int f(alpha_1, alpha_2) d^2 alpha_1 d^2 alpha_2` at a fixed
/// order, with nodes placed through a substitution.
///
/// `substitution` maps the integration variables `(z1, z2)` to the arguments
/// of `f`; it must be linear with unit Jacobian (a symplectic change of
/// variables). Each `z` is sampled on an isotropic rule with the given decay.
pub fn integrate_two_mode_fixed<F, S>(f: &F, substitution: &S, order: usize, decay: f64) -> Result<Complex64>
where
    F: Fn(Complex64, Complex64) -> Complex64 + Sync,
    S: Fn(Complex64, Complex64) -> (Complex64, Complex64) + Sync,
{
    if !(decay.is_finite() && decay > 0.0) {
        return Err(validation(format!("invalid decay {decay}")));
    }
    let rule = GaussHermite::cached(order)?;
    let scale = 1.0 / decay.sqrt();
    let n = rule.order();
    let w = &rule.scaled_weights;
    let x = &rule.nodes;
    let rows: Vec<Result<Complex64>> = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let z1 = Complex64::new(x[i], x[j]) * scale;
            let mut acc = CompensatedComplexSum::default();
            for k in 0..n {
                for l in 0..n {
                    let z2 = Complex64::new(x[k], x[l]) * scale;
                    let (a1, a2) = substitution(z1, z2);
                    let value = f(a1, a2);
                    if !(value.re.is_finite() && value.im.is_finite()) {
                        return Err(Error::Evaluation { node: a1 });
                    }
                    acc.add(value * (w[k] * w[l]));
                }
            }
            Ok(acc.value() * (w[i] * w[j]))
        })
        .collect();
    let mut total = CompensatedComplexSum::default();
    for row in rows {
        total.add(row?);
    }
    Ok(total.value() / (decay * decay * PI * PI))
}

/// Two-mode analogue of [`wigner_from_characteristic`]:
/// `W(a, b) = (1/pi^4) int chi(x1, x2) e^{a x1* - a* x1} e^{b x2* - b* x2}`.
pub fn wigner_from_characteristic_two_mode<F, S>(
    chi: F,
    substitution: S,
    a: Complex64,
    b: Complex64,
    order: usize,
    decay: f64,
) -> Result<f64>
where
    F: Fn(Complex64, Complex64) -> Complex64 + Sync,
    S: Fn(Complex64, Complex64) -> (Complex64, Complex64) + Sync,
{
    let integrand = |x1: Complex64, x2: Complex64| {
        let kernel = a * x1.conj() - a.conj() * x1 + b * x2.conj() - b.conj() * x2;
        chi(x1, x2) * kernel.exp()
    };
    let value = integrate_two_mode_fixed(&integrand, &substitution, order, decay)? / (PI * PI);
    if value.im.abs() > IMAGINARY_RESIDUE_LIMIT {
        return Err(Error::Inconsistent {
            residue: value.im.abs(),
            limit: IMAGINARY_RESIDUE_LIMIT,
        });
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_moment() {
        let spec = QuadratureSpec::fixed(32, Envelope::isotropic(1.0));
        let r = integrate_phase_plane(|a| Complex64::from(a.norm_sqr() * (-a.norm_sqr()).exp()), &spec).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-13);
        assert!(r.value.im.abs() < 1e-15);
    }

    #[test]
    fn anisotropic_rotated_gaussian() {
        // (1/pi) int exp(-c_u x'^2 - c_v y'^2) = 1/sqrt(c_u c_v) in any frame.
        let (angle, cu, cv) = (0.7, 9.0, 0.2);
        let rot = Complex64::from_polar(1.0, -angle);
        let f = |a: Complex64| {
            let p = rot * a;
            Complex64::from((-cu * p.re * p.re - cv * p.im * p.im).exp())
        };
        let spec = QuadratureSpec::fixed(16, Envelope::rotated(angle, cu, cv));
        let r = integrate_phase_plane(f, &spec).unwrap();
        assert!((r.value.re - 1.0 / (cu * cv).sqrt()).abs() < 1e-13);
    }

    #[test]
    fn escalation_reports_order() {
        let spec = QuadratureSpec::new(8, Envelope::isotropic(1.0));
        let r = integrate_phase_plane(|a| (Complex64::new(0.0, 3.0) * a.re).exp() * (-a.norm_sqr()).exp(), &spec)
            .unwrap();
        // (1/pi) int e^{3ix} e^{-x^2-y^2} = e^{-9/4}.
        assert!((r.value.re - (-2.25f64).exp()).abs() < 1e-10);
        assert!(r.order > 8);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let spec = QuadratureSpec::fixed(8, Envelope::default());
        let err = integrate_phase_plane(|_| Complex64::new(f64::NAN, 0.0), &spec).unwrap_err();
        assert!(matches!(err, Error::Evaluation { .. }));
    }

    #[test]
    fn vacuum_wigner_from_characteristic() {
        let spec = QuadratureSpec::new(32, Envelope::isotropic(0.5));
        for beta in [Complex64::new(0.0, 0.0), Complex64::new(0.4, -0.3)] {
            let w = wigner_from_characteristic(|a| Complex64::from((-0.5 * a.norm_sqr()).exp()), beta, &spec).unwrap();
            let expect = 2.0 / PI * (-2.0 * beta.norm_sqr()).exp();
            assert!((w - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn non_hermitian_characteristic_is_flagged() {
        let spec = QuadratureSpec::new(32, Envelope::isotropic(0.5));
        let err = wigner_from_characteristic(
            |a| Complex64::new(0.0, 1.0) * (-0.5 * a.norm_sqr()).exp(),
            Complex64::new(0.0, 0.0),
            &spec,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Inconsistent { .. }));
    }

    #[test]
    fn two_mode_vacuum() {
        let chi = |a: Complex64, b: Complex64| Complex64::from((-0.5 * (a.norm_sqr() + b.norm_sqr())).exp());
        let w = wigner_from_characteristic_two_mode(chi, |z1, z2| (z1, z2), Complex64::new(0.1, 0.0), Complex64::new(0.0, 0.2), 16, 0.5)
            .unwrap();
        let expect = 4.0 / (PI * PI) * (-2.0 * (0.01 + 0.04f64)).exp();
        assert!((w - expect).abs() < 1e-12);
    }
}
