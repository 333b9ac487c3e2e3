//! Two-mode squeezed vacuum and its photon-subtracted counterpart.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::{BogoliubovMap, ResourceKind, SqueezeParams};
use crate::error::{domain, Result};

/// `chi(alpha_1, alpha_2) = <D_a(alpha_1) D_b(alpha_2)>` of the resource.
pub fn chi_resource(kind: ResourceKind, sq: SqueezeParams, alpha1: Complex64, alpha2: Complex64) -> Result<Complex64> {
    kind.check(&sq)?;
    Ok(chi_resource_unchecked(kind, &sq, alpha1, alpha2))
}

pub(crate) fn chi_resource_unchecked(
    kind: ResourceKind,
    sq: &SqueezeParams,
    alpha1: Complex64,
    alpha2: Complex64,
) -> Complex64 {
    let (c, s) = (sq.r().cosh(), sq.r().sinh());
    let u = sq.phase();
    let z1 = alpha1 * c - alpha2.conj() * u * s;
    let z2 = alpha2 * c - alpha1.conj() * u * s;
    let (n1, n2) = (z1.norm_sqr(), z2.norm_sqr());
    let gaussian = (-0.5 * (n1 + n2)).exp();
    match kind {
        ResourceKind::Tmsv => Complex64::from(gaussian),
        ResourceKind::Tps => {
            let t = sq.tanh();
            let cross = (u.conj() * z1 * z2).re;
            let bracket = 1.0 + 2.0 * cross * t + (1.0 - n1) * (1.0 - n2) * t * t;
            Complex64::from(gaussian * bracket / (1.0 + t * t))
        }
    }
}

/// Wigner function `W(alpha, beta)` of the resource.
pub fn wigner_resource(kind: ResourceKind, sq: SqueezeParams, alpha: Complex64, beta: Complex64) -> Result<f64> {
    kind.check(&sq)?;
    let (a, b) = BogoliubovMap::new(&sq).apply(alpha, beta);
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    let gaussian = 4.0 / (PI * PI) * (-2.0 * (na + nb)).exp();
    Ok(match kind {
        ResourceKind::Tmsv => gaussian,
        ResourceKind::Tps => {
            let t = sq.tanh();
            let cross = (sq.phase().conj() * a * b).re;
            let bracket = 1.0 + 8.0 * t * cross + (4.0 * na - 1.0) * (4.0 * nb - 1.0) * t * t;
            gaussian * bracket / (1.0 + t * t)
        }
    })
}

/// Position-space amplitude `<x_a, x_b | psi>` with `x = (a + a^dag)/sqrt 2`.
///
/// The photon-subtracted amplitude is `(1 + eta d/d eta)` applied to the
/// squeezed-vacuum kernel, carried out in closed form. Its overall phase is
/// chosen so that the `|0,0>` component is real and positive.
pub fn quadrature_amplitude(kind: ResourceKind, sq: SqueezeParams, x_a: f64, x_b: f64) -> Result<Complex64> {
    kind.check(&sq)?;
    let (c, s) = (sq.r().cosh(), sq.r().sinh());
    let u = sq.phase();
    let u2 = u * u;
    // (1 - eta^2) cosh^2 r, kept in this form to avoid cancellation at large r.
    let denom = Complex64::from(c * c) - u2 * (s * s);
    let sum_sq = x_a * x_a + x_b * x_b;
    let product = x_a * x_b;
    let exponent = (-0.5 * sum_sq * (Complex64::from(c * c) + u2 * (s * s)) + 2.0 * product * u * (s * c)) / denom;
    let kernel = exponent.exp() / (PI * denom).sqrt();
    Ok(match kind {
        ResourceKind::Tmsv => kernel,
        ResourceKind::Tps => {
            let t = sq.tanh();
            let numerator = product * u * (s * c) * (1.0 + u2 * (t * t)) - sum_sq * u2 * (s * s);
            let factor = denom.inv() + 2.0 * numerator / (denom * denom);
            kernel * factor / (1.0 + t * t).sqrt()
        }
    })
}

/// [`quadrature_amplitude`] in the rotated frame `x_a = (x1 + x2)/sqrt 2`,
/// `x_b = (x1 - x2)/sqrt 2`.
pub fn quadrature_amplitude_rotated(kind: ResourceKind, sq: SqueezeParams, x1: f64, x2: f64) -> Result<Complex64> {
    quadrature_amplitude(kind, sq, FRAC_1_SQRT_2 * (x1 + x2), FRAC_1_SQRT_2 * (x1 - x2))
}

/// Probability of finding `n` photons in each mode.
pub fn photon_number_prob(kind: ResourceKind, sq: SqueezeParams, n: u64) -> Result<f64> {
    kind.check(&sq)?;
    let t2 = sq.tanh().powi(2);
    let geometric = if n == 0 { 1.0 } else { (n as f64 * t2.ln()).exp() };
    let sech2 = sq.r().cosh().powi(-2);
    Ok(match kind {
        ResourceKind::Tmsv => geometric * sech2,
        ResourceKind::Tps => {
            let weight = (n as f64 + 1.0).powi(2);
            weight * geometric * sech2.powi(3) / (1.0 + t2)
        }
    })
}

/// Minimum quadrature variance of `(a + b)/sqrt 2` minus the vacuum value 1/2.
pub fn squeezing_closed(kind: ResourceKind, r: f64) -> Result<f64> {
    let sq = SqueezeParams::new(r, 0.0)?;
    kind.check(&sq)?;
    let deficit = -(-2.0 * r).exp_m1();
    Ok(match kind {
        ResourceKind::Tmsv => -0.5 * deficit,
        ResourceKind::Tps => 0.5 * deficit * ((2.0 * r).tanh() - 2.0),
    })
}

/// Ratio of the one-photon coincidence probabilities of the two resources.
pub fn coincidence_ratio(r: f64) -> Result<f64> {
    let sq = SqueezeParams::new(r, 0.0)?;
    let tps = photon_number_prob(ResourceKind::Tps, sq, 1)?;
    let tmsv = photon_number_prob(ResourceKind::Tmsv, sq, 1)?;
    if tmsv == 0.0 {
        return Err(domain("no coincidences at r = 0"));
    }
    Ok(tps / tmsv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::CompensatedSum;

    fn sq(r: f64, phi: f64) -> SqueezeParams {
        SqueezeParams::new(r, phi).unwrap()
    }

    #[test]
    fn characteristic_normalisation() {
        for kind in [ResourceKind::Tmsv, ResourceKind::Tps] {
            let zero = Complex64::new(0.0, 0.0);
            assert!((chi_resource(kind, sq(0.7, 1.1), zero, zero).unwrap() - 1.0).norm() < 1e-15);
        }
        let zero = Complex64::new(0.0, 0.0);
        assert!(chi_resource(ResourceKind::Tps, sq(0.0, 0.0), zero, zero).is_err());
    }

    #[test]
    fn teleport_slice_reduces_to_gamma_gaussian() {
        // At phi = 0 the slice (-alpha*, -alpha) gives exp(-gamma |alpha|^2).
        let a = Complex64::new(1.0, 0.0);
        let v = chi_resource(ResourceKind::Tmsv, sq(0.5, 0.0), -a.conj(), -a).unwrap();
        assert!((v.re - (-(-1.0f64).exp()).exp()).abs() < 1e-14);
        // The photon-subtracted slice is the corrected bracket times the same Gaussian.
        let r = 0.5f64;
        let (g, t) = ((-2.0 * r).exp(), r.tanh());
        for a in [Complex64::new(0.3, 0.4), Complex64::new(-1.2, 0.1)] {
            let u = a.norm_sqr();
            let bracket = (1.0 + 2.0 * g * t * u + t * t * (1.0 - g * u).powi(2)) / (1.0 + t * t);
            let v = chi_resource(ResourceKind::Tps, sq(r, 0.0), -a.conj(), -a).unwrap();
            assert!((v.re - bracket * (-g * u).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn tps_characteristic_is_continuous_at_small_r() {
        let (a1, a2) = (Complex64::new(0.4, -0.2), Complex64::new(0.1, 0.9));
        let gap = |r: f64| {
            let s = sq(r, 0.3);
            (chi_resource(ResourceKind::Tps, s, a1, a2).unwrap() - chi_resource(ResourceKind::Tmsv, s, a1, a2).unwrap()).re
        };
        // The gap closes linearly in r with slope 2 Re(e^{-i phi} a1 a2) exp(-(|a1|^2 + |a2|^2)/2).
        let slope = 2.0 * (Complex64::from_polar(1.0, -0.3) * a1 * a2).re * (-0.5 * (a1.norm_sqr() + a2.norm_sqr())).exp();
        assert!((gap(1e-4) / 1e-4 - slope).abs() < 1e-3 * slope.abs());
        assert!(gap(1e-6).abs() < 1e-6);
    }

    #[test]
    fn wigner_origin_and_negativity() {
        let w = wigner_resource(ResourceKind::Tmsv, sq(1.0, 0.0), Complex64::default(), Complex64::default()).unwrap();
        assert!((w - 4.0 / (PI * PI)).abs() < 1e-15);
        let w = wigner_resource(ResourceKind::Tps, sq(1.0, 0.0), Complex64::default(), Complex64::default()).unwrap();
        assert!((w - 4.0 / (PI * PI)).abs() < 1e-15);
        // Along beta = -alpha the bracket dips below zero.
        let x = 0.5 * (-1.0f64).exp();
        let w = wigner_resource(ResourceKind::Tps, sq(1.0, 0.0), Complex64::new(x, 0.0), Complex64::new(-x, 0.0)).unwrap();
        assert!(w < 0.0);
    }

    #[test]
    fn epr_form_of_the_quadrature_amplitude() {
        let r = 1.0f64;
        for (x1, x2) in [(0.0, 0.0), (0.1, 0.5), (-0.2, 1.5)] {
            let psi = quadrature_amplitude_rotated(ResourceKind::Tmsv, sq(r, PI), x1, x2).unwrap();
            let expect = ((-x1 * x1 * (2.0 * r).exp() - x2 * x2 * (-2.0 * r).exp()).exp() / PI).sqrt();
            assert!((psi.norm_sqr() - expect * expect).abs() < 1e-12, "({x1}, {x2}): {} vs {}", psi.norm_sqr(), expect * expect);
        }
        let peak = quadrature_amplitude_rotated(ResourceKind::Tmsv, sq(r, PI), 0.0, 0.0).unwrap();
        assert!((peak.norm() - 1.0 / PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn subtracted_amplitude_dips_at_origin() {
        let p = |x2: f64| quadrature_amplitude_rotated(ResourceKind::Tps, sq(1.0, PI), 0.0, x2).unwrap().norm_sqr();
        assert!(p(0.0) < p(1.5));
    }

    #[test]
    fn quadrature_normalisation() {
        // Trapezoid over a rotated grid wide enough for both axes.
        for kind in [ResourceKind::Tmsv, ResourceKind::Tps] {
            for phi in [0.0, PI, 0.8] {
                let s = sq(0.6, phi);
                let n = 301;
                let h = 16.0 / (n - 1) as f64;
                let mut acc = CompensatedSum::default();
                for i in 0..n {
                    for j in 0..n {
                        let xa = -8.0 + i as f64 * h;
                        let xb = -8.0 + j as f64 * h;
                        acc.add(quadrature_amplitude(kind, s, xa, xb).unwrap().norm_sqr());
                    }
                }
                assert!((acc.value() * h * h - 1.0).abs() < 1e-8, "{kind:?} phi={phi}");
            }
        }
    }

    #[test]
    fn photon_statistics() {
        let p0 = photon_number_prob(ResourceKind::Tmsv, sq(1.0, 0.0), 0).unwrap();
        assert!((p0 - 1.0f64.cosh().powi(-2)).abs() < 1e-15);
        for kind in [ResourceKind::Tmsv, ResourceKind::Tps] {
            let total: CompensatedSum = (0..2000).map(|n| photon_number_prob(kind, sq(1.0, 0.0), n).unwrap()).collect();
            assert!((total.value() - 1.0).abs() < 1e-10);
        }
        let r1 = coincidence_ratio(1.0).unwrap();
        let t2 = 1.0f64.tanh().powi(2);
        assert!((r1 - 4.0 / (1.0f64.cosh().powi(4) * (1.0 + t2))).abs() < 1e-14);
        let r5 = coincidence_ratio(5.0).unwrap();
        assert!((5e-8..8e-8).contains(&r5), "{r5}");
    }

    #[test]
    fn squeezing_values() {
        let tmsv = squeezing_closed(ResourceKind::Tmsv, 1.0).unwrap();
        let tps = squeezing_closed(ResourceKind::Tps, 1.0).unwrap();
        assert!((tmsv + 0.5 * (1.0 - (-2.0f64).exp())).abs() < 1e-15);
        assert!((tps + 0.44788).abs() < 1e-5);
        assert!((squeezing_closed(ResourceKind::Tps, 5.0).unwrap() + 0.5).abs() < 1e-4);
        assert!(squeezing_closed(ResourceKind::Tps, 0.0).is_err());
        assert_eq!(squeezing_closed(ResourceKind::Tmsv, 0.0).unwrap(), 0.0);
    }
}
