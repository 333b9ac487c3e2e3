//! Single-mode input states.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::InputKind;
use crate::error::{domain, Error, Result};

/// `alpha cosh rho - e^{i phase} alpha* sinh rho`.
fn squeezed_argument(alpha: Complex64, rho: f64, phase: f64) -> Complex64 {
    alpha * rho.cosh() - Complex64::from_polar(rho.sinh(), phase) * alpha.conj()
}

/// Characteristic function of an input state.
///
/// The ideal cat has no closed form here; its characteristic function is
/// available from the Fock representation.
pub fn chi_input(input: InputKind, alpha: Complex64) -> Result<Complex64> {
    input.validate()?;
    chi_input_unchecked(&input, alpha)
}

pub(crate) fn chi_input_unchecked(input: &InputKind, alpha: Complex64) -> Result<Complex64> {
    Ok(match *input {
        InputKind::Coherent { alpha0 } => {
            let phase = 2.0 * (alpha * alpha0.conj()).im;
            Complex64::from_polar((-0.5 * alpha.norm_sqr()).exp(), phase)
        }
        InputKind::SqueezedVacuum { rho, phase } => {
            // S(-xi) flips the sign of the coupling term.
            let arg = squeezed_argument(alpha, rho, phase + PI);
            Complex64::from((-0.5 * arg.norm_sqr()).exp())
        }
        InputKind::CatLike { rho, phase } => {
            let n = squeezed_argument(alpha, rho, phase).norm_sqr();
            Complex64::from((1.0 - n) * (-0.5 * n).exp())
        }
        InputKind::IdealCat { .. } => {
            return Err(Error::Unsupported(
                "the ideal cat characteristic function is served by the Fock representation".into(),
            ))
        }
    })
}

/// Wigner function of the cat-like state `a S(rho e^{i phase}) |0>`.
pub fn wigner_catlike(rho: f64, phase: f64, alpha: Complex64) -> Result<f64> {
    if !(rho.is_finite() && rho >= 0.0) || !phase.is_finite() {
        return Err(domain(format!("cat-like parameters rho = {rho}, phase = {phase}")));
    }
    let n = squeezed_argument(alpha, rho, phase).norm_sqr();
    Ok(2.0 / PI * (4.0 * n - 1.0) * (-2.0 * n).exp())
}

/// Closed-form Wigner function of an input state.
pub fn wigner_input(input: InputKind, alpha: Complex64) -> Result<f64> {
    input.validate()?;
    match input {
        InputKind::Coherent { alpha0 } => Ok(2.0 / PI * (-2.0 * (alpha - alpha0).norm_sqr()).exp()),
        InputKind::SqueezedVacuum { rho, phase } => {
            let n = squeezed_argument(alpha, rho, phase + PI).norm_sqr();
            Ok(2.0 / PI * (-2.0 * n).exp())
        }
        InputKind::CatLike { rho, phase } => wigner_catlike(rho, phase, alpha),
        InputKind::IdealCat { .. } => Err(Error::Unsupported(
            "the ideal cat Wigner function is served by the Fock representation".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation_and_examples() {
        let zero = Complex64::default();
        for input in [
            InputKind::Coherent { alpha0: Complex64::new(2.0, -1.0) },
            InputKind::SqueezedVacuum { rho: 0.4, phase: 1.0 },
            InputKind::CatLike { rho: 0.313, phase: 0.0 },
        ] {
            assert!((chi_input(input, zero).unwrap() - 1.0).norm() < 1e-15);
        }
        let v = chi_input(InputKind::Coherent { alpha0: Complex64::new(2.0, 0.0) }, Complex64::new(0.0, 1.0)).unwrap();
        assert!((v.norm() - (-0.5f64).exp()).abs() < 1e-15);
        assert!((v.arg() - (4.0 - 2.0 * PI)).abs() < 1e-12);
        let a = Complex64::new(0.3, 0.7);
        let vac = chi_input(InputKind::SqueezedVacuum { rho: 0.0, phase: 2.0 }, a).unwrap();
        assert!((vac.re - (-0.5 * a.norm_sqr()).exp()).abs() < 1e-15);
        assert!(chi_input(InputKind::IdealCat { alpha0: Complex64::new(1.0, 0.0), theta: PI }, zero).is_err());
    }

    #[test]
    fn cat_like_wigner_examples() {
        assert!((wigner_catlike(0.313, 0.0, Complex64::default()).unwrap() + 2.0 / PI).abs() < 1e-15);
        assert!(wigner_catlike(0.0, 0.0, Complex64::new(0.5, 0.0)).unwrap().abs() < 1e-15);
        assert!(wigner_catlike(-0.1, 0.0, Complex64::default()).is_err());
    }
}
