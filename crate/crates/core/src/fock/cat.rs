use num_complex::Complex64;

use super::build::{build_state, Cutoff, StateSpec};
use super::state::overlap;
use crate::error::{Error, Result};

/// Resolution of the squeezing search.
pub const RHO_TOLERANCE: f64 = 1e-6;

/// Upper end of the squeezing search interval `[0, RHO_MAX]`.
pub const RHO_MAX: f64 = 1.0;

/// Squeezing `rho` that makes the cat-like state `a S(rho e^{i 2 arg alpha0})|0>`
/// closest to the ideal cat `(|alpha0> + e^{i theta}|-alpha0>)/N`, with the
/// achieved fidelity `|<cat|cat-like>|^2`.
///
/// Golden-section search on `[0, RHO_MAX]`. An optimum pinned at the upper
/// end means the interval does not bracket it and is reported as an error.
pub fn optimize_cat_rho(alpha0: Complex64, theta: f64) -> Result<(f64, f64)> {
    let target = build_state(StateSpec::IdealCat { alpha0, theta }, Cutoff::Auto)?;
    let phase = 2.0 * alpha0.arg();
    let fidelity = |rho: f64| -> Result<f64> {
        let candidate = build_state(StateSpec::CatLike { rho, phase }, Cutoff::Auto)?;
        Ok(overlap(&target, &candidate)?.norm_sqr())
    };
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (0.0, RHO_MAX);
    let mut x1 = hi - golden * (hi - lo);
    let mut x2 = lo + golden * (hi - lo);
    let mut f1 = fidelity(x1)?;
    let mut f2 = fidelity(x2)?;
    while hi - lo > RHO_TOLERANCE {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = fidelity(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = fidelity(x1)?;
        }
    }
    let rho = 0.5 * (lo + hi);
    if RHO_MAX - rho < 10.0 * RHO_TOLERANCE {
        return Err(Error::Numeric(format!(
            "cat squeezing optimum not bracketed by [0, {RHO_MAX}]"
        )));
    }
    Ok((rho, fidelity(rho)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn odd_cat_optimum() {
        let (rho, fidelity) = optimize_cat_rho(Complex64::new(1.0, 0.0), PI).unwrap();
        assert!((rho - 0.313).abs() < 0.005, "{rho}");
        assert!((fidelity - 0.997).abs() < 0.001, "{fidelity}");
    }

    #[test]
    fn single_photon_against_odd_cat() {
        // |<1|cat>|^2 = 4 |a|^2 e^{-|a|^2} / N^2 with N^2 = 2(1 - e^{-2|a|^2}).
        let target = build_state(
            StateSpec::IdealCat {
                alpha0: Complex64::new(1.0, 0.0),
                theta: PI,
            },
            Cutoff::Auto,
        )
        .unwrap();
        let one = build_state(StateSpec::CatLike { rho: 0.0, phase: 0.0 }, Cutoff::Auto).unwrap();
        let f = overlap(&target, &one).unwrap().norm_sqr();
        let expect = 4.0 * (-1.0f64).exp() / (2.0 * (1.0 - (-2.0f64).exp()));
        assert!((f - expect).abs() < 1e-12);
    }
}
