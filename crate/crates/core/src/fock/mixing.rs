use std::f64::consts::FRAC_PI_4;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use super::build::{build_state, Cutoff, StateSpec};
use super::state::{FockState, Modes};
use crate::error::{domain, validation, Error, Result};
use crate::states::SqueezeParams;

/// `exp(theta (a^dag b - a b^dag))` on the `n`-photon sector, in the basis
/// `|m, n - m>` indexed by `m`. It maps `a^dag -> a^dag cos theta - b^dag sin theta`.
pub fn sector_rotation(n: usize, theta: f64) -> Result<DMatrix<f64>> {
    let dim = n + 1;
    // i times the real antisymmetric generator is Hermitian.
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for m in 0..n {
        let g = (((m + 1) * (n - m)) as f64).sqrt();
        h[(m + 1, m)] = Complex64::new(0.0, g);
        h[(m, m + 1)] = Complex64::new(0.0, -g);
    }
    let eigen = SymmetricEigen::try_new(h, f64::EPSILON, 0)
        .ok_or_else(|| Error::Numeric(format!("sector {n} generator did not diagonalise")))?;
    let v = &eigen.eigenvectors;
    let phases = DMatrix::from_diagonal(&eigen.eigenvalues.map(|l| Complex64::from_polar(1.0, -theta * l)));
    let u = v * phases * v.adjoint();
    Ok(u.map(|z| z.re))
}

/// Re-expresses a two-mode state in the modes `(a + b)/sqrt 2` and
/// `(a - b)/sqrt 2`. The output cutoff is twice the input cutoff, so the map
/// is exact.
pub fn basis_change_5050(state: &FockState) -> Result<FockState> {
    if state.modes() != Modes::Two {
        return Err(validation("the 50:50 basis change needs a two-mode state"));
    }
    let cutoff = state.cutoff();
    let out_dim = 2 * cutoff + 1;
    // Real and imaginary parts of each rotated photon-number sector.
    type Sector = (usize, Vec<f64>, Vec<f64>);
    let sectors: Vec<Result<Option<Sector>>> = (0..=2 * cutoff)
        .into_par_iter()
        .map(|n| {
            let lo = n.saturating_sub(cutoff);
            let hi = n.min(cutoff);
            let input: Vec<Complex64> = (0..=n)
                .map(|m| {
                    if m < lo || m > hi {
                        return Complex64::default();
                    }
                    // Parity on b turns the rotation into a^dag -> (a^dag + b^dag)/sqrt 2,
                    // b^dag -> (a^dag - b^dag)/sqrt 2.
                    let sign = if (n - m) % 2 == 0 { 1.0 } else { -1.0 };
                    state.amplitude2(m, n - m) * sign
                })
                .collect();
            if input.iter().all(|z| *z == Complex64::default()) {
                return Ok(None);
            }
            let u = sector_rotation(n, -FRAC_PI_4)?;
            let re = nalgebra::DVector::from_iterator(n + 1, input.iter().map(|z| z.re));
            let im = nalgebra::DVector::from_iterator(n + 1, input.iter().map(|z| z.im));
            Ok(Some((n, (&u * re).iter().copied().collect(), (&u * im).iter().copied().collect())))
        })
        .collect();
    let mut amplitudes = vec![Complex64::default(); out_dim * out_dim];
    for sector in sectors {
        if let Some((n, re, im)) = sector? {
            for p in 0..=n {
                amplitudes[p * out_dim + (n - p)] = Complex64::new(re[p], im[p]);
            }
        }
    }
    FockState::two_mode(2 * cutoff, amplitudes)
}

/// The photon-subtracted resource written directly in the modes
/// `(a + b)/sqrt 2` and `(a - b)/sqrt 2`:
/// `(a+^2 S+|0>)(S-|0>) - (S+|0>)(a-^2 S-|0>)`, normalised, where the two
/// single-mode squeezers have phases `phi` and `phi + pi`.
pub fn tps_plus_minus(sq: SqueezeParams, cutoff: usize) -> Result<FockState> {
    if sq.r() <= 0.0 {
        return Err(domain("photon subtraction needs r > 0"));
    }
    let squeezed = |phase: f64| {
        build_state(
            StateSpec::Squeezed { rho: sq.r(), phase },
            Cutoff::Fixed(cutoff + 2),
        )
    };
    let plus = squeezed(sq.phi())?;
    let minus = squeezed(sq.phi() + std::f64::consts::PI)?;
    let lowered = |s: &FockState| -> Result<FockState> { Ok(s.lower(0)?.lower(0)?.with_cutoff(cutoff)) };
    let first = FockState::product(&lowered(&plus)?, &minus.with_cutoff(cutoff))?;
    let second = FockState::product(&plus.with_cutoff(cutoff), &lowered(&minus)?)?;
    let amplitudes = first
        .amplitudes()
        .iter()
        .zip(second.amplitudes())
        .map(|(x, y)| x - y)
        .collect();
    FockState::two_mode(cutoff, amplitudes)?
        .with_global_phase(-sq.phi())
        .normalized()
}

/// Highest ancilla level kept behind each tap-off beamsplitter.
pub const ANCILLA_LEVELS: usize = 3;

/// Tap-off beamsplitters used to herald photon subtraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeraldingSetup {
    transmissivity: f64,
    cutoff: Cutoff,
}

impl HeraldingSetup {
    /// Intensity transmissivity in `(0, 1)`; the scheme targets values close to 1.
    pub fn new(transmissivity: f64, cutoff: Cutoff) -> Result<Self> {
        if !(transmissivity > 0.0 && transmissivity < 1.0) {
            return Err(domain(format!("transmissivity {transmissivity} outside (0, 1)")));
        }
        Ok(Self { transmissivity, cutoff })
    }

    pub fn transmissivity(&self) -> f64 {
        self.transmissivity
    }
}

/// Amplitudes `<n - k, k| U |n, 0>` for ancilla levels `k = 0..=ANCILLA_LEVELS`.
fn tap_off(n: usize, transmissivity: f64) -> Result<[f64; ANCILLA_LEVELS + 1]> {
    let theta = -transmissivity.sqrt().acos();
    let u = sector_rotation(n, theta)?;
    let mut out = [0.0; ANCILLA_LEVELS + 1];
    for (k, slot) in out.iter_mut().enumerate().take(n.min(ANCILLA_LEVELS) + 1) {
        *slot = u[(n - k, n)];
    }
    Ok(out)
}

/// Couples each mode of the squeezed vacuum to a vacuum ancilla, keeps the
/// branch where both ancillas hold exactly one photon, and returns the
/// renormalised state together with the probability of that branch.
pub fn herald_tps(sq: SqueezeParams, setup: HeraldingSetup) -> Result<(FockState, f64)> {
    if sq.r() <= 0.0 {
        return Err(domain("heralded subtraction needs r > 0"));
    }
    let tmsv = build_state(StateSpec::Tmsv(sq), setup.cutoff)?;
    let dim = tmsv.dim();
    let kraus: Vec<f64> = (0..dim)
        .into_par_iter()
        .map(|n| tap_off(n, setup.transmissivity).map(|amps| amps[1]))
        .collect::<Result<_>>()?;
    let mut amplitudes = vec![Complex64::default(); dim * dim];
    for a in 1..dim {
        for b in 1..dim {
            amplitudes[(a - 1) * dim + (b - 1)] = tmsv.amplitude2(a, b) * (kraus[a] * kraus[b]);
        }
    }
    let heralded = FockState::two_mode(tmsv.cutoff(), amplitudes)?;
    let probability = heralded.norm_sqr();
    if probability < 1e-30 {
        return Err(Error::Herald(probability));
    }
    Ok((heralded.normalized()?, probability))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::overlap;

    #[test]
    fn single_photon_through_the_basis_change() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = FockState::number_state(Modes::Two, &[1, 0], 1).unwrap();
        let out = basis_change_5050(&s).unwrap();
        assert!((out.amplitude2(1, 0) - h).norm() < 1e-14);
        assert!((out.amplitude2(0, 1) - h).norm() < 1e-14);
        let s = FockState::number_state(Modes::Two, &[0, 1], 1).unwrap();
        let out = basis_change_5050(&s).unwrap();
        assert!((out.amplitude2(1, 0) - h).norm() < 1e-14);
        assert!((out.amplitude2(0, 1) + h).norm() < 1e-14);
    }

    #[test]
    fn sector_rotation_is_orthogonal() {
        let u = sector_rotation(9, 0.37).unwrap();
        let id = &u * u.transpose();
        assert!((id - DMatrix::identity(10, 10)).amax() < 1e-12);
    }

    #[test]
    fn tap_off_matches_kraus_closed_form() {
        // sqrt(1 - T) T^{(n-1)/2} sqrt(n), up to an overall sign.
        let t = 0.9f64;
        for n in 1..12 {
            let amps = tap_off(n, t).unwrap();
            let expect = (1.0 - t).sqrt() * t.powf((n as f64 - 1.0) / 2.0) * (n as f64).sqrt();
            assert!((amps[1].abs() - expect).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn basis_change_preserves_norm() {
        let sq = SqueezeParams::new(0.6, 0.4).unwrap();
        let s = build_state(StateSpec::Tps(sq), Cutoff::Fixed(30)).unwrap();
        let out = basis_change_5050(&s).unwrap();
        assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn heralding_approaches_ideal_subtraction() {
        let sq = SqueezeParams::new(0.8, 0.0).unwrap();
        let ideal = build_state(StateSpec::Tps(sq), Cutoff::Auto).unwrap();
        let fidelity = |t: f64| {
            let (s, _) = herald_tps(sq, HeraldingSetup::new(t, Cutoff::Auto).unwrap()).unwrap();
            overlap(&s, &ideal).unwrap().norm_sqr()
        };
        assert!(fidelity(0.99) >= 0.999);
        assert!(fidelity(0.9) > fidelity(0.5));
        let (_, p) = herald_tps(sq, HeraldingSetup::new(0.999, Cutoff::Auto).unwrap()).unwrap();
        assert!(p <= 1e-3);
    }

    #[test]
    fn basis_change_reproduces_the_plus_minus_form() {
        let sq = SqueezeParams::new(0.8, 0.0).unwrap();
        let fock = build_state(StateSpec::Tps(sq), Cutoff::Fixed(60)).unwrap();
        let rotated = basis_change_5050(&fock).unwrap();
        let direct = tps_plus_minus(sq, 120).unwrap();
        let o = overlap(&rotated, &direct).unwrap();
        assert!(o.norm_sqr() >= 1.0 - 1e-8, "{o}");
        let tilted = SqueezeParams::new(0.5, 1.1).unwrap();
        let rotated = basis_change_5050(&build_state(StateSpec::Tps(tilted), Cutoff::Fixed(40)).unwrap()).unwrap();
        assert!(overlap(&rotated, &tps_plus_minus(tilted, 80).unwrap()).unwrap().norm_sqr() >= 1.0 - 1e-8);
    }
}
