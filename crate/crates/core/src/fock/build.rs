use num_complex::Complex64;

use super::state::{FockState, Modes, MAX_CUTOFF, TOP_LEVEL_TOLERANCE};
use crate::error::{validation, Error, Result};
use crate::states::{InputKind, ResourceKind, SqueezeParams};

/// Smallest cutoff chosen automatically.
pub const MIN_AUTO_CUTOFF: usize = 20;

/// Tail mass the automatic cutoff leaves beyond the retained levels. Sums of
/// amplitudes converge like the square root of this, hence the small value.
pub const AUTO_TAIL: f64 = 1e-20;

/// Cutoff request for [`build_state`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Cutoff {
    /// Smallest cutoff leaving less than [`AUTO_TAIL`] of the norm outside,
    /// clamped to `[MIN_AUTO_CUTOFF, MAX_CUTOFF]`.
    #[default]
    Auto,
    /// Start at this cutoff and raise it if the truncation is unhealthy.
    Fixed(usize),
}

/// State descriptors the oracle can construct.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    Tmsv(SqueezeParams),
    Tps(SqueezeParams),
    /// `a^dag` applied to the two-mode squeezed vacuum, normalised.
    PhotonAdded(SqueezeParams),
    Coherent { alpha0: Complex64 },
    SqueezedVacuum { rho: f64, phase: f64 },
    CatLike { rho: f64, phase: f64 },
    IdealCat { alpha0: Complex64, theta: f64 },
    /// Single-mode `S(rho e^{i phase}) |0>`.
    Squeezed { rho: f64, phase: f64 },
}

impl StateSpec {
    pub fn resource(kind: ResourceKind, sq: SqueezeParams) -> Self {
        match kind {
            ResourceKind::Tmsv => Self::Tmsv(sq),
            ResourceKind::Tps => Self::Tps(sq),
        }
    }

    pub fn modes(&self) -> Modes {
        match self {
            Self::Tmsv(_) | Self::Tps(_) | Self::PhotonAdded(_) => Modes::Two,
            _ => Modes::One,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Self::Tps(sq) => ResourceKind::Tps.check(&sq),
            Self::Tmsv(_) | Self::PhotonAdded(_) => Ok(()),
            Self::Coherent { alpha0 } => InputKind::Coherent { alpha0 }.validate(),
            Self::SqueezedVacuum { rho, phase } | Self::Squeezed { rho, phase } => {
                InputKind::SqueezedVacuum { rho, phase }.validate()
            }
            Self::CatLike { rho, phase } => InputKind::CatLike { rho, phase }.validate(),
            Self::IdealCat { alpha0, theta } => InputKind::IdealCat { alpha0, theta }.validate(),
        }
    }

    /// Unnormalised construction at `cutoff`, built from series and ladder
    /// operators. May carry a larger cutoff than requested.
    fn construct(&self, cutoff: usize) -> Result<FockState> {
        Ok(match *self {
            Self::Tmsv(sq) => two_mode_squeezed(&sq, cutoff),
            // ab|TMSV> starts with e^{i phi} t |00>; drop that phase.
            Self::Tps(sq) => two_mode_squeezed(&sq, cutoff + 1)
                .lower(0)?
                .lower(1)?
                .with_cutoff(cutoff)
                .with_global_phase(-sq.phi()),
            Self::PhotonAdded(sq) => two_mode_squeezed(&sq, cutoff).raise(0)?.with_cutoff(cutoff),
            Self::Coherent { alpha0 } => coherent(alpha0, cutoff),
            Self::SqueezedVacuum { rho, phase } => squeezed_vacuum(rho, phase + std::f64::consts::PI, cutoff),
            Self::Squeezed { rho, phase } => squeezed_vacuum(rho, phase, cutoff),
            // a S|0> vanishes identically at rho = 0; the normalised limit is e^{i phase}|1>.
            Self::CatLike { rho, phase } if rho == 0.0 => {
                FockState::number_state(Modes::One, &[1], cutoff.max(1))?.with_global_phase(phase)
            }
            Self::CatLike { rho, phase } => squeezed_vacuum(rho, phase, cutoff + 1).lower(0)?.with_cutoff(cutoff),
            Self::IdealCat { alpha0, theta } => {
                let plus = coherent(alpha0, cutoff);
                let minus = coherent(-alpha0, cutoff);
                let u = Complex64::from_polar(1.0, theta);
                let amplitudes = plus
                    .amplitudes()
                    .iter()
                    .zip(minus.amplitudes())
                    .map(|(p, m)| p + u * m)
                    .collect();
                FockState::single_mode(amplitudes)?
            }
        })
    }
}

impl From<InputKind> for StateSpec {
    fn from(input: InputKind) -> Self {
        match input {
            InputKind::Coherent { alpha0 } => Self::Coherent { alpha0 },
            InputKind::SqueezedVacuum { rho, phase } => Self::SqueezedVacuum { rho, phase },
            InputKind::CatLike { rho, phase } => Self::CatLike { rho, phase },
            InputKind::IdealCat { alpha0, theta } => Self::IdealCat { alpha0, theta },
        }
    }
}

/// `z^n` for `|z| <= 1` without accumulating rounding over `n` products.
fn power(z: Complex64, n: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let modulus = z.norm();
    if modulus == 0.0 {
        return Complex64::default();
    }
    Complex64::from_polar((n as f64 * modulus.ln()).exp(), n as f64 * z.arg())
}

fn two_mode_squeezed(sq: &SqueezeParams, cutoff: usize) -> FockState {
    let dim = cutoff + 1;
    let mut amplitudes = vec![Complex64::default(); dim * dim];
    let sech = 1.0 / sq.r().cosh();
    let eta = sq.eta();
    for n in 0..dim {
        amplitudes[n * dim + n] = power(eta, n) * sech;
    }
    FockState::two_mode(cutoff, amplitudes).expect("square layout")
}

fn coherent(alpha0: Complex64, cutoff: usize) -> FockState {
    let mut amplitudes = Vec::with_capacity(cutoff + 1);
    let mut c = Complex64::from((-0.5 * alpha0.norm_sqr()).exp());
    for n in 0..=cutoff {
        amplitudes.push(c);
        c = c * alpha0 / ((n + 1) as f64).sqrt();
    }
    FockState::single_mode(amplitudes).expect("non-empty")
}

/// `S(rho e^{i phase}) |0>` with `S(xi) = exp((xi a^2dag - xi* a^2)/2)`.
fn squeezed_vacuum(rho: f64, phase: f64, cutoff: usize) -> FockState {
    let mut amplitudes = vec![Complex64::default(); cutoff + 1];
    let ratio = Complex64::from_polar(rho.tanh(), phase);
    let mut c = Complex64::from(1.0 / rho.cosh().sqrt());
    let mut n = 0;
    while n <= cutoff {
        amplitudes[n] = c;
        let k = n as f64;
        c = c * ratio * ((k + 1.0) / (k + 2.0)).sqrt();
        n += 2;
    }
    FockState::single_mode(amplitudes).expect("non-empty")
}

/// Smallest `n` whose suffix mass beyond level `n` is below `tail`.
fn level_for_tail(levels: &[f64], tail: f64) -> Option<usize> {
    let total: f64 = levels.iter().sum();
    let mut beyond = 0.0;
    let mut answer = None;
    for n in (0..levels.len()).rev() {
        if beyond / total >= tail {
            break;
        }
        answer = Some(n);
        beyond += levels[n];
    }
    answer
}

/// Builds a normalised truncated state.
///
/// A fixed cutoff whose top two levels carry more than `1e-8` of the norm is
/// raised step by step up to [`MAX_CUTOFF`]; failing there is a truncation
/// error.
pub fn build_state(spec: StateSpec, cutoff: Cutoff) -> Result<FockState> {
    spec.validate()?;
    let mut n = match cutoff {
        Cutoff::Fixed(n) if (1..=MAX_CUTOFF).contains(&n) => n,
        Cutoff::Fixed(n) => return Err(validation(format!("cutoff {n} outside 1..={MAX_CUTOFF}"))),
        Cutoff::Auto => {
            let probe = spec.construct(MAX_CUTOFF)?;
            level_for_tail(&probe.level_masses(), AUTO_TAIL)
                .unwrap_or(MAX_CUTOFF)
                .clamp(MIN_AUTO_CUTOFF, MAX_CUTOFF)
        }
    };
    loop {
        let state = spec.construct(n)?;
        let top = state.top_level_mass();
        if top < TOP_LEVEL_TOLERANCE {
            return state.normalized();
        }
        if n == MAX_CUTOFF {
            return Err(Error::Truncation { cutoff: n, tail: top });
        }
        n = (n + n / 2).max(n + 8).min(MAX_CUTOFF);
    }
}
