//! Closed-form state functions.
//!
//! Conventions: the two-mode squeezed vacuum is
//! `sum_n (e^{i phi} tanh r)^n |n,n> / cosh r` and the photon-subtracted
//! resource is `a b` applied to it, renormalised. The single-mode squeezer is
//! `S(xi) = exp((xi a^2dag - xi* a^2) / 2)` with `xi = rho e^{i phase}`.
//! Characteristic functions are symmetrically ordered, `chi(alpha) = <D(alpha)>`.

mod input;
mod resource;

use num_complex::Complex64;

use crate::error::{domain, Result};

pub use input::{chi_input, wigner_catlike, wigner_input};
pub(crate) use input::chi_input_unchecked;
pub(crate) use resource::chi_resource_unchecked;
pub use resource::{
    chi_resource, coincidence_ratio, photon_number_prob, quadrature_amplitude, quadrature_amplitude_rotated,
    squeezing_closed, wigner_resource,
};

/// Largest squeezing amplitude accepted; keeps `cosh^6 r` finite.
pub const MAX_SQUEEZING: f64 = 20.0;

/// Two-mode squeezing amplitude `r` and phase `phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    r: f64,
    phi: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !(r.is_finite() && (0.0..=MAX_SQUEEZING).contains(&r)) {
            return Err(domain(format!("squeezing r = {r} outside [0, {MAX_SQUEEZING}]")));
        }
        if !phi.is_finite() {
            return Err(domain(format!("squeezing phase {phi} is not finite")));
        }
        Ok(Self { r, phi })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `e^{-2r}`.
    pub fn gamma(&self) -> f64 {
        (-2.0 * self.r).exp()
    }

    pub fn tanh(&self) -> f64 {
        self.r.tanh()
    }

    /// `e^{i phi} tanh r`.
    pub fn eta(&self) -> Complex64 {
        Complex64::from_polar(self.tanh(), self.phi)
    }

    pub(crate) fn phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phi)
    }

    /// Gaussian decay `kappa` of `|chi_TMSV(alpha*, alpha)| = exp(-kappa |alpha|^2)`.
    ///
    /// Equals `cosh 2r - sinh 2r cos phi`, written as `|cosh r - e^{i phi} sinh r|^2`
    /// so it stays accurate near `phi = 0` for large `r`.
    pub fn teleport_decay(&self) -> f64 {
        let half = 0.5 * self.phi;
        // |c - e^{i phi} s|^2 = e^{-2r} cos^2(phi/2) + e^{2r} sin^2(phi/2).
        self.gamma() * half.cos().powi(2) + (2.0 * self.r).exp() * half.sin().powi(2)
    }
}

/// Entangled resource shared between sender and receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResourceKind {
    /// Two-mode squeezed vacuum.
    Tmsv,
    /// Two-mode squeezed vacuum with one photon subtracted from each mode.
    Tps,
}

impl ResourceKind {
    pub fn check(self, sq: &SqueezeParams) -> Result<()> {
        if self == Self::Tps && sq.r() <= 0.0 {
            return Err(domain("the photon-subtracted resource requires r > 0"));
        }
        Ok(())
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Tmsv => "tmsv",
            Self::Tps => "tps",
        }
    }
}

/// Single-mode state to be teleported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputKind {
    Coherent { alpha0: Complex64 },
    /// `S(-rho e^{i phase}) |0>`.
    SqueezedVacuum { rho: f64, phase: f64 },
    /// `a S(rho e^{i phase}) |0>`, normalised; a single photon at `rho = 0`.
    CatLike { rho: f64, phase: f64 },
    /// `(|alpha0> + e^{i theta} |-alpha0>) / N`.
    IdealCat { alpha0: Complex64, theta: f64 },
}

impl InputKind {
    pub fn validate(&self) -> Result<()> {
        let finite = |x: f64, what: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(domain(format!("{what} = {x} is not finite")))
            }
        };
        match *self {
            Self::Coherent { alpha0 } => {
                finite(alpha0.re, "alpha0.re")?;
                finite(alpha0.im, "alpha0.im")
            }
            Self::SqueezedVacuum { rho, phase } | Self::CatLike { rho, phase } => {
                finite(phase, "input phase")?;
                if !(rho.is_finite() && (0.0..=MAX_SQUEEZING).contains(&rho)) {
                    return Err(domain(format!("input squeezing rho = {rho} outside [0, {MAX_SQUEEZING}]")));
                }
                Ok(())
            }
            Self::IdealCat { alpha0, theta } => {
                finite(alpha0.re, "alpha0.re")?;
                finite(alpha0.im, "alpha0.im")?;
                finite(theta, "theta")?;
                if self.ideal_cat_norm() <= 1e-12 {
                    return Err(domain("ideal cat normalisation vanishes (alpha0 = 0 with theta = pi)"));
                }
                Ok(())
            }
        }
    }

    /// `sqrt(2 (1 + e^{-2|alpha0|^2} cos theta))`; only meaningful for [`InputKind::IdealCat`].
    pub fn ideal_cat_norm(&self) -> f64 {
        match *self {
            Self::IdealCat { alpha0, theta } => {
                (2.0 * (1.0 + (-2.0 * alpha0.norm_sqr()).exp() * theta.cos())).max(0.0).sqrt()
            }
            _ => 1.0,
        }
    }

    /// Frame and per-axis decays of `|chi(alpha)|`, which behaves like
    /// `exp(-decay_u u^2 - decay_v v^2)` with `alpha = e^{i angle}(u + i v)`.
    pub fn chi_decay(&self) -> Option<(f64, f64, f64)> {
        match *self {
            Self::Coherent { .. } => Some((0.0, 0.5, 0.5)),
            Self::SqueezedVacuum { rho, phase } => {
                Some((0.5 * phase, 0.5 * (2.0 * rho).exp(), 0.5 * (-2.0 * rho).exp()))
            }
            Self::CatLike { rho, phase } => Some((0.5 * phase, 0.5 * (-2.0 * rho).exp(), 0.5 * (2.0 * rho).exp())),
            Self::IdealCat { .. } => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Coherent { .. } => "coherent",
            Self::SqueezedVacuum { .. } => "squeezed-vacuum",
            Self::CatLike { .. } => "cat-like",
            Self::IdealCat { .. } => "ideal-cat",
        }
    }
}

/// Linear map `(alpha, beta*) -> (alpha~, beta~*)` that turns the squeezed
/// resource into vacuum in phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovMap {
    cosh: f64,
    /// `sinh r e^{i phi}`.
    coupling: Complex64,
}

impl BogoliubovMap {
    pub fn new(sq: &SqueezeParams) -> Self {
        Self {
            cosh: sq.r().cosh(),
            coupling: sq.phase() * sq.r().sinh(),
        }
    }

    pub fn apply(&self, alpha: Complex64, beta: Complex64) -> (Complex64, Complex64) {
        (
            alpha * self.cosh - self.coupling * beta.conj(),
            beta * self.cosh - self.coupling * alpha.conj(),
        )
    }

    /// Row-major entries acting on `(alpha, beta*)`.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let c = Complex64::from(self.cosh);
        [[c, -self.coupling], [-self.coupling.conj(), c]]
    }

    /// `cosh^2 r - sinh^2 r`, evaluated as `(cosh - sinh)(cosh + sinh)`.
    pub fn determinant(&self) -> f64 {
        let coupling = self.coupling.norm();
        (self.cosh - coupling) * (self.cosh + coupling)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(SqueezeParams::new(-0.1, 0.0).is_err());
        assert!(SqueezeParams::new(f64::NAN, 0.0).is_err());
        assert!(SqueezeParams::new(21.0, 0.0).is_err());
        let sq = SqueezeParams::new(1.0, 0.3).unwrap();
        assert!((sq.gamma() - (-2.0f64).exp()).abs() < 1e-15);
        assert!(sq.eta().norm() < 1.0);
        assert!(ResourceKind::Tps.check(&SqueezeParams::new(0.0, 0.0).unwrap()).is_err());
    }

    #[test]
    fn teleport_decay_matches_direct_form() {
        for (r, phi) in [(0.5, 0.0), (1.0, 1.0), (2.0, std::f64::consts::PI)] {
            let sq = SqueezeParams::new(r, phi).unwrap();
            let direct = (Complex64::from(r.cosh()) - sq.phase() * r.sinh()).norm_sqr();
            assert!((sq.teleport_decay() - direct).abs() < 1e-12 * direct.max(1.0));
        }
    }

    #[test]
    fn bogoliubov_is_symplectic() {
        for r in [0.0, 0.5, 1.0, 3.0] {
            let map = BogoliubovMap::new(&SqueezeParams::new(r, 0.7).unwrap());
            assert!((map.determinant() - 1.0).abs() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn ideal_cat_norm_guard() {
        let bad = InputKind::IdealCat {
            alpha0: Complex64::new(0.0, 0.0),
            theta: std::f64::consts::PI,
        };
        assert!(bad.validate().is_err());
    }
}
