//! Logarithmic negativity of the entangled resources.

use std::f64::consts::LN_2;

use crate::error::{domain, validation, Result};
use crate::fock::{build_state, numeric_logneg, Cutoff, StateSpec};
use crate::numerics::CompensatedSum;
use crate::states::{ResourceKind, SqueezeParams};

/// Logarithmic negativity in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogNegativity(f64);

impl LogNegativity {
    pub fn new(bits: f64) -> Result<Self> {
        // Round-off can leave a separable state a hair below zero.
        if bits.is_finite() && bits > -1e-14 {
            Ok(Self(bits.max(0.0)))
        } else {
            Err(validation(format!("log-negativity {bits} is not a non-negative number")))
        }
    }

    pub fn bits(self) -> f64 {
        self.0
    }
}

/// Schmidt coefficients `c_n >= 0` of `sum_n c_n e^{i n phi} |n, n>`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtCoeffs(Vec<f64>);

/// Cumulative probability at which coefficient sequences are cut.
pub const SCHMIDT_TAIL: f64 = 1e-14;

/// Longest coefficient sequence generated.
pub const SCHMIDT_CAP: usize = 400;

impl SchmidtCoeffs {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(validation("Schmidt coefficients must be finite and non-negative"));
        }
        let norm: CompensatedSum = coeffs.iter().map(|c| c * c).collect();
        if (norm.value() - 1.0).abs() > 1e-8 {
            return Err(validation(format!("Schmidt coefficients have norm {}", norm.value())));
        }
        Ok(Self(coeffs))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Coefficients of a resource, cut once the retained probability
    /// exceeds `1 - SCHMIDT_TAIL` or at [`SCHMIDT_CAP`] terms.
    pub fn of_resource(kind: ResourceKind, r: f64) -> Result<Self> {
        let sq = SqueezeParams::new(r, 0.0)?;
        kind.check(&sq)?;
        let t = r.tanh();
        let lead = match kind {
            ResourceKind::Tmsv => 1.0 / r.cosh(),
            ResourceKind::Tps => 1.0 / (r.cosh().powi(3) * (1.0 + t * t).sqrt()),
        };
        let mut coeffs = Vec::new();
        let mut cumulative = CompensatedSum::default();
        let mut power = 1.0;
        for n in 0..SCHMIDT_CAP {
            let c = match kind {
                ResourceKind::Tmsv => lead * power,
                ResourceKind::Tps => lead * (n as f64 + 1.0) * power,
            };
            coeffs.push(c);
            cumulative.add(c * c);
            if cumulative.value() > 1.0 - SCHMIDT_TAIL {
                break;
            }
            power *= t;
        }
        Self::new(coeffs)
    }
}

/// `log2 (sum_n c_n)^2`.
pub fn logneg_from_coeffs(coeffs: &SchmidtCoeffs) -> LogNegativity {
    let sum: CompensatedSum = coeffs.0.iter().copied().collect();
    LogNegativity(2.0 * sum.value().log2())
}

/// Closed-form log-negativity: `2r log2 e` and `log2(e^{4r} / cosh 2r)`.
pub fn logneg_closed(kind: ResourceKind, r: f64) -> Result<LogNegativity> {
    let sq = SqueezeParams::new(r, 0.0)?;
    kind.check(&sq)?;
    LogNegativity::new(match kind {
        ResourceKind::Tmsv => 2.0 * r / LN_2,
        ResourceKind::Tps => (4.0 * r - (2.0 * r).cosh().ln()) / LN_2,
    })
}

/// Resources compared by entanglement, including the single-photon-added
/// state `a^dag |TMSV>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntangledResource {
    Tmsv,
    Tps,
    /// No closed form; evaluated with the Fock oracle.
    PhotonAdded,
}

impl EntangledResource {
    pub fn label(self) -> &'static str {
        match self {
            Self::Tmsv => "tmsv",
            Self::Tps => "tps",
            Self::PhotonAdded => "photon-added",
        }
    }

    /// Whether the value comes from the Fock oracle rather than a closed form.
    pub fn is_numeric(self) -> bool {
        self == Self::PhotonAdded
    }
}

impl From<ResourceKind> for EntangledResource {
    fn from(kind: ResourceKind) -> Self {
        match kind {
            ResourceKind::Tmsv => Self::Tmsv,
            ResourceKind::Tps => Self::Tps,
        }
    }
}

/// Log-negativity of any [`EntangledResource`].
pub fn logneg(kind: EntangledResource, r: f64) -> Result<LogNegativity> {
    match kind {
        EntangledResource::Tmsv => logneg_closed(ResourceKind::Tmsv, r),
        EntangledResource::Tps => logneg_closed(ResourceKind::Tps, r),
        EntangledResource::PhotonAdded => {
            let sq = SqueezeParams::new(r, 0.0)?;
            numeric_logneg(&build_state(StateSpec::PhotonAdded(sq), Cutoff::Auto)?)
        }
    }
}

/// `2^{eps(kind, r)} / 2^{eps_TMSV(r)}`.
pub fn logneg_ratio(kind: EntangledResource, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain(format!("the entanglement ratio needs r > 0, got {r}")));
    }
    let eps = logneg(kind, r)?.bits();
    let reference = logneg_closed(ResourceKind::Tmsv, r)?.bits();
    Ok((eps - reference).exp2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert!((logneg_closed(ResourceKind::Tmsv, 1.0).unwrap().bits() - 2.0 / LN_2).abs() < 1e-15);
        let tps = logneg_closed(ResourceKind::Tps, 1.0).unwrap().bits();
        assert!((tps - (4.0 - 2f64.cosh().ln()) / LN_2).abs() < 1e-14);
        // Quoted decimal is 3.85930; the expression evaluates to 3.859205.
        assert!((tps - 3.85930).abs() < 1e-4);
        assert_eq!(logneg_closed(ResourceKind::Tmsv, 0.0).unwrap().bits(), 0.0);
        assert!(logneg_closed(ResourceKind::Tps, 0.0).is_err());
    }

    #[test]
    fn coefficient_formula() {
        assert_eq!(logneg_from_coeffs(&SchmidtCoeffs::new(vec![1.0]).unwrap()).bits(), 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((logneg_from_coeffs(&SchmidtCoeffs::new(vec![h, h]).unwrap()).bits() - 1.0).abs() < 1e-15);
        assert!(SchmidtCoeffs::new(vec![0.5, 0.5]).is_err());
        assert!(SchmidtCoeffs::new(vec![-1.0]).is_err());
        for kind in [ResourceKind::Tmsv, ResourceKind::Tps] {
            let c = SchmidtCoeffs::of_resource(kind, 0.8).unwrap();
            let closed = logneg_closed(kind, 0.8).unwrap().bits();
            assert!((logneg_from_coeffs(&c).bits() - closed).abs() < 1e-6);
        }
    }

    #[test]
    fn ratios_and_ordering() {
        assert!((logneg_ratio(EntangledResource::Tmsv, 0.7).unwrap() - 1.0).abs() < 1e-15);
        let tps = logneg_ratio(EntangledResource::Tps, 1.0).unwrap();
        assert!((tps - 1.0f64.exp().powi(2) / 2.0f64.cosh()).abs() < 1e-12);
        let added = logneg_ratio(EntangledResource::PhotonAdded, 1.0).unwrap();
        assert!(tps > added && added > 1.0, "{tps} {added}");
        assert!(logneg_ratio(EntangledResource::Tps, 0.0).is_err());
    }
}
