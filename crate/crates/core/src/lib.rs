//! Continuous-variable quantum teleportation with two-mode squeezed vacuum
//! and two-photon-subtracted entangled resources.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: Gauss-Hermite quadrature over the phase plane, the
//!   characteristic-function Fourier transform, Richardson differentiation
//!   and Wigner-field grids.
//! * [`states`]: closed-form characteristic functions, Wigner functions,
//!   quadrature amplitudes and photon statistics of the resources and of
//!   the input states.
//! * [`entanglement`]: logarithmic negativity from Schmidt coefficients.
//! * [`fock`]: truncated Fock-space construction used as an independent
//!   numerical oracle, including heralded photon subtraction.
//! * [`teleport`]: fidelities and output Wigner functions of the
//!   teleported states.

pub mod entanglement;
mod error;
pub mod fock;
pub mod numerics;
pub mod states;
pub mod teleport;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use entanglement::{EntangledResource, LogNegativity, SchmidtCoeffs};
pub use fock::{Cutoff, DensityMatrix, FockState, Modes, StateSpec};
pub use numerics::{DiffSpec, Envelope, Grid2D, QuadratureSpec, ScanSeries, WignerField};
pub use states::{BogoliubovMap, InputKind, ResourceKind, SqueezeParams};
pub use teleport::{FidelityResult, FidelityRoute, TeleportJob};
