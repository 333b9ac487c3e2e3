//! Numerical building blocks shared by the physics modules.

mod diff;
mod grid;
mod hermite;
mod quadrature;
mod sum;

pub use diff::{derivative, DerivOrder, DiffSpec};
pub use grid::{bisect, FieldMinimum, Grid2D, ScanSeries, WignerField};
pub use hermite::{hermite_functions, GaussHermite, MAX_ORDER};
pub use quadrature::{
    integrate_fixed, integrate_phase_plane, integrate_two_mode_fixed, wigner_from_characteristic,
    wigner_from_characteristic_two_mode, Envelope, Integral, QuadratureSpec, ESCALATION_TOLERANCE,
    IMAGINARY_RESIDUE_LIMIT,
};
pub use sum::{CompensatedComplexSum, CompensatedSum};
