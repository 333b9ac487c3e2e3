//! Truncated Fock-space oracle.
//!
//! Every state is built from number-state series and ladder operators, then
//! probed with displacement matrices, parity, Hermite functions and explicit
//! partial transposes. None of it shares code with the closed forms in
//! [`crate::states`], which makes it a referee for them.

mod build;
mod cat;
mod displacement;
mod measures;
mod mixing;
mod negativity;
mod state;

pub use build::{build_state, Cutoff, StateSpec, AUTO_TAIL, MIN_AUTO_CUTOFF};
pub use cat::{optimize_cat_rho, RHO_MAX, RHO_TOLERANCE};
pub use displacement::{displacement_matrix, displacement_matrix_element};
pub use measures::{numeric_characteristic, numeric_quadrature, numeric_squeezing, numeric_wigner, Windowed};
pub use mixing::{basis_change_5050, herald_tps, sector_rotation, tps_plus_minus, HeraldingSetup, ANCILLA_LEVELS};
pub use negativity::{numeric_logneg, DensityMatrix, EIGEN_ZERO, MAX_BLOCK};
pub use state::{overlap, FockState, Modes, MAX_CUTOFF, TOP_LEVEL_TOLERANCE};
