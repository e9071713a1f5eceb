//! Relativistic spin-½ kinematics: Wigner rotations, boosted Bell states
//! and CHSH observables.
//!
//! Natural units with `m = 1` unless a mass is given explicitly. Four-vectors
//! are indexed `(x, y, z, t)` with metric `diag(1, 1, 1, −1)`.

pub mod bell;
pub mod error;
pub mod kinematics;
pub mod linalg;
pub mod observables;
pub mod optimizer;
pub mod scan;
pub mod verify;
pub mod wigner;

pub use bell::{bell_decompose, bell_state, boost_two_particle, BellCoefficients, BellLabel, TwoQubitState};
pub use error::{Error, Result};
pub use kinematics::{BoostSpec, FourMomentum, Lorentz4};
pub use linalg::{Mat2, Mat4, Vec3, C64};
pub use observables::{chsh, chsh_universal, rel_spin_observable, ChshSettings, MeasurementDirection};
pub use wigner::{little_group_closed, little_group_oracle, wigner_angle, WignerRotation};
pub use optimizer::{maximize_chsh, OptimizationResult, OptimizerConfig};
pub use scan::{chsh_scan, wigner_scan, ScanConfig, Vectors};
pub use verify::{run_suite, run_suite_with, CheckReport, VerifyReport};
