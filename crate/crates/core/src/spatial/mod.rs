//! Ripley's K estimation in box and ball windows, CSR simulation, Monte
//! Carlo envelopes and the one-sided envelope test used to size covering
//! balls.

mod correction;
mod csr;
mod envelope;
mod kfunc;
mod window;

pub use correction::{sin_power_integral, translation_correction_ball, translation_correction_box};
pub use csr::simulate_csr;
pub use envelope::{
    build_envelope, csr_test, envelope_band, CsrTestResult, EnvelopeBand, EnvelopeTable,
};
pub use kfunc::{k_hat, l_hat_minus_t, uniform_grid, KCurve};
pub use window::Window;

pub(crate) use envelope::BallKernel;

/// Largest normalized distance examined inside the unit ball.
pub const BALL_T_MAX: f64 = 0.5;
/// Number of distances on the default normalized grid.
pub const DEFAULT_GRID_LEN: usize = 64;
/// Samples smaller than this never reject CSR.
pub const MIN_POINTS: usize = 3;
