//! Numerical study of quadrature squeezing carried by dissipative structures
//! of a degenerate optical parametric oscillator in the large-pump-detuning
//! (reduced) limit.
//!
//! Two independent routes to the homodyne squeezing spectrum are provided:
//!
//! * a deterministic modal route — linearise around a stationary structure,
//!   diagonalise the fluctuation operator and its adjoint into a biorthogonal
//!   basis, and evaluate the spectrum from the stationary Ornstein-Uhlenbeck
//!   statistics of the mode amplitudes ([`squeezing`]);
//! * a stochastic route — integrate positive-P Langevin trajectories of the
//!   reduced field equation and estimate the same spectrum from simulated
//!   balanced-homodyne records ([`sim`]).
//!
//! Internal units are gamma1 = 1 (time) and l1 = 1 (space); kappa enters only
//! as the inverse quantum-noise strength.

pub mod ds;
pub mod error;
pub mod field;
pub mod grid;
pub mod linop;
pub mod params;
pub mod rng;
pub mod sim;
pub mod spectrum;
pub mod squeezing;

pub use error::{Error, Result};
