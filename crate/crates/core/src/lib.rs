//! Steady-state entanglement between two magnon modes in a driven cavity
//! magnomechanical system with an intracavity parametric amplifier and a
//! magnon self-Kerr nonlinearity.
//!
//! The crate is layered bottom-up:
//!
//! - [`gaussian`]: model-independent covariance-matrix tools (Hurwitz test,
//!   Lyapunov steady states, logarithmic negativity).
//! - [`model`]: the physical parameters, drift and diffusion matrices, and
//!   the mean-field operating point.
//! - [`sweep`]: grid scans, stability maps and bounded local optimization
//!   of the entanglement.
//! - [`cli`]: JSON configuration, CSV output and plot-script generation
//!   behind the `magnomech` binary.

pub mod cli;
pub mod gaussian;
pub mod model;
pub mod sweep;
