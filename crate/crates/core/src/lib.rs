//! Rate evaluation and bit-exact simulation for the symmetric K-user
//! interference channel with rate-limited feedback.
//!
//! * [`det`] models the linear deterministic channel over GF(2), runs the
//!   two-round feedback schemes bit for bit and evaluates the closed-form
//!   rates exactly.
//! * [`gauss`] evaluates lattice-coding achievable rates, upper bounds,
//!   gap constants and GDoF for the Gaussian channel.
//! * [`sweep`] runs parameter grids over both and writes CSV/JSON.

pub mod det;
pub mod error;
pub mod exec;
pub mod gauss;
pub mod sweep;

pub use error::{Error, Result};
pub use exec::Execution;
