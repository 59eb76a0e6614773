//! Back-action cooling calculator for a membrane-in-the-middle cavity with
//! intensity-dependent optomechanical coupling.
//!
//! The crate follows the analysis chain of such a system end to end, from
//! physical inputs to steady state, stability, effective mechanical response,
//! quadrature variances, and effective temperature.

pub mod cooling;
pub mod coupling;
pub mod error;
pub mod numerics;
pub mod params;
pub mod response;
pub mod steady_state;

#[cfg(test)]
pub(crate) mod test_support;

pub use error::{Error, Result};
