//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong between reading a configuration and
/// producing a cooling report.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A configuration field failed validation. `field` names the offending
    /// entry exactly as it appears in the JSON document.
    #[error("invalid config field `{field}`: {reason}")]
    InvalidField { field: &'static str, reason: String },

    /// The configuration document could not be parsed at all.
    #[error("config parse error: {message}")]
    ConfigParse { message: String },

    /// The detuning series needed more terms than the hard cap allows before
    /// reaching the requested tolerance (reflectivity too close to 1).
    #[error(
        "detuning series truncated at cap m = {cap} for reflectivity {r_c} \
         (relative tail estimate {tail_estimate:.3e})"
    )]
    TruncationCap {
        r_c: f64,
        cap: u64,
        tail_estimate: f64,
    },

    /// The steady-state fixed point did not converge; carries the best
    /// residual reached.
    #[error("steady state did not converge (best residual {residual:.3e})")]
    NoConvergence { residual: f64 },

    /// Root finding was asked for a value outside the bracketing window.
    #[error("no root bracketed: target {target:.6e} not reached in [{lo:.6e}, {hi:.6e}]")]
    RootNotBracketed { target: f64, lo: f64, hi: f64 },

    /// A response-function denominator is too close to zero to evaluate.
    #[error("evaluation too close to a pole at omega = {omega:.6e} rad/s")]
    NearPole { omega: f64 },

    /// Variances were requested for a dynamically unstable working point.
    #[error("working point is dynamically unstable; steady variances do not exist")]
    Unstable,

    /// The adaptive quadrature could not reach the requested tolerance.
    #[error(
        "quadrature stalled: reached relative error {achieved:.3e}, requested {requested:.3e}"
    )]
    QuadratureStall { achieved: f64, requested: f64 },

    /// The covariance linear system is rank deficient (marginal stability).
    #[error("covariance system is singular (marginally stable dynamics)")]
    SingularSystem,

    /// The dense eigensolver failed to converge.
    #[error("eigenvalue computation failed to converge")]
    EigenFailure,
}

pub type Result<T> = std::result::Result<T, Error>;
