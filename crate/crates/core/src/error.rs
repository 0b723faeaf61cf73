//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical parameter violates its invariant (sign, range).
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    /// A qubit amplitude pair is not normalized within 1e-12.
    #[error("state not normalized: |norm^2 - 1| = {deviation:.3e} exceeds 1e-12")]
    NotNormalized { deviation: f64 },

    /// Both couplings vanish; bright/dark decomposition is undefined.
    #[error("non-interacting configuration: V(k) = 0")]
    NonInteracting,

    /// The resolvent denominator vanishes at a real frequency.
    #[error("singular resolvent at k = {k}")]
    SingularResolvent { k: f64 },

    /// The quadrature ladder did not reach the requested tolerance.
    #[error("quadrature did not converge: residual {residual:.3e} after order {order}")]
    QuadratureNotConverged { residual: f64, order: usize },

    /// A sampled wavepacket grid is empty, too short, or not ascending.
    #[error("invalid wavepacket grid: {0}")]
    InvalidGrid(String),

    /// An operation requiring g_L = -g_R was called with other couplings.
    #[error("not a swap configuration: {0}")]
    NotSwapConfiguration(String),

    /// A bracketing search found no sign change.
    #[error("no balanced point in bracket [{lo}, {hi}]")]
    NoBalancedPoint { lo: f64, hi: f64 },

    /// Oracle grid violates one of its invariants (span, parity, aliasing).
    #[error("invalid oracle grid: {0}")]
    InvalidOracleGrid(String),

    /// An oracle run produced results that cannot be trusted.
    #[error("oracle run invalid: {0}")]
    OracleInvalid(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
