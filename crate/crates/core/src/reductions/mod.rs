//! Consequences of the orthogonal-permanent reduction: positive
//! semidefinite permanents by interpolation, the Gaussian estimator,
//! involutions and symplectic doubling, matrix-group membership, and
//! recovering Δ from sign or approximate oracles.

pub mod gaussian;
pub mod groups;
pub mod psd;
pub mod search;

pub use gaussian::{cholesky, gaussian_estimate, Estimate};
pub use groups::{check_membership, involution_from_certificate, make_involution, make_symplectic, Group};
pub use psd::{lambda_block, psd_interpolate, psd_single_call, PsdResult};
pub use search::{search_delta, search_delta_approx, ApproxOracle, SignOracle};

use crate::circuits::CircuitError;
use crate::optics::OpticsError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("entry ({0}, {1}) is not 0 or 1")]
    NotZeroOne(usize, usize),
    #[error("n = {n} exceeds the guard {limit}")]
    GuardExceeded { n: usize, limit: usize },
    #[error("shifted matrix at x = {x} failed Sylvester's criterion")]
    NotPositiveDefinite { x: String },
    #[error("interpolated coefficients are not integers")]
    NonIntegral,
    #[error("Per(Lambda_B) = {0} is not a perfect square")]
    NotASquare(String),
    #[error("base-x digit out of range: {0}")]
    DigitOutOfRange(String),
    #[error("symplectic check needs even dimension, got {0}")]
    OddDimension(usize),
    #[error("oracle answer contradicts the bracketing interval [{lo}, {hi}]")]
    OracleInconsistent { lo: String, hi: String },
    #[error("interval shrank by {ratio}, more than 3/4")]
    ShrinkViolated { ratio: String },
    #[error("approximation factor must be at least 1")]
    BadFactor,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Optics(#[from] OpticsError),
}
