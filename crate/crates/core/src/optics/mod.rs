//! Linear optics: Fock-state amplitudes as permanents, the gadget catalog,
//! and the compiler from lowered qubit circuits to orthogonal networks.

pub mod certfmt;
pub mod compile;
pub mod fock;
pub mod gadgets;
pub mod ns1;
pub mod permanent;

pub use compile::{certify, compile, extract_delta, OpticalNetwork, ReductionCertificate};
pub use fock::{phi_amplitude, FockState};
pub use gadgets::{catalog, verify_gadgets, GadgetCatalog, GadgetId};
pub use permanent::permanent;

use crate::qsim::QsimError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpticsError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("permanent guard exceeded: {n}x{n} > {limit}x{limit}")]
    PermanentGuard { n: usize, limit: usize },
    #[error("matrix has {matrix} modes but states have {input} and {output}")]
    ModeMismatch { matrix: usize, input: usize, output: usize },
    #[error("normalisation 1/sqrt({k}) is not representable in this ring")]
    Normalization { k: u64 },
    #[error("circuit is not lowered: found {0}")]
    NotLowered(String),
    #[error("quotient Per/(2^a 3^b) is not an integer: {0}")]
    NonIntegral(String),
    #[error("certificate format: line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Qsim(#[from] QsimError),
}
