//! Exact reductions from circuit gap counting to permanents of real
//! orthogonal matrices, together with the finite-field, positive
//! semidefinite and involution variants and desk-scale verifiers.

pub mod algebra;
pub mod circuits;
pub mod matrix;
pub mod modp;
pub mod optics;
pub mod qsim;
pub mod reductions;
pub mod ring;

pub use algebra::{ExtFieldElem, ExtModulus, PolyOverFp, PrimeFieldElem, QAlpha};
pub use circuits::{parse_netlist, BooleanCircuit};
pub use matrix::Matrix;
pub use optics::{FockState, OpticalNetwork, ReductionCertificate};
pub use qsim::{QubitCircuit, QubitGate};
pub use ring::{Field, InvSqrt, Ring};
