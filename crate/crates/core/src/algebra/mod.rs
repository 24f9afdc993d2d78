//! Exact arithmetic: the number field ℚ(α), its real embedding, prime
//! fields, polynomials over them and their extensions.

pub mod ext;
pub mod fp;
pub mod polyfp;
pub mod qalpha;
pub mod real;
pub mod repr;
pub mod roots;

pub use ext::{ExtFieldElem, ExtModulus};
pub use fp::{sqrt_mod, PrimeFieldElem};
pub use polyfp::{factor_f_mod_p, splits_completely, PolyOverFp};
pub use qalpha::QAlpha;
pub use real::{embed_real, RealApprox};
pub use repr::{derive_representation, representation, Radical};
pub use roots::verify_root_table;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("linear system for the power-basis coordinates is singular")]
    SingularSystem,
    #[error("derived candidate for {0} fails its defining relation")]
    RelationFailed(&'static str),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not irreducible")]
    NotIrreducible(String),
}
