//! Orthogonal involutions Λ_B, the symplectic doubling I₂ ⊗ B, and exact
//! membership tests for the classical matrix groups.

use std::fmt;

use super::psd::lambda;
use super::ReductionError;
use crate::algebra::QAlpha;
use crate::circuits::{or_extend, BooleanCircuit};
use crate::matrix::Matrix;
use crate::optics::{certify, ReductionCertificate};
use crate::ring::{Field, Ring};

/// Largest Λ_B dimension `make_involution` will build.
pub const INVOLUTION_GUARD: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    GL,
    SL,
    O,
    SO,
    /// Unitary; for real matrices the same as O.
    U,
    Sp,
    Involution,
}

impl Group {
    pub const ALL: [Group; 7] = [
        Group::GL,
        Group::SL,
        Group::O,
        Group::SO,
        Group::U,
        Group::Sp,
        Group::Involution,
    ];
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::GL => "GL",
            Group::SL => "SL",
            Group::O => "O",
            Group::SO => "SO",
            Group::U => "U",
            Group::Sp => "Sp",
            Group::Involution => "involution",
        })
    }
}

/// Ω = ((0, I), (−I, 0)).
pub fn omega<R: Ring>(ctx: &R::Ctx, dim: usize) -> Matrix<R> {
    let k = dim / 2;
    Matrix::from_fn(ctx, dim, dim, |i, j| {
        if i < k && j == i + k {
            R::one(ctx)
        } else if i >= k && j + k == i {
            R::one(ctx).neg()
        } else {
            R::zero(ctx)
        }
    })
}

pub fn check_membership<R: Field>(m: &Matrix<R>, group: Group) -> Result<bool, ReductionError> {
    if !m.is_square() {
        return Err(ReductionError::NotSquare);
    }
    let ctx = m.ctx();
    let one = R::one(ctx);
    Ok(match group {
        Group::GL => !m.det().is_zero(),
        Group::SL => m.det() == one,
        Group::O | Group::U => m.is_orthogonal(),
        Group::SO => m.is_orthogonal() && m.det() == one,
        Group::Sp => {
            let n = m.rows();
            if n % 2 == 1 {
                return Err(ReductionError::OddDimension(n));
            }
            let w = omega::<R>(ctx, n);
            m.transpose().mul(&w).mul(m) == w
        }
        Group::Involution => m.mul(m).is_identity(),
    })
}

/// Λ_O for the network of a certificate: a symmetric orthogonal involution
/// with Per(Λ_O) = Per(O)².
pub fn involution_from_certificate<R: Ring>(cert: &ReductionCertificate<R>) -> Matrix<R> {
    lambda(&cert.network.matrix)
}

#[derive(Debug, Clone)]
pub struct Involution {
    pub matrix: Matrix<QAlpha>,
    /// Certificate of the extended circuit C'(x, b), whose gap is Δ_C + 2ⁿ.
    pub certificate: ReductionCertificate<QAlpha>,
}

pub fn make_involution(c: &BooleanCircuit) -> Result<Involution, ReductionError> {
    let certificate = certify(&or_extend(c));
    let dim = 2 * certificate.dimension();
    if dim > INVOLUTION_GUARD {
        return Err(ReductionError::GuardExceeded {
            n: dim,
            limit: INVOLUTION_GUARD,
        });
    }
    Ok(Involution {
        matrix: involution_from_certificate(&certificate),
        certificate,
    })
}

/// I₂ ⊗ B = diag(B, B).
pub fn make_symplectic<R: Ring>(b: &Matrix<R>) -> Matrix<R> {
    b.direct_sum(b)
}
