//! Fock states and the φ-transition formula
//! ⟨T|φ(U)|S⟩ = Per(U_{S,T}) / √(Π s_i! Π t_i!).

use std::fmt;

use super::permanent::permanent;
use super::OpticsError;
use crate::matrix::Matrix;
use crate::ring::{InvSqrt, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState(pub Vec<u32>);

impl FockState {
    pub fn new(occupations: &[u32]) -> Self {
        FockState(occupations.to_vec())
    }

    /// One photon in each of `m` modes.
    pub fn ones(m: usize) -> Self {
        FockState(vec![1; m])
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn photons(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Mode indices repeated by occupation.
    pub fn expanded(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s as usize))
            .collect()
    }

    pub fn factorial_product(&self) -> u64 {
        self.0.iter().map(|&s| (1..=s as u64).product::<u64>()).product()
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "|{}>", parts.join(","))
    }
}

/// All occupation vectors on `modes` modes with `photons` photons, in
/// lexicographically decreasing order.
pub fn fock_basis(modes: usize, photons: u32) -> Vec<FockState> {
    fn rec(modes: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<FockState>) {
        if cur.len() + 1 == modes {
            cur.push(left);
            out.push(FockState(cur.clone()));
            cur.pop();
            return;
        }
        for s in (0..=left).rev() {
            cur.push(s);
            rec(modes, left - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if modes == 0 {
        if photons == 0 {
            out.push(FockState(Vec::new()));
        }
        return out;
    }
    rec(modes, photons, &mut Vec::new(), &mut out);
    out
}

/// Row i of U_{S,T} is row t-mode i of U, column j is column s-mode j, so
/// that φ(UW) = φ(U)φ(W).
pub fn phi_amplitude<R: Ring + InvSqrt>(u: &Matrix<R>, s: &FockState, t: &FockState) -> Result<R, OpticsError> {
    let m = u.rows();
    if !u.is_square() {
        return Err(OpticsError::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    if s.modes() != m || t.modes() != m {
        return Err(OpticsError::ModeMismatch {
            matrix: m,
            input: s.modes(),
            output: t.modes(),
        });
    }
    let ctx = u.ctx();
    if s.photons() != t.photons() {
        return Ok(R::zero(ctx));
    }
    let sub = u.select(&t.expanded(), &s.expanded());
    let per = permanent(&sub)?;
    let k = s.factorial_product() * t.factorial_product();
    if k == 1 {
        return Ok(per);
    }
    let norm = R::inv_sqrt(ctx, k).ok_or(OpticsError::Normalization { k })?;
    Ok(per.mul(&norm))
}

/// Matrix of φ(U) on the fixed-photon-number Fock basis, entry (T, S).
pub fn phi_matrix<R: Ring + InvSqrt>(u: &Matrix<R>, photons: u32) -> Result<Matrix<R>, OpticsError> {
    let basis = fock_basis(u.rows(), photons);
    let mut data = Vec::with_capacity(basis.len() * basis.len());
    for t in &basis {
        for s in &basis {
            data.push(phi_amplitude(u, s, t)?);
        }
    }
    Ok(Matrix::from_vec(u.ctx(), basis.len(), basis.len(), data))
}
