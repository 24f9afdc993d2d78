//! Ryser's inclusion–exclusion formula with Gray-code column updates,
//! generic over any ring:
//!
//! Per(A) = (−1)ⁿ Σ_{S ⊆ [n]} (−1)^|S| Π_i Σ_{j ∈ S} a_ij.

use rayon::prelude::*;

use super::OpticsError;
use crate::matrix::Matrix;
use crate::ring::Ring;

pub const EXACT_GUARD: usize = 24;
pub const FLOAT_GUARD: usize = 30;

fn gray(k: u64) -> u64 {
    k ^ (k >> 1)
}

/// Sum of the signed Ryser terms for Gray indices `start..end` (k ≥ 1).
fn ryser_range<R: Ring>(m: &Matrix<R>, start: u64, end: u64) -> R {
    let n = m.rows();
    let ctx = m.ctx();
    let mut set = gray(start - 1);
    let mut sums: Vec<R> = (0..n)
        .map(|i| {
            let mut acc = R::zero(ctx);
            for j in 0..n {
                if (set >> j) & 1 == 1 {
                    acc.add_assign(m.get(i, j));
                }
            }
            acc
        })
        .collect();
    let mut total = R::zero(ctx);
    for k in start..end {
        let j = k.trailing_zeros() as usize;
        let adding = (set >> j) & 1 == 0;
        set ^= 1 << j;
        for (i, s) in sums.iter_mut().enumerate() {
            if adding {
                s.add_assign(m.get(i, j));
            } else {
                s.sub_assign(m.get(i, j));
            }
        }
        if sums.iter().any(Ring::is_zero) {
            continue;
        }
        let mut prod = sums[0].clone();
        for s in &sums[1..] {
            prod = prod.mul(s);
        }
        if set.count_ones() % 2 == 1 {
            total.sub_assign(&prod);
        } else {
            total.add_assign(&prod);
        }
    }
    total
}

pub fn permanent<R: Ring>(m: &Matrix<R>) -> Result<R, OpticsError> {
    if !m.is_square() {
        return Err(OpticsError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let limit = if R::EXACT { EXACT_GUARD } else { FLOAT_GUARD };
    if n > limit {
        return Err(OpticsError::PermanentGuard { n, limit });
    }
    let ctx = m.ctx();
    if n == 0 {
        return Ok(R::one(ctx));
    }
    let end = 1u64 << n;
    let total = if n < 8 {
        ryser_range(m, 1, end)
    } else {
        let chunks = 256u64.min(end / 2);
        let step = end.div_ceil(chunks);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let s = (c * step).max(1);
                let e = ((c + 1) * step).min(end);
                if s < e {
                    ryser_range(m, s, e)
                } else {
                    R::zero(ctx)
                }
            })
            .reduce(|| R::zero(ctx), |a, b| a.add(&b))
    };
    Ok(if n % 2 == 1 { total.neg() } else { total })
}
