//! Per(B) for 0-1 B from permanents of positive definite matrices:
//! Per(Λ_B + xI) is a monic degree-2n polynomial in x whose constant term
//! is Per(Λ_B) = Per(B)², and Λ_B + xI is positive definite for x > 2n.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ReductionError;
use crate::matrix::Matrix;
use crate::optics::permanent;
use crate::ring::Ring;

pub const INTERPOLATE_GUARD: usize = 5;
pub const SINGLE_CALL_GUARD: usize = 4;

/// ((0, B), (Bᵀ, 0)) over any ring.
pub fn lambda<R: Ring>(b: &Matrix<R>) -> Matrix<R> {
    let n = b.rows();
    let ctx = b.ctx();
    Matrix::from_fn(ctx, 2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, false) => b.get(i, j - n).clone(),
        (false, true) => b.get(j, i - n).clone(),
        _ => R::zero(ctx),
    })
}

pub fn lambda_block(b: &Matrix<BigInt>) -> Result<Matrix<BigInt>, ReductionError> {
    if !b.is_square() {
        return Err(ReductionError::NotSquare);
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let v = b.get(i, j);
            if !(Zero::is_zero(v) || One::is_one(v)) {
                return Err(ReductionError::NotZeroOne(i, j));
            }
        }
    }
    Ok(lambda(b))
}

/// Exact Ryser permanent, the default oracle.
pub fn ryser_oracle(m: &Matrix<BigInt>) -> BigInt {
    permanent(m).expect("oracle input within the permanent guard")
}

#[derive(Debug, Clone)]
pub struct PsdQuery {
    pub x: BigInt,
    pub value: BigInt,
    /// Leading principal minors of Λ_B + xI, all positive.
    pub minors: Vec<BigInt>,
}

#[derive(Debug, Clone)]
pub struct PsdResult {
    pub per: BigInt,
    /// Coefficients of Per(Λ_B + xI), constant term first; monic of degree 2n.
    pub polynomial: Vec<BigInt>,
    pub queries: Vec<PsdQuery>,
}

fn shifted_query(
    lam: &Matrix<BigInt>,
    x: &BigInt,
    oracle: &mut impl FnMut(&Matrix<BigInt>) -> BigInt,
) -> Result<PsdQuery, ReductionError> {
    let m = lam.add_identity_multiple(x);
    let minors = m.leading_minors();
    if !minors.iter().all(Signed::is_positive) {
        return Err(ReductionError::NotPositiveDefinite { x: x.to_string() });
    }
    Ok(PsdQuery {
        x: x.clone(),
        value: oracle(&m),
        minors,
    })
}

fn guard(n: usize, limit: usize) -> Result<(), ReductionError> {
    if n > limit {
        Err(ReductionError::GuardExceeded { n, limit })
    } else {
        Ok(())
    }
}

fn square_root(per_sq: &BigInt) -> Result<BigInt, ReductionError> {
    if per_sq.is_negative() {
        return Err(ReductionError::NotASquare(per_sq.to_string()));
    }
    let r = per_sq.sqrt();
    if &(&r * &r) == per_sq {
        Ok(r)
    } else {
        Err(ReductionError::NotASquare(per_sq.to_string()))
    }
}

/// Newton form through (xᵢ, yᵢ) expanded to monomial coefficients.
fn newton_interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let k = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..k {
        for i in (level..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton basis: P = dd[0] + (x − x₀)(dd[1] + (x − x₁)(…)).
    let mut poly = vec![<BigRational as Zero>::zero(); k.max(1)];
    for i in (0..k).rev() {
        let mut next = vec![<BigRational as Zero>::zero(); k.max(1)];
        for (d, c) in poly.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            if d + 1 < next.len() {
                next[d + 1] += c;
            }
            next[d] -= c * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

/// Interpolates Per(Λ_B + xI) through x = 2n+1, …, 4n with the leading
/// coefficient fixed to 1, then reads Per(B) from the constant term.
pub fn psd_interpolate(
    b: &Matrix<BigInt>,
    mut oracle: impl FnMut(&Matrix<BigInt>) -> BigInt,
) -> Result<PsdResult, ReductionError> {
    let lam = lambda_block(b)?;
    let n = b.rows();
    guard(n, INTERPOLATE_GUARD)?;
    let deg = 2 * n;
    let queries = (deg + 1..=2 * deg)
        .map(|x| shifted_query(&lam, &BigInt::from(x), &mut oracle))
        .collect::<Result<Vec<_>, _>>()?;
    let xs: Vec<BigRational> = queries.iter().map(|q| BigRational::from_integer(q.x.clone())).collect();
    let ys: Vec<BigRational> = queries
        .iter()
        .map(|q| BigRational::from_integer(&q.value - q.x.pow(deg as u32)))
        .collect();
    let low = newton_interpolate(&xs, &ys);
    let mut polynomial = Vec::with_capacity(deg + 1);
    for c in low.iter().take(deg) {
        if !c.is_integer() {
            return Err(ReductionError::NonIntegral);
        }
        polynomial.push(c.to_integer());
    }
    polynomial.resize(deg, <BigInt as Zero>::zero());
    polynomial.push(<BigInt as One>::one());
    let per = square_root(&polynomial[0])?;
    Ok(PsdResult {
        per,
        polynomial,
        queries,
    })
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(<BigInt as One>::one(), |acc, k| acc * k)
}

/// One query at x₀ = (2n)! + 1; the coefficients are the base-x₀ digits.
pub fn psd_single_call(
    b: &Matrix<BigInt>,
    mut oracle: impl FnMut(&Matrix<BigInt>) -> BigInt,
) -> Result<PsdResult, ReductionError> {
    let lam = lambda_block(b)?;
    let n = b.rows();
    guard(n, SINGLE_CALL_GUARD)?;
    let deg = 2 * n;
    let x0 = factorial(deg) + 1;
    let q = shifted_query(&lam, &x0, &mut oracle)?;
    let mut rest = q.value.clone();
    let mut polynomial = Vec::with_capacity(deg + 1);
    for _ in 0..=deg {
        polynomial.push(&rest % &x0);
        rest /= &x0;
    }
    if !Zero::is_zero(&rest) || polynomial[deg] != <BigInt as One>::one() || polynomial.iter().any(Signed::is_negative) {
        return Err(ReductionError::DigitOutOfRange(q.value.to_string()));
    }
    let per = square_root(&polynomial[0])?;
    Ok(PsdResult {
        per,
        polynomial,
        queries: vec![q],
    })
}
