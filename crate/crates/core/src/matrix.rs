//! Dense row-major matrices over any [`Ring`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::ring::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
    ctx: R::Ctx,
}

impl<R: Ring> Matrix<R> {
    pub fn from_vec(ctx: &R::Ctx, rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix {
            rows,
            cols,
            data,
            ctx: ctx.clone(),
        }
    }

    pub fn from_rows(ctx: &R::Ctx, rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_vec(ctx, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(ctx: &R::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_vec(ctx, rows, cols, data)
    }

    pub fn zeros(ctx: &R::Ctx, rows: usize, cols: usize) -> Self {
        Self::from_vec(ctx, rows, cols, vec![R::zero(ctx); rows * cols])
    }

    pub fn identity(ctx: &R::Ctx, n: usize) -> Self {
        Self::from_fn(ctx, n, n, |i, j| if i == j { R::one(ctx) } else { R::zero(ctx) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, mut f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix::from_vec(ctx, self.rows, self.cols, self.data.iter().map(&mut f).collect())
    }

    pub fn try_map<S: Ring, E>(&self, ctx: &S::Ctx, mut f: impl FnMut(&R) -> Result<S, E>) -> Result<Matrix<S>, E> {
        let data = self.data.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_vec(ctx, self.rows, self.cols, data))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(&self.ctx, |x| x.mul(s))
    }

    pub fn neg(&self) -> Self {
        self.map(&self.ctx, |x| x.neg())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Self::from_vec(&self.ctx, self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Self::from_vec(&self.ctx, self.rows, self.cols, data)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(&self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx].add_assign(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        *v == R::one(&self.ctx)
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact test of `M·Mᵀ = I`.
    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && self.mul(&self.transpose()).is_identity()
    }

    /// Submatrix with the given row and column indices; indices may repeat.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.ctx, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Embeds a `k×k` block acting on the listed coordinates of an `n`-dimensional space.
    pub fn embed(&self, n: usize, modes: &[usize]) -> Self {
        assert!(self.is_square() && modes.len() == self.rows);
        let mut out = Self::identity(&self.ctx, n);
        for &m in modes {
            out.set(m, m, R::zero(&self.ctx));
        }
        for (a, &ma) in modes.iter().enumerate() {
            for (b, &mb) in modes.iter().enumerate() {
                out.set(ma, mb, self.get(a, b).clone());
            }
        }
        out
    }

    /// Computes `G_embedded · self` touching only the rows in `modes`.
    pub fn left_apply(&mut self, gadget: &Self, modes: &[usize]) {
        assert!(gadget.is_square() && modes.len() == gadget.rows);
        let old: Vec<Vec<R>> = modes.iter().map(|&m| self.row(m).to_vec()).collect();
        for (a, &ma) in modes.iter().enumerate() {
            for j in 0..self.cols {
                let mut acc = R::zero(&self.ctx);
                for (b, old_row) in old.iter().enumerate() {
                    let g = gadget.get(a, b);
                    if !g.is_zero() && !old_row[j].is_zero() {
                        acc.add_assign(&g.mul(&old_row[j]));
                    }
                }
                self.set(ma, j, acc);
            }
        }
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(&self.ctx, r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                R::zero(&self.ctx)
            }
        })
    }

    pub fn add_identity_multiple(&self, x: &R) -> Self {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i).add(x);
            out.set(i, i, v);
        }
        out
    }
}

/// Fraction-free elimination. `exact_div(a, b)` must return `a / b` when the
/// division is known to be exact. Also reports whether a row swap occurred.
fn bareiss<R: Ring>(m: &Matrix<R>, exact_div: impl Fn(&R, &R) -> R) -> (R, bool) {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    let ctx = m.ctx.clone();
    if n == 0 {
        return (R::one(&ctx), false);
    }
    let mut a: Vec<Vec<R>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = R::one(&ctx);
    let mut negate = false;
    let mut swapped = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                    swapped = true;
                }
                None => return (R::zero(&ctx), swapped),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let v = pivot.mul(&row[j]).sub(&row[k].mul(&pivot_row[j]));
                row[j] = exact_div(&v, &prev);
            }
            row[k] = R::zero(&ctx);
        }
        prev = pivot.clone();
    }
    let det = a[n - 1][n - 1].clone();
    (if negate { det.neg() } else { det }, swapped)
}

impl<R: Field> Matrix<R> {
    /// Gaussian elimination with one inversion per pivot.
    pub fn det(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let ctx = &self.ctx;
        let mut a: Vec<Vec<R>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = R::one(ctx);
        for k in 0..n {
            let Some(r) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return R::zero(ctx);
            };
            if r != k {
                a.swap(k, r);
                det = det.neg();
            }
            det = det.mul(&a[k][k]);
            let inv = a[k][k].inv().expect("nonzero pivot");
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                if row[k].is_zero() {
                    continue;
                }
                let f = row[k].mul(&inv);
                for j in k + 1..n {
                    if !pivot_row[j].is_zero() {
                        let v = row[j].sub(&f.mul(&pivot_row[j]));
                        row[j] = v;
                    }
                }
                row[k] = R::zero(ctx);
            }
        }
        det
    }
}

impl Matrix<BigInt> {
    pub fn det_int(&self) -> BigInt {
        let (d, _) = bareiss(self, |a, b| {
            let (q, r) = a.div_rem(b);
            debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
            q
        });
        d
    }

    /// Leading principal minors `det(A[..k, ..k])` for `k = 1..=n`, all exact.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.select(&idx, &idx).det_int()
            })
            .collect()
    }
}
