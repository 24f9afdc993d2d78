//! Monte-Carlo estimate Per(C·C†) = E_x[Π_i |Σ_j c_ij x_j|²] over standard
//! complex Gaussian vectors x.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::matrix::Matrix;

/// Fixed partition of the sample budget; worker w draws from stream w.
pub const WORKERS: u64 = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
    pub samples: u64,
    pub seed: u64,
    /// Smallest per-sample statistic seen.
    pub min_statistic: f64,
}

struct Partial {
    sum: f64,
    sum_sq: f64,
    min: f64,
}

fn worker(c: &[Vec<Complex64>], count: u64, seed: u64, stream: u64) -> Partial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let n = c.first().map_or(0, Vec::len);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut acc = Partial {
        sum: 0.0,
        sum_sq: 0.0,
        min: f64::INFINITY,
    };
    for _ in 0..count {
        for xj in x.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *xj = Complex64::new(re * scale, im * scale);
        }
        let stat: f64 = c
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum::<Complex64>().norm_sqr())
            .product();
        acc.sum += stat;
        acc.sum_sq += stat * stat;
        acc.min = acc.min.min(stat);
    }
    acc
}

/// Deterministic for a fixed seed regardless of the thread pool size.
pub fn gaussian_estimate(c: &[Vec<Complex64>], samples: u64, seed: u64) -> Estimate {
    assert!(samples >= 1, "at least one sample");
    let parts: Vec<Partial> = (0..WORKERS)
        .into_par_iter()
        .map(|w| {
            let count = samples / WORKERS + u64::from(w < samples % WORKERS);
            worker(c, count, seed, w)
        })
        .collect();
    let sum: f64 = parts.iter().map(|p| p.sum).sum();
    let sum_sq: f64 = parts.iter().map(|p| p.sum_sq).sum();
    let min_statistic = parts.iter().map(|p| p.min).fold(f64::INFINITY, f64::min);
    let k = samples as f64;
    let mean = sum / k;
    let var = if samples > 1 {
        ((sum_sq - k * mean * mean) / (k - 1.0)).max(0.0)
    } else {
        0.0
    };
    Estimate {
        mean,
        std_err: (var / k).sqrt(),
        samples,
        seed,
        min_statistic,
    }
}

/// Lower-triangular L with A = L·Lᵀ, or `None` if A is not positive definite.
pub fn cholesky(a: &Matrix<f64>) -> Option<Matrix<f64>> {
    let n = a.rows();
    let mut l = Matrix::zeros(&(), n, n);
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l.get(i, k) * l.get(j, k)).sum();
            if i == j {
                let d = a.get(i, i) - s;
                if d <= 0.0 {
                    return None;
                }
                l.set(i, i, d.sqrt());
            } else {
                let v = (a.get(i, j) - s) / l.get(j, j);
                l.set(i, j, v);
            }
        }
    }
    Some(l)
}

pub fn complex_rows(m: &Matrix<f64>) -> Vec<Vec<Complex64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&v| Complex64::new(v, 0.0)).collect())
        .collect()
}
