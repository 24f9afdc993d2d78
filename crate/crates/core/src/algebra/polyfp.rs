//! Dense univariate polynomials over 𝔽_p and factorization of f mod p.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp::{add_mod, inv_mod, mul_mod, reduce_i64, sub_mod};
use super::qalpha::MODULUS;

/// Coefficients from the constant term upward, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyOverFp {
    coeffs: Vec<u64>,
    p: u64,
}

const SPLIT_SEED: u64 = 0x5eed_f00d;

impl PolyOverFp {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyOverFp { coeffs, p }
    }

    pub fn from_i64(coeffs: &[i64], p: u64) -> Self {
        Self::new(coeffs.iter().map(|&c| reduce_i64(c, p)).collect(), p)
    }

    pub fn zero(p: u64) -> Self {
        Self::new(Vec::new(), p)
    }

    pub fn one(p: u64) -> Self {
        Self::new(vec![1], p)
    }

    pub fn x(p: u64) -> Self {
        Self::new(vec![0, 1], p)
    }

    /// The defining polynomial f reduced mod p.
    pub fn modulus_mod(p: u64) -> Self {
        Self::from_i64(&MODULUS, p)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p).expect("nonzero leading coefficient");
        Self::new(self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(), self.p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                add_mod(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                    self.p,
                )
            })
            .collect();
        Self::new(c, self.p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                sub_mod(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                    self.p,
                )
            })
            .collect();
        Self::new(c, self.p)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(acc.into_iter().map(|c| c as u64).collect(), self.p)
    }

    pub fn scale(&self, s: u64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| mul_mod(c, s, self.p)).collect(), self.p)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.lead(), p).unwrap();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[k + j] = sub_mod(r[k + j], mul_mod(c, dj, p), p);
            }
        }
        r.truncate(dd);
        (Self::new(q, p), Self::new(r, p))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        Self::new(c, self.p)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    /// Inverse p-th root of a polynomial in x^p (valid since a^p = a in 𝔽_p).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.coeffs.iter().step_by(p).copied().collect(), self.p)
    }

    /// Square-free decomposition: monic squarefree parts with multiplicity.
    pub fn squarefree_decomposition(&self) -> Vec<(PolyOverFp, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fd = f.derivative();
        let mut c = f.gcd(&fd);
        let mut w = f.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_exact(&w);
            i += 1;
        }
        if !c.is_one() {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * self.p as usize));
            }
        }
        out
    }

    /// Distinct-degree split of a monic squarefree polynomial into
    /// `(product of all degree-d factors, d)`.
    pub fn distinct_degree(&self) -> Vec<(PolyOverFp, usize)> {
        let mut g = self.monic();
        let x = Self::x(self.p);
        let mut h = x.rem(&g);
        let mut out = Vec::new();
        let mut d = 1;
        while g.deg() >= 2 * d {
            h = h.powmod(self.p as u128, &g);
            let common = g.gcd(&h.sub(&x));
            if !common.is_one() {
                g = g.div_exact(&common);
                h = h.rem(&g);
                out.push((common, d));
            }
            d += 1;
        }
        if g.deg() > 0 {
            let dg = g.deg();
            out.push((g, dg));
        }
        out
    }

    /// Cantor–Zassenhaus equal-degree splitting into monic degree-d factors.
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyOverFp> {
        let g = self.monic();
        let n = g.deg();
        if n == d {
            return vec![g];
        }
        let p = self.p;
        let q = (p as u128).pow(d as u32);
        loop {
            let a = Self::new((0..n).map(|_| rng.random_range(0..p)).collect(), p);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // Trace a + a² + … + a^(2^(d−1)) lands in {0, 1} on each factor.
                let mut t = a.rem(&g);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mulmod(&t, &g);
                    acc = acc.add(&t);
                }
                acc
            } else {
                a.powmod((q - 1) / 2, &g).sub(&Self::one(p))
            };
            let h = g.gcd(&b);
            if !h.is_one() && h.deg() < n {
                let mut parts = h.equal_degree(d, rng);
                parts.extend(g.div_exact(&h).equal_degree(d, rng));
                return parts;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree then coefficients.
    pub fn factor(&self) -> Vec<(PolyOverFp, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut out = Vec::new();
        for (sf, mult) in self.squarefree_decomposition() {
            for (block, d) in sf.distinct_degree() {
                for g in block.equal_degree(d, &mut rng) {
                    out.push((g, mult));
                }
            }
        }
        out.sort_by(|(a, _), (b, _)| {
            a.coeffs
                .len()
                .cmp(&b.coeffs.len())
                .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
        });
        out
    }
}

impl fmt::Debug for PolyOverFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

/// `[c0,c1,…,cd]`, constant term first.
impl fmt::Display for PolyOverFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Irreducible factors of f over 𝔽_p with multiplicities.
pub fn factor_f_mod_p(p: u64) -> Vec<(PolyOverFp, usize)> {
    PolyOverFp::modulus_mod(p).factor()
}

/// Whether f has 16 distinct roots in 𝔽_p, i.e. f | x^p − x.
pub fn splits_completely(p: u64) -> bool {
    let f = PolyOverFp::modulus_mod(p);
    let x = PolyOverFp::x(p);
    x.powmod(p as u128, &f) == x.rem(&f)
}
