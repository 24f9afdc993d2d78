//! Arithmetic in 𝔽_p for word-sized primes.

use std::fmt;

use crate::ring::{Field, InvSqrt, Ring};

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (a != 0).then(|| pow_mod(a, p - 2, p))
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_i64(v: i64, p: u64) -> u64 {
    (v as i128).rem_euclid(p as i128) as u64
}

/// Deterministic Miller–Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `n` by the sieve of Eratosthenes.
pub fn primes_below(n: u64) -> Vec<u64> {
    if n < 3 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Euler's criterion: 1 for residues, −1 for non-residues, 0 for zero.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli–Shanks square root modulo an odd prime, normalised to the root
/// below p/2. `None` when `a` is a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == -1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

/// Element of 𝔽_p carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem {
    residue: u64,
    p: u64,
}

impl PrimeFieldElem {
    pub fn new(v: u64, p: u64) -> Self {
        PrimeFieldElem { residue: v % p, p }
    }

    pub fn from_i64(v: i64, p: u64) -> Self {
        PrimeFieldElem {
            residue: reduce_i64(v, p),
            p,
        }
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn sqrt(self) -> Option<Self> {
        sqrt_mod(self.residue, self.p).map(|r| Self::new(r, self.p))
    }
}

impl fmt::Debug for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.p)
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Ring for PrimeFieldElem {
    type Ctx = u64;
    fn zero(p: &u64) -> Self {
        Self::new(0, *p)
    }
    fn one(p: &u64) -> Self {
        Self::new(1, *p)
    }
    fn from_i64(p: &u64, v: i64) -> Self {
        PrimeFieldElem::from_i64(v, *p)
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::new(add_mod(self.residue, rhs.residue, self.p), self.p)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Self::new(sub_mod(self.residue, rhs.residue, self.p), self.p)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::new(mul_mod(self.residue, rhs.residue, self.p), self.p)
    }
    fn neg(&self) -> Self {
        Self::new(sub_mod(0, self.residue, self.p), self.p)
    }
    fn is_zero(&self) -> bool {
        self.residue == 0
    }
}

impl Field for PrimeFieldElem {
    fn inv(&self) -> Option<Self> {
        inv_mod(self.residue, self.p).map(|r| Self::new(r, self.p))
    }
}

/// Perfect-square factors are inverted exactly; the squarefree remainder
/// uses the canonical root below p/2.
impl InvSqrt for PrimeFieldElem {
    fn inv_sqrt(p: &u64, k: u64) -> Option<Self> {
        let (m, r) = super::qalpha::split_square(k)?;
        let root = Self::new(m % p, *p).mul(&Self::new(r % p, *p).sqrt()?);
        root.inv()
    }
}
