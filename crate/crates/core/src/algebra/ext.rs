//! The finite field 𝔽_p[x]/(g) for an irreducible g.

use std::fmt;
use std::sync::Arc;

use super::fp::{is_prime, sub_mod};
use super::polyfp::PolyOverFp;
use super::AlgebraError;
use crate::ring::{Field, InvSqrt, Ring};

/// Shared modulus data; elements hold an `Arc` to it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtModulus {
    g: PolyOverFp,
}

impl ExtModulus {
    /// `g` must be irreducible over 𝔽_p; it is made monic.
    pub fn new(g: PolyOverFp) -> Result<Arc<Self>, AlgebraError> {
        let p = g.prime();
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let g = g.monic();
        let d = g.degree().unwrap_or(0);
        if d == 0 {
            return Err(AlgebraError::NotIrreducible(g.to_string()));
        }
        let fac = g.factor();
        if fac.len() != 1 || fac[0].1 != 1 {
            return Err(AlgebraError::NotIrreducible(g.to_string()));
        }
        Ok(Arc::new(ExtModulus { g }))
    }

    /// 𝔽_p viewed as a degree-1 extension.
    pub fn prime_field(p: u64) -> Result<Arc<Self>, AlgebraError> {
        Self::new(PolyOverFp::x(p))
    }

    pub fn poly(&self) -> &PolyOverFp {
        &self.g
    }

    pub fn prime(&self) -> u64 {
        self.g.prime()
    }

    pub fn degree(&self) -> usize {
        self.g.degree().unwrap()
    }

    /// Field size p^d.
    pub fn order(&self) -> u128 {
        (self.prime() as u128).pow(self.degree() as u32)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtFieldElem {
    value: PolyOverFp,
    modulus: Arc<ExtModulus>,
}

impl ExtFieldElem {
    pub fn from_poly(poly: &PolyOverFp, modulus: &Arc<ExtModulus>) -> Self {
        ExtFieldElem {
            value: poly.rem(&modulus.g),
            modulus: modulus.clone(),
        }
    }

    pub fn from_u64(v: u64, modulus: &Arc<ExtModulus>) -> Self {
        Self::from_poly(&PolyOverFp::new(vec![v], modulus.prime()), modulus)
    }

    /// Coefficients `c₀ … c_{d−1}` padded to the extension degree.
    pub fn coeffs(&self) -> Vec<u64> {
        let mut c = self.value.coeffs().to_vec();
        c.resize(self.modulus.degree(), 0);
        c
    }

    pub fn modulus(&self) -> &Arc<ExtModulus> {
        &self.modulus
    }

    /// The residue when the element lies in the prime subfield.
    pub fn as_base(&self) -> Option<u64> {
        match self.value.degree() {
            None => Some(0),
            Some(0) => Some(self.value.coeffs()[0]),
            _ => None,
        }
    }

    pub fn pow_u128(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_u64(1, &self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn is_one(&self) -> bool {
        self.value.is_one()
    }

    /// Tonelli–Shanks in 𝔽_q. Of the two roots, returns the one whose first
    /// nonzero coefficient is below p/2, matching the prime-field rule.
    pub fn sqrt(&self) -> Option<Self> {
        let m = &self.modulus;
        let p = m.prime();
        if self.is_zero() {
            return Some(self.clone());
        }
        let q = m.order();
        if p == 2 {
            // Squaring is bijective in characteristic 2.
            return Some(self.pow_u128(q / 2));
        }
        if !self.pow_u128((q - 1) / 2).is_one() {
            return None;
        }
        let mut s = 0u32;
        let mut t_exp = q - 1;
        while t_exp.is_multiple_of(2) {
            t_exp /= 2;
            s += 1;
        }
        let z = non_residue(m);
        let mut mm = s;
        let mut c = z.pow_u128(t_exp);
        let mut t = self.pow_u128(t_exp);
        let mut r = self.pow_u128(t_exp.div_ceil(2));
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = t2.mul(&t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(mm - i - 1) {
                b = b.mul(&b);
            }
            mm = i;
            c = b.mul(&b);
            t = t.mul(&c);
            r = r.mul(&b);
        }
        let neg = r.neg();
        Some(if canonical_first(&r, p) { r } else { neg })
    }
}

fn canonical_first(r: &ExtFieldElem, p: u64) -> bool {
    match r.coeffs().into_iter().find(|&c| c != 0) {
        Some(c) => c < p - c,
        None => true,
    }
}

fn non_residue(m: &Arc<ExtModulus>) -> ExtFieldElem {
    let p = m.prime();
    let q = m.order();
    let d = m.degree();
    (2u128..)
        .map(|mut k| {
            let mut c = Vec::with_capacity(d);
            for _ in 0..d {
                c.push((k % p as u128) as u64);
                k /= p as u128;
            }
            ExtFieldElem::from_poly(&PolyOverFp::new(c, p), m)
        })
        .find(|z| !z.is_zero() && !z.pow_u128((q - 1) / 2).is_one())
        .expect("non-residue exists in odd characteristic")
}

impl fmt::Debug for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in F_{}[x]/{}", self.modulus.prime(), self.modulus.g)
    }
}

/// `[c0,c1,…]` padded to the extension degree.
impl fmt::Display for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Ring for ExtFieldElem {
    type Ctx = Arc<ExtModulus>;
    fn zero(m: &Arc<ExtModulus>) -> Self {
        Self::from_u64(0, m)
    }
    fn one(m: &Arc<ExtModulus>) -> Self {
        Self::from_u64(1, m)
    }
    fn from_i64(m: &Arc<ExtModulus>, v: i64) -> Self {
        Self::from_u64(super::fp::reduce_i64(v, m.prime()), m)
    }
    fn add(&self, rhs: &Self) -> Self {
        ExtFieldElem {
            value: self.value.add(&rhs.value),
            modulus: self.modulus.clone(),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        ExtFieldElem {
            value: self.value.sub(&rhs.value),
            modulus: self.modulus.clone(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        ExtFieldElem {
            value: self.value.mulmod(&rhs.value, &self.modulus.g),
            modulus: self.modulus.clone(),
        }
    }
    fn neg(&self) -> Self {
        let p = self.modulus.prime();
        ExtFieldElem {
            value: PolyOverFp::new(self.value.coeffs().iter().map(|&c| sub_mod(0, c, p)).collect(), p),
            modulus: self.modulus.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl Field for ExtFieldElem {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow_u128(self.modulus.order() - 2))
    }
}

impl InvSqrt for ExtFieldElem {
    fn inv_sqrt(m: &Arc<ExtModulus>, k: u64) -> Option<Self> {
        let (root, squarefree) = super::qalpha::split_square(k)?;
        let r = Self::from_u64(root % m.prime(), m).mul(&Self::from_u64(squarefree % m.prime(), m).sqrt()?);
        r.inv()
    }
}
