//! Certified real embedding of ℚ(α) into ℝ.
//!
//! α is isolated as the unique root of f in [4, 4.2] by exact dyadic
//! bisection; an element is then evaluated by interval Horner. Since α > 0,
//! each monomial is monotone in α and the interval bound is sharp per term.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::qalpha::{QAlpha, MODULUS};

/// A closed rational interval known to contain the exact value.
#[derive(Clone, Debug, PartialEq)]
pub struct RealApprox {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RealApprox {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    /// Sign of the value if the enclosure excludes zero; 0 for the
    /// degenerate enclosure [0, 0].
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    /// Midpoint rounded to `digits` decimals.
    pub fn to_decimal(&self, digits: usize) -> String {
        decimal_string(&self.midpoint(), digits)
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // Scale so that the integer quotient carries ~64 significant bits.
    let n_bits = r.numer().bits() as i64;
    let d_bits = r.denom().bits() as i64;
    let shift = 64 - (n_bits - d_bits);
    let q = if shift >= 0 {
        (r.numer() << shift as usize) / r.denom()
    } else {
        r.numer() / (r.denom() << (-shift) as usize)
    };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = r * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let mag = rounded.abs();
    let int_part = &mag / &scale;
    let frac_part = &mag % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

/// Enclosure `[lo, hi]` of α of width at most 2^-bits, as `(lo, hi)`
/// numerators over 2^bits.
static ALPHA_CACHE: RwLock<Option<(u32, BigInt, BigInt)>> = RwLock::new(None);

fn f_sign_at(x: &BigInt, bits: u32) -> i8 {
    // Sign of 2^(16·bits) · f(x / 2^bits), evaluated by Horner on integers.
    let one = BigInt::one();
    let scale = &one << bits as usize;
    let mut acc = BigInt::zero();
    let mut pow_scale = BigInt::one();
    // Horner over y = x/2^bits with coefficients multiplied up: work from
    // the top: acc = acc·x + f_k·2^(bits·(16-k)).
    let mut scales = Vec::with_capacity(17);
    for _ in 0..=16 {
        scales.push(pow_scale.clone());
        pow_scale *= &scale;
    }
    for k in (0..=16).rev() {
        acc = acc * x + BigInt::from(MODULUS[k]) * &scales[16 - k];
    }
    crate::ring::signum(&acc)
}

pub fn alpha_enclosure(bits: u32) -> (BigRational, BigRational) {
    let denom = BigInt::one() << bits as usize;
    if let Some((b, lo, hi)) = ALPHA_CACHE.read().unwrap().as_ref() {
        if *b >= bits {
            let shift = (*b - bits) as usize;
            let lo = lo >> shift;
            let hi = (hi + ((BigInt::one() << shift) - 1)) >> shift;
            return (BigRational::new(lo, denom.clone()), BigRational::new(hi, denom));
        }
    }
    // Start from [4, 4.2] ⊂ [4, 4 + 1/4].
    let mut b = 2u32;
    let mut lo = BigInt::from(16);
    let mut hi = BigInt::from(17);
    let s_lo = f_sign_at(&lo, b);
    debug_assert!(s_lo != 0 && s_lo != f_sign_at(&hi, b));
    while b < bits {
        lo <<= 1;
        hi <<= 1;
        b += 1;
        let mid = &lo + 1;
        let s = f_sign_at(&mid, b);
        if s == 0 {
            lo = mid.clone();
            hi = mid;
        } else if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut cache = ALPHA_CACHE.write().unwrap();
    if cache.as_ref().is_none_or(|(cb, _, _)| *cb < b) {
        *cache = Some((b, lo.clone(), hi.clone()));
    }
    (BigRational::new(lo, denom.clone()), BigRational::new(hi, denom))
}

/// Evaluates `x` at the real root α ≈ 4.182173283 with a certified error
/// below 2^-precision.
pub fn embed_real(x: &QAlpha, precision: u32) -> RealApprox {
    let coeffs = x.coeffs();
    let target = BigRational::new(BigInt::one(), BigInt::one() << precision as usize);
    let mut bits = precision + 64;
    loop {
        let (a_lo, a_hi) = alpha_enclosure(bits);
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        let mut p_lo = BigRational::one();
        let mut p_hi = BigRational::one();
        for c in &coeffs {
            if c.is_positive() {
                lo += c * &p_lo;
                hi += c * &p_hi;
            } else if c.is_negative() {
                lo += c * &p_hi;
                hi += c * &p_lo;
            }
            p_lo *= &a_lo;
            p_hi *= &a_hi;
        }
        let approx = RealApprox { lo, hi };
        if approx.width() < target {
            return approx;
        }
        bits *= 2;
    }
}
