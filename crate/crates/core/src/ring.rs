//! Minimal commutative-ring abstraction shared by every exact kernel.
//!
//! The permanent, the gadget compiler and the membership checks are written
//! once against [`Ring`] and instantiated over integers, rationals, the number
//! field [`QAlpha`](crate::algebra::QAlpha), prime fields, their extensions and
//! plain `f64`.
//!
//! Some rings need runtime data to produce a zero (a prime field needs its
//! modulus), so constructors take a context value. Context-free rings use `()`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Ctx: Clone + Debug + PartialEq + Send + Sync;

    /// False for floating-point stand-ins; selects the looser size guards.
    const EXACT: bool = true;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn sub_assign(&mut self, rhs: &Self) {
        *self = self.sub(rhs);
    }

    fn pow(&self, ctx: &Self::Ctx, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(ctx);
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
}

/// Rings in which nonzero elements can be inverted.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

/// Rings that can supply `1/sqrt(k)` for the factorial products appearing in
/// Fock-state normalisation.
pub trait InvSqrt: Ring {
    fn inv_sqrt(ctx: &Self::Ctx, k: u64) -> Option<Self>;
}

impl Ring for f64 {
    type Ctx = ();
    const EXACT: bool = false;
    fn zero(_: &()) -> Self {
        0.0
    }
    fn one(_: &()) -> Self {
        1.0
    }
    fn from_i64(_: &(), v: i64) -> Self {
        v as f64
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Field for f64 {
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
}

impl InvSqrt for f64 {
    fn inv_sqrt(_: &(), k: u64) -> Option<Self> {
        (k > 0).then(|| 1.0 / (k as f64).sqrt())
    }
}

impl Ring for BigInt {
    type Ctx = ();
    fn zero(_: &()) -> Self {
        <BigInt as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <BigInt as One>::one()
    }
    fn from_i64(_: &(), v: i64) -> Self {
        BigInt::from(v)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign(&mut self, rhs: &Self) {
        *self -= rhs;
    }
}

impl Ring for BigRational {
    type Ctx = ();
    fn zero(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(_: &(), v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// Sign of an exact integer as -1, 0 or 1.
pub fn signum(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}
