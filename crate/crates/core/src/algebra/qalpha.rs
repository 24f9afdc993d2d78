//! Elements of ℚ(α) = ℚ[x]/(f), with α the largest real root of the fixed
//! degree-16 polynomial f.
//!
//! An element is kept as an integer vector over a shared positive
//! denominator, in lowest terms. That keeps additions in long sums cheap
//! (no per-coefficient gcds) while still presenting exact rational
//! coefficients to callers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring;

/// Extension degree.
pub const DEGREE: usize = 16;

/// Coefficients of f from the constant term up to x¹⁶.
pub const MODULUS: [i64; DEGREE + 1] = [
    1, 0, -1832, 0, 11324, 0, -17816, 0, 11782, 0, -3736, 0, 572, 0, -40, 0, 1,
];

/// Index of ℤ[α] in the ring of integers, 2⁷⁵·23², kept as a cross-check
/// for the ramified primes found by factoring.
pub const POWER_BASIS_INDEX: &str = "19985054955504338544361472";

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QAlpha {
    num: Vec<BigInt>,
    den: BigInt,
}

impl QAlpha {
    pub fn zero() -> Self {
        QAlpha {
            num: vec![BigInt::zero(); DEGREE],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        let mut q = Self::zero();
        q.num[0] = v;
        q
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let mut q = Self::zero();
        q.num[0] = r.numer().clone();
        q.den = r.denom().clone();
        q.normalized()
    }

    pub fn alpha() -> Self {
        let mut q = Self::zero();
        q.num[1] = BigInt::one();
        q
    }

    /// Builds `(c₀ + c₁α + … + c₁₅α¹⁵) / den` from integer data.
    pub fn from_integers(coeffs: &[i64], den: i64) -> Self {
        assert!(coeffs.len() <= DEGREE, "more than {DEGREE} coefficients");
        assert!(den != 0, "zero denominator");
        let mut num: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        num.resize(DEGREE, BigInt::zero());
        QAlpha {
            num,
            den: BigInt::from(den),
        }
        .normalized()
    }

    /// Builds an element from at most 16 rational power-basis coefficients.
    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        assert!(coeffs.len() <= DEGREE, "more than {DEGREE} coefficients");
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        num.resize(DEGREE, BigInt::zero());
        QAlpha { num, den }.normalized()
    }

    /// Reduces an arbitrary-degree rational polynomial in α modulo f.
    pub fn from_poly(coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        reduce_in_place(&mut num);
        num.resize(DEGREE, BigInt::zero());
        QAlpha { num, den }.normalized()
    }

    /// Power-basis coefficients `c₀ … c₁₅` as reduced rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integer numerators over [`QAlpha::denominator`].
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return QAlpha {
                num,
                den: self.den.clone(),
            }
            .normalized();
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        QAlpha {
            num,
            den: &self.den * &rhs.den,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        QAlpha {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut prod = vec![BigInt::zero(); 2 * DEGREE - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        reduce_in_place(&mut prod);
        prod.truncate(DEGREE);
        QAlpha {
            num: prod,
            den: &self.den * &rhs.den,
        }
        .normalized()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QAlpha {
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        }
        .normalized()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// Evaluates a rational polynomial at this element.
    pub fn eval_poly(&self, coeffs: &[BigRational]) -> Self {
        coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(self).add(&Self::from_rational(c)))
    }

    /// Multiplicative inverse, found by solving the 16×16 multiplication
    /// system over ℚ. Division is not part of the field operations the
    /// reduction itself needs; this exists for determinants and for undoing
    /// the `2^a 3^b` scale factor.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(&r.recip()));
        }
        // Column j of the system is the integer vector of num·α^j.
        let numer = QAlpha {
            num: self.num.clone(),
            den: BigInt::one(),
        };
        let mut col = numer.clone();
        let mut cols = Vec::with_capacity(DEGREE);
        for j in 0..DEGREE {
            if j > 0 {
                col = col.mul(&Self::alpha());
            }
            cols.push(col.coeffs());
        }
        let mut a: Vec<Vec<BigRational>> = (0..DEGREE)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..DEGREE).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        let sol = solve_augmented(&mut a)?;
        Some(Self::from_rationals(&sol).scale(&BigRational::from_integer(self.den.clone())))
    }

    fn normalized(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_one() {
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
        self
    }
}

/// Rewrites coefficients of degree ≥ 16 using x¹⁶ = −Σ f_j x^j.
fn reduce_in_place(poly: &mut [BigInt]) {
    for k in (DEGREE..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[k]);
        for (j, &fj) in MODULUS[..DEGREE].iter().enumerate() {
            if fj != 0 {
                poly[k - DEGREE + j] -= &c * fj;
            }
        }
    }
}

/// Gauss–Jordan on an `n × (n+1)` augmented system; `None` if singular.
pub(crate) fn solve_augmented(a: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = a.len();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        let inv = a[k][k].recip();
        for v in a[k].iter_mut().skip(k) {
            *v = &*v * &inv;
        }
        let pivot_row = a[k].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == k || row[k].is_zero() {
                continue;
            }
            let factor = row[k].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(k) {
                if !pv.is_zero() {
                    *v = &*v - &factor * pv;
                }
            }
        }
    }
    Some(a.iter().map(|row| row[n].clone()).collect())
}

impl fmt::Debug for QAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QAlpha({self})")
    }
}

/// Human-readable power-basis form, e.g. `(1/2)*(1 - 3*a^2)`.
impl fmt::Display for QAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match k {
                0 => mag.to_string(),
                _ => {
                    let var = if k == 1 { "a".to_string() } else { format!("a^{k}") };
                    if mag.is_one() {
                        var
                    } else {
                        format!("{mag}*{var}")
                    }
                }
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (i, (sign, body)) in terms.iter().enumerate() {
            if i == 0 {
                if *sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            s.push_str(body);
        }
        if self.den.is_one() {
            write!(f, "{s}")
        } else if terms.len() == 1 {
            write!(f, "{s}/{}", self.den)
        } else {
            write!(f, "(1/{})*({s})", self.den)
        }
    }
}

impl ring::Ring for QAlpha {
    type Ctx = ();
    fn zero(_: &()) -> Self {
        QAlpha::zero()
    }
    fn one(_: &()) -> Self {
        QAlpha::one()
    }
    fn from_i64(_: &(), v: i64) -> Self {
        QAlpha::from_int(v)
    }
    fn add(&self, rhs: &Self) -> Self {
        QAlpha::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        QAlpha::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        QAlpha::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        QAlpha::neg(self)
    }
    fn is_zero(&self) -> bool {
        QAlpha::is_zero(self)
    }
}

impl ring::Field for QAlpha {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}

/// Covers every k of the form m²·2^i·3^j: the squarefree part must divide 6.
impl ring::InvSqrt for QAlpha {
    fn inv_sqrt(_: &(), k: u64) -> Option<Self> {
        let (square_root, squarefree) = split_square(k)?;
        let base = QAlpha::from_rational(&BigRational::new(BigInt::one(), BigInt::from(square_root)));
        match squarefree {
            1 => Some(base),
            2 => Some(base.mul(super::repr::inv_sqrt2())),
            3 => Some(base.mul(super::repr::inv_sqrt3())),
            6 => Some(base.mul(super::repr::inv_sqrt2()).mul(super::repr::inv_sqrt3())),
            _ => None,
        }
    }
}

/// Writes `k = m²·r` with `r` squarefree and returns `(m, r)`.
pub fn split_square(k: u64) -> Option<(u64, u64)> {
    if k == 0 {
        return None;
    }
    let (mut m, mut r, mut rest) = (1u64, 1u64, k);
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        m *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    r *= rest;
    Some((m, r))
}
