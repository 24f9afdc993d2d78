//! Power-basis representations of the radicals that make up every gadget
//! entry, derived from scratch and checked against the printed fixtures.
//!
//! Derivation works in the biquartic basis `u^i v^j` (0 ≤ i, j < 4) with
//! u = √(2+√2), v = √(3+√6), where u⁴ = 4u² − 2 and v⁴ = 6v² − 3. Each target
//! radical has an obvious expression there, and α = u + v, so the power basis
//! is reached by solving one 16×16 rational system.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::qalpha::{solve_augmented, QAlpha, DEGREE};
use super::real::embed_real;
use super::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Radical {
    InvSqrt2,
    InvSqrt3,
    Sqrt2PlusSqrt2,
    Sqrt2MinusSqrt2,
    Sqrt3PlusSqrt6,
    Sqrt3MinusSqrt6,
}

impl Radical {
    pub const ALL: [Radical; 6] = [
        Radical::InvSqrt2,
        Radical::InvSqrt3,
        Radical::Sqrt2PlusSqrt2,
        Radical::Sqrt2MinusSqrt2,
        Radical::Sqrt3PlusSqrt6,
        Radical::Sqrt3MinusSqrt6,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Radical::InvSqrt2 => "1/sqrt(2)",
            Radical::InvSqrt3 => "1/sqrt(3)",
            Radical::Sqrt2PlusSqrt2 => "sqrt(2+sqrt(2))",
            Radical::Sqrt2MinusSqrt2 => "sqrt(2-sqrt(2))",
            Radical::Sqrt3PlusSqrt6 => "sqrt(3+sqrt(6))",
            Radical::Sqrt3MinusSqrt6 => "sqrt(3-sqrt(6))",
        }
    }

    pub fn approx(self) -> f64 {
        match self {
            Radical::InvSqrt2 => 0.5f64.sqrt(),
            Radical::InvSqrt3 => (1.0f64 / 3.0).sqrt(),
            Radical::Sqrt2PlusSqrt2 => (2.0 + 2f64.sqrt()).sqrt(),
            Radical::Sqrt2MinusSqrt2 => (2.0 - 2f64.sqrt()).sqrt(),
            Radical::Sqrt3PlusSqrt6 => (3.0 + 6f64.sqrt()).sqrt(),
            Radical::Sqrt3MinusSqrt6 => (3.0 - 6f64.sqrt()).sqrt(),
        }
    }

    /// Exact check of the defining relation, with the branch pinned down by
    /// the real embedding.
    pub fn satisfied_by(self, q: &QAlpha) -> bool {
        let sq = q.mul(q);
        let r = |n: i64, d: i64| QAlpha::from_rational(&BigRational::new(n.into(), d.into()));
        let quartic = |shift: i64, c: i64| {
            // (q² − shift)² = c
            let t = sq.sub(&QAlpha::from_int(shift));
            t.mul(&t) == QAlpha::from_int(c)
        };
        let positive = |x: &QAlpha| embed_real(x, 64).sign() == Some(1);
        let negative = |x: &QAlpha| embed_real(x, 64).sign() == Some(-1);
        positive(q)
            && match self {
                Radical::InvSqrt2 => sq == r(1, 2),
                Radical::InvSqrt3 => sq == r(1, 3),
                Radical::Sqrt2PlusSqrt2 => quartic(2, 2) && positive(&sq.sub(&QAlpha::from_int(2))),
                Radical::Sqrt2MinusSqrt2 => quartic(2, 2) && negative(&sq.sub(&QAlpha::from_int(2))),
                Radical::Sqrt3PlusSqrt6 => quartic(3, 6) && positive(&sq.sub(&QAlpha::from_int(3))),
                Radical::Sqrt3MinusSqrt6 => quartic(3, 6) && negative(&sq.sub(&QAlpha::from_int(3))),
            }
    }
}

/// Element of ℚ(u, v) as coefficients of `u^i v^j`, index `4i + j`.
#[derive(Clone, Debug, PartialEq)]
struct Biquartic([BigRational; 16]);

impl Biquartic {
    fn monomial(i: usize, j: usize, c: BigRational) -> Self {
        let mut out = Self::constant(BigRational::zero());
        out.0[4 * i + j] = c;
        out
    }

    fn constant(c: BigRational) -> Self {
        let mut a: [BigRational; 16] = std::array::from_fn(|_| BigRational::zero());
        a[0] = c;
        Biquartic(a)
    }

    fn int(c: i64) -> Self {
        Self::constant(rat(c, 1))
    }

    fn add(&self, o: &Self) -> Self {
        Biquartic(std::array::from_fn(|k| &self.0[k] + &o.0[k]))
    }

    fn scale(&self, c: &BigRational) -> Self {
        Biquartic(std::array::from_fn(|k| &self.0[k] * c))
    }

    fn mul(&self, o: &Self) -> Self {
        let mut grid = vec![vec![BigRational::zero(); 7]; 7];
        for i in 0..4 {
            for j in 0..4 {
                let a = &self.0[4 * i + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..4 {
                    for l in 0..4 {
                        let b = &o.0[4 * k + l];
                        if !b.is_zero() {
                            grid[i + k][j + l] += a * b;
                        }
                    }
                }
            }
        }
        // u⁴ = 4u² − 2 and v⁴ = 6v² − 3.
        for i in (4..7).rev() {
            for j in 0..7 {
                let c = std::mem::take(&mut grid[i][j]);
                grid[i - 2][j] += &c * rat(4, 1);
                grid[i - 4][j] -= &c * rat(2, 1);
            }
        }
        for row in grid.iter_mut().take(4) {
            for j in (4..7).rev() {
                let c = std::mem::take(&mut row[j]);
                row[j - 2] += &c * rat(6, 1);
                row[j - 4] -= &c * rat(3, 1);
            }
        }
        Biquartic(std::array::from_fn(|k| grid[k / 4][k % 4].clone()))
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn biquartic_target(r: Radical) -> Biquartic {
    let u = Biquartic::monomial(1, 0, rat(1, 1));
    let v = Biquartic::monomial(0, 1, rat(1, 1));
    let u2 = u.mul(&u);
    let v2 = v.mul(&v);
    let sqrt2 = u2.add(&Biquartic::int(-2));
    let sqrt6 = v2.add(&Biquartic::int(-3));
    let sqrt3 = sqrt6.mul(&sqrt2).scale(&rat(1, 2));
    // u⁻¹ = (4u − u³)/2, v⁻¹ = (6v − v³)/3.
    let u_inv = u.scale(&rat(4, 1)).add(&u2.mul(&u).scale(&rat(-1, 1))).scale(&rat(1, 2));
    let v_inv = v.scale(&rat(6, 1)).add(&v2.mul(&v).scale(&rat(-1, 1))).scale(&rat(1, 3));
    match r {
        Radical::InvSqrt2 => sqrt2.scale(&rat(1, 2)),
        Radical::InvSqrt3 => sqrt3.scale(&rat(1, 3)),
        Radical::Sqrt2PlusSqrt2 => u,
        // u·√(2−√2) = √2 and v·√(3−√6) = √3.
        Radical::Sqrt2MinusSqrt2 => sqrt2.mul(&u_inv),
        Radical::Sqrt3PlusSqrt6 => v,
        Radical::Sqrt3MinusSqrt6 => sqrt3.mul(&v_inv),
    }
}

/// Solves for the α-power-basis coordinates of `r` and verifies the result.
pub fn derive_representation(r: Radical) -> Result<QAlpha, AlgebraError> {
    let u = Biquartic::monomial(1, 0, rat(1, 1));
    let v = Biquartic::monomial(0, 1, rat(1, 1));
    let alpha = u.add(&v);
    let mut powers = Vec::with_capacity(DEGREE);
    let mut p = Biquartic::int(1);
    for _ in 0..DEGREE {
        powers.push(p.clone());
        p = p.mul(&alpha);
    }
    let target = biquartic_target(r);
    let mut system: Vec<Vec<BigRational>> = (0..16)
        .map(|row| {
            let mut line: Vec<BigRational> = powers.iter().map(|pk| pk.0[row].clone()).collect();
            line.push(target.0[row].clone());
            line
        })
        .collect();
    let sol = solve_augmented(&mut system).ok_or(AlgebraError::SingularSystem)?;
    let q = QAlpha::from_rationals(&sol);
    if r.satisfied_by(&q) {
        Ok(q)
    } else {
        Err(AlgebraError::RelationFailed(r.label()))
    }
}

fn derived() -> &'static [QAlpha; 6] {
    static CELL: OnceLock<[QAlpha; 6]> = OnceLock::new();
    CELL.get_or_init(|| {
        Radical::ALL.map(|r| derive_representation(r).expect("built-in radical derivation"))
    })
}

/// Cached, verified representation of `r`.
pub fn representation(r: Radical) -> &'static QAlpha {
    let idx = Radical::ALL.iter().position(|&x| x == r).unwrap();
    &derived()[idx]
}

pub fn inv_sqrt2() -> &'static QAlpha {
    representation(Radical::InvSqrt2)
}

pub fn inv_sqrt3() -> &'static QAlpha {
    representation(Radical::InvSqrt3)
}

/// Every gadget denominator divides this bound.
pub const DENOMINATOR_BOUND: i64 = 35328;

/// Representations as printed, `(radical, denominator, c₀ … c₁₅)`. The second
/// row repeats the first verbatim, exactly as printed.
pub const PRINTED: [(Radical, i64, [i64; 16]); 6] = [
    (
        Radical::InvSqrt2,
        11776,
        [-8379, 0, 95207, 0, -115791, 0, 51555, 0, -10561, 0, 1077, 0, -53, 0, 1, 0],
    ),
    (
        Radical::InvSqrt3,
        11776,
        [-8379, 0, 95207, 0, -115791, 0, 51555, 0, -10561, 0, 1077, 0, -53, 0, 1, 0],
    ),
    (
        Radical::Sqrt2PlusSqrt2,
        5888,
        [0, 193302, 0, -1357287, 0, 2209176, 0, -1470141, 0, 464494, 0, -70785, 0, 4932, 0, -123],
    ),
    (
        Radical::Sqrt2MinusSqrt2,
        5888,
        [0, -466411, 0, 2799098, 0, -4270353, 0, 2733428, 0, -841629, 0, 126234, 0, -8711, 0, 216],
    ),
    (
        Radical::Sqrt3PlusSqrt6,
        5888,
        [0, -187414, 0, 1357287, 0, -2209176, 0, 1470141, 0, -464494, 0, 70785, 0, -4932, 0, 123],
    ),
    (
        Radical::Sqrt3MinusSqrt6,
        256,
        [0, -25624, 0, 161671, 0, -256518, 0, 171665, 0, -55084, 0, 8505, 0, -598, 0, 15],
    ),
];

#[derive(Clone, Debug)]
pub struct FixtureCheck {
    pub radical: Radical,
    pub printed: QAlpha,
    /// The printed polynomial satisfies the defining relation exactly.
    pub verifies: bool,
    pub matches_derived: bool,
}

pub fn check_printed_representations() -> Vec<FixtureCheck> {
    PRINTED
        .iter()
        .map(|(r, den, coeffs)| {
            let printed = QAlpha::from_integers(coeffs, *den);
            FixtureCheck {
                radical: *r,
                verifies: r.satisfied_by(&printed),
                matches_derived: &printed == representation(*r),
                printed,
            }
        })
        .collect()
}

/// Whether `d` divides 35328 = 2⁹·3·23.
pub fn divides_bound(d: &BigInt) -> bool {
    d.is_positive() && (BigInt::from(DENOMINATOR_BOUND) % d).is_zero()
}
