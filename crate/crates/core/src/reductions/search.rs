//! Recovering Δ_C from a sign oracle (binary search over shifted circuits)
//! or from a multiplicative approximation oracle (interval shrinking, with
//! power circuits to boost a weak approximation factor).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ReductionError;
use crate::circuits::{multiply, shift, BooleanCircuit};

pub trait SignOracle {
    /// Sign of Δ for the given circuit: −1, 0 or 1.
    fn sign(&mut self, c: &BooleanCircuit) -> Result<i8, ReductionError>;
}

/// Answers from exhaustive enumeration.
#[derive(Debug, Default)]
pub struct BruteForceSign {
    pub calls: usize,
}

impl SignOracle for BruteForceSign {
    fn sign(&mut self, c: &BooleanCircuit) -> Result<i8, ReductionError> {
        self.calls += 1;
        let d = c.delta_bruteforce()?;
        Ok(if d.is_positive() {
            1
        } else if d.is_negative() {
            -1
        } else {
            0
        })
    }
}

impl<F: FnMut(&BooleanCircuit) -> Result<i8, ReductionError>> SignOracle for F {
    fn sign(&mut self, c: &BooleanCircuit) -> Result<i8, ReductionError> {
        self(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub delta: BigInt,
    pub calls: usize,
    /// (k, sign(Δ − k)) for each query.
    pub trace: Vec<(i64, i8)>,
}

/// Binary search over the 2ⁿ + 1 candidates Δ = 2ⁿ − 2t, querying the sign
/// of shift(c, k) = 2^s (Δ − k).
pub fn search_delta(c: &BooleanCircuit, oracle: &mut impl SignOracle) -> Result<SearchResult, ReductionError> {
    let n = c.input_count();
    let full = 1i64 << n;
    // Candidate index t ∈ [lo, hi], Δ = 2ⁿ − 2t, decreasing in t.
    let (mut lo, mut hi) = (0i64, full);
    let mut trace = Vec::new();
    while lo <= hi {
        let t = lo + (hi - lo) / 2;
        let k = full - 2 * t;
        let s = oracle.sign(&shift(c, k)?.circuit)?;
        trace.push((k, s));
        match s {
            0 => {
                return Ok(SearchResult {
                    delta: BigInt::from(k),
                    calls: trace.len(),
                    trace,
                })
            }
            1 => hi = t - 1,
            _ => lo = t + 1,
        }
    }
    Err(ReductionError::OracleInconsistent {
        lo: (full - 2 * lo).to_string(),
        hi: (full - 2 * hi).to_string(),
    })
}

pub trait ApproxOracle {
    /// A value v ≥ 0 with |Δ|/κ ≤ v ≤ κ|Δ|.
    fn approx(&mut self, c: &BooleanCircuit) -> Result<BigRational, ReductionError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Exactly |Δ|.
    Honest,
    /// κ|Δ|, the top of the promised band.
    Adversarial,
    /// |Δ|/κ, the bottom of the band.
    Lowball,
}

/// Brute-force |Δ| pushed to a chosen point of the band.
#[derive(Debug, Clone)]
pub struct BruteForceApprox {
    pub kappa: BigRational,
    pub mode: OracleMode,
    pub calls: usize,
    /// (inputs, exact Δ) of every queried circuit.
    pub log: Vec<(usize, BigInt)>,
}

impl BruteForceApprox {
    pub fn new(kappa: BigRational, mode: OracleMode) -> Self {
        BruteForceApprox {
            kappa,
            mode,
            calls: 0,
            log: Vec::new(),
        }
    }
}

impl ApproxOracle for BruteForceApprox {
    fn approx(&mut self, c: &BooleanCircuit) -> Result<BigRational, ReductionError> {
        self.calls += 1;
        let d = c.delta_bruteforce()?;
        let abs = BigRational::from_integer(d.abs());
        self.log.push((c.input_count(), d));
        Ok(match self.mode {
            OracleMode::Honest => abs,
            OracleMode::Adversarial => abs * &self.kappa,
            OracleMode::Lowball => abs / &self.kappa,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ApproxStep {
    pub a: BigInt,
    pub answer: BigRational,
    pub interval: (BigInt, BigInt),
    /// New length over old length.
    pub ratio: BigRational,
}

#[derive(Debug, Clone)]
pub struct ApproxSearchResult {
    pub delta: BigInt,
    pub calls: usize,
    /// Power m of the boosted query circuits.
    pub boost: u32,
    pub steps: Vec<ApproxStep>,
}

/// Smallest m with 2^m ≥ κ, so that κ^{1/m} ≤ 2.
pub fn boost_exponent(kappa: &BigRational) -> u32 {
    let mut m = 1u32;
    while BigRational::from_integer(BigInt::one() << m as usize) < *kappa {
        m += 1;
    }
    m
}

/// Smallest integer t ≥ 0 with t^m ≥ r.
fn root_ceil(r: &BigRational, m: u32) -> BigInt {
    if !r.is_positive() {
        return BigInt::zero();
    }
    let mut t = r.ceil().to_integer().nth_root(m);
    while BigRational::from_integer(t.pow(m)) < *r {
        t += 1;
    }
    while t.is_positive() && BigRational::from_integer((&t - BigInt::from(1)).pow(m)) >= *r {
        t -= 1;
    }
    t
}

/// Largest integer t ≥ 0 with t^m ≤ r.
fn root_floor(r: &BigRational, m: u32) -> BigInt {
    if !r.is_positive() {
        return BigInt::zero();
    }
    let mut t = r.floor().to_integer().nth_root(m);
    while BigRational::from_integer((&t + BigInt::from(1)).pow(m)) <= *r {
        t += 1;
    }
    t
}

/// Query circuit with gap (2^s (Δ − a))^m.
fn boosted_query(c: &BooleanCircuit, a: &BigInt, m: u32) -> Result<(BooleanCircuit, u32), ReductionError> {
    let a = i64::try_from(a).map_err(|_| ReductionError::BadFactor)?;
    let shifted = shift(c, a)?;
    let mut q = shifted.circuit.clone();
    for _ in 1..m {
        q = multiply(&q, &shifted.circuit);
    }
    Ok((q, shifted.scale_log2))
}

/// Starting from [−2ⁿ, 2ⁿ], query around the left end a and keep
/// [a + y/κ', a + κ'y] ∩ [a, b] where y estimates Δ − a. Each step must
/// shrink the interval to at most 3/4 of its length.
pub fn search_delta_approx(
    c: &BooleanCircuit,
    oracle: &mut impl ApproxOracle,
    kappa: &BigRational,
) -> Result<ApproxSearchResult, ReductionError> {
    if *kappa < BigRational::one() {
        return Err(ReductionError::BadFactor);
    }
    let m = boost_exponent(kappa);
    let n = c.input_count();
    let full = BigInt::one() << n;
    let (mut lo, mut hi) = (-full.clone(), full);
    let mut steps = Vec::new();
    let three_quarters = BigRational::new(3.into(), 4.into());
    let mut calls = 0;
    while lo < hi {
        let (q, s) = boosted_query(c, &lo, m)?;
        let v = oracle.approx(&q)?;
        calls += 1;
        // v estimates (2^s (Δ − a))^m within κ.
        let unscale = BigRational::from_integer(BigInt::one() << (s * m) as usize);
        let lower = root_ceil(&(&v / kappa / &unscale), m);
        let upper = root_floor(&(&v * kappa / &unscale), m);
        let new_lo = (&lo + lower).max(lo.clone());
        let new_hi = (&lo + upper).min(hi.clone());
        if new_lo > new_hi {
            return Err(ReductionError::OracleInconsistent {
                lo: new_lo.to_string(),
                hi: new_hi.to_string(),
            });
        }
        let ratio = BigRational::new(&new_hi - &new_lo, &hi - &lo);
        if ratio > three_quarters {
            return Err(ReductionError::ShrinkViolated { ratio: ratio.to_string() });
        }
        steps.push(ApproxStep {
            a: lo.clone(),
            answer: v,
            interval: (new_lo.clone(), new_hi.clone()),
            ratio,
        });
        lo = new_lo;
        hi = new_hi;
    }
    Ok(ApproxSearchResult {
        delta: lo,
        calls,
        boost: m,
        steps,
    })
}
