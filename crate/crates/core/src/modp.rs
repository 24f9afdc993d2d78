//! Reduction of ℚ(α) certificates into 𝔽_p[x]/(g) for irreducible factors
//! g of f mod p, and the classification of primes by how f factors.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::algebra::fp::{inv_mod, is_prime, legendre, primes_below};
use crate::algebra::{factor_f_mod_p, splits_completely, ExtFieldElem, ExtModulus, PolyOverFp, QAlpha};
use crate::circuits::{BooleanCircuit, CircuitError};
use crate::matrix::Matrix;
use crate::optics::compile::{extract_delta_mod_p, residue_of};
use crate::optics::{certify, OpticsError, ReductionCertificate};

pub const SCAN_GUARD: u64 = 1_000_000;

/// 2⁷⁵·23², the index of ℤ[α] in the ring of integers; kept as a
/// cross-check for the dynamically detected ramified primes.
pub fn index_of_order() -> BigInt {
    (BigInt::from(1) << 75usize) * BigInt::from(23 * 23)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModpError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {p} is excluded: {reason}")]
    Excluded { p: u64, reason: &'static str },
    #[error("denominator {den} is not invertible mod {p}")]
    Denominator { den: String, p: u64 },
    #[error("{g} does not divide f mod {p}")]
    NotAFactor { g: String, p: u64 },
    #[error("scan bound {n} exceeds guard {limit}")]
    GuardExceeded { n: u64, limit: u64 },
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// 2, 3 and 23 divide denominators of the gadget entries.
pub fn check_prime(p: u64) -> Result<(), ModpError> {
    if !is_prime(p) {
        return Err(ModpError::NotPrime(p));
    }
    match p {
        2 | 3 => Err(ModpError::Excluded {
            p,
            reason: "divides the gadget denominators and the scale 2^a 3^b",
        }),
        23 => Err(ModpError::Excluded {
            p,
            reason: "divides the power-basis denominators; this prime needs the alternative beta-representation, which is not implemented",
        }),
        _ => Ok(()),
    }
}

/// Irreducible modulus 𝔽_p[x]/(g) for a factor g of f mod p.
pub fn factor_modulus(g: &PolyOverFp) -> Result<Arc<ExtModulus>, ModpError> {
    let p = g.prime();
    let f = PolyOverFp::modulus_mod(p);
    if !f.rem(g).is_zero() {
        return Err(ModpError::NotAFactor { g: g.to_string(), p });
    }
    ExtModulus::new(g.clone()).map_err(|_| ModpError::NotAFactor { g: g.to_string(), p })
}

/// σ: ℚ(α) → 𝔽_p[x]/(g), α ↦ x.
pub fn reduce_qalpha(x: &QAlpha, m: &Arc<ExtModulus>) -> Result<ExtFieldElem, ModpError> {
    let p = m.prime();
    let pb = BigInt::from(p);
    let red = |v: &BigInt| -> u64 {
        let r = ((v % &pb) + &pb) % &pb;
        r.to_u64().expect("residue below p")
    };
    let den_inv = inv_mod(red(x.denominator()), p).ok_or_else(|| ModpError::Denominator {
        den: x.denominator().to_string(),
        p,
    })?;
    let coeffs = x
        .numerators()
        .iter()
        .map(|c| crate::algebra::fp::mul_mod(red(c), den_inv, p))
        .collect();
    Ok(ExtFieldElem::from_poly(&PolyOverFp::new(coeffs, p), m))
}

pub fn reduce_matrix(mat: &Matrix<QAlpha>, m: &Arc<ExtModulus>) -> Result<Matrix<ExtFieldElem>, ModpError> {
    mat.try_map(m, |x| reduce_qalpha(x, m))
}

pub fn reduce_certificate(
    cert: &ReductionCertificate<QAlpha>,
    p: u64,
    g: &PolyOverFp,
) -> Result<ReductionCertificate<ExtFieldElem>, ModpError> {
    check_prime(p)?;
    if g.prime() != p {
        return Err(ModpError::NotAFactor { g: g.to_string(), p });
    }
    let m = factor_modulus(g)?;
    cert.map_ring(&m, |x| reduce_qalpha(x, &m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    SplitComplete,
    Quadratic,
    Quartic,
    Ramified,
    Excluded,
    /// Unramified with factors of unequal degree.
    Mixed,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::SplitComplete => "split-complete",
            Classification::Quadratic => "quadratic",
            Classification::Quartic => "quartic",
            Classification::Ramified => "ramified",
            Classification::Excluded => "excluded",
            Classification::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub p: u64,
    /// One entry per irreducible factor, with multiplicity.
    pub factor_degrees: Vec<usize>,
    pub distinct: bool,
    pub classification: Classification,
}

pub fn classify_prime(p: u64) -> Result<SplitReport, ModpError> {
    if !is_prime(p) {
        return Err(ModpError::NotPrime(p));
    }
    let factors = factor_f_mod_p(p);
    let factor_degrees: Vec<usize> = factors
        .iter()
        .flat_map(|(g, m)| std::iter::repeat_n(g.degree().unwrap_or(0), *m))
        .collect();
    let distinct = factors.iter().all(|(_, m)| *m == 1);
    let classification = if matches!(p, 2 | 3 | 23) {
        Classification::Excluded
    } else if !distinct {
        Classification::Ramified
    } else {
        match factor_degrees.first() {
            Some(&d) if factor_degrees.iter().all(|&e| e == d) => match d {
                1 => Classification::SplitComplete,
                2 => Classification::Quadratic,
                4 => Classification::Quartic,
                _ => Classification::Mixed,
            },
            _ => Classification::Mixed,
        }
    };
    Ok(SplitReport {
        p,
        factor_degrees,
        distinct,
        classification,
    })
}

/// Primes p < n, p ∉ {2, 3, 23}, for which f has 16 distinct roots mod p.
pub fn split_primes_below(n: u64) -> Result<Vec<u64>, ModpError> {
    if n > SCAN_GUARD {
        return Err(ModpError::GuardExceeded { n, limit: SCAN_GUARD });
    }
    let primes = primes_below(n);
    Ok(primes
        .into_par_iter()
        .filter(|&p| !matches!(p, 2 | 3 | 23) && splits_completely(p))
        .collect())
}

/// 𝔽_{p²} = 𝔽_p[x]/(x² − ν) for the least non-residue ν.
pub fn quadratic_extension(p: u64) -> Result<Arc<ExtModulus>, ModpError> {
    if !is_prime(p) || p == 2 {
        return Err(ModpError::NotPrime(p));
    }
    let nu = (2..p).find(|&a| legendre(a, p) == -1).expect("odd primes have non-residues");
    Ok(ExtModulus::new(PolyOverFp::new(vec![p - nu, 0, 1], p)).expect("x^2 - nu is irreducible"))
}

/// A square root of `a` in 𝔽_{p²}; every element of 𝔽_p has one.
pub fn sqrt_in_quadratic_extension(a: u64, p: u64) -> Result<ExtFieldElem, ModpError> {
    let m = quadratic_extension(p)?;
    Ok(ExtFieldElem::from_u64(a, &m).sqrt().expect("base-field elements are squares in F_p^2"))
}

#[derive(Debug, Clone)]
pub struct FactorRecord {
    pub g: PolyOverFp,
    pub degree: usize,
    pub per: ExtFieldElem,
    pub delta_mod_p: Option<u64>,
    pub expected: u64,
}

impl FactorRecord {
    pub fn ok(&self) -> bool {
        self.delta_mod_p == Some(self.expected)
    }
}

impl fmt::Display for FactorRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let delta = self.delta_mod_p.map_or_else(|| "none".to_string(), |d| d.to_string());
        write!(
            f,
            "p={} g={} deg={} per={} delta_mod_p={} ok={}",
            self.g.prime(),
            self.g,
            self.degree,
            self.per,
            delta,
            self.ok()
        )
    }
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub p: u64,
    pub delta: BigInt,
    pub records: Vec<FactorRecord>,
}

impl PipelineReport {
    pub fn ok(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(FactorRecord::ok)
    }
}

/// Per(σ(O)) / 2^a 3^b over every factor field of f mod p, against `delta`.
pub fn pipeline_certificate(
    cert: &ReductionCertificate<QAlpha>,
    delta: &BigInt,
    p: u64,
) -> Result<PipelineReport, ModpError> {
    check_prime(p)?;
    let expected = residue_of(delta, p);
    let mut records = Vec::new();
    for (g, _) in factor_f_mod_p(p) {
        let reduced = reduce_certificate(cert, p, &g)?;
        let per = reduced.network.permanent()?;
        let delta_mod_p = extract_delta_mod_p(&reduced, &per).ok();
        records.push(FactorRecord {
            degree: g.degree().unwrap_or(0),
            g,
            per,
            delta_mod_p,
            expected,
        });
    }
    Ok(PipelineReport {
        p,
        delta: delta.clone(),
        records,
    })
}

pub fn pipeline_mod_p(c: &BooleanCircuit, p: u64) -> Result<PipelineReport, ModpError> {
    check_prime(p)?;
    let delta = c.delta_bruteforce()?;
    pipeline_certificate(&certify(c), &delta, p)
}

