//! The three-mode NS₁ gadget postselected on |1,1⟩ in its last two modes,
//! with γ = (√33 + 3)/18, and the CSIGN built from two of them between
//! Hadamards on the 1-rails.

use super::fock::{phi_amplitude, FockState};
use crate::algebra::fp::is_prime;
use crate::algebra::PrimeFieldElem;
use crate::matrix::Matrix;
use crate::ring::{Field, InvSqrt, Ring};

pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// Printed approximation of γ.
pub const GAMMA_PRINTED: f64 = 0.4858090359;

/// The nested radicals, in the order they are taken.
pub const RADICALS: [&str; 6] = [
    "sqrt(33)",
    "sqrt(6-3g)",
    "sqrt(6(9g-r-2))",
    "sqrt(6(9g+r-2))",
    "sqrt(24-45g)",
    "sqrt(2-4g)",
];

/// Entries from γ and the radicals √(6(9γ∓r−2)), √(24−45γ), √(2−4γ),
/// where r = √(6−3γ). `sixth` is 1/6 in the ring.
fn assemble<R: Ring>(ctx: &R::Ctx, gamma: &R, s1: &R, s2: &R, t: &R, w: &R, sixth: &R) -> Matrix<R> {
    let c = |v: i64| R::from_i64(ctx, v);
    let g9 = c(9).mul(gamma);
    let rows = vec![
        vec![c(6).sub(&c(18).mul(gamma)), s1.neg(), s2.neg()],
        vec![s1.neg(), g9.add(t), c(-3).mul(w)],
        vec![s2.neg(), c(-3).mul(w), g9.sub(t)],
    ];
    Matrix::from_rows(ctx, rows).scale(sixth)
}

pub fn gamma_f64() -> f64 {
    (33f64.sqrt() + 3.0) / 18.0
}

pub fn ns1_float() -> Matrix<f64> {
    let g = gamma_f64();
    let r = (6.0 - 3.0 * g).sqrt();
    let s1 = (6.0 * (9.0 * g - r - 2.0)).sqrt();
    let s2 = (6.0 * (9.0 * g + r - 2.0)).sqrt();
    let t = (24.0 - 45.0 * g).sqrt();
    let w = (2.0 - 4.0 * g).sqrt();
    assemble(&(), &g, &s1, &s2, &t, &w, &(1.0 / 6.0))
}

fn hadamard<R: Ring + InvSqrt>(ctx: &R::Ctx) -> Option<Matrix<R>> {
    let s = R::inv_sqrt(ctx, 2)?;
    Some(Matrix::from_rows(ctx, vec![vec![s.clone(), s.clone()], vec![s.clone(), s.neg()]]))
}

/// 8 modes: qubit a on (0, 1), qubit b on (2, 3) as (1-rail, 0-rail),
/// NS₁ ancillas on (4, 5) and (6, 7). H on the 1-rails, NS₁ on each, H again.
pub fn csign_assembly<R: Ring + InvSqrt>(ns1: &Matrix<R>) -> Option<Matrix<R>> {
    let ctx = ns1.ctx();
    let h = hadamard::<R>(ctx)?;
    let mut u = Matrix::identity(ctx, 8);
    u.left_apply(&h, &[0, 2]);
    u.left_apply(ns1, &[0, 4, 5]);
    u.left_apply(ns1, &[2, 6, 7]);
    u.left_apply(&h, &[0, 2]);
    Some(u)
}

fn dual_rail(x: usize, y: usize) -> FockState {
    let (x, y) = (x as u32, y as u32);
    FockState::new(&[x, 1 - x, y, 1 - y, 1, 1, 1, 1])
}

/// ⟨xy|·|x'y'⟩ on the four logical dual-rail states, entry (out, in).
pub fn logical_block<R: Ring + InvSqrt>(u: &Matrix<R>) -> Vec<Vec<R>> {
    let states: Vec<FockState> = (0..4).map(|i| dual_rail(i >> 1, i & 1)).collect();
    states
        .iter()
        .map(|t| {
            states
                .iter()
                .map(|s| phi_amplitude(u, s, t).expect("8-mode amplitude"))
                .collect()
        })
        .collect()
}

fn identity_states() -> [(FockState, i64); 3] {
    [
        (FockState::new(&[0, 1, 1]), 1),
        (FockState::new(&[1, 1, 1]), 1),
        (FockState::new(&[2, 1, 1]), -1),
    ]
}

#[derive(Debug, Clone)]
pub struct Ns1FloatReport {
    pub gamma: f64,
    pub orthogonality_error: f64,
    /// (state, expected, computed)
    pub amplitudes: Vec<(FockState, f64, f64)>,
    pub csign_error: f64,
}

impl Ns1FloatReport {
    pub fn pass(&self) -> bool {
        (self.gamma - GAMMA_PRINTED).abs() < 1e-10
            && self.orthogonality_error < FLOAT_TOLERANCE
            && self.amplitudes.iter().all(|(_, e, c)| (e - c).abs() < FLOAT_TOLERANCE)
            && self.csign_error < FLOAT_TOLERANCE
    }
}

pub fn verify_ns1_float() -> Ns1FloatReport {
    let g = gamma_f64();
    let m = ns1_float();
    let mmt = m.mul(&m.transpose());
    let orthogonality_error = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| (mmt.get(i, j) - if i == j { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    let amplitudes = identity_states()
        .into_iter()
        .map(|(s, sign)| {
            let c = phi_amplitude(&m, &s, &s).expect("3-mode amplitude");
            (s, sign as f64 * g, c)
        })
        .collect();
    let block = logical_block(&csign_assembly(&m).expect("float Hadamard"));
    let mut csign_error: f64 = 0.0;
    for (i, row) in block.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let expected = match (i == j, i == 3) {
                (false, _) => 0.0,
                (true, false) => g * g,
                (true, true) => -g * g,
            };
            csign_error = csign_error.max((v - expected).abs());
        }
    }
    Ns1FloatReport {
        gamma: g,
        orthogonality_error,
        amplitudes,
        csign_error,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalStatus {
    pub label: &'static str,
    pub radicand: u64,
    pub root: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ns1Assignment {
    /// Bit i set means radical i takes the root above p/2.
    pub signs: u8,
    pub gamma: u64,
    pub matrix: Vec<u64>,
    pub csign_holds: bool,
}

#[derive(Debug, Clone)]
pub struct Ns1ModReport {
    pub p: u64,
    /// Radicals along the all-canonical branch.
    pub radicals: Vec<RadicalStatus>,
    pub tried: usize,
    pub valid: Vec<Ns1Assignment>,
}

impl Ns1ModReport {
    pub fn pass(&self) -> bool {
        self.valid.iter().any(|a| a.csign_holds)
    }
}

type Fp = PrimeFieldElem;

/// Takes the six radicals with the given sign bits. Stops at the first
/// radicand that is a non-residue.
fn radicals_mod_p(p: u64, signs: u8) -> (Vec<RadicalStatus>, Option<(Fp, [Fp; 4])>) {
    let c = |v: i64| Fp::from_i64(v, p);
    let mut out = Vec::new();
    let mut take = |i: usize, radicand: Fp| -> Option<Fp> {
        let root = radicand.sqrt().map(|r| if signs >> i & 1 == 1 { r.neg() } else { r });
        out.push(RadicalStatus {
            label: RADICALS[i],
            radicand: radicand.residue(),
            root: root.map(Fp::residue),
        });
        root
    };
    let result = (|| {
        let s33 = take(0, c(33))?;
        let gamma = s33.add(&c(3)).mul(&c(18).inv()?);
        let r = take(1, c(6).sub(&c(3).mul(&gamma)))?;
        let base = c(9).mul(&gamma).sub(&c(2));
        let s1 = take(2, c(6).mul(&base.sub(&r)))?;
        let s2 = take(3, c(6).mul(&base.add(&r)))?;
        let t = take(4, c(24).sub(&c(45).mul(&gamma)))?;
        let w = take(5, c(2).sub(&c(4).mul(&gamma)))?;
        Some((gamma, [s1, s2, t, w]))
    })();
    (out, result)
}

pub fn ns1_mod_p(p: u64, signs: u8) -> Option<(Fp, Matrix<Fp>)> {
    let (_, res) = radicals_mod_p(p, signs);
    let (gamma, [s1, s2, t, w]) = res?;
    let sixth = Fp::from_i64(6, p).inv()?;
    Some((gamma, assemble(&p, &gamma, &s1, &s2, &t, &w, &sixth)))
}

fn identities_hold(m: &Matrix<Fp>, gamma: Fp) -> bool {
    identity_states().into_iter().all(|(s, sign)| {
        phi_amplitude(m, &s, &s).ok() == Some(Fp::from_i64(sign, gamma.modulus()).mul(&gamma))
    })
}

fn csign_holds(m: &Matrix<Fp>, gamma: Fp) -> bool {
    let Some(u) = csign_assembly(m) else {
        return false;
    };
    let g2 = gamma.mul(&gamma);
    let zero = Fp::new(0, gamma.modulus());
    logical_block(&u).iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, v)| {
            let expected = match (i == j, i == 3) {
                (false, _) => zero,
                (true, false) => g2,
                (true, true) => g2.neg(),
            };
            *v == expected
        })
    })
}

/// Tries all 2⁶ sign assignments of the nested radicals mod p and keeps
/// those giving an orthogonal matrix with the three amplitude identities.
pub fn verify_ns1_mod_p(p: u64) -> Ns1ModReport {
    assert!(is_prime(p) && p > 3, "NS1 check needs a prime p > 3");
    let (radicals, _) = radicals_mod_p(p, 0);
    let mut valid = Vec::new();
    let tried = 1usize << RADICALS.len();
    for signs in 0..tried as u8 {
        let Some((gamma, m)) = ns1_mod_p(p, signs) else {
            continue;
        };
        if m.is_orthogonal() && identities_hold(&m, gamma) {
            valid.push(Ns1Assignment {
                signs,
                gamma: gamma.residue(),
                matrix: m.entries().iter().map(|v| v.residue()).collect(),
                csign_holds: csign_holds(&m, gamma),
            });
        }
    }
    Ns1ModReport {
        p,
        radicals,
        tried,
        valid,
    }
}

#[derive(Debug, Clone)]
pub struct Ns1Report {
    pub float: Ns1FloatReport,
    pub modp: Option<Ns1ModReport>,
}

impl Ns1Report {
    pub fn pass(&self) -> bool {
        self.float.pass() && self.modp.as_ref().is_none_or(Ns1ModReport::pass)
    }
}

pub fn verify_ns1(p: Option<u64>) -> Ns1Report {
    Ns1Report {
        float: verify_ns1_float(),
        modp: p.map(verify_ns1_mod_p),
    }
}
