//! The optical gadgets over ℚ(α): Knill's postselected CSIGN gadget V, the
//! dual-rail encoder E and decoder D, plus the single-qubit gate blocks.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::fock::{phi_amplitude, FockState};
use crate::algebra::repr::{representation, Radical};
use crate::algebra::QAlpha;
use crate::matrix::Matrix;
use crate::qsim::GateKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetId {
    Encoder,
    Decoder,
    V,
    Gate(GateKind),
}

impl GadgetId {
    pub fn name(self) -> &'static str {
        match self {
            GadgetId::Encoder => "E",
            GadgetId::Decoder => "D",
            GadgetId::V => "V",
            GadgetId::Gate(k) => k.name(),
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "E" => GadgetId::Encoder,
            "D" => GadgetId::Decoder,
            "V" => GadgetId::V,
            "H" => GadgetId::Gate(GateKind::H),
            "Z" => GadgetId::Gate(GateKind::Z),
            "X" => GadgetId::Gate(GateKind::X),
            "RQ" => GadgetId::Gate(GateKind::RQ),
            "RQINV" => GadgetId::Gate(GateKind::RQinv),
            _ => return None,
        })
    }

    pub fn matrix(self) -> &'static Matrix<QAlpha> {
        let c = catalog();
        match self {
            GadgetId::Encoder => &c.e,
            GadgetId::Decoder => &c.d,
            GadgetId::V => &c.v,
            GadgetId::Gate(k) => k
                .single_qubit_matrix()
                .expect("only single-qubit gates appear as gadgets"),
        }
    }
}

impl fmt::Display for GadgetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct GadgetCatalog {
    pub v: Matrix<QAlpha>,
    pub e: Matrix<QAlpha>,
    pub d: Matrix<QAlpha>,
    /// ((0, −1), (1, 0)).
    pub r: Matrix<QAlpha>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn build() -> GadgetCatalog {
    let i = QAlpha::from_int;
    let inv2 = representation(Radical::InvSqrt2);
    let inv3 = representation(Radical::InvSqrt3);
    let sqrt2 = inv2.scale(&rat(2, 1));
    let sqrt3 = inv3.scale(&rat(3, 1));
    let p6 = sqrt2.mul(representation(Radical::Sqrt3PlusSqrt6));
    let m6 = sqrt2.mul(representation(Radical::Sqrt3MinusSqrt6));
    let a = representation(Radical::Sqrt3PlusSqrt6).clone();
    let b = representation(Radical::Sqrt3MinusSqrt6).clone();

    // V = 1/(3√2) · [...]
    let v_scale = inv2.scale(&rat(1, 3));
    let v = Matrix::from_rows(
        &(),
        vec![
            vec![sqrt2.neg(), i(-2), i(2), sqrt2.scale(&rat(2, 1))],
            vec![i(2), sqrt2.neg(), sqrt2.scale(&rat(-2, 1)), i(2)],
            vec![p6.neg(), m6.clone(), a.neg(), b.clone()],
            vec![m6.neg(), p6.neg(), b.neg(), a.neg()],
        ],
    )
    .scale(&v_scale);

    // E = 1/√6 · [...]
    let inv6 = inv2.mul(inv3);
    let e = Matrix::from_rows(
        &(),
        vec![
            vec![sqrt2.clone(), sqrt2.neg(), sqrt2.clone()],
            vec![i(0), sqrt3.clone(), sqrt3.clone()],
            vec![i(-2), i(-1), i(1)],
        ],
    )
    .scale(&inv6);

    let d = Matrix::from_rows(&(), vec![vec![i(1), i(1)], vec![i(1), i(-1)]]).scale(inv2);
    let r = Matrix::from_rows(&(), vec![vec![i(0), i(-1)], vec![i(1), i(0)]]);
    GadgetCatalog { v, e, d, r }
}

pub fn catalog() -> &'static GadgetCatalog {
    static CELL: OnceLock<GadgetCatalog> = OnceLock::new();
    CELL.get_or_init(build)
}

/// (1/3)·√(2/3) = (2/3)·(1/√2)·(1/√3).
pub fn csign_success_amplitude() -> QAlpha {
    representation(Radical::InvSqrt2)
        .mul(representation(Radical::InvSqrt3))
        .scale(&rat(2, 3))
}

#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub gadget: GadgetId,
    pub input: FockState,
    pub output: FockState,
    pub expected: QAlpha,
    pub computed: QAlpha,
}

impl IdentityCheck {
    pub fn pass(&self) -> bool {
        self.expected == self.computed
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}{}{}: expected {} computed {} [{}]",
            if self.pass() { "ok  " } else { "FAIL" },
            self.output.to_string().replace('|', "<").replace('>', "|"),
            self.gadget,
            self.input,
            approx(&self.expected),
            approx(&self.computed),
            if self.pass() { "exact" } else { "mismatch" }
        )
    }
}

fn approx(x: &QAlpha) -> String {
    crate::algebra::embed_real(x, 64).to_decimal(12)
}

#[derive(Debug, Clone)]
pub struct GadgetReport {
    pub identities: Vec<IdentityCheck>,
    pub orthogonality: Vec<(GadgetId, bool)>,
}

impl GadgetReport {
    pub fn pass(&self) -> bool {
        self.identities.iter().all(IdentityCheck::pass) && self.orthogonality.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.identities.iter().filter(|c| !c.pass()).collect()
    }
}

/// The transition amplitudes listed for V, E and D, each recomputed with
/// the φ-transition formula and compared exactly to its printed value.
pub fn verify_gadgets() -> GadgetReport {
    let c = catalog();
    let k = csign_success_amplitude();
    let zero = QAlpha::zero();
    let st = FockState::new;
    let v_cases = [
        ([0, 0, 1, 1], [0, 0, 1, 1], k.clone()),
        ([0, 1, 1, 1], [0, 1, 1, 1], k.clone()),
        ([1, 0, 1, 1], [1, 0, 1, 1], k.clone()),
        ([1, 1, 1, 1], [1, 1, 1, 1], k.neg()),
        ([1, 0, 1, 1], [0, 1, 1, 1], zero.clone()),
        ([0, 1, 1, 1], [1, 0, 1, 1], zero.clone()),
        ([1, 1, 1, 1], [2, 0, 1, 1], zero.clone()),
        ([1, 1, 1, 1], [0, 2, 1, 1], zero.clone()),
    ];
    let e_cases = [
        ([1, 1, 1], [1, 1, 1], zero.clone()),
        ([1, 1, 1], [2, 0, 1], zero.clone()),
        ([1, 1, 1], [0, 2, 1], representation(Radical::InvSqrt3).clone()),
    ];
    let mut identities = Vec::new();
    let mut check = |gadget: GadgetId, m: &Matrix<QAlpha>, s: &[u32], t: &[u32], expected: QAlpha| {
        let (input, output) = (st(s), st(t));
        let computed = phi_amplitude(m, &input, &output).expect("small gadget amplitude");
        identities.push(IdentityCheck {
            gadget,
            input,
            output,
            expected,
            computed,
        });
    };
    for (s, t, e) in v_cases {
        check(GadgetId::V, &c.v, &s, &t, e);
    }
    for (s, t, e) in e_cases {
        check(GadgetId::Encoder, &c.e, &s, &t, e);
    }
    check(
        GadgetId::Decoder,
        &c.d,
        &[0, 2],
        &[1, 1],
        representation(Radical::InvSqrt2).neg(),
    );
    let orthogonality = vec![
        (GadgetId::V, c.v.is_orthogonal()),
        (GadgetId::Encoder, c.e.is_orthogonal()),
        (GadgetId::Decoder, c.d.is_orthogonal()),
    ];
    GadgetReport {
        identities,
        orthogonality,
    }
}
