//! Lowered qubit circuit → real orthogonal network over ℚ(α), and the
//! certificate Per(O) = 2^a 3^b Δ_C.
//!
//! Qubit i owns modes 4i (1-rail), 4i+1 (0-rail), 4i+2 (dump) and 4i+3
//! (encoder ancilla). Each CSIGN gets a fresh ancilla pair appended after
//! the qubit blocks, in gate order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::gadgets::{csign_success_amplitude, GadgetId};
use super::permanent::permanent;
use super::OpticsError;
use crate::algebra::repr::{representation, Radical};
use crate::algebra::{ExtFieldElem, PrimeFieldElem, QAlpha};
use crate::circuits::BooleanCircuit;
use crate::matrix::Matrix;
use crate::qsim::{build_delta_circuit, lower, GateKind, QubitCircuit, QubitGate};
use crate::ring::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetPlacement {
    pub gadget: GadgetId,
    pub modes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpticalNetwork<R: Ring> {
    pub matrix: Matrix<R>,
    /// Gadgets in time order; the matrix is their product, latest leftmost.
    pub provenance: Vec<GadgetPlacement>,
}

impl<R: Ring> OpticalNetwork<R> {
    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn map_ring<S: Ring, E>(&self, ctx: &S::Ctx, f: impl FnMut(&R) -> Result<S, E>) -> Result<OpticalNetwork<S>, E> {
        Ok(OpticalNetwork {
            matrix: self.matrix.try_map(ctx, f)?,
            provenance: self.provenance.clone(),
        })
    }

    pub fn permanent(&self) -> Result<R, OpticsError> {
        permanent(&self.matrix)
    }
}

impl OpticalNetwork<QAlpha> {
    /// Rebuilds the matrix from the provenance list.
    pub fn from_provenance(dim: usize, provenance: Vec<GadgetPlacement>) -> Self {
        let mut matrix = Matrix::identity(&(), dim);
        for g in &provenance {
            matrix.left_apply(g.gadget.matrix(), &g.modes);
        }
        OpticalNetwork { matrix, provenance }
    }
}

#[derive(Debug, Clone)]
pub struct CompiledCircuit {
    pub network: OpticalNetwork<QAlpha>,
    /// The parity-padded circuit actually compiled.
    pub circuit: QubitCircuit,
    pub p: usize,
    pub gamma: usize,
}

/// Pads to an even qubit count p ≥ 2 and an even CSIGN count Γ ≥ 2. Extra
/// CSIGNs go on qubits 0 and 1 before any other gate, where both are |0⟩.
pub fn pad_parity(qc: &QubitCircuit) -> QubitCircuit {
    let mut p = qc.qubit_count().max(2);
    if p % 2 == 1 {
        p += 1;
    }
    let gamma = qc.count(GateKind::Csign);
    let extra = if gamma == 0 { 2 } else { gamma % 2 };
    let mut gates = vec![QubitGate::csign(0, 1); extra];
    gates.extend(qc.gates().iter().cloned());
    QubitCircuit::from_gates(p, gates).expect("padding keeps gates in range")
}

pub fn mode_count(p: usize, gamma: usize) -> usize {
    4 * p + 2 * gamma
}

pub fn compile(qc: &QubitCircuit) -> Result<CompiledCircuit, OpticsError> {
    if let Some(g) = qc.gates().iter().find(|g| !g.kind.is_lowered()) {
        return Err(OpticsError::NotLowered(g.to_string()));
    }
    let circuit = pad_parity(qc);
    let p = circuit.qubit_count();
    let gamma = circuit.count(GateKind::Csign);
    let dim = mode_count(p, gamma);

    let mut provenance = Vec::with_capacity(2 * p + circuit.gates().len());
    for i in 0..p {
        provenance.push(GadgetPlacement {
            gadget: GadgetId::Encoder,
            modes: vec![4 * i, 4 * i + 2, 4 * i + 3],
        });
    }
    let mut next_ancilla = 4 * p;
    for g in circuit.gates() {
        let placement = match g.kind {
            GateKind::Csign => {
                let (a, b) = (g.qubits[0], g.qubits[1]);
                let modes = vec![4 * a, 4 * b, next_ancilla, next_ancilla + 1];
                next_ancilla += 2;
                GadgetPlacement {
                    gadget: GadgetId::V,
                    modes,
                }
            }
            k => {
                let q = g.qubits[0];
                GadgetPlacement {
                    gadget: GadgetId::Gate(k),
                    modes: vec![4 * q + 1, 4 * q],
                }
            }
        };
        provenance.push(placement);
    }
    for i in 0..p {
        provenance.push(GadgetPlacement {
            gadget: GadgetId::Decoder,
            modes: vec![4 * i, 4 * i + 2],
        });
    }
    Ok(CompiledCircuit {
        network: OpticalNetwork::from_provenance(dim, provenance),
        circuit,
        p,
        gamma,
    })
}

/// ((1/3)√(2/3))^Γ (−1/√6)^p.
pub fn amplitude_scale(gamma: usize, p: usize) -> QAlpha {
    let inv6 = representation(Radical::InvSqrt2).mul(representation(Radical::InvSqrt3));
    csign_success_amplitude()
        .pow(gamma as u64)
        .mul(&inv6.neg().pow(p as u64))
}

/// a = Γ/2 − p/2 − n, b = −3Γ/2 − p/2, valid for even Γ and p.
pub fn exponents(n: usize, p: usize, gamma: usize) -> (i64, i64) {
    debug_assert!(p.is_multiple_of(2) && gamma.is_multiple_of(2));
    let (n, p, g) = (n as i64, p as i64, gamma as i64);
    (g / 2 - p / 2 - n, -3 * g / 2 - p / 2)
}

/// 2^a 3^b as an exact rational.
pub fn power_product(a: i64, b: i64) -> BigRational {
    let pow = |base: u32, e: i64| -> BigRational {
        let v = BigRational::from_integer(BigInt::from(base).pow(e.unsigned_abs() as u32));
        if e < 0 {
            v.recip()
        } else {
            v
        }
    };
    pow(2, a) * pow(3, b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionCertificate<R: Ring> {
    pub network: OpticalNetwork<R>,
    pub n: usize,
    pub p: usize,
    pub gamma: usize,
    pub a: i64,
    pub b: i64,
}

impl<R: Ring> ReductionCertificate<R> {
    pub fn dimension(&self) -> usize {
        self.network.dimension()
    }

    pub fn map_ring<S: Ring, E>(&self, ctx: &S::Ctx, f: impl FnMut(&R) -> Result<S, E>) -> Result<ReductionCertificate<S>, E> {
        Ok(ReductionCertificate {
            network: self.network.map_ring(ctx, f)?,
            n: self.n,
            p: self.p,
            gamma: self.gamma,
            a: self.a,
            b: self.b,
        })
    }
}

impl<R: Field> ReductionCertificate<R> {
    /// 2^a 3^b in the certificate's ring; `None` in characteristic 2 or 3.
    pub fn scale(&self) -> Option<R> {
        let ctx = self.network.matrix.ctx();
        let pow = |base: i64, e: i64| -> Option<R> {
            let v = R::from_i64(ctx, base).pow(ctx, e.unsigned_abs());
            if e < 0 {
                v.inv()
            } else {
                Some(v)
            }
        };
        Some(pow(2, self.a)?.mul(&pow(3, self.b)?))
    }
}

pub fn certify_qubit_circuit(qc: &QubitCircuit, n: usize) -> Result<ReductionCertificate<QAlpha>, OpticsError> {
    let c = compile(&lower(qc))?;
    let (a, b) = exponents(n, c.p, c.gamma);
    Ok(ReductionCertificate {
        network: c.network,
        n,
        p: c.p,
        gamma: c.gamma,
        a,
        b,
    })
}

pub fn certify(c: &BooleanCircuit) -> ReductionCertificate<QAlpha> {
    certify_qubit_circuit(&build_delta_circuit(c), c.input_count()).expect("lowered circuits always compile")
}

/// Δ_C = Per(O) / (2^a 3^b), which must be a rational integer.
pub fn extract_delta(cert: &ReductionCertificate<QAlpha>, per_value: &QAlpha) -> Result<BigInt, OpticsError> {
    let q = per_value.scale(&power_product(-cert.a, -cert.b));
    match q.as_rational() {
        Some(r) if r.is_integer() => Ok(r.to_integer()),
        _ => Err(OpticsError::NonIntegral(q.to_string())),
    }
}

/// Elements of a finite field that may lie in its prime subfield.
pub trait BaseResidue: Field {
    fn characteristic(&self) -> u64;
    fn base_residue(&self) -> Option<u64>;
}

impl BaseResidue for PrimeFieldElem {
    fn characteristic(&self) -> u64 {
        self.modulus()
    }
    fn base_residue(&self) -> Option<u64> {
        Some(self.residue())
    }
}

impl BaseResidue for ExtFieldElem {
    fn characteristic(&self) -> u64 {
        self.modulus().prime()
    }
    fn base_residue(&self) -> Option<u64> {
        self.as_base()
    }
}

/// Δ_C mod p from a finite-field permanent. The quotient must lie in 𝔽_p.
pub fn extract_delta_mod_p<R: BaseResidue>(cert: &ReductionCertificate<R>, per_value: &R) -> Result<u64, OpticsError> {
    let s = cert
        .scale()
        .and_then(|s| s.inv())
        .ok_or_else(|| OpticsError::NonIntegral("2^a 3^b is not invertible".into()))?;
    let q = per_value.mul(&s);
    q.base_residue()
        .ok_or_else(|| OpticsError::NonIntegral(format!("{q:?} is outside the prime field")))
}

/// Integer reduced into [0, p).
pub fn residue_of(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    u64::try_from(r).expect("residue fits in u64")
}
