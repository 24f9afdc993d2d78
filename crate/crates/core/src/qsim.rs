//! Real-gate qubit circuits: the gap-encoding circuit, exact Toffoli
//! lowering to {H, Z, X, R_{π/8}, CSIGN}, and statevector simulation over
//! ℚ(α).
//!
//! Qubit 0 is the most significant bit of a basis index.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::repr::{representation, Radical};
use crate::algebra::QAlpha;
use crate::circuits::{BooleanCircuit, Nand};
use crate::matrix::Matrix;

pub const STATEVECTOR_GUARD: usize = 14;
pub const UNITARY_GUARD: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QsimError {
    #[error("statevector guard exceeded: {qubits} qubits > {limit}")]
    GuardExceeded { qubits: usize, limit: usize },
    #[error("basis string `{got}` must have {expected} characters from {{0,1}}")]
    BadBasisString { expected: usize, got: String },
    #[error("gate {0} is invalid for this circuit")]
    BadGate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    Z,
    X,
    /// Rotation by π/8: ((cos, −sin), (sin, cos)).
    RQ,
    RQinv,
    Cnot,
    Csign,
    Toffoli,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::H | GateKind::Z | GateKind::X | GateKind::RQ | GateKind::RQinv => 1,
            GateKind::Cnot | GateKind::Csign => 2,
            GateKind::Toffoli => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::Z => "Z",
            GateKind::X => "X",
            GateKind::RQ => "RQ",
            GateKind::RQinv => "RQINV",
            GateKind::Cnot => "CNOT",
            GateKind::Csign => "CSIGN",
            GateKind::Toffoli => "TOFFOLI",
        }
    }

    pub fn is_lowered(self) -> bool {
        !matches!(self, GateKind::Cnot | GateKind::Toffoli)
    }

    /// The 2×2 matrix of a single-qubit gate on the basis (|0⟩, |1⟩).
    pub fn single_qubit_matrix(self) -> Option<&'static Matrix<QAlpha>> {
        let m = single_qubit_matrices();
        match self {
            GateKind::H => Some(&m[0]),
            GateKind::Z => Some(&m[1]),
            GateKind::X => Some(&m[2]),
            GateKind::RQ => Some(&m[3]),
            GateKind::RQinv => Some(&m[4]),
            _ => None,
        }
    }
}

fn single_qubit_matrices() -> &'static [Matrix<QAlpha>; 5] {
    static CELL: OnceLock<[Matrix<QAlpha>; 5]> = OnceLock::new();
    CELL.get_or_init(|| {
        let s = representation(Radical::InvSqrt2).clone();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let c = representation(Radical::Sqrt2PlusSqrt2).scale(&half);
        let sn = representation(Radical::Sqrt2MinusSqrt2).scale(&half);
        let i = |v: i64| QAlpha::from_int(v);
        let h = Matrix::from_rows(&(), vec![vec![s.clone(), s.clone()], vec![s.clone(), s.neg()]]);
        let z = Matrix::from_rows(&(), vec![vec![i(1), i(0)], vec![i(0), i(-1)]]);
        let x = Matrix::from_rows(&(), vec![vec![i(0), i(1)], vec![i(1), i(0)]]);
        let rq = Matrix::from_rows(&(), vec![vec![c.clone(), sn.neg()], vec![sn.clone(), c.clone()]]);
        let rqinv = rq.transpose();
        [h, z, x, rq, rqinv]
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitGate {
    pub kind: GateKind,
    /// Controls first, target last.
    pub qubits: Vec<usize>,
}

impl QubitGate {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Self {
        QubitGate {
            kind,
            qubits: qubits.to_vec(),
        }
    }

    pub fn single(kind: GateKind, q: usize) -> Self {
        Self::new(kind, &[q])
    }

    pub fn cnot(c: usize, t: usize) -> Self {
        Self::new(GateKind::Cnot, &[c, t])
    }

    pub fn csign(a: usize, b: usize) -> Self {
        Self::new(GateKind::Csign, &[a, b])
    }

    pub fn toffoli(c1: usize, c2: usize, t: usize) -> Self {
        Self::new(GateKind::Toffoli, &[c1, c2, t])
    }
}

impl fmt::Display for QubitGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitCircuit {
    qubit_count: usize,
    gates: Vec<QubitGate>,
}

impl QubitCircuit {
    pub fn new(qubit_count: usize) -> Self {
        QubitCircuit {
            qubit_count,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(qubit_count: usize, gates: Vec<QubitGate>) -> Result<Self, QsimError> {
        let mut c = Self::new(qubit_count);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, g: QubitGate) -> Result<(), QsimError> {
        let ok = g.qubits.len() == g.kind.arity()
            && g.qubits.iter().all(|&q| q < self.qubit_count)
            && (0..g.qubits.len()).all(|i| !g.qubits[..i].contains(&g.qubits[i]));
        if !ok {
            return Err(QsimError::BadGate(g.to_string()));
        }
        self.gates.push(g);
        Ok(())
    }

    fn push_all(&mut self, gs: impl IntoIterator<Item = QubitGate>) {
        for g in gs {
            self.push(g).expect("internally generated gate");
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[QubitGate] {
        &self.gates
    }

    /// True when only H, Z, X, RQ, RQinv and CSIGN occur.
    pub fn is_lowered(&self) -> bool {
        self.gates.iter().all(|g| g.kind.is_lowered())
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    /// One gate per line as `NAME q1 [q2 [q3]]`.
    pub fn to_debug_string(&self) -> String {
        self.gates.iter().map(|g| format!("{g}\n")).collect()
    }

    /// The same gates on a wider register.
    pub fn widened(&self, qubit_count: usize) -> Self {
        assert!(qubit_count >= self.qubit_count);
        QubitCircuit {
            qubit_count,
            gates: self.gates.clone(),
        }
    }
}

/// Controlled-R with R = ((0, −1), (1, 0)) from CNOTs and R_{π/8} gates,
/// using X·RQ⁻¹·X = RQ.
pub fn controlled_controlled_r(c1: usize, c2: usize, t: usize) -> Vec<QubitGate> {
    use GateKind::*;
    vec![
        QubitGate::single(RQ, t),
        QubitGate::cnot(c2, t),
        QubitGate::single(RQinv, t),
        QubitGate::cnot(c1, t),
        QubitGate::single(RQ, t),
        QubitGate::cnot(c2, t),
        QubitGate::single(RQinv, t),
        QubitGate::cnot(c1, t),
    ]
}

/// Three-qubit classical permutation equal to Toffoli(b, c → a) followed by
/// Toffoli(a, b → c), assembled from two CC-R blocks and two CSIGNs.
pub fn non_affine_block(a: usize, b: usize, c: usize) -> Vec<QubitGate> {
    let mut out = controlled_controlled_r(b, c, a);
    out.extend(controlled_controlled_r(a, b, c));
    out.push(QubitGate::csign(b, c));
    out.push(QubitGate::csign(a, b));
    out
}

/// Toffoli(q1, q2 → q3) from four non-affine blocks and a clean ancilla q4.
pub fn toffoli_block(q1: usize, q2: usize, q3: usize, q4: usize) -> Vec<QubitGate> {
    let mut out = non_affine_block(q4, q2, q3);
    out.extend(non_affine_block(q3, q2, q1));
    out.extend(non_affine_block(q3, q2, q4));
    out.extend(non_affine_block(q1, q2, q4));
    out
}

/// Rewrites into {H, Z, X, RQ, RQinv, CSIGN}. Each Toffoli gets a fresh
/// ancilla appended after the existing qubits, in order of occurrence.
pub fn lower(qc: &QubitCircuit) -> QubitCircuit {
    let extra = qc.count(GateKind::Toffoli);
    let mut out = QubitCircuit::new(qc.qubit_count + extra);
    let mut next_ancilla = qc.qubit_count;
    let lower_cnot = |g: &QubitGate| -> Vec<QubitGate> {
        let (c, t) = (g.qubits[0], g.qubits[1]);
        vec![
            QubitGate::single(GateKind::H, t),
            QubitGate::csign(c, t),
            QubitGate::single(GateKind::H, t),
        ]
    };
    for g in &qc.gates {
        match g.kind {
            GateKind::Toffoli => {
                let q = &g.qubits;
                for inner in toffoli_block(q[0], q[1], q[2], next_ancilla) {
                    if inner.kind == GateKind::Cnot {
                        out.push_all(lower_cnot(&inner));
                    } else {
                        out.push_all([inner]);
                    }
                }
                next_ancilla += 1;
            }
            GateKind::Cnot => out.push_all(lower_cnot(g)),
            _ => out.push_all([g.clone()]),
        }
    }
    out
}

/// Dense statevector of 2^q exact amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<QAlpha>,
}

impl StateVector {
    pub fn basis(qubits: usize, index: usize) -> Result<Self, QsimError> {
        if qubits > STATEVECTOR_GUARD {
            return Err(QsimError::GuardExceeded {
                qubits,
                limit: STATEVECTOR_GUARD,
            });
        }
        let mut amps = vec![QAlpha::zero(); 1 << qubits];
        amps[index] = QAlpha::one();
        Ok(StateVector { qubits, amps })
    }

    pub fn amplitudes(&self) -> &[QAlpha] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> &QAlpha {
        &self.amps[index]
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.qubits - 1 - q)
    }

    pub fn apply(&mut self, g: &QubitGate) {
        let q = &g.qubits;
        match g.kind {
            GateKind::Cnot | GateKind::Toffoli | GateKind::X => {
                let t = self.bit(*q.last().unwrap());
                let ctrl: usize = q[..q.len() - 1].iter().map(|&c| self.bit(c)).sum();
                for i in 0..self.amps.len() {
                    if i & t == 0 && i & ctrl == ctrl {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            GateKind::Csign | GateKind::Z => {
                let mask: usize = q.iter().map(|&c| self.bit(c)).sum();
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & mask == mask && !a.is_zero() {
                        *a = a.neg();
                    }
                }
            }
            GateKind::H | GateKind::RQ | GateKind::RQinv => {
                let m = g.kind.single_qubit_matrix().unwrap();
                let t = self.bit(q[0]);
                for i in 0..self.amps.len() {
                    if i & t != 0 {
                        continue;
                    }
                    let (a0, a1) = (&self.amps[i], &self.amps[i | t]);
                    if a0.is_zero() && a1.is_zero() {
                        continue;
                    }
                    let n0 = m.get(0, 0).mul(a0).add(&m.get(0, 1).mul(a1));
                    let n1 = m.get(1, 0).mul(a0).add(&m.get(1, 1).mul(a1));
                    self.amps[i] = n0;
                    self.amps[i | t] = n1;
                }
            }
        }
    }
}

/// Parses a string like `0110` into a basis index.
pub fn basis_index(s: &str, qubits: usize) -> Result<usize, QsimError> {
    let bad = || QsimError::BadBasisString {
        expected: qubits,
        got: s.to_string(),
    };
    if s.len() != qubits {
        return Err(bad());
    }
    s.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(bad()),
    })
}

/// Exact ⟨out| U(qc) |in⟩.
pub fn simulate_amplitude(qc: &QubitCircuit, input: &str, output: &str) -> Result<QAlpha, QsimError> {
    let i = basis_index(input, qc.qubit_count)?;
    let o = basis_index(output, qc.qubit_count)?;
    let mut sv = StateVector::basis(qc.qubit_count, i)?;
    for g in &qc.gates {
        sv.apply(g);
    }
    Ok(sv.amps[o].clone())
}

/// Runs the circuit on a basis state.
pub fn run_basis(qc: &QubitCircuit, index: usize) -> Result<StateVector, QsimError> {
    let mut sv = StateVector::basis(qc.qubit_count, index)?;
    for g in &qc.gates {
        sv.apply(g);
    }
    Ok(sv)
}

/// Full 2^q × 2^q unitary with entry (out, in).
pub fn circuit_unitary(qc: &QubitCircuit) -> Result<Matrix<QAlpha>, QsimError> {
    if qc.qubit_count > UNITARY_GUARD {
        return Err(QsimError::GuardExceeded {
            qubits: qc.qubit_count,
            limit: UNITARY_GUARD,
        });
    }
    let dim = 1 << qc.qubit_count;
    let columns: Vec<StateVector> = (0..dim).map(|i| run_basis(qc, i)).collect::<Result<_, _>>()?;
    Ok(Matrix::from_fn(&(), dim, dim, |r, c| columns[c].amps[r].clone()))
}

/// Wire-to-qubit map of the netlist oracle: inputs keep their index, the
/// answer qubit is n, gate k's ancilla is n + 1 + k.
fn oracle_qubit(c: &BooleanCircuit, wire: usize) -> usize {
    let n = c.input_count();
    if wire < n {
        wire
    } else {
        wire + 1
    }
}

/// O_C |x, b, 0…0⟩ = |x, b ⊕ C(x), 0…0⟩ from X, CNOT and Toffoli: each NAND
/// is computed into its own ancilla, the output copied to the answer qubit
/// and the ancillas uncomputed in reverse order. NAND(w, w) uses a CNOT.
pub fn build_oracle_circuit(c: &BooleanCircuit) -> QubitCircuit {
    let n = c.input_count();
    let mut qc = QubitCircuit::new(n + 1 + c.gates().len());
    let mut compute = Vec::new();
    for (k, &Nand(a, b)) in c.gates().iter().enumerate() {
        let anc = n + 1 + k;
        let (qa, qb) = (oracle_qubit(c, a), oracle_qubit(c, b));
        compute.push(QubitGate::single(GateKind::X, anc));
        compute.push(if qa == qb {
            QubitGate::cnot(qa, anc)
        } else {
            QubitGate::toffoli(qa, qb, anc)
        });
    }
    qc.push_all(compute.iter().cloned());
    qc.push_all([QubitGate::cnot(oracle_qubit(c, c.output()), n)]);
    qc.push_all(compute.into_iter().rev());
    qc
}

/// Oracle on n + 1 qubits from X and CNOT alone, when C is affine over GF(2).
pub fn build_affine_oracle(c: &BooleanCircuit) -> Option<QubitCircuit> {
    let (constant, mask) = c.affine_form()?;
    let n = c.input_count();
    let mut qc = QubitCircuit::new(n + 1);
    if constant {
        qc.push_all([QubitGate::single(GateKind::X, n)]);
    }
    for (i, &m) in mask.iter().enumerate() {
        if m {
            qc.push_all([QubitGate::cnot(i, n)]);
        }
    }
    Some(qc)
}

fn wrap_oracle(n: usize, oracle: QubitCircuit) -> QubitCircuit {
    let mut qc = QubitCircuit::new(oracle.qubit_count);
    let ans = n;
    let hs = |qc: &mut QubitCircuit| qc.push_all((0..n).map(|i| QubitGate::single(GateKind::H, i)));
    hs(&mut qc);
    qc.push_all([QubitGate::single(GateKind::H, ans), QubitGate::single(GateKind::Z, ans)]);
    qc.push_all(oracle.gates);
    qc.push_all([QubitGate::single(GateKind::Z, ans), QubitGate::single(GateKind::H, ans)]);
    hs(&mut qc);
    qc
}

/// Circuit Q with ⟨0…0|Q|0…0⟩ = Δ_C / 2ⁿ, using the netlist oracle.
pub fn build_delta_circuit_netlist(c: &BooleanCircuit) -> QubitCircuit {
    wrap_oracle(c.input_count(), build_oracle_circuit(c))
}

/// Circuit Q with ⟨0…0|Q|0…0⟩ = Δ_C / 2ⁿ. Affine functions get the
/// Toffoli-free oracle; everything else the netlist oracle.
pub fn build_delta_circuit(c: &BooleanCircuit) -> QubitCircuit {
    match build_affine_oracle(c) {
        Some(o) => wrap_oracle(c.input_count(), o),
        None => build_delta_circuit_netlist(c),
    }
}
