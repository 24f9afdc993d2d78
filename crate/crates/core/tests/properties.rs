mod common;

use std::sync::Arc;

use common::naive_permanent;
use num_bigint::BigInt;
use num_rational::BigRational;
use orthoperm_core::algebra::{factor_f_mod_p, ExtFieldElem, ExtModulus, QAlpha};
use orthoperm_core::circuits::{add, multiply, negate, or_extend, parse_netlist, shift, BooleanCircuit, Nand};
use orthoperm_core::matrix::Matrix;
use orthoperm_core::modp::{factor_modulus, reduce_matrix, reduce_qalpha};
use orthoperm_core::optics::compile::{amplitude_scale, compile};
use orthoperm_core::optics::fock::fock_basis;
use orthoperm_core::optics::{permanent, phi_amplitude, FockState};
use orthoperm_core::qsim::{
    build_delta_circuit_netlist, circuit_unitary, lower, simulate_amplitude, GateKind, QubitCircuit, QubitGate,
};
use orthoperm_core::reductions::psd::lambda;
use orthoperm_core::reductions::search::{BruteForceApprox, BruteForceSign, OracleMode};
use orthoperm_core::reductions::{search_delta, search_delta_approx};
use proptest::prelude::*;

fn qalpha() -> impl Strategy<Value = QAlpha> {
    (prop::collection::vec(-6i64..=6, 16), 1i64..=12).prop_map(|(c, d)| QAlpha::from_integers(&c, d))
}

fn circuit(max_inputs: usize, max_gates: usize) -> impl Strategy<Value = BooleanCircuit> {
    (1..=max_inputs, 0..=max_gates)
        .prop_flat_map(|(n, g)| {
            let gates: Vec<_> = (0..g).map(|k| (0..n + k, 0..n + k)).collect();
            (Just(n), gates, any::<prop::sample::Index>())
        })
        .prop_map(|(n, gates, out)| {
            let w = n + gates.len();
            let gates = gates.into_iter().map(|(a, b)| Nand(a, b)).collect();
            BooleanCircuit::new(n, gates, out.index(w)).unwrap()
        })
}

fn delta(c: &BooleanCircuit) -> BigInt {
    c.delta_bruteforce().unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Givens rotation in modes (i, j) with a Pythagorean cosine/sine pair or
/// one of the irrational gates, possibly reflected.
fn rotation(m: usize) -> impl Strategy<Value = Matrix<QAlpha>> {
    (0..m, 0..m, 0usize..6, any::<bool>()).prop_map(move |(i, j, kind, reflect)| {
        let mut u = Matrix::identity(&(), m);
        if i == j {
            if reflect {
                u.set(i, i, QAlpha::from_int(-1));
            }
            return u;
        }
        let block = match kind {
            0 => GateKind::H.single_qubit_matrix().unwrap().clone(),
            1 => GateKind::RQ.single_qubit_matrix().unwrap().clone(),
            k => {
                let (c, s, d) = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)][k - 2];
                let q = |n| QAlpha::from_rational(&rat(n, d));
                Matrix::from_rows(&(), vec![vec![q(c), q(-s)], vec![q(s), q(c)]])
            }
        };
        let block = if reflect {
            Matrix::from_rows(
                &(),
                vec![
                    vec![block.get(0, 0).clone(), block.get(0, 1).clone()],
                    vec![block.get(1, 0).neg(), block.get(1, 1).neg()],
                ],
            )
        } else {
            block
        };
        u.left_apply(&block, &[i, j]);
        u
    })
}

fn orthogonal(m: usize) -> impl Strategy<Value = Matrix<QAlpha>> {
    prop::collection::vec(rotation(m), 1..4).prop_map(|rs| rs.iter().skip(1).fold(rs[0].clone(), |a, r| a.mul(r)))
}

fn phi_matrix(u: &Matrix<QAlpha>, photons: u32) -> Matrix<QAlpha> {
    let basis = fock_basis(u.rows(), photons);
    Matrix::from_fn(&(), basis.len(), basis.len(), |t, s| {
        phi_amplitude(u, &basis[s], &basis[t]).unwrap()
    })
}

fn split_modulus(p: u64) -> Arc<ExtModulus> {
    factor_modulus(&factor_f_mod_p(p)[0].0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn qalpha_ring_axioms(x in qalpha(), y in qalpha(), z in qalpha()) {
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.add(&QAlpha::zero()), x.clone());
        prop_assert_eq!(x.mul(&QAlpha::one()), x.clone());
        if !x.is_zero() {
            prop_assert!(x.mul(&x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(x in qalpha(), y in qalpha(), p in prop::sample::select(vec![191u64, 193, 239])) {
        let m = split_modulus(p);
        let r = |v: &QAlpha| reduce_qalpha(v, &m);
        // Denominators ≤ 12 and 191, 193, 239 are prime, so all reductions exist.
        let (sx, sy) = (r(&x).unwrap(), r(&y).unwrap());
        prop_assert_eq!(r(&x.add(&y)).unwrap(), orthoperm_core::ring::Ring::add(&sx, &sy));
        prop_assert_eq!(r(&x.mul(&y)).unwrap(), orthoperm_core::ring::Ring::mul(&sx, &sy));
    }

    #[test]
    fn reduction_commutes_with_permanent(entries in prop::collection::vec(qalpha(), 9)) {
        let mat = Matrix::from_vec(&(), 3, 3, entries);
        let m = split_modulus(241);
        let per: ExtFieldElem = permanent(&reduce_matrix(&mat, &m).unwrap()).unwrap();
        prop_assert_eq!(per, reduce_qalpha(&permanent(&mat).unwrap(), &m).unwrap());
    }

    #[test]
    fn ryser_matches_naive(n in 1usize..=6, seed in prop::collection::vec(-9i64..=9, 36)) {
        let m = Matrix::from_fn(&(), n, n, |i, j| BigInt::from(seed[i * 6 + j]));
        prop_assert_eq!(permanent(&m).unwrap(), naive_permanent(&m));
    }

    #[test]
    fn lambda_squares_permanent(n in 1usize..=4, bits in prop::collection::vec(0i64..=1, 16)) {
        let b = Matrix::from_fn(&(), n, n, |i, j| BigInt::from(bits[i * 4 + j]));
        let l = lambda(&b);
        let per = naive_permanent(&b);
        prop_assert!(l.is_symmetric());
        prop_assert_eq!(permanent(&l).unwrap(), &per * &per);
    }

    #[test]
    fn combinators_follow_gap_arithmetic(c1 in circuit(3, 6), c2 in circuit(3, 6)) {
        let (d1, d2) = (delta(&c1), delta(&c2));
        prop_assert_eq!(delta(&negate(&c1)), -&d1);
        prop_assert_eq!(delta(&multiply(&c1, &c2)), &d1 * &d2);
        let ext = or_extend(&c1);
        prop_assert_eq!(delta(&ext), &d1 + (BigInt::from(1) << c1.input_count()));
        prop_assert!(delta(&ext) >= BigInt::from(0));
        if c1.input_count() == c2.input_count() {
            prop_assert_eq!(delta(&add(&c1, &c2).unwrap()), &d1 + &d2);
        }
    }

    #[test]
    fn shift_subtracts(c in circuit(4, 8), k in -16i64..=16) {
        let n = c.input_count();
        prop_assume!(k.unsigned_abs() <= 1 << n);
        let s = shift(&c, k).unwrap();
        prop_assert_eq!(delta(&s.circuit), (delta(&c) - k) << s.scale_log2 as usize);
    }

    #[test]
    fn netlist_round_trips(c in circuit(4, 8)) {
        prop_assert_eq!(parse_netlist(&c.to_netlist()).unwrap(), c);
    }

    #[test]
    fn delta_circuit_amplitude(c in circuit(3, 5)) {
        let q = build_delta_circuit_netlist(&c);
        let z = "0".repeat(q.qubit_count());
        let want = QAlpha::from_rational(&BigRational::new(delta(&c), BigInt::from(1) << c.input_count()));
        prop_assert_eq!(simulate_amplitude(&q, &z, &z).unwrap(), want);
    }

    #[test]
    fn sign_search_bounds(c in circuit(4, 8)) {
        let r = search_delta(&c, &mut BruteForceSign::default()).unwrap();
        prop_assert_eq!(&r.delta, &delta(&c));
        prop_assert!(r.calls <= c.input_count() + 3);
    }

    #[test]
    fn approx_search_recovers_gap(c in circuit(3, 6), mode in prop::sample::select(vec![OracleMode::Honest, OracleMode::Adversarial, OracleMode::Lowball])) {
        let k = BigRational::from_integer(2.into());
        let r = search_delta_approx(&c, &mut BruteForceApprox::new(k.clone(), mode), &k).unwrap();
        prop_assert_eq!(r.delta, delta(&c));
    }
}

fn gate() -> impl Strategy<Value = (usize, usize, usize)> {
    (0usize..6, 0usize..3, 0usize..3)
}

fn build_gates(q: usize, ops: &[(usize, usize, usize)]) -> Vec<QubitGate> {
    let kinds = [GateKind::H, GateKind::Z, GateKind::X, GateKind::RQ, GateKind::RQinv];
    ops.iter()
        .filter_map(|&(k, a, b)| {
            let (a, b) = (a % q, b % q);
            if k < 5 {
                Some(QubitGate::single(kinds[k], a))
            } else if a != b {
                Some(QubitGate::csign(a, b))
            } else {
                None
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phi_is_a_homomorphism(
        photons in 1u32..=3,
        (u, w) in (2usize..=3).prop_flat_map(|m| (orthogonal(m), orthogonal(m))),
    ) {
        prop_assert_eq!(phi_matrix(&u.mul(&w), photons), phi_matrix(&u, photons).mul(&phi_matrix(&w, photons)));
    }

    #[test]
    fn phi_is_orthogonal(photons in 1u32..=3, u in orthogonal(4)) {
        prop_assert!(phi_matrix(&u, photons).is_orthogonal());
    }

    #[test]
    fn phi_conserves_photons(u in orthogonal(3), s in prop::collection::vec(0u32..=2, 3), t in prop::collection::vec(0u32..=2, 3)) {
        let (s, t) = (FockState::new(&s), FockState::new(&t));
        prop_assume!(s.photons() != t.photons());
        prop_assert!(phi_amplitude(&u, &s, &t).unwrap().is_zero());
    }

    #[test]
    fn qubit_unitaries_are_orthogonal(q in 1usize..=3, ops in prop::collection::vec(gate(), 0..8)) {
        let qc = QubitCircuit::from_gates(q, build_gates(q, &ops)).unwrap();
        prop_assert!(circuit_unitary(&qc).unwrap().is_orthogonal());
    }

    #[test]
    fn lowering_preserves_clean_ancilla_block(ops in prop::collection::vec((0usize..4, 0usize..3, 0usize..3, 0usize..3), 1..3)) {
        let mut gates = Vec::new();
        for (k, a, b, c) in ops {
            match k {
                0 => gates.push(QubitGate::single(GateKind::H, a)),
                1 if a != b => gates.push(QubitGate::cnot(a, b)),
                2 if a != b && b != c && a != c => gates.push(QubitGate::toffoli(a, b, c)),
                _ => gates.push(QubitGate::single(GateKind::X, c)),
            }
        }
        let qc = QubitCircuit::from_gates(3, gates).unwrap();
        let l = lower(&qc);
        let extra = l.qubit_count() - 3;
        let ideal = circuit_unitary(&qc.widened(l.qubit_count())).unwrap();
        let got = circuit_unitary(&l).unwrap();
        for col in (0..1usize << l.qubit_count()).filter(|c| c & ((1 << extra) - 1) == 0) {
            for row in (0..1usize << l.qubit_count()).filter(|r| r & ((1 << extra) - 1) == 0) {
                prop_assert_eq!(got.get(row, col), ideal.get(row, col));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn compiled_amplitude_matches_statevector(q in 1usize..=2, ops in prop::collection::vec(gate(), 0..4)) {
        let qc = QubitCircuit::from_gates(q, build_gates(q, &ops)).unwrap();
        prop_assume!(qc.count(GateKind::Csign) <= 2);
        let c = compile(&qc).unwrap();
        prop_assume!(c.network.dimension() <= 12);
        let ones = FockState::ones(c.network.dimension());
        let amp = phi_amplitude(&c.network.matrix, &ones, &ones).unwrap();
        let z = "0".repeat(c.p);
        let want = amplitude_scale(c.gamma, c.p).mul(&simulate_amplitude(&c.circuit, &z, &z).unwrap());
        prop_assert_eq!(amp, want);
    }
}
