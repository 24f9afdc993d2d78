//! Runs the twelve acceptance criteria at their stated tolerances and time
//! limits, printing one PASS/FAIL line each. Exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{corpus, random_orthogonal};
use num_bigint::BigInt;
use num_rational::BigRational;
use orthoperm_core::algebra::repr::{check_printed_representations, divides_bound, PRINTED};
use orthoperm_core::algebra::{representation, verify_root_table, Radical};
use orthoperm_core::circuits::{constant, multiply, shift, BooleanCircuit};
use orthoperm_core::modp::{classify_prime, pipeline_mod_p, split_primes_below, Classification};
use orthoperm_core::optics::compile::power_product;
use orthoperm_core::optics::fock::fock_basis;
use orthoperm_core::optics::gadgets::verify_gadgets;
use orthoperm_core::optics::ns1::{verify_ns1_float, verify_ns1_mod_p};
use orthoperm_core::optics::{certify, extract_delta, phi_amplitude, FockState};
use orthoperm_core::qsim::{build_delta_circuit_netlist, circuit_unitary, lower, simulate_amplitude, GateKind, QubitCircuit, QubitGate};
use orthoperm_core::reductions::psd::ryser_oracle;
use orthoperm_core::reductions::search::{BruteForceApprox, BruteForceSign, OracleMode};
use orthoperm_core::reductions::{
    check_membership, involution_from_certificate, make_involution, make_symplectic, psd_interpolate, psd_single_call,
    search_delta, search_delta_approx, Group,
};
use orthoperm_core::algebra::fp::primes_below;
use orthoperm_core::matrix::Matrix;
use orthoperm_core::optics::GadgetId;
use orthoperm_core::QAlpha;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRINTED_SPLIT: [u64; 16] = [
    191, 239, 241, 337, 383, 433, 673, 863, 911, 1103, 1151, 1249, 1583, 1871, 1873, 2017,
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let r = verify_gadgets();
    let failures: Vec<String> = r.failures().iter().map(|c| c.to_string()).collect();
    let orth = r.orthogonality.iter().all(|(_, ok)| *ok);
    outcome(
        r.pass(),
        format!(
            "{}/{} identities exact, orthogonality {}{}",
            r.identities.len() - failures.len(),
            r.identities.len(),
            if orth { "exact" } else { "FAILED" },
            if failures.is_empty() {
                String::new()
            } else {
                format!("; {}", failures.join("; "))
            }
        ),
    )
}

fn criterion_2() -> Outcome {
    let h = GateKind::H.single_qubit_matrix().unwrap();
    let s = FockState::new(&[1, 1]);
    let r2 = representation(Radical::InvSqrt2).clone();
    let got: Vec<QAlpha> = [[2, 0], [1, 1], [0, 2]]
        .iter()
        .map(|t| phi_amplitude(h, &s, &FockState::new(t)).unwrap())
        .collect();
    outcome(got == vec![r2.clone(), QAlpha::zero(), r2.neg()], "amplitudes (1/sqrt2, 0, -1/sqrt2)")
}

fn criterion_3() -> Outcome {
    let t = QubitCircuit::from_gates(3, vec![QubitGate::toffoli(0, 1, 2)]).unwrap();
    let l = lower(&t);
    let ideal = circuit_unitary(&t.widened(4)).unwrap();
    let got = circuit_unitary(&l).unwrap();
    let ok = l.is_lowered()
        && (0..16)
            .step_by(2)
            .all(|c| (0..16).all(|r| got.get(r, c) == ideal.get(r, c)));
    outcome(ok, format!("{} lowered gates, 16x16 ancilla-|0> block", l.gates().len()))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, c) in corpus() {
        if c.input_count() > 3 || c.gates().len() > 5 {
            continue;
        }
        let q = build_delta_circuit_netlist(&c);
        let z = "0".repeat(q.qubit_count());
        let want = QAlpha::from_rational(&BigRational::new(
            c.delta_bruteforce().unwrap(),
            BigInt::from(1) << c.input_count(),
        ));
        checked += 1;
        if simulate_amplitude(&q, &z, &z).unwrap() != want {
            bad.push(name);
        }
    }
    outcome(bad.is_empty() && checked > 0, format!("{checked} corpus circuits; mismatches {bad:?}"))
}

fn criterion_5_circuits() -> Vec<(&'static str, BooleanCircuit)> {
    vec![
        ("const0", common::load("const0")),
        ("const1", common::load("const1")),
        ("ident", common::load("ident")),
        ("not", common::load("not")),
    ]
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    let (mut neg, mut zero) = (false, false);
    for (name, c) in criterion_5_circuits() {
        let cert = certify(&c);
        let per = cert.network.permanent().unwrap();
        let delta = c.delta_bruteforce().unwrap();
        let expected = QAlpha::from_rational(&(power_product(cert.a, cert.b) * BigRational::from_integer(delta.clone())));
        let exact = per == expected && extract_delta(&cert, &per).ok() == Some(delta.clone());
        ok &= exact && cert.dimension() == 12 && cert.p == 2 && cert.gamma == 2;
        neg |= exact && delta < BigInt::from(0);
        zero |= exact && delta == BigInt::from(0);
        parts.push(format!("{name}: delta={delta} modes={} a={} b={}", cert.dimension(), cert.a, cert.b));
    }
    outcome(ok && neg && zero, parts.join(", "))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checks = 0;
    let mut ok = true;
    for _ in 0..8 {
        let m = rng.random_range(2..=4);
        let photons = rng.random_range(1..=3);
        let (u, w) = (random_orthogonal(&mut rng, m), random_orthogonal(&mut rng, m));
        let basis = fock_basis(m, photons);
        let phi = |x: &Matrix<QAlpha>| {
            Matrix::from_fn(&(), basis.len(), basis.len(), |t, s| phi_amplitude(x, &basis[s], &basis[t]).unwrap())
        };
        let (pu, pw) = (phi(&u), phi(&w));
        ok &= u.is_orthogonal() && phi(&u.mul(&w)) == pu.mul(&pw) && pu.is_orthogonal() && pw.is_orthogonal();
        checks += 1;
    }
    outcome(ok, format!("{checks} random (U, W) pairs, modes 2..4, photons 1..3"))
}

fn criterion_7() -> Outcome {
    let split = split_primes_below(2100).unwrap();
    let list_ok = split == PRINTED_SPLIT.to_vec();
    let extra: Vec<u64> = split.iter().copied().filter(|p| !PRINTED_SPLIT.contains(p)).collect();
    let mut pipe_ok = true;
    for (_, c) in criterion_5_circuits() {
        pipe_ok &= pipeline_mod_p(&c, 191).map(|r| r.ok()).unwrap_or(false);
    }
    let mut eq_ok = true;
    for p in primes_below(500) {
        let r = classify_prime(p).unwrap();
        if matches!(r.classification, Classification::Ramified | Classification::Excluded) {
            continue;
        }
        eq_ok &= r.factor_degrees.iter().all(|&d| d == r.factor_degrees[0]) && matches!(r.factor_degrees[0], 1 | 2 | 4);
    }
    outcome(
        list_ok && pipe_ok && eq_ok,
        format!(
            "split list {} ({} primes, extra {extra:?}); mod-191 pipeline {}; equal-degree below 500 {}",
            if list_ok { "matches" } else { "differs" },
            split.len(),
            if pipe_ok { "exact" } else { "FAILED" },
            if eq_ok { "holds" } else { "FAILED" }
        ),
    )
}

fn criterion_8() -> Outcome {
    let rows = verify_root_table();
    let roots_ok = rows.len() == 8 && rows.iter().all(|r| r.pass());
    let flagged: Vec<Radical> = check_printed_representations()
        .iter()
        .filter(|c| !c.verifies)
        .map(|c| c.radical)
        .collect();
    let dens_ok = PRINTED.iter().all(|(_, d, _)| divides_bound(&BigInt::from(*d)))
        && Radical::ALL.iter().all(|r| divides_bound(representation(*r).denominator()));
    outcome(
        roots_ok && flagged.len() == 1 && dens_ok,
        format!("8 root rows {}; flagged {flagged:?}; denominators | 35328 {dens_ok}", if roots_ok { "exact" } else { "FAILED" }),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ok = true;
    let mut queries = 0;
    for _ in 0..20 {
        let n = rng.random_range(1..=4);
        let b = Matrix::from_fn(&(), n, n, |_, _| BigInt::from(rng.random_range(0..2)));
        let truth = common::naive_permanent(&b);
        let a = psd_interpolate(&b, ryser_oracle).unwrap();
        let s = psd_single_call(&b, ryser_oracle).unwrap();
        for q in a.queries.iter().chain(&s.queries) {
            queries += 1;
            ok &= q.minors.iter().all(|m| *m > BigInt::from(0));
        }
        ok &= a.per == truth && s.per == truth && a.polynomial == s.polynomial;
    }
    outcome(ok, format!("20 random 0-1 matrices, {queries} Sylvester-certified queries"))
}

fn criterion_10() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["const0", "const1"] {
        let cert = certify(&common::load(name));
        let lam = involution_from_certificate(&cert);
        let sym = lam.is_symmetric();
        let member = |m: &Matrix<QAlpha>, g| check_membership(m, g).unwrap();
        let l_ok = sym && member(&lam, Group::Involution) && member(&lam, Group::SL) && member(&lam, Group::O);
        let s = make_symplectic(&cert.network.matrix);
        let s_ok = member(&s, Group::SL) && member(&s, Group::Sp) && member(&s, Group::O);
        ok &= l_ok && s_ok;
        parts.push(format!("{name}: lambda {}x{} {l_ok}, doubled {}x{} {s_ok}", lam.rows(), lam.rows(), s.rows(), s.rows()));
    }
    let inv = make_involution(&constant(1, false)).unwrap();
    let m = &inv.matrix;
    let inv_ok = m.is_symmetric() && m.mul(m).is_identity();
    let lv = orthoperm_core::reductions::psd::lambda(GadgetId::V.matrix());
    let sv = make_symplectic(&lv);
    let sv_ok = [Group::SO, Group::Sp, Group::Involution]
        .iter()
        .all(|&g| check_membership(&sv, g).unwrap());
    ok &= inv_ok && sv_ok;
    parts.push(format!("make_involution(const0) {}x{} {inv_ok}; doubled lambda(V) {sv_ok}", m.rows(), m.rows()));
    outcome(ok, parts.join("; "))
}

fn criterion_11() -> Outcome {
    let mut ok = true;
    let mut max_calls = 0;
    for (_, c) in corpus() {
        let r = search_delta(&c, &mut BruteForceSign::default()).unwrap();
        ok &= r.delta == c.delta_bruteforce().unwrap() && r.calls <= c.input_count() + 3;
        max_calls = max_calls.max(r.calls);
    }
    let two = BigRational::from_integer(2.into());
    let three_quarters = BigRational::new(3.into(), 4.into());
    let mut worst = BigRational::from_integer(0.into());
    for (_, c) in corpus() {
        let r = search_delta_approx(&c, &mut BruteForceApprox::new(two.clone(), OracleMode::Adversarial), &two);
        match r {
            Ok(r) => {
                ok &= r.delta == c.delta_bruteforce().unwrap();
                for s in &r.steps {
                    worst = worst.max(s.ratio.clone());
                }
            }
            Err(_) => ok = false,
        }
    }
    ok &= worst <= three_quarters;
    let four = BigRational::from_integer(4.into());
    let mut boost_ok = true;
    for name in ["const0_n2", "nand", "xor"] {
        let c = common::load(name);
        let mut o = BruteForceApprox::new(four.clone(), OracleMode::Adversarial);
        match search_delta_approx(&c, &mut o, &four) {
            Ok(r) => {
                boost_ok &= r.boost == 2 && r.delta == c.delta_bruteforce().unwrap();
                for (step, (_, queried)) in r.steps.iter().zip(&o.log) {
                    let s = shift(&c, i64::try_from(&step.a).unwrap()).unwrap().circuit;
                    let base = s.delta_bruteforce().unwrap();
                    boost_ok &= *queried == &base * &base && multiply(&s, &s).delta_bruteforce().unwrap() == *queried;
                }
            }
            Err(_) => boost_ok = false,
        }
    }
    outcome(
        ok && boost_ok,
        format!("sign search max {max_calls} calls; adversarial worst ratio {worst}; m=2 boosting {boost_ok}"),
    )
}

fn criterion_12() -> Outcome {
    let f = verify_ns1_float();
    let m = verify_ns1_mod_p(97);
    let missing: Vec<&str> = m.radicals.iter().filter(|r| r.root.is_none()).map(|r| r.label).collect();
    outcome(
        f.pass() && m.pass(),
        format!(
            "float: orthogonality {:.1e}, csign {:.1e} ({}); mod 97: {} of {} sign assignments valid, non-residue radicands {missing:?}",
            f.orthogonality_error,
            f.csign_error,
            if f.pass() { "pass" } else { "FAIL" },
            m.valid.len(),
            m.tried
        ),
    )
}

fn main() {
    let criteria: [(u32, Duration, fn() -> Outcome); 12] = [
        (1, Duration::from_secs(5), criterion_1),
        (2, Duration::from_secs(1), criterion_2),
        (3, Duration::from_secs(30), criterion_3),
        (4, Duration::from_secs(60), criterion_4),
        (5, Duration::from_secs(600), criterion_5),
        (6, Duration::from_secs(60), criterion_6),
        (7, Duration::from_secs(120), criterion_7),
        (8, Duration::from_secs(30), criterion_8),
        (9, Duration::from_secs(60), criterion_9),
        (10, Duration::from_secs(60), criterion_10),
        (11, Duration::from_secs(60), criterion_11),
        (12, Duration::from_secs(30), criterion_12),
    ];
    let mut failed = 0;
    for (n, limit, run) in criteria {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let pass = o.pass && took <= limit;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2}: {} [{:.2}s / {}s] {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs(),
            o.detail
        );
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
