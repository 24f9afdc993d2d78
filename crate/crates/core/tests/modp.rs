use num_bigint::BigInt;
use orthoperm_core::algebra::fp::primes_below;
use orthoperm_core::algebra::{factor_f_mod_p, PolyOverFp};
use orthoperm_core::circuits::{constant, parse_netlist};
use orthoperm_core::modp::{
    classify_prime, index_of_order, pipeline_mod_p, reduce_certificate, split_primes_below,
    sqrt_in_quadratic_extension, Classification, ModpError,
};
use orthoperm_core::optics::certify;
use orthoperm_core::Ring;

const PRINTED_SPLIT: [u64; 16] = [
    191, 239, 241, 337, 383, 433, 673, 863, 911, 1103, 1151, 1249, 1583, 1871, 1873, 2017,
];

#[test]
fn split_primes_prefixes() {
    assert!(split_primes_below(191).unwrap().is_empty());
    assert_eq!(split_primes_below(250).unwrap(), vec![191, 239, 241]);
    assert_eq!(split_primes_below(2018).unwrap(), PRINTED_SPLIT.to_vec());
}

#[test]
fn split_primes_below_2100_includes_2063() {
    let mut expected = PRINTED_SPLIT.to_vec();
    expected.push(2063);
    assert_eq!(split_primes_below(2100).unwrap(), expected);
}

#[test]
fn scan_guard() {
    assert!(matches!(split_primes_below(2_000_000), Err(ModpError::GuardExceeded { .. })));
}

#[test]
fn classifications() {
    assert_eq!(classify_prime(191).unwrap().classification, Classification::SplitComplete);
    assert_eq!(classify_prime(23).unwrap().classification, Classification::Excluded);
    let five = classify_prime(5).unwrap();
    assert!(matches!(five.classification, Classification::Quadratic | Classification::Quartic));
}

#[test]
fn equal_degree_for_unramified_primes_below_500() {
    let mut ramified = Vec::new();
    for p in primes_below(500) {
        let r = classify_prime(p).unwrap();
        if r.distinct {
            let d = r.factor_degrees[0];
            assert!([1, 2, 4].contains(&d), "p = {p}: {:?}", r.factor_degrees);
            assert!(r.factor_degrees.iter().all(|&e| e == d), "p = {p}: {:?}", r.factor_degrees);
        } else {
            ramified.push(p);
        }
    }
    // 2 and 23 divide the index of Z[a]; 3 ramifies in the field itself.
    assert_eq!(ramified, vec![2, 3, 23]);
    for p in [2u32, 23] {
        assert_eq!(index_of_order() % BigInt::from(p), BigInt::from(0));
    }
    assert_ne!(index_of_order() % BigInt::from(3), BigInt::from(0));
}

#[test]
fn excluded_primes() {
    let cert = certify(&constant(1, false));
    let g = PolyOverFp::x(2);
    assert!(matches!(reduce_certificate(&cert, 2, &g), Err(ModpError::Excluded { p: 2, .. })));
    let err = reduce_certificate(&cert, 23, &PolyOverFp::x(23)).unwrap_err();
    assert!(err.to_string().contains("beta-representation"));
}

#[test]
fn reduced_network_is_orthogonal_mod_191() {
    let cert = certify(&constant(1, true));
    let (g, _) = factor_f_mod_p(191).remove(0);
    let red = reduce_certificate(&cert, 191, &g).unwrap();
    assert!(red.network.matrix.is_orthogonal());
}

#[test]
fn pipeline_mod_191_and_7() {
    let circuits = [
        constant(1, false),
        constant(1, true),
        parse_netlist("input x\noutput x\n").unwrap(),
        parse_netlist("input x\ngate y = NAND(x, x)\noutput y\n").unwrap(),
    ];
    for c in &circuits {
        for p in [191, 7] {
            let r = pipeline_mod_p(c, p).unwrap();
            for rec in &r.records {
                println!("{rec}");
            }
            assert!(r.ok());
            if c.delta_bruteforce().unwrap() == BigInt::from(0) {
                assert!(r.records.iter().all(|rec| rec.per.is_zero()));
            }
        }
    }
}

#[test]
fn square_roots_in_quadratic_extension() {
    for p in primes_below(100).into_iter().filter(|&p| p > 3) {
        for a in [2, 6] {
            let r = sqrt_in_quadratic_extension(a, p).unwrap();
            assert_eq!(r.mul(&r).as_base(), Some(a % p), "p = {p}, a = {a}");
        }
    }
}

#[test]
fn split_density_near_one_sixteenth() {
    let n = 100_000;
    let primes = primes_below(n).len() as f64;
    let count = split_primes_below(n).unwrap().len() as f64;
    let mean = primes / 16.0;
    let sd = (primes * (1.0 / 16.0) * (15.0 / 16.0)).sqrt();
    println!("split {count}, expected {mean:.1} ± {sd:.1}");
    assert!((count - mean).abs() < 3.0 * sd);
}
