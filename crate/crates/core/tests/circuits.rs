mod common;

use common::load;
use orthoperm_core::circuits::{
    add, constant, less_than, multiply, negate, or_extend, pad, parse_netlist, shift, with_gap, CircuitError,
};

fn delta(c: &orthoperm_core::BooleanCircuit) -> i64 {
    i64::try_from(c.delta_bruteforce().unwrap()).unwrap()
}

#[test]
fn parse_examples() {
    let not = parse_netlist("input x\noutput g\ngate g = NAND(x, x)").unwrap();
    assert_eq!((not.input_count(), not.gates().len()), (1, 1));
    assert!(!not.eval(&[true]).unwrap());
    let nand = parse_netlist("input a\ninput b\noutput g\ngate g = NAND(a, b)").unwrap();
    assert!(!nand.eval(&[true, true]).unwrap());
    assert!(nand.eval(&[false, true]).unwrap());
    let err = parse_netlist("input a\ngate g = NAND(h, a)\ngate h = NAND(a, a)\noutput g").unwrap_err();
    assert!(matches!(err, CircuitError::ForwardReference { ref name, .. } if name == "h"), "{err}");
    assert!(matches!(parse_netlist("input a\ngate g = NAND(a, a)"), Err(CircuitError::MissingOutput)));
    assert!(matches!(
        parse_netlist("input a\ngate g = NAND(a, q)\noutput g"),
        Err(CircuitError::Undeclared { .. })
    ));
}

#[test]
fn eval_examples() {
    assert!(load("and").eval(&[true, true]).unwrap());
    assert!(!load("and").eval(&[true, false]).unwrap());
    assert!(matches!(
        load("and").eval(&[true]),
        Err(CircuitError::LengthMismatch { expected: 2, got: 1 })
    ));
}

#[test]
fn gap_examples() {
    assert_eq!(delta(&load("nand")), -2);
    for n in 1..5 {
        assert_eq!(delta(&constant(n, false)), 1 << n);
        assert_eq!(delta(&constant(n, true)), -(1 << n));
    }
    assert_eq!(delta(&load("ident")), 0);
    assert_eq!(delta(&load("and3")), 6);
    assert_eq!(delta(&load("maj3")), 0);
    assert_eq!(delta(&load("xor")), 0);
}

#[test]
fn combinator_examples() {
    assert_eq!(delta(&negate(&load("not"))), 0);
    let nand = load("nand");
    assert_eq!(delta(&multiply(&nand, &nand)), 4);
    let c4 = constant(2, false);
    assert_eq!(delta(&add(&c4, &negate(&c4)).unwrap()), 0);
    assert!(matches!(add(&c4, &constant(1, false)), Err(CircuitError::InputCountMismatch(2, 1))));
}

#[test]
fn shift_examples() {
    let nand = load("nand");
    let s = shift(&nand, 0).unwrap();
    assert_eq!((delta(&s.circuit), s.scale_log2), (-2, 0));
    let s = shift(&nand, -2).unwrap();
    assert_eq!((delta(&s.circuit), s.scale_log2), (0, 0));
    // Odd shifts come back doubled: 2·(2 − 5).
    let s = shift(&constant(1, false), 5);
    assert!(matches!(s, Err(CircuitError::ShiftOutOfRange { .. })));
    let s = shift(&constant(3, false), 5).unwrap();
    assert_eq!((delta(&s.circuit), s.scale_log2), (2 * (8 - 5), 1));
    let s = shift(&constant(1, false), 1).unwrap();
    assert_eq!((delta(&s.circuit), s.scale_log2), (2, 1));
}

#[test]
fn or_extend_examples() {
    assert_eq!(delta(&or_extend(&constant(1, true))), 0);
    assert_eq!(delta(&or_extend(&constant(1, false))), 4);
    assert_eq!(delta(&or_extend(&load("nand"))), 2);
}

#[test]
fn counting_helpers() {
    for n in 1..5 {
        for t in 0..=(1u64 << n) {
            assert_eq!(less_than(n, t).count_ones().unwrap(), t, "n={n} t={t}");
        }
        for g in (-(1i64 << n)..=(1 << n)).step_by(2) {
            assert_eq!(delta(&with_gap(n, g).unwrap()), g);
        }
    }
    let c = less_than(8, 200);
    assert_eq!(c.count_ones().unwrap(), 200);
    assert_eq!(c.truth_table().unwrap().iter().filter(|&&b| b).count(), 200);
    assert_eq!(delta(&pad(&load("nand"), 2)), -8);
}

#[test]
fn affine_detection() {
    assert!(load("nand").affine_form().is_none());
    let x = multiply(&constant(1, false), &load("ident"));
    assert_eq!(x.affine_form(), Some((false, vec![false, true])));
    assert_eq!(load("not").affine_form(), Some((true, vec![true])));
}

#[test]
fn netlist_round_trip() {
    for name in ["maj3", "xor", "const0"] {
        let c = load(name);
        let again = parse_netlist(&c.to_netlist()).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.delta_bruteforce().unwrap(), c.delta_bruteforce().unwrap());
    }
    let big = constant(25, false);
    assert!(matches!(big.delta_bruteforce(), Err(CircuitError::GuardExceeded { inputs: 25 })));
}
