use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orthoperm"))
}

fn netlist(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../netlists")
        .join(format!("{name}.net"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn verify_const0_recovers_delta() {
    let o = run(&["verify", netlist("const0").to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("Δ = 2"), "{out}");
    assert!(out.contains("Per(O) exact: 1/81"), "{out}");
    assert!(out.contains("0.0123456790123456790123456790123456790123"), "{out}");
}

#[test]
fn verify_guard_exits_two() {
    let o = run(&["verify", netlist("and").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("permanent guard"));
}

#[test]
fn split_primes_below_2018() {
    let o = run(&["split-primes", "--below", "2018"]);
    assert_eq!(code(&o), 0);
    let primes: Vec<u64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(
        primes,
        [191, 239, 241, 337, 383, 433, 673, 863, 911, 1103, 1151, 1249, 1583, 1871, 1873, 2017]
    );
}

#[test]
fn split_primes_guard() {
    assert_eq!(code(&run(&["split-primes", "--below", "1000001"])), 2);
}

#[test]
fn gadget_check_reports_encoder_sign() {
    let o = run(&["gadget-check"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 1, "{out}");
    let failures: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failures.len(), 1, "{out}");
    assert!(failures[0].contains("E|1,1,1>"), "{out}");
}

#[test]
fn compile_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("const1.cert");
    let net = netlist("const1");
    let o = run(&["compile", net.to_str().unwrap(), "-o", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("certificate v1\nring qalpha\n"));
    let o = run(&["verify", net.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("Δ = -2"));

    // The same certificate checked against a circuit with a different gap.
    let o = run(&["verify", netlist("const0").to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn compile_to_stdout_and_dump() {
    let o = run(&["compile", netlist("ident").to_str().unwrap(), "--dump-qc"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("# lowered circuit"));
    assert!(out.contains("certificate v1"));
    assert!(out.trim_end().ends_with("end"));
}

#[test]
fn corrupt_certificate_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("bad.cert");
    std::fs::write(&cert, "certificate v1\nring qalpha\nn x\n").unwrap();
    let o = run(&["verify", netlist("const0").to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn mod_p_pipeline() {
    let o = run(&["mod-p", netlist("xor").to_str().unwrap(), "--prime", "191"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("p=191")).count(), 16);
}

#[test]
fn mod_p_rejects_bad_primes() {
    let net = netlist("const0");
    for p in ["23", "91", "3"] {
        assert_eq!(code(&run(&["mod-p", net.to_str().unwrap(), "--prime", p])), 2, "p = {p}");
    }
}

#[test]
fn search_sign_and_approx() {
    let net = netlist("nand");
    let o = run(&["search", net.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("delta = -2"), "{}", stdout(&o));
    for extra in [&["--approx", "2"][..], &["--approx", "3/2", "--adversarial"], &["--approx", "4", "--lowball"]] {
        let mut args = vec!["search", net.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert_eq!(code(&o), 0, "{extra:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("delta = -2"));
    }
    assert_eq!(code(&run(&["search", net.to_str().unwrap(), "--approx", "1/2"])), 2);
}

#[test]
fn psd_demo_recovers_permanent() {
    for extra in [&[][..], &["--single-call"]] {
        let mut args = vec!["psd-demo", "--n", "3", "--seed", "7"];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        assert!(stdout(&o).contains("result: exact match"));
    }
    let o = run(&["psd-demo", "--n", "3", "--estimate", "500"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("gaussian estimate"));
}

#[test]
fn ns1_check_float_passes_and_mod_97_fails() {
    let o = run(&["ns1-check"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["ns1-check", "--prime", "97"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("sqrt(6-3g) radicand 51 root none"));
    assert_eq!(code(&run(&["ns1-check", "--prime", "4"])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["verify"])), 2);
    assert_eq!(code(&run(&["verify", "/nonexistent/x.net"])), 2);
    assert_eq!(code(&run(&["psd-demo", "--n", "0"])), 2);
}
