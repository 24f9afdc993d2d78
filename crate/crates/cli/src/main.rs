use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use orthoperm_core::algebra::embed_real;
use orthoperm_core::matrix::Matrix;
use orthoperm_core::modp::{pipeline_mod_p, split_primes_below};
use orthoperm_core::optics::certfmt::{read_certificate, ring_tag, write_certificate};
use orthoperm_core::optics::compile::{extract_delta, extract_delta_mod_p, power_product, residue_of};
use orthoperm_core::optics::ns1::verify_ns1;
use orthoperm_core::optics::permanent::EXACT_GUARD;
use orthoperm_core::optics::{certify, verify_gadgets};
use orthoperm_core::qsim::{build_delta_circuit, lower};
use orthoperm_core::reductions::gaussian::complex_rows;
use orthoperm_core::reductions::psd::{lambda, ryser_oracle};
use orthoperm_core::reductions::search::{BruteForceApprox, BruteForceSign, OracleMode};
use orthoperm_core::reductions::{
    cholesky, gaussian_estimate, psd_interpolate, psd_single_call, search_delta, search_delta_approx,
};
use orthoperm_core::{parse_netlist, BooleanCircuit, ExtFieldElem, QAlpha, ReductionCertificate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Digits in decimal approximations.
const DIGITS: usize = 40;
const EMBED_BITS: u32 = 192;

#[derive(Parser)]
#[command(name = "orthoperm", version, about = "Gap counting as permanents of orthogonal matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a netlist into a reduction certificate.
    Compile {
        netlist: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print the lowered qubit circuit.
        #[arg(long)]
        dump_qc: bool,
    },
    /// Check Per(O) = 2^a 3^b Δ_C exactly.
    Verify {
        netlist: PathBuf,
        /// Use this certificate instead of compiling afresh.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        dump_qc: bool,
    },
    /// Recompute the gadget amplitude identities.
    GadgetCheck {
        /// Also check the NS1 gadget.
        #[arg(long)]
        ns1: bool,
        /// Prime for the finite-field NS1 check.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Primes below N at which f splits into 16 linear factors.
    SplitPrimes {
        #[arg(long)]
        below: u64,
    },
    /// Reduce the certificate mod p and recover Δ_C mod p on every factor field.
    ModP {
        netlist: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Recover Per(B) of a random 0-1 matrix through positive-definite queries.
    PsdDemo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        single_call: bool,
        /// Also run the Gaussian estimator on Λ_B + (2n+1)I with this many samples.
        #[arg(long)]
        estimate: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Recover Δ_C from a sign oracle, or from an approximation oracle.
    Search {
        netlist: PathBuf,
        /// Approximation factor κ (integer or p/q).
        #[arg(long)]
        approx: Option<String>,
        /// The oracle answers κ|Δ| instead of |Δ|.
        #[arg(long, conflicts_with = "lowball")]
        adversarial: bool,
        /// The oracle answers |Δ|/κ instead of |Δ|.
        #[arg(long)]
        lowball: bool,
    },
    /// The NS1 gadget in floating point and optionally mod p.
    Ns1Check {
        #[arg(long)]
        prime: Option<u64>,
    },
}

fn load_circuit(path: &Path) -> Result<BooleanCircuit> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_netlist(&text).with_context(|| format!("parsing {}", path.display()))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn decimal(x: &QAlpha) -> String {
    embed_real(x, EMBED_BITS).to_decimal(DIGITS)
}

fn describe(cert: &ReductionCertificate<impl orthoperm_core::Ring>) -> String {
    format!(
        "network: {} modes, qubits p={}, csigns={}, a={}, b={}",
        cert.dimension(),
        cert.p,
        cert.gamma,
        cert.a,
        cert.b
    )
}

fn check_guard(dim: usize) -> Result<()> {
    if dim > EXACT_GUARD {
        bail!(
            "permanent guard: the network has {dim} modes but exact permanents are limited to {EXACT_GUARD}x{EXACT_GUARD}; circuits that need a Toffoli oracle exceed it"
        );
    }
    Ok(())
}

fn dump_qc(c: &BooleanCircuit) {
    let qc = lower(&build_delta_circuit(c));
    println!("# lowered circuit on {} qubits", qc.qubit_count());
    print!("{}", qc.to_debug_string());
}

fn compile_cmd(netlist: &Path, output: Option<&Path>, dump: bool) -> Result<ExitCode> {
    let c = load_circuit(netlist)?;
    if dump {
        dump_qc(&c);
    }
    let text = write_certificate(&certify(&c));
    match output {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            eprintln!("wrote {}", p.display());
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(netlist: &Path, cert_path: Option<&Path>, dump: bool) -> Result<ExitCode> {
    let c = load_circuit(netlist)?;
    if dump {
        dump_qc(&c);
    }
    let delta = c.delta_bruteforce()?;
    println!(
        "circuit: {} inputs={} gates={}",
        netlist.display(),
        c.input_count(),
        c.gates().len()
    );
    let text = match cert_path {
        Some(p) => Some(std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?),
        None => None,
    };
    if let Some(t) = &text {
        if ring_tag(t) == Some("gf") {
            let cert: ReductionCertificate<ExtFieldElem> = read_certificate(t)?;
            println!("{}", describe(&cert));
            check_guard(cert.dimension())?;
            let per = cert.network.permanent()?;
            let p = per.modulus().prime();
            let got = extract_delta_mod_p(&cert, &per).map_err(|e| anyhow!(e))?;
            let want = residue_of(&delta, p);
            println!("Per(O) = {per:?} in GF({p}^{})", per.modulus().degree());
            println!("Delta mod {p} = {got}, delta_bruteforce mod {p} = {want}");
            println!("result: {}", if got == want { "exact match" } else { "MISMATCH" });
            return Ok(status(got == want));
        }
    }
    let cert: ReductionCertificate<QAlpha> = match &text {
        Some(t) => read_certificate(t)?,
        None => certify(&c),
    };
    println!("{}", describe(&cert));
    check_guard(cert.dimension())?;
    let per = cert.network.permanent()?;
    let expected = QAlpha::from_rational(&(power_product(cert.a, cert.b) * BigRational::from_integer(delta.clone())));
    println!("Per(O) exact: {}", per);
    println!("Per(O) ~ {}", decimal(&per));
    let recovered = extract_delta(&cert, &per);
    let ok = per == expected && recovered.as_ref().ok() == Some(&delta);
    match &recovered {
        Ok(d) => println!("Per(O) = 2^{} 3^{} · {d}, Δ = {d}", cert.a, cert.b),
        Err(e) => println!("Per(O) / 2^{} 3^{}: {e}", cert.a, cert.b),
    }
    println!("delta_bruteforce = {delta}");
    println!("result: {}", if ok { "exact match" } else { "MISMATCH" });
    Ok(status(ok))
}

fn gadget_cmd(ns1: bool, prime: Option<u64>) -> Result<ExitCode> {
    let report = verify_gadgets();
    for c in &report.identities {
        println!("{c}");
    }
    for (g, ok) in &report.orthogonality {
        println!("{} {g} orthogonal", if *ok { "ok  " } else { "FAIL" });
    }
    let mut ok = report.pass();
    if ns1 || prime.is_some() {
        ok &= ns1_report(prime)?;
    }
    println!("result: {}", if ok { "all identities exact" } else { "MISMATCH" });
    Ok(status(ok))
}

fn ns1_report(prime: Option<u64>) -> Result<bool> {
    if let Some(p) = prime {
        if !orthoperm_core::algebra::fp::is_prime(p) || p <= 3 {
            bail!("--prime must be a prime greater than 3, got {p}");
        }
    }
    let r = verify_ns1(prime);
    let f = &r.float;
    println!("ns1 gamma = {:.12} (printed {})", f.gamma, orthoperm_core::optics::ns1::GAMMA_PRINTED);
    println!("ns1 orthogonality error = {:.3e}", f.orthogonality_error);
    for (s, e, c) in &f.amplitudes {
        let bra = s.to_string().replace('|', "<").replace('>', "|");
        println!("ns1 {bra}NS1{s} expected {e:.12} computed {c:.12}");
    }
    println!("ns1 csign assembly error = {:.3e}", f.csign_error);
    println!("ns1 float: {}", if f.pass() { "pass" } else { "FAIL" });
    if let Some(m) = &r.modp {
        for rad in &m.radicals {
            let root = rad.root.map_or_else(|| "none (non-residue)".to_string(), |v| v.to_string());
            println!("ns1 mod {}: {} radicand {} root {root}", m.p, rad.label, rad.radicand);
        }
        println!(
            "ns1 mod {}: {} of {} sign assignments give an orthogonal gadget with exact identities",
            m.p,
            m.valid.len(),
            m.tried
        );
        for a in &m.valid {
            println!(
                "ns1 mod {}: signs {:06b} gamma {} csign {}",
                m.p,
                a.signs,
                a.gamma,
                if a.csign_holds { "exact" } else { "fails" }
            );
        }
        println!("ns1 mod {}: {}", m.p, if m.pass() { "pass" } else { "FAIL" });
    }
    Ok(r.pass())
}

fn split_cmd(below: u64) -> Result<ExitCode> {
    for p in split_primes_below(below)? {
        println!("{p}");
    }
    Ok(ExitCode::SUCCESS)
}

fn modp_cmd(netlist: &Path, prime: u64) -> Result<ExitCode> {
    let c = load_circuit(netlist)?;
    let report = pipeline_mod_p(&c, prime)?;
    println!("delta_bruteforce = {} (mod {prime}: {})", report.delta, residue_of(&report.delta, prime));
    for r in &report.records {
        println!("{r}");
    }
    let ok = report.ok();
    println!("result: {}", if ok { "exact match on every factor" } else { "MISMATCH" });
    Ok(status(ok))
}

fn print_int_matrix(m: &Matrix<BigInt>) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(BigInt::to_string).collect();
        println!("  {}", row.join(" "));
    }
}

fn psd_cmd(n: usize, single: bool, estimate: Option<u64>, seed: u64) -> Result<ExitCode> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = Matrix::from_fn(&(), n, n, |_, _| BigInt::from(rng.random_range(0..2)));
    println!("B ({n}x{n}, seed {seed}):");
    print_int_matrix(&b);
    let result = if single {
        psd_single_call(&b, ryser_oracle)?
    } else {
        psd_interpolate(&b, ryser_oracle)?
    };
    for q in &result.queries {
        let minors: Vec<String> = q.minors.iter().map(BigInt::to_string).collect();
        println!("query x={} value={} minors=[{}]", q.x, q.value, minors.join(", "));
    }
    let poly: Vec<String> = result.polynomial.iter().map(BigInt::to_string).collect();
    println!("Per(Lambda_B + xI) coefficients (x^0 first): {}", poly.join(" "));
    let truth = ryser_oracle(&b);
    println!("Per(B) recovered = {}, Ryser = {truth}", result.per);
    let ok = result.per == truth;
    if let Some(samples) = estimate {
        if samples == 0 {
            bail!("--estimate needs at least one sample");
        }
        let x = BigInt::from(2 * n + 1);
        let a = lambda(&b).add_identity_multiple(&x);
        let exact = ryser_oracle(&a);
        let af = a.map(&(), |v| f64::from(i32::try_from(v).expect("small entries")));
        let l = cholesky(&af).ok_or_else(|| anyhow!("Lambda_B + {x}I is not positive definite"))?;
        let e = gaussian_estimate(&complex_rows(&l), samples, seed);
        println!(
            "gaussian estimate of Per(Lambda_B + {x}I): {:.6} ± {:.6} ({} samples, seed {}), exact {exact}",
            e.mean, e.std_err, e.samples, e.seed
        );
    }
    println!("result: {}", if ok { "exact match" } else { "MISMATCH" });
    Ok(status(ok))
}

fn parse_kappa(s: &str) -> Result<BigRational> {
    let k = match s.split_once('/') {
        Some((p, q)) => BigRational::new(BigInt::from_str(p.trim())?, BigInt::from_str(q.trim())?),
        None => BigRational::from_integer(BigInt::from_str(s.trim())?),
    };
    if k < BigRational::from_integer(1.into()) {
        bail!("--approx must be at least 1, got {s}");
    }
    Ok(k)
}

fn search_cmd(netlist: &Path, approx: Option<&str>, adversarial: bool, lowball: bool) -> Result<ExitCode> {
    let c = load_circuit(netlist)?;
    let truth = c.delta_bruteforce()?;
    let found = match approx {
        None => {
            let r = search_delta(&c, &mut BruteForceSign::default())?;
            for (k, s) in &r.trace {
                println!("query shift {k}: sign {s}");
            }
            println!("delta = {} after {} sign queries (bound {})", r.delta, r.calls, c.input_count() + 3);
            r.delta
        }
        Some(k) => {
            let kappa = parse_kappa(k)?;
            let mode = match (adversarial, lowball) {
                (true, _) => OracleMode::Adversarial,
                (_, true) => OracleMode::Lowball,
                _ => OracleMode::Honest,
            };
            let mut oracle = BruteForceApprox::new(kappa.clone(), mode);
            let r = search_delta_approx(&c, &mut oracle, &kappa)?;
            for s in &r.steps {
                println!(
                    "query at a={}: answer {} -> [{}, {}] ratio {}",
                    s.a, s.answer, s.interval.0, s.interval.1, s.ratio
                );
            }
            println!("delta = {} after {} queries (kappa {kappa}, power m = {})", r.delta, r.calls, r.boost);
            r.delta
        }
    };
    println!("delta_bruteforce = {truth}");
    Ok(status(found == truth))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compile { netlist, output, dump_qc } => compile_cmd(&netlist, output.as_deref(), dump_qc),
        Command::Verify { netlist, cert, dump_qc } => verify_cmd(&netlist, cert.as_deref(), dump_qc),
        Command::GadgetCheck { ns1, prime } => gadget_cmd(ns1, prime),
        Command::SplitPrimes { below } => split_cmd(below),
        Command::ModP { netlist, prime } => modp_cmd(&netlist, prime),
        Command::PsdDemo {
            n,
            single_call,
            estimate,
            seed,
        } => psd_cmd(n, single_call, estimate, seed),
        Command::Search {
            netlist,
            approx,
            adversarial,
            lowball,
        } => search_cmd(&netlist, approx.as_deref(), adversarial, lowball),
        Command::Ns1Check { prime } => {
            let ok = ns1_report(prime)?;
            Ok(status(ok))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
