//! Plain-text certificate format.
//!
//! ```text
//! certificate v1
//! ring qalpha                 (or: ring gf <p> <g0,g1,…>)
//! n 1
//! qubits 2
//! csigns 2
//! a -1
//! b -4
//! dim 12
//! gadget E 0 2 3
//! ...
//! entry 0 0 <16 × num/den>    (or the extension coefficients)
//! ...
//! end
//! ```
//!
//! Only nonzero entries are written.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::compile::{GadgetPlacement, OpticalNetwork, ReductionCertificate};
use super::gadgets::GadgetId;
use super::OpticsError;
use crate::algebra::qalpha::DEGREE;
use crate::algebra::{ExtFieldElem, ExtModulus, PolyOverFp, QAlpha};
use crate::matrix::Matrix;
use crate::ring::Ring;

pub trait CertRing: Ring {
    fn ring_line(ctx: &Self::Ctx) -> String;
    fn parse_ring(tokens: &[&str]) -> Result<Self::Ctx, String>;
    fn entry_tokens(&self) -> String;
    fn parse_entry(ctx: &Self::Ctx, tokens: &[&str]) -> Result<Self, String>;
}

impl CertRing for QAlpha {
    fn ring_line(_: &()) -> String {
        "ring qalpha".into()
    }

    fn parse_ring(tokens: &[&str]) -> Result<(), String> {
        match tokens {
            ["qalpha"] => Ok(()),
            _ => Err(format!("expected `ring qalpha`, found `ring {}`", tokens.join(" "))),
        }
    }

    fn entry_tokens(&self) -> String {
        let parts: Vec<String> = self.coeffs().iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect();
        parts.join(" ")
    }

    fn parse_entry(_: &(), tokens: &[&str]) -> Result<Self, String> {
        if tokens.len() != DEGREE {
            return Err(format!("expected {DEGREE} coefficients, found {}", tokens.len()));
        }
        let coeffs = tokens
            .iter()
            .map(|t| parse_rational(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QAlpha::from_rationals(&coeffs))
    }
}

fn parse_rational(t: &str) -> Result<BigRational, String> {
    let (n, d) = t.split_once('/').unwrap_or((t, "1"));
    let n = BigInt::from_str(n).map_err(|_| format!("bad numerator `{n}`"))?;
    let d = BigInt::from_str(d).map_err(|_| format!("bad denominator `{d}`"))?;
    if d == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

impl CertRing for ExtFieldElem {
    fn ring_line(m: &Arc<ExtModulus>) -> String {
        let g: Vec<String> = m.poly().coeffs().iter().map(u64::to_string).collect();
        format!("ring gf {} {}", m.prime(), g.join(","))
    }

    fn parse_ring(tokens: &[&str]) -> Result<Arc<ExtModulus>, String> {
        let ["gf", p, g] = tokens else {
            return Err(format!("expected `ring gf <p> <g>`, found `ring {}`", tokens.join(" ")));
        };
        let p: u64 = p.parse().map_err(|_| format!("bad prime `{p}`"))?;
        let g = g
            .split(',')
            .map(|c| c.parse::<u64>().map_err(|_| format!("bad coefficient `{c}`")))
            .collect::<Result<Vec<_>, _>>()?;
        ExtModulus::new(PolyOverFp::new(g, p)).map_err(|e| e.to_string())
    }

    fn entry_tokens(&self) -> String {
        let parts: Vec<String> = self.coeffs().iter().map(u64::to_string).collect();
        parts.join(" ")
    }

    fn parse_entry(m: &Arc<ExtModulus>, tokens: &[&str]) -> Result<Self, String> {
        if tokens.len() != m.degree() {
            return Err(format!("expected {} coefficients, found {}", m.degree(), tokens.len()));
        }
        let c = tokens
            .iter()
            .map(|t| t.parse::<u64>().map_err(|_| format!("bad coefficient `{t}`")))
            .collect::<Result<Vec<_>, _>>()?;
        if c.iter().any(|&v| v >= m.prime()) {
            return Err("coefficient out of range".into());
        }
        Ok(ExtFieldElem::from_poly(&PolyOverFp::new(c, m.prime()), m))
    }
}

pub fn write_certificate<R: CertRing>(cert: &ReductionCertificate<R>) -> String {
    let m = &cert.network.matrix;
    let mut out = String::new();
    out.push_str("certificate v1\n");
    out.push_str(&R::ring_line(m.ctx()));
    out.push('\n');
    let _ = writeln!(out, "n {}", cert.n);
    let _ = writeln!(out, "qubits {}", cert.p);
    let _ = writeln!(out, "csigns {}", cert.gamma);
    let _ = writeln!(out, "a {}", cert.a);
    let _ = writeln!(out, "b {}", cert.b);
    let _ = writeln!(out, "dim {}", m.rows());
    for g in &cert.network.provenance {
        let modes: Vec<String> = g.modes.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "gadget {} {}", g.gadget, modes.join(" "));
    }
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if !v.is_zero() {
                let _ = writeln!(out, "entry {i} {j} {}", v.entry_tokens());
            }
        }
    }
    out.push_str("end\n");
    out
}

/// The ring tag of a certificate (`qalpha` or `gf`), without parsing the rest.
pub fn ring_tag(text: &str) -> Option<&str> {
    text.lines()
        .map(str::trim)
        .find_map(|l| l.strip_prefix("ring "))
        .and_then(|r| r.split_whitespace().next())
}

struct Lines<'a> {
    it: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, l) in self.it.by_ref() {
            let l = l.trim();
            if !l.is_empty() && !l.starts_with('#') {
                return Some((i + 1, l.split_whitespace().collect()));
            }
        }
        None
    }
}

fn err(line: usize, msg: impl Into<String>) -> OpticsError {
    OpticsError::Format { line, msg: msg.into() }
}

fn field<T: FromStr>(lines: &mut Lines<'_>, key: &str) -> Result<T, OpticsError> {
    let (ln, toks) = lines.next().ok_or_else(|| err(0, format!("missing `{key}`")))?;
    match toks.as_slice() {
        [k, v] if *k == key => v.parse().map_err(|_| err(ln, format!("bad value for `{key}`"))),
        _ => Err(err(ln, format!("expected `{key} <value>`"))),
    }
}

pub fn read_certificate<R: CertRing>(text: &str) -> Result<ReductionCertificate<R>, OpticsError> {
    let mut lines = Lines {
        it: text.lines().enumerate().peekable(),
    };
    match lines.next() {
        Some((_, t)) if t == ["certificate", "v1"] => {}
        Some((ln, _)) => return Err(err(ln, "expected `certificate v1`")),
        None => return Err(err(0, "empty certificate")),
    }
    let (ln, toks) = lines.next().ok_or_else(|| err(0, "missing ring line"))?;
    if toks.first() != Some(&"ring") {
        return Err(err(ln, "expected `ring ...`"));
    }
    let ctx = R::parse_ring(&toks[1..]).map_err(|m| err(ln, m))?;
    let n = field(&mut lines, "n")?;
    let p = field(&mut lines, "qubits")?;
    let gamma = field(&mut lines, "csigns")?;
    let a = field(&mut lines, "a")?;
    let b = field(&mut lines, "b")?;
    let dim: usize = field(&mut lines, "dim")?;
    let mut provenance = Vec::new();
    let mut matrix = Matrix::zeros(&ctx, dim, dim);
    loop {
        let (ln, toks) = lines.next().ok_or_else(|| err(0, "missing `end`"))?;
        match toks.as_slice() {
            ["end"] => break,
            ["gadget", id, modes @ ..] => {
                let gadget = GadgetId::from_name(id).ok_or_else(|| err(ln, format!("unknown gadget `{id}`")))?;
                let modes = modes
                    .iter()
                    .map(|m| m.parse::<usize>().ok().filter(|&m| m < dim))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| err(ln, "bad mode index"))?;
                if modes.len() != gadget.matrix().rows() {
                    return Err(err(ln, format!("gadget {gadget} needs {} modes", gadget.matrix().rows())));
                }
                provenance.push(GadgetPlacement { gadget, modes });
            }
            ["entry", i, j, rest @ ..] => {
                let (i, j) = match (i.parse::<usize>(), j.parse::<usize>()) {
                    (Ok(i), Ok(j)) if i < dim && j < dim => (i, j),
                    _ => return Err(err(ln, "entry index out of range")),
                };
                let v = R::parse_entry(&ctx, rest).map_err(|m| err(ln, m))?;
                matrix.set(i, j, v);
            }
            _ => return Err(err(ln, format!("unexpected `{}`", toks.join(" ")))),
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "content after `end`"));
    }
    Ok(ReductionCertificate {
        network: OpticalNetwork { matrix, provenance },
        n,
        p,
        gamma,
        a,
        b,
    })
}
