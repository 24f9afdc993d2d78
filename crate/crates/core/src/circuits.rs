//! NAND netlists, their gap Δ_C = Σ_x (−1)^C(x), and gap arithmetic on
//! circuits.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use rayon::prelude::*;

/// Largest input count enumerated by [`BooleanCircuit::delta_bruteforce`].
pub const ENUMERATION_GUARD: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: undeclared wire `{name}`")]
    Undeclared { line: usize, name: String },
    #[error("line {line}: wire `{name}` is used before its declaration")]
    ForwardReference { line: usize, name: String },
    #[error("line {line}: wire `{name}` is declared twice")]
    Duplicate { line: usize, name: String },
    #[error("netlist has no output")]
    MissingOutput,
    #[error("input length {got} does not match the circuit's {expected} inputs")]
    LengthMismatch { expected: usize, got: usize },
    #[error("enumeration guard exceeded: {inputs} inputs > {ENUMERATION_GUARD}")]
    GuardExceeded { inputs: usize },
    #[error("add needs equal input counts, got {0} and {1}; pad explicitly")]
    InputCountMismatch(usize, usize),
    #[error("shift by {k} exceeds the 2^{inputs} budget")]
    ShiftOutOfRange { k: i64, inputs: usize },
    #[error("gate {gate} references wire {wire} that is not yet defined")]
    NotTopological { gate: usize, wire: usize },
    #[error("output wire {0} does not exist")]
    BadOutput(usize),
}

/// A NAND gate on two earlier wires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Nand(pub usize, pub usize);

/// Inputs are wires `0..n`; gate `k` drives wire `n + k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanCircuit {
    inputs: usize,
    gates: Vec<Nand>,
    output: usize,
    names: Vec<String>,
}

impl BooleanCircuit {
    /// Builds a circuit with generated wire names `x0…` and `g0…`.
    pub fn new(inputs: usize, gates: Vec<Nand>, output: usize) -> Result<Self, CircuitError> {
        let names = (0..inputs)
            .map(|i| format!("x{i}"))
            .chain((0..gates.len()).map(|k| format!("g{k}")))
            .collect();
        Self::with_names(inputs, gates, output, names)
    }

    fn with_names(inputs: usize, gates: Vec<Nand>, output: usize, names: Vec<String>) -> Result<Self, CircuitError> {
        for (k, &Nand(a, b)) in gates.iter().enumerate() {
            for w in [a, b] {
                if w >= inputs + k {
                    return Err(CircuitError::NotTopological { gate: k, wire: w });
                }
            }
        }
        if output >= inputs + gates.len() {
            return Err(CircuitError::BadOutput(output));
        }
        Ok(BooleanCircuit {
            inputs,
            gates,
            output,
            names,
        })
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn gates(&self) -> &[Nand] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn wire_count(&self) -> usize {
        self.inputs + self.gates.len()
    }

    pub fn wire_name(&self, w: usize) -> &str {
        &self.names[w]
    }

    pub fn eval(&self, x: &[bool]) -> Result<bool, CircuitError> {
        if x.len() != self.inputs {
            return Err(CircuitError::LengthMismatch {
                expected: self.inputs,
                got: x.len(),
            });
        }
        let mut w = x.to_vec();
        for &Nand(a, b) in &self.gates {
            w.push(!(w[a] && w[b]));
        }
        Ok(w[self.output])
    }

    /// Evaluates 64 assignments at once: block `b` covers the integers
    /// `64b … 64b+63`, input `i` being bit `i` of the assignment index.
    fn eval_block(&self, block: u64, wires: &mut Vec<u64>) -> u64 {
        const PATTERNS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        wires.clear();
        for i in 0..self.inputs {
            wires.push(if i < 6 {
                PATTERNS[i]
            } else if (block >> (i - 6)) & 1 == 1 {
                u64::MAX
            } else {
                0
            });
        }
        for &Nand(a, b) in &self.gates {
            let v = !(wires[a] & wires[b]);
            wires.push(v);
        }
        wires[self.output]
    }

    /// Number of assignments with output 1.
    pub fn count_ones(&self) -> Result<u64, CircuitError> {
        if self.inputs > ENUMERATION_GUARD {
            return Err(CircuitError::GuardExceeded { inputs: self.inputs });
        }
        let total = 1u64 << self.inputs;
        let mask = if total >= 64 { u64::MAX } else { (1u64 << total) - 1 };
        let blocks = total.div_ceil(64);
        let count = |b: u64| {
            let mut wires = Vec::with_capacity(self.wire_count());
            (self.eval_block(b, &mut wires) & mask).count_ones() as u64
        };
        Ok(if blocks >= 256 {
            (0..blocks).into_par_iter().map(count).sum()
        } else {
            (0..blocks).map(count).sum()
        })
    }

    /// Exact Δ_C by enumeration.
    pub fn delta_bruteforce(&self) -> Result<BigInt, CircuitError> {
        let ones = self.count_ones()?;
        let total = 1u64 << self.inputs;
        Ok(BigInt::from(total) - BigInt::from(2 * ones))
    }

    /// Full truth table indexed by assignment (input `i` = bit `i`).
    pub fn truth_table(&self) -> Result<Vec<bool>, CircuitError> {
        if self.inputs > ENUMERATION_GUARD {
            return Err(CircuitError::GuardExceeded { inputs: self.inputs });
        }
        let total = 1usize << self.inputs;
        let mut out = Vec::with_capacity(total);
        let mut wires = Vec::new();
        for b in 0..total.div_ceil(64) {
            let v = self.eval_block(b as u64, &mut wires);
            for k in 0..64.min(total - 64 * b) {
                out.push((v >> k) & 1 == 1);
            }
        }
        Ok(out)
    }

    /// If the function is affine over GF(2), returns `(c, mask)` with
    /// C(x) = c ⊕ ⊕_{i ∈ mask} x_i.
    pub fn affine_form(&self) -> Option<(bool, Vec<bool>)> {
        if self.inputs > 16 {
            return None;
        }
        let table = self.truth_table().ok()?;
        let c = table[0];
        let mask: Vec<bool> = (0..self.inputs).map(|i| table[1 << i] != c).collect();
        let affine = table.iter().enumerate().all(|(x, &v)| {
            let parity = mask.iter().enumerate().filter(|&(i, &m)| m && (x >> i) & 1 == 1).count() % 2 == 1;
            v == (c ^ parity)
        });
        affine.then_some((c, mask))
    }

    /// Netlist text accepted by [`parse_netlist`].
    pub fn to_netlist(&self) -> String {
        let mut s = String::new();
        for i in 0..self.inputs {
            let _ = writeln!(s, "input {}", self.names[i]);
        }
        for (k, &Nand(a, b)) in self.gates.iter().enumerate() {
            let _ = writeln!(
                s,
                "gate {} = NAND({}, {})",
                self.names[self.inputs + k],
                self.names[a],
                self.names[b]
            );
        }
        let _ = writeln!(s, "output {}", self.names[self.output]);
        s
    }
}

impl fmt::Display for BooleanCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_netlist())
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

enum Line<'a> {
    Input(&'a str),
    Gate(&'a str, &'a str, &'a str),
    Output(&'a str),
}

fn parse_line(line: usize, text: &str) -> Result<Option<Line<'_>>, CircuitError> {
    let text = text.split('#').next().unwrap().trim();
    if text.is_empty() {
        return Ok(None);
    }
    let err = |msg: &str| CircuitError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let name = |s: &'_ str| -> Result<(), CircuitError> {
        if valid_name(s) {
            Ok(())
        } else {
            Err(err(&format!("invalid wire name `{s}`")))
        }
    };
    let (kw, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    match kw {
        "input" => {
            name(rest)?;
            Ok(Some(Line::Input(rest)))
        }
        "output" => {
            name(rest)?;
            Ok(Some(Line::Output(rest)))
        }
        "gate" => {
            let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("expected `=` in gate"))?;
            let lhs = lhs.trim();
            name(lhs)?;
            let rhs = rhs.trim();
            let args = rhs
                .strip_prefix("NAND")
                .map(str::trim_start)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| err("expected NAND(<a>, <b>)"))?;
            let (a, b) = args.split_once(',').ok_or_else(|| err("NAND takes two arguments"))?;
            let (a, b) = (a.trim(), b.trim());
            name(a)?;
            name(b)?;
            Ok(Some(Line::Gate(lhs, a, b)))
        }
        other => Err(err(&format!("unknown statement `{other}`"))),
    }
}

/// Parses the line-oriented netlist format: `input` lines, then `gate`
/// lines in topological order, then exactly one `output`. The output line
/// may appear anywhere after its wire is known; `#` starts a comment.
pub fn parse_netlist(text: &str) -> Result<BooleanCircuit, CircuitError> {
    let lines: Vec<(usize, Line)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| parse_line(i + 1, l).map(|p| p.map(|p| (i + 1, p))))
        .filter_map(Result::transpose)
        .collect::<Result<_, _>>()?;
    let declared_at: HashMap<&str, usize> = lines
        .iter()
        .filter_map(|(ln, l)| match l {
            Line::Input(n) | Line::Gate(n, _, _) => Some((*n, *ln)),
            Line::Output(_) => None,
        })
        .collect();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut gates = Vec::new();
    let mut output: Option<(usize, &str)> = None;
    let mut inputs = 0;
    let resolve = |index: &HashMap<&str, usize>, line: usize, n: &str| -> Result<usize, CircuitError> {
        index.get(n).copied().ok_or_else(|| {
            if declared_at.contains_key(n) {
                CircuitError::ForwardReference {
                    line,
                    name: n.to_string(),
                }
            } else {
                CircuitError::Undeclared {
                    line,
                    name: n.to_string(),
                }
            }
        })
    };
    for (ln, l) in &lines {
        match *l {
            Line::Input(n) => {
                if !gates.is_empty() {
                    return Err(CircuitError::Syntax {
                        line: *ln,
                        msg: "input declared after a gate".into(),
                    });
                }
                if index.insert(n, names.len()).is_some() {
                    return Err(CircuitError::Duplicate {
                        line: *ln,
                        name: n.into(),
                    });
                }
                names.push(n.to_string());
                inputs += 1;
            }
            Line::Gate(n, a, b) => {
                let wa = resolve(&index, *ln, a)?;
                let wb = resolve(&index, *ln, b)?;
                if index.insert(n, names.len()).is_some() {
                    return Err(CircuitError::Duplicate {
                        line: *ln,
                        name: n.into(),
                    });
                }
                names.push(n.to_string());
                gates.push(Nand(wa, wb));
            }
            Line::Output(n) => {
                if output.is_some() {
                    return Err(CircuitError::Syntax {
                        line: *ln,
                        msg: "more than one output".into(),
                    });
                }
                output = Some((*ln, n));
            }
        }
    }
    let (ln, out) = output.ok_or(CircuitError::MissingOutput)?;
    let out = index.get(out).copied().ok_or_else(|| CircuitError::Undeclared {
        line: ln,
        name: out.to_string(),
    })?;
    BooleanCircuit::with_names(inputs, gates, out, names)
}

/// Incremental construction with NOT/AND/OR/XOR lowered to NAND on the spot.
#[derive(Debug, Clone, Default)]
pub struct CircuitBuilder {
    inputs: usize,
    gates: Vec<Nand>,
}

impl CircuitBuilder {
    pub fn new(inputs: usize) -> Self {
        CircuitBuilder {
            inputs,
            gates: Vec::new(),
        }
    }

    pub fn input(&self, i: usize) -> usize {
        assert!(i < self.inputs);
        i
    }

    /// Copies `c`'s gates with input `i` wired to `input_map[i]`; returns
    /// the wire carrying `c`'s output.
    pub fn embed(&mut self, c: &BooleanCircuit, input_map: &[usize]) -> usize {
        assert_eq!(input_map.len(), c.inputs);
        let mut map: Vec<usize> = input_map.to_vec();
        for &Nand(a, b) in &c.gates {
            let w = self.nand(map[a], map[b]);
            map.push(w);
        }
        map[c.output]
    }

    pub fn nand(&mut self, a: usize, b: usize) -> usize {
        self.gates.push(Nand(a, b));
        self.inputs + self.gates.len() - 1
    }

    pub fn not(&mut self, a: usize) -> usize {
        self.nand(a, a)
    }

    pub fn and(&mut self, a: usize, b: usize) -> usize {
        let t = self.nand(a, b);
        self.not(t)
    }

    pub fn or(&mut self, a: usize, b: usize) -> usize {
        let na = self.not(a);
        let nb = self.not(b);
        self.nand(na, nb)
    }

    pub fn xor(&mut self, a: usize, b: usize) -> usize {
        let t = self.nand(a, b);
        let l = self.nand(a, t);
        let r = self.nand(b, t);
        self.nand(l, r)
    }

    /// Constant 1 computed from any existing wire as NAND(w, ¬w).
    pub fn const_true(&mut self, w: usize) -> usize {
        let nw = self.not(w);
        self.nand(w, nw)
    }

    pub fn const_false(&mut self, w: usize) -> usize {
        let t = self.const_true(w);
        self.not(t)
    }

    pub fn finish(self, output: usize) -> BooleanCircuit {
        BooleanCircuit::new(self.inputs, self.gates, output).expect("builder keeps topological order")
    }
}

/// Constant circuit on `n ≥ 1` inputs: Δ = 2ⁿ for false, −2ⁿ for true.
pub fn constant(n: usize, value: bool) -> BooleanCircuit {
    assert!(n >= 1, "a constant needs an input wire to hang from");
    let mut b = CircuitBuilder::new(n);
    let w = if value { b.const_true(0) } else { b.const_false(0) };
    b.finish(w)
}

/// Output inverted: Δ ↦ −Δ.
pub fn negate(c: &BooleanCircuit) -> BooleanCircuit {
    let mut b = CircuitBuilder::new(c.inputs);
    let ins: Vec<usize> = (0..c.inputs).collect();
    let o = b.embed(c, &ins);
    let o = b.not(o);
    b.finish(o)
}

/// C₁(x) ⊕ C₂(y) on disjoint inputs: Δ = Δ₁·Δ₂.
pub fn multiply(c1: &BooleanCircuit, c2: &BooleanCircuit) -> BooleanCircuit {
    let mut b = CircuitBuilder::new(c1.inputs + c2.inputs);
    let x: Vec<usize> = (0..c1.inputs).collect();
    let y: Vec<usize> = (c1.inputs..c1.inputs + c2.inputs).collect();
    let o1 = b.embed(c1, &x);
    let o2 = b.embed(c2, &y);
    let o = b.xor(o1, o2);
    b.finish(o)
}

/// Selector circuit on n+1 inputs, the selector being the last input:
/// C(x, s) = s ? C₂(x) : C₁(x), so Δ = Δ₁ + Δ₂.
pub fn add(c1: &BooleanCircuit, c2: &BooleanCircuit) -> Result<BooleanCircuit, CircuitError> {
    if c1.inputs != c2.inputs {
        return Err(CircuitError::InputCountMismatch(c1.inputs, c2.inputs));
    }
    let n = c1.inputs;
    let mut b = CircuitBuilder::new(n + 1);
    let x: Vec<usize> = (0..n).collect();
    let s = n;
    let o1 = b.embed(c1, &x);
    let o2 = b.embed(c2, &x);
    // (¬s ∧ o1) ∨ (s ∧ o2) = NAND(NAND(¬s, o1), NAND(s, o2))
    let ns = b.not(s);
    let l = b.nand(ns, o1);
    let r = b.nand(s, o2);
    let o = b.nand(l, r);
    Ok(b.finish(o))
}

/// Appends `m` unused inputs: Δ ↦ 2^m·Δ.
pub fn pad(c: &BooleanCircuit, m: usize) -> BooleanCircuit {
    let mut b = CircuitBuilder::new(c.inputs + m);
    let x: Vec<usize> = (0..c.inputs).collect();
    let o = b.embed(c, &x);
    b.finish(o)
}

/// Comparator `x < t` on n inputs (input i is bit i of x), so exactly t of
/// the 2ⁿ assignments output 1 and Δ = 2ⁿ − 2t.
pub fn less_than(n: usize, t: u64) -> BooleanCircuit {
    assert!((1..64).contains(&n) && t <= 1u64 << n);
    if t == 1u64 << n {
        return constant(n, true);
    }
    let mut b = CircuitBuilder::new(n);
    // `lt` is the comparison restricted to bits 0..=i; None means false.
    let mut lt: Option<usize> = None;
    for i in 0..n {
        let nx = b.not(i);
        lt = if (t >> i) & 1 == 1 {
            Some(match lt {
                Some(w) => b.or(nx, w),
                None => nx,
            })
        } else {
            lt.map(|w| b.and(nx, w))
        };
    }
    match lt {
        Some(w) => b.finish(w),
        None => constant(n, false),
    }
}

/// Circuit on n ≥ 1 inputs with the prescribed gap, which must be even with
/// |gap| ≤ 2ⁿ.
pub fn with_gap(n: usize, gap: i64) -> Result<BooleanCircuit, CircuitError> {
    let full = 1i64 << n;
    if gap.rem_euclid(2) != 0 || gap.abs() > full {
        return Err(CircuitError::ShiftOutOfRange { k: -gap, inputs: n });
    }
    Ok(less_than(n, ((full - gap) / 2) as u64))
}

/// Result of [`shift`]: a circuit whose gap is 2^scale_log2 · (Δ_c − k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shifted {
    pub circuit: BooleanCircuit,
    pub scale_log2: u32,
}

/// Gap shift by k. Every n-input gap is ≡ 2ⁿ mod 2, so for n ≥ 1 an odd k
/// cannot be subtracted directly; then c is padded by one input and 2k is
/// subtracted instead, reported through `scale_log2 = 1`.
pub fn shift(c: &BooleanCircuit, k: i64) -> Result<Shifted, CircuitError> {
    let n = c.inputs;
    if n == 0 || n >= 62 || k.unsigned_abs() > 1u64 << n {
        return Err(CircuitError::ShiftOutOfRange { k, inputs: n });
    }
    if k == 0 {
        return Ok(Shifted {
            circuit: c.clone(),
            scale_log2: 0,
        });
    }
    if k % 2 == 0 {
        let circuit = add(c, &with_gap(n, -k)?)?;
        return Ok(Shifted { circuit, scale_log2: 0 });
    }
    let circuit = add(&pad(c, 1), &with_gap(n + 1, -2 * k)?)?;
    Ok(Shifted { circuit, scale_log2: 1 })
}

/// One extra input b with C'(x, b) = C(x) ∧ b, so Δ' = Δ + 2ⁿ ≥ 0.
pub fn or_extend(c: &BooleanCircuit) -> BooleanCircuit {
    let n = c.inputs;
    let mut b = CircuitBuilder::new(n + 1);
    let x: Vec<usize> = (0..n).collect();
    let o = b.embed(c, &x);
    let o = b.and(o, n);
    b.finish(o)
}
