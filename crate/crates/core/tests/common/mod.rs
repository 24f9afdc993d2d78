#![allow(dead_code)]

use std::path::PathBuf;

use orthoperm_core::circuits::{parse_netlist, BooleanCircuit};
use orthoperm_core::matrix::Matrix;
use orthoperm_core::ring::Ring;

/// Σ over all permutations, by recursion on rows with a used-column mask.
pub fn naive_permanent<R: Ring>(m: &Matrix<R>) -> R {
    fn go<R: Ring>(m: &Matrix<R>, row: usize, used: u64) -> R {
        let ctx = m.ctx();
        if row == m.rows() {
            return R::one(ctx);
        }
        let mut acc = R::zero(ctx);
        for j in 0..m.cols() {
            if used >> j & 1 == 0 && !m.get(row, j).is_zero() {
                acc = acc.add(&m.get(row, j).mul(&go(m, row + 1, used | 1 << j)));
            }
        }
        acc
    }
    go(m, 0, 0)
}

pub fn netlist_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../netlists")
}

/// Every netlist in the corpus, sorted by file name.
pub fn corpus() -> Vec<(String, BooleanCircuit)> {
    let mut files: Vec<_> = std::fs::read_dir(netlist_dir())
        .expect("netlists directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "net"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let c = parse_netlist(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (name, c)
        })
        .collect()
}

pub fn load(name: &str) -> BooleanCircuit {
    let text = std::fs::read_to_string(netlist_dir().join(format!("{name}.net"))).unwrap();
    parse_netlist(&text).unwrap()
}

/// Product of random Givens rotations (Pythagorean angles, π/4 and π/8)
/// and reflections; exactly orthogonal over ℚ(α).
pub fn random_orthogonal(rng: &mut impl rand::Rng, m: usize) -> Matrix<orthoperm_core::QAlpha> {
    use num_rational::BigRational;
    use orthoperm_core::qsim::GateKind;
    use orthoperm_core::QAlpha;
    let mut u = Matrix::identity(&(), m);
    for _ in 0..rng.random_range(2..6) {
        let i = rng.random_range(0..m);
        let j = rng.random_range(0..m);
        if i == j {
            let mut d = Matrix::identity(&(), m);
            d.set(i, i, QAlpha::from_int(-1));
            u = d.mul(&u);
            continue;
        }
        let block = match rng.random_range(0..6) {
            0 => GateKind::H.single_qubit_matrix().unwrap().clone(),
            1 => GateKind::RQ.single_qubit_matrix().unwrap().clone(),
            k => {
                let (c, s, d) = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)][k - 2];
                let q = |n: i64| QAlpha::from_rational(&BigRational::new(n.into(), d.into()));
                Matrix::from_rows(&(), vec![vec![q(c), q(-s)], vec![q(s), q(c)]])
            }
        };
        u.left_apply(&block, &[i, j]);
    }
    u
}
