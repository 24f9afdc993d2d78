mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use orthoperm_core::matrix::Matrix;
use orthoperm_core::optics::permanent;

fn int(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
    Matrix::from_rows(&(), rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
}

#[test]
fn determinant_with_row_swap() {
    let m = int(vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
    assert_eq!(m.det_int(), BigInt::from(-2));
    let q = m.map(&(), |v| BigRational::from_integer(v.clone()));
    assert_eq!(q.det(), BigRational::from_integer((-2).into()));
}

#[test]
fn embed_matches_left_apply() {
    let g = int(vec![vec![0, -1], vec![1, 0]]);
    let mut m = Matrix::identity(&(), 4);
    m.left_apply(&g, &[3, 1]);
    assert_eq!(m, g.embed(4, &[3, 1]));
}

#[test]
fn leading_minors_of_diag() {
    let m = int(vec![vec![2, 0], vec![0, 3]]);
    assert_eq!(m.leading_minors(), vec![BigInt::from(2), BigInt::from(6)]);
}

#[test]
fn permanent_examples() {
    assert_eq!(permanent(&Matrix::<BigInt>::identity(&(), 3)).unwrap(), BigInt::from(1));
    let h = orthoperm_core::qsim::GateKind::H.single_qubit_matrix().unwrap();
    let ones = Matrix::from_fn(&(), 2, 2, |_, _| h.get(0, 0).clone());
    assert!(permanent(&ones).unwrap().is_one());
    let m = int(vec![
        vec![3, -1, 0, 2, 5],
        vec![1, 4, -2, 0, 1],
        vec![0, 2, 7, -3, 1],
        vec![-4, 1, 1, 2, 0],
        vec![2, 0, 3, 1, -1],
    ]);
    assert_eq!(permanent(&m).unwrap(), common::naive_permanent(&m));
    assert_eq!(permanent(&Matrix::<BigInt>::zeros(&(), 0, 0)).unwrap(), BigInt::from(1));
    assert!(permanent(&Matrix::<BigInt>::zeros(&(), 2, 3)).is_err());
    assert!(permanent(&Matrix::<BigInt>::identity(&(), 25)).is_err());
}
