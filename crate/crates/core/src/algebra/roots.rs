//! The eight positive roots of f written as odd polynomials in α.

use num_rational::BigRational;
use num_bigint::BigInt;

use super::qalpha::{QAlpha, MODULUS};
use super::real::embed_real;

/// `(approximate root, denominator, coefficients of α¹⁵, α¹³, …, α¹)`.
pub const ROOT_TABLE: [(f64, i64, [i64; 8]); 8] = [
    (0.0234, 5888, [-129, 5043, -69381, 425303, -1214867, 1629561, -919335, 122941]),
    (0.4866, 2944, [123, -4932, 70785, -464494, 1470141, -2209176, 1357287, -190358]),
    (1.1057, 2944, [-234, 9343, -133200, 865713, -2709218, 4054545, -2537860, 391327]),
    (1.5073, 5888, [561, -22465, 321849, -2108561, 6681723, -10170267, 6517531, -1055763]),
    (1.5690, 5888, [-93, 3779, -55449, 377135, -1263287, 2061177, -1441811, 278997]),
    (2.5897, 2944, [111, -4411, 62415, -401219, 1239077, -1845369, 1180573, -198025]),
    (3.0997, 5888, [339, -13643, 197019, -1306123, 4203569, -6479529, 4156385, -653825]),
    (4.1821, 1, [0, 0, 0, 0, 0, 0, 0, 1]),
];

#[derive(Clone, Debug)]
pub struct RootCheck {
    pub listed: f64,
    pub element: QAlpha,
    pub embedded: f64,
    pub is_root: bool,
    pub matches_listed: bool,
}

impl RootCheck {
    pub fn pass(&self) -> bool {
        self.is_root && self.matches_listed
    }
}

pub fn root_table_element(den: i64, odd_desc: &[i64; 8]) -> QAlpha {
    let mut coeffs = [0i64; 16];
    for (k, &c) in odd_desc.iter().enumerate() {
        coeffs[15 - 2 * k] = c;
    }
    QAlpha::from_integers(&coeffs, den)
}

pub fn modulus_rationals() -> Vec<BigRational> {
    MODULUS
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect()
}

/// For each row r: f(r(α)) = 0 exactly and r(α) agrees with the listed root
/// to within half a unit in the third decimal.
pub fn verify_root_table() -> Vec<RootCheck> {
    let f = modulus_rationals();
    ROOT_TABLE
        .iter()
        .map(|(listed, den, odd)| {
            let element = root_table_element(*den, odd);
            let embedded = embed_real(&element, 64).to_f64();
            RootCheck {
                listed: *listed,
                is_root: element.eval_poly(&f).is_zero(),
                matches_listed: (embedded - listed).abs() < 5e-4,
                embedded,
                element,
            }
        })
        .collect()
}
