//! The 16 two-cycle error scenarios of the repetition code with their independent
//! phase-flip probabilities and the signed weights of quasistatic phase damping, as
//! polynomials in p = <sin^2 t>.

use crate::code_model::ZString;

const I: u64 = 0b00;
const A: u64 = 0b01;
const B: u64 = 0b10;
const AB: u64 = 0b11;

const ONE_ONE: [f64; 9] = [1.0, -4.0, 11.0, -26.0, 46.0, -60.0, 56.0, -32.0, 8.0];
const ZZ_ZZ: [f64; 9] = [0.0, 0.0, 1.0, -6.0, 26.0, -52.0, 56.0, -32.0, 8.0];
const MERGED_ZZ: [f64; 9] = [0.0, 0.0, 2.0, -12.0, 34.0, -56.0, 56.0, -32.0, 8.0];
const RETURN: [f64; 9] = [0.0, 0.0, 4.0, -16.0, 36.0, -56.0, 56.0, -32.0, 8.0];
const SINGLE: [f64; 9] = [0.0, 1.0, -6.0, 19.0, -40.0, 58.0, -56.0, 32.0, -8.0];
const TRIPLE: [f64; 9] = [0.0, 0.0, -1.0, 9.0, -30.0, 54.0, -56.0, 32.0, -8.0];

/// (E_1, E_2, signed-weight coefficients in ascending powers of p) per row.
const ROWS: [(u64, u64, [f64; 9]); 16] = [
    (I, I, ONE_ONE),
    (AB, AB, ZZ_ZZ),
    (I, AB, MERGED_ZZ),
    (AB, I, MERGED_ZZ),
    (A, A, RETURN),
    (B, B, RETURN),
    (A, B, MERGED_ZZ),
    (B, A, MERGED_ZZ),
    (I, A, SINGLE),
    (AB, B, TRIPLE),
    (I, B, SINGLE),
    (AB, A, TRIPLE),
    (A, I, SINGLE),
    (B, AB, TRIPLE),
    (A, AB, TRIPLE),
    (B, I, SINGLE),
];

#[derive(Clone, Debug)]
pub struct Table1Row {
    /// 1-based row number.
    pub number: usize,
    pub errors: [ZString; 2],
    pub merged: ZString,
    /// Flag (outcome -1) of each cycle's syndrome.
    pub syndromes: [bool; 2],
    /// Probability under independent phase flips with rate p.
    pub pauli: f64,
    /// Signed weight under quasistatic phase damping.
    pub signed: f64,
}

fn horner(coeffs: &[f64], p: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * p + c)
}

pub fn table1_weights(p: f64) -> Vec<Table1Row> {
    ROWS.iter()
        .enumerate()
        .map(|(i, &(e1, e2, poly))| {
            let flips = (e1.count_ones() + e2.count_ones()) as i32;
            let s1 = e1.count_ones() % 2 == 1;
            let s2 = (e1 ^ e2).count_ones() % 2 == 1;
            Table1Row {
                number: i + 1,
                errors: [ZString::from_qubits(bits(e1)), ZString::from_qubits(bits(e2))],
                merged: ZString::from_qubits(bits(e1 ^ e2)),
                syndromes: [s1, s2],
                pauli: p.powi(flips) * (1.0 - p).powi(4 - flips),
                signed: horner(&poly, p),
            }
        })
        .collect()
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..2).filter(move |j| (mask >> j) & 1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_one_at_zero() {
        let rows = table1_weights(0.0);
        assert_eq!(rows[0].signed, 1.0);
        assert!(rows[1..].iter().all(|r| r.signed == 0.0));
    }

    #[test]
    fn rows_sum_to_one() {
        for p in [0.013, 0.17, 0.31, 0.49] {
            let rows = table1_weights(p);
            let signed: f64 = rows.iter().map(|r| r.signed).sum();
            let pauli: f64 = rows.iter().map(|r| r.pauli).sum();
            assert!((signed - 1.0).abs() < 1e-12);
            assert!((pauli - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn triple_flip_rows_are_negative_for_small_p() {
        let rows = table1_weights(0.01);
        for n in [10, 12, 14, 15] {
            assert!(rows[n - 1].signed < 0.0);
        }
        assert!(rows.iter().all(|r| r.pauli >= 0.0));
    }

    #[test]
    fn descriptors_match_layout() {
        let rows = table1_weights(0.1);
        assert_eq!(rows[12].errors, [ZString::single(0), ZString::identity()]);
        assert_eq!(rows[12].syndromes, [true, true]);
        assert_eq!(rows[4].syndromes, [true, false]);
        assert_eq!(rows[8].syndromes, [false, true]);
        assert_eq!(rows[2].merged, ZString::from_qubits([0, 1]));
    }
}
