//! Small reference codes and a random commuting-instance generator.

use rand::seq::index::sample;
use rand::Rng;

use super::CssCode;
use crate::f2::{BitMatrix, BitVector};

/// `[[4,2,2]]`: one weight-4 X check and one weight-4 Z check.
pub fn four_qubit() -> CssCode {
    let h = BitMatrix::from_strs(&["1111"]);
    CssCode::new("four-qubit", h.clone(), h).expect("shapes agree")
}

/// Parity-check matrix of the `[7,4,3]` Hamming code; column `j` is the
/// binary expansion of `j + 1`.
pub fn hamming_7() -> BitMatrix {
    BitMatrix::from_strs(&["0001111", "0110011", "1010101"])
}

/// Steane code: the Hamming matrix for both check families.
pub fn steane() -> CssCode {
    CssCode::new("steane", hamming_7(), hamming_7()).expect("shapes agree")
}

/// Repetition code on `n` bits as X checks `{i, i+1}`, no Z checks.
pub fn repetition_pair(n: usize) -> CssCode {
    let rows: Vec<Vec<usize>> = (0..n.saturating_sub(1)).map(|i| vec![i, i + 1]).collect();
    CssCode::from_supports(format!("repetition-{n}"), n, &rows, &[]).expect("indices in range")
}

/// Random commuting code: `m_x` random X checks of weight `row_weight`, then
/// `m_z` distinct Z checks of the same weight drawn by rejection until every
/// overlap with an X check is even.
///
/// Panics if `row_weight > n`.
pub fn random_commuting<R: Rng>(
    rng: &mut R,
    n: usize,
    m_x: usize,
    m_z: usize,
    row_weight: usize,
) -> CssCode {
    assert!(
        row_weight <= n,
        "row weight {row_weight} exceeds {n} qubits"
    );
    let draw = |rng: &mut R| BitVector::from_support(n, &sample(rng, n, row_weight).into_vec());
    'restart: loop {
        let a_x: Vec<BitVector> = (0..m_x).map(|_| draw(rng)).collect();
        let mut a_z: Vec<BitVector> = Vec::with_capacity(m_z);
        let mut misses = 0;
        while a_z.len() < m_z {
            let cand = draw(rng);
            if a_x.iter().all(|x| !x.dot(&cand)) && !a_z.contains(&cand) {
                a_z.push(cand);
            } else {
                misses += 1;
                if misses > 10_000 {
                    continue 'restart;
                }
            }
        }
        return CssCode::new(
            format!("random-{n}"),
            BitMatrix::from_rows(n, a_x),
            BitMatrix::from_rows(n, a_z),
        )
        .expect("shapes agree");
    }
}
