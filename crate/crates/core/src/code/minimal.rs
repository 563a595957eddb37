//! Minimal generators and the reasonableness test.

use serde::{Deserialize, Serialize};

use super::{CssCode, Side};
use crate::error::Result;
use crate::f2::{BitMatrix, BitVector};
use crate::limits::Limits;

/// Vector supported on the chosen subset of `support`, bit `b` of `local`
/// selecting `support[b]`.
fn sub_vector(len: usize, support: &[usize], local: u64) -> BitVector {
    let mut v = BitVector::zeros(len);
    for (b, &q) in support.iter().enumerate() {
        if (local >> b) & 1 == 1 {
            v.set(q, true);
        }
    }
    v
}

/// Proper nonzero sub-supports, largest local mask first.
fn proper_submasks(weight: usize) -> impl Iterator<Item = u64> {
    let full = if weight == 0 { 0 } else { (1u64 << weight) - 1 };
    let mut sub = full;
    std::iter::from_fn(move || {
        if sub == 0 {
            return None;
        }
        sub = (sub - 1) & full;
        (sub != 0).then_some(sub)
    })
}

/// Splits non-minimal rows until every row is minimal: a row `c` containing
/// a nonzero row-space element `c'` on a strictly smaller support becomes
/// `c'` followed by `c + c'`. Duplicate and zero rows are dropped; the row
/// space is unchanged.
pub fn minimalize(h: &BitMatrix, limits: &Limits) -> Result<BitMatrix> {
    let n = h.ncols();
    let span = h.echelon();
    let mut rows: Vec<BitVector> = h.rows().to_vec();
    let mut i = 0;
    while i < rows.len() {
        let support = rows[i].support_vec();
        Limits::check(
            "minimalize (row weight)",
            support.len(),
            limits.minimal_row_weight.min(63),
        )?;
        let split = proper_submasks(support.len())
            .map(|m| sub_vector(n, &support, m))
            .find(|c| span.contains(c));
        match split {
            Some(c) => {
                let rest = rows[i].xor(&c);
                rows[i] = c;
                rows.insert(i + 1, rest);
            }
            None => i += 1,
        }
    }
    let mut out: Vec<BitVector> = Vec::with_capacity(rows.len());
    for r in rows {
        if !r.is_zero() && !out.contains(&r) {
            out.push(r);
        }
    }
    Ok(BitMatrix::from_rows(n, out))
}

/// Both check families minimalized.
pub fn minimalize_code(code: &CssCode, limits: &Limits) -> Result<CssCode> {
    CssCode::new(
        code.name.clone(),
        minimalize(code.a_x(), limits)?,
        minimalize(code.a_z(), limits)?,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReasonableReport {
    /// No logical sits inside the support of a single generator.
    pub generator_level: bool,
    /// No logical sits inside the support of any stabilizer; only computed
    /// for small `n`.
    pub all_stabilizers: Option<bool>,
}

fn generators_ok(code: &CssCode, side: Side, limits: &Limits) -> Result<bool> {
    let n = code.n();
    for row in code.stabilizer_matrix(side).rows() {
        let support = row.support_vec();
        Limits::check(
            "reasonableness (row weight)",
            support.len(),
            limits.minimal_row_weight.min(63),
        )?;
        let full = if support.is_empty() {
            0
        } else {
            (1u64 << support.len()) - 1
        };
        for m in (1..=full).rev() {
            if code.is_logical(side, &sub_vector(n, &support, m)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Generator-level test: no nonzero logical of either type lies inside the
/// support of a single generator of the same type.
pub fn is_reasonable(code: &CssCode, limits: &Limits) -> Result<bool> {
    Ok(generators_ok(code, Side::X, limits)? && generators_ok(code, Side::Z, limits)?)
}

fn all_stabilizers_ok(code: &CssCode, side: Side) -> bool {
    let n = code.n();
    let size = 1usize << n;
    let stab: Vec<u64> = code
        .stabilizer_matrix(side)
        .echelon()
        .basis()
        .map(|r| r.to_mask())
        .collect();
    // covered[m]: m lies inside some stabilizer
    let mut covered = vec![false; size];
    for i in 0u64..1 << stab.len() {
        let s = stab
            .iter()
            .enumerate()
            .filter(|(b, _)| (i >> b) & 1 == 1)
            .fold(0, |a, (_, r)| a ^ r);
        covered[s as usize] = true;
    }
    for q in 0..n {
        for m in 0..size {
            if m & (1 << q) == 0 && covered[m | (1 << q)] {
                covered[m] = true;
            }
        }
    }
    (1..size).all(|m| !covered[m] || !code.is_logical(side, &BitVector::from_mask(n, m as u64)))
}

/// Generator-level test, plus the test over every stabilizer when
/// `n ≤ limits.reasonable_qubits`.
pub fn is_reasonable_full(code: &CssCode, limits: &Limits) -> Result<ReasonableReport> {
    let generator_level = is_reasonable(code, limits)?;
    let all_stabilizers = (code.n() <= limits.reasonable_qubits.min(24))
        .then(|| all_stabilizers_ok(code, Side::X) && all_stabilizers_ok(code, Side::Z));
    Ok(ReasonableReport {
        generator_level,
        all_stabilizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{four_qubit, steane};
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_strs(rows)
    }

    #[test]
    fn splits_contained_stabilizer() {
        let out = minimalize(&m(&["1100", "1111"]), &Limits::default()).unwrap();
        assert_eq!(out, m(&["1100", "0011"]));
        let both = m(&["1100", "1111"]).vstack(&out);
        assert_eq!(both.rank(), 2);
        assert_eq!(out.rank(), 2);
    }

    #[test]
    fn minimal_rows_are_unchanged() {
        let limits = Limits::default();
        assert_eq!(minimalize(&m(&["1111"]), &limits).unwrap(), m(&["1111"]));
        let id = BitMatrix::identity(4);
        assert_eq!(minimalize(&id, &limits).unwrap(), id);
    }

    #[test]
    fn zero_rows_are_removed() {
        let out = minimalize(&m(&["0000", "1010", "1010"]), &Limits::default()).unwrap();
        assert_eq!(out, m(&["1010"]));
    }

    #[test]
    fn reasonable_examples() {
        let limits = Limits::default();
        assert!(!is_reasonable(&four_qubit(), &limits).unwrap());
        assert!(is_reasonable(&steane(), &limits).unwrap());
        let empty = CssCode::new("e", BitMatrix::zeros(0, 3), BitMatrix::zeros(0, 3)).unwrap();
        assert!(is_reasonable(&empty, &limits).unwrap());
        let full = is_reasonable_full(&steane(), &limits).unwrap();
        assert_eq!(full.all_stabilizers, Some(true));
        assert_eq!(
            is_reasonable_full(&four_qubit(), &limits)
                .unwrap()
                .all_stabilizers,
            Some(false)
        );
    }

    proptest! {
        #[test]
        fn minimalize_keeps_row_space_and_dimension(seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let code = crate::code::random_commuting(&mut rng, 9, 3, 3, 4);
            let limits = Limits::default();
            let min = minimalize_code(&code, &limits).unwrap();
            prop_assert_eq!(min.dimension(), code.dimension());
            for (a, b) in [(code.a_x(), min.a_x()), (code.a_z(), min.a_z())] {
                prop_assert_eq!(a.rank(), b.rank());
                prop_assert_eq!(a.vstack(b).rank(), a.rank());
                for row in b.rows() {
                    let support = row.support_vec();
                    for sub in proper_submasks(support.len()) {
                        prop_assert!(!b.in_rowspace(&sub_vector(9, &support, sub)));
                    }
                }
            }
        }
    }
}
