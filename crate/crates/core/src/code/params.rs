//! Dimension, distance and energy barrier by exhaustive search.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{CssCode, Side};
use crate::error::{Error, Result};
use crate::f2::BitVector;
use crate::limits::Limits;
use crate::par::{self, chunk_for};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    /// Enumerate the whole kernel of the check matrix.
    Exact,
    /// Enumerate supports of weight `1..=w` in increasing weight.
    BoundedWeight(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceValue {
    Exact(usize),
    /// No logical of weight `≤ w` exists.
    GreaterThan(usize),
    /// No logical exists at all (`k = 0`).
    Infinite,
}

impl DistanceValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            DistanceValue::Exact(d) => Some(d),
            _ => None,
        }
    }

    /// Largest `t` with `d ≥ t` known.
    pub fn lower_bound(self) -> Option<usize> {
        match self {
            DistanceValue::Exact(d) => Some(d),
            DistanceValue::GreaterThan(w) => Some(w + 1),
            DistanceValue::Infinite => None,
        }
    }

    /// Distance of the code from the two side distances.
    pub fn min(self, other: DistanceValue) -> DistanceValue {
        use DistanceValue::*;
        match (self, other) {
            (Infinite, v) | (v, Infinite) => v,
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(a), GreaterThan(w)) | (GreaterThan(w), Exact(a)) => {
                if a <= w {
                    Exact(a)
                } else {
                    GreaterThan(w)
                }
            }
            (GreaterThan(a), GreaterThan(b)) => GreaterThan(a.min(b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideDistance {
    pub value: DistanceValue,
    /// Support of a logical of minimum weight, when one was found.
    pub witness: Option<Vec<usize>>,
    pub method: DistanceMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    pub n: usize,
    pub m_x: usize,
    pub m_z: usize,
    pub k: usize,
    pub delta_max: usize,
    pub d_x: SideDistance,
    pub d_z: SideDistance,
    pub d: DistanceValue,
    pub barrier_x: Option<usize>,
    pub barrier_z: Option<usize>,
    pub barrier: Option<usize>,
    /// `"exact-bfs"` or the reason the barrier was not computed.
    pub barrier_method: String,
}

/// Basis of the check-matrix kernel: stabilizer basis first, logical
/// representatives after. Requires commuting checks.
fn split_kernel(code: &CssCode, side: Side) -> (Vec<BitVector>, usize) {
    let mut basis: Vec<BitVector> = code
        .stabilizer_matrix(side)
        .echelon()
        .basis()
        .cloned()
        .collect();
    let stab = basis.len();
    basis.extend(code.logical_basis(side));
    (basis, stab)
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

fn combine(basis: &[BitVector], n: usize, mask: u64) -> BitVector {
    let mut v = BitVector::zeros(n);
    for (b, row) in basis.iter().enumerate() {
        if (mask >> b) & 1 == 1 {
            v.xor_assign(row);
        }
    }
    v
}

fn exact_distance(code: &CssCode, side: Side, limits: &Limits) -> Result<SideDistance> {
    let n = code.n();
    let (basis, stab) = split_kernel(code, side);
    let dim = basis.len();
    Limits::check(
        "exact distance (kernel dimension)",
        dim,
        limits.exact_kernel_dim,
    )?;
    if dim == stab {
        return Ok(SideDistance {
            value: DistanceValue::Infinite,
            witness: None,
            method: DistanceMethod::Exact,
        });
    }
    let logical_mask: u64 = ((1u64 << dim) - 1) & !((1u64 << stab) - 1);
    let total = 1u64 << dim;
    // (weight, enumeration index); the smallest pair wins on every schedule
    let best = par::map_reduce(
        limits.exec,
        1..total,
        chunk_for(total),
        || (usize::MAX, u64::MAX),
        |range| {
            let mut g = gray(range.start);
            let mut v = combine(&basis, n, g);
            let mut best = (usize::MAX, u64::MAX);
            let mut i = range.start;
            loop {
                if g & logical_mask != 0 {
                    let w = v.weight();
                    if w < best.0 {
                        best = (w, i);
                    }
                }
                i += 1;
                if i >= range.end {
                    break;
                }
                let bit = i.trailing_zeros() as usize;
                g ^= 1 << bit;
                v.xor_assign(&basis[bit]);
            }
            best
        },
        |a, b| a.min(b),
    );
    let witness = combine(&basis, n, gray(best.1));
    Ok(SideDistance {
        value: DistanceValue::Exact(best.0),
        witness: Some(witness.support_vec()),
        method: DistanceMethod::Exact,
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// First (lexicographic) support of exactly `t` columns starting at `first`
/// whose syndrome vanishes and which is not a stabilizer.
fn search_from(
    code: &CssCode,
    side: Side,
    cols: &[BitVector],
    first: usize,
    t: usize,
) -> Option<Vec<usize>> {
    fn rec(
        code: &CssCode,
        side: Side,
        cols: &[BitVector],
        chosen: &mut Vec<usize>,
        syn: &BitVector,
        left: usize,
    ) -> bool {
        if left == 0 {
            if syn.is_zero() {
                let v = BitVector::from_support(cols.len(), chosen);
                return !code.stabilizer_matrix(side).in_rowspace(&v);
            }
            return false;
        }
        let start = chosen.last().map_or(0, |&c| c + 1);
        for c in start..=cols.len() - left {
            chosen.push(c);
            if rec(code, side, cols, chosen, &syn.xor(&cols[c]), left - 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = vec![first];
    rec(code, side, cols, &mut chosen, &cols[first], t - 1).then_some(chosen)
}

fn bounded_distance(
    code: &CssCode,
    side: Side,
    w_max: usize,
    limits: &Limits,
) -> Result<SideDistance> {
    let n = code.n();
    let method = DistanceMethod::BoundedWeight(w_max);
    if code.logical_basis(side).is_empty() {
        return Ok(SideDistance {
            value: DistanceValue::Infinite,
            witness: None,
            method,
        });
    }
    let w_max = w_max.min(n);
    let work: u128 = (1..=w_max).map(|t| binomial(n, t)).sum();
    if work > 1u128 << limits.bounded_work_log2 {
        return Err(Error::Threshold {
            what: "bounded-weight distance (supports)",
            size: usize::try_from(work).unwrap_or(usize::MAX),
            limit: 1usize << limits.bounded_work_log2,
        });
    }
    let check = code.check_matrix(side);
    let m = check.nrows();
    let cols: Vec<BitVector> = check
        .columns()
        .iter()
        .map(|s| BitVector::from_support(m, s))
        .collect();
    for t in 1..=w_max {
        let found = par::map_range(limits.exec, 0..n + 1 - t, |first| {
            search_from(code, side, &cols, first, t)
        });
        if let Some(support) = found.into_iter().flatten().next() {
            return Ok(SideDistance {
                value: DistanceValue::Exact(t),
                witness: Some(support),
                method,
            });
        }
    }
    Ok(SideDistance {
        value: DistanceValue::GreaterThan(w_max),
        witness: None,
        method,
    })
}

/// Minimum weight of a logical of `side`.
///
/// Exact search refuses kernels above `limits.exact_kernel_dim`; the bounded
/// search refuses when the number of supports exceeds `2^bounded_work_log2`.
pub fn distance(
    code: &CssCode,
    side: Side,
    method: DistanceMethod,
    limits: &Limits,
) -> Result<SideDistance> {
    code.require_commuting()?;
    match method {
        DistanceMethod::Exact => exact_distance(code, side, limits),
        DistanceMethod::BoundedWeight(w) => bounded_distance(code, side, w, limits),
    }
}

/// Energy of every state: number of violated checks of `side`'s check matrix.
fn energy_table(code: &CssCode, side: Side, limits: &Limits) -> Vec<u16> {
    let n = code.n();
    let check = code.check_matrix(side);
    let m = check.nrows();
    let cols: Vec<BitVector> = check
        .columns()
        .iter()
        .map(|s| BitVector::from_support(m, s))
        .collect();
    let low = n.min(12);
    let blocks = 1usize << (n - low);
    let per = par::map_range(limits.exec, 0..blocks, |hi| {
        let base = (hi as u64) << low;
        let mut syn = BitVector::zeros(m);
        for (q, col) in cols.iter().enumerate() {
            if (base >> q) & 1 == 1 {
                syn.xor_assign(col);
            }
        }
        let mut out = vec![0u16; 1 << low];
        let mut g = 0u64;
        out[0] = syn.weight() as u16;
        for i in 1..(1u64 << low) {
            let bit = i.trailing_zeros() as usize;
            g ^= 1 << bit;
            syn.xor_assign(&cols[bit]);
            out[g as usize] = syn.weight() as u16;
        }
        out
    });
    per.concat()
}

/// Masks of the stabilizer row space in reduced echelon form.
fn stabilizer_masks(code: &CssCode, side: Side) -> Vec<(usize, u64)> {
    let e = code.stabilizer_matrix(side).echelon();
    e.pivots().zip(e.basis().map(|r| r.to_mask())).collect()
}

fn reduce_mask(ech: &[(usize, u64)], mut v: u64) -> u64 {
    for &(p, row) in ech {
        if (v >> p) & 1 == 1 {
            v ^= row;
        }
    }
    v
}

fn reachable(n: usize, energy: &[u16], target: &[bool], cap: u16) -> bool {
    let mut seen = vec![false; energy.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(s) = queue.pop_front() {
        if target[s] {
            return true;
        }
        for q in 0..n {
            let t = s ^ (1 << q);
            if !seen[t] && energy[t] <= cap {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    false
}

/// Least `E` such that single-qubit flips lead from `0` to a nontrivial
/// logical of `side` without ever violating more than `E` checks.
pub fn energy_barrier(code: &CssCode, side: Side, limits: &Limits) -> Result<usize> {
    code.require_commuting()?;
    let n = code.n();
    Limits::check("energy barrier (qubits)", n, limits.barrier_qubits.min(30))?;
    if code.dimension() == 0 {
        return Err(Error::NoLogicals);
    }
    let energy = energy_table(code, side, limits);
    let ech = stabilizer_masks(code, side);
    let target: Vec<bool> = par::map_range(limits.exec, 0..energy.len(), |s| {
        energy[s] == 0 && reduce_mask(&ech, s as u64) != 0
    });
    let (mut lo, mut hi) = (0u16, *energy.iter().max().unwrap_or(&0));
    if !reachable(n, &energy, &target, hi) {
        return Err(Error::Invariant(
            "no logical reachable in the full state space".into(),
        ));
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if reachable(n, &energy, &target, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo as usize)
}

/// `k`, both distances and, when `n` is within the barrier limit, both
/// energy barriers.
pub fn parameters(
    code: &CssCode,
    method: DistanceMethod,
    limits: &Limits,
) -> Result<CodeParameters> {
    code.require_commuting()?;
    let k = code.dimension();
    let d_x = distance(code, Side::X, method, limits)?;
    let d_z = distance(code, Side::Z, method, limits)?;
    let (barrier_x, barrier_z, barrier_method) = if k == 0 {
        (None, None, "none: no logical operators".to_string())
    } else if code.n() > limits.barrier_qubits {
        (
            None,
            None,
            format!(
                "skipped: n = {} above limit {}",
                code.n(),
                limits.barrier_qubits
            ),
        )
    } else {
        (
            Some(energy_barrier(code, Side::X, limits)?),
            Some(energy_barrier(code, Side::Z, limits)?),
            "exact-bfs".to_string(),
        )
    };
    Ok(CodeParameters {
        n: code.n(),
        m_x: code.m_x(),
        m_z: code.m_z(),
        k,
        delta_max: code.delta_max(),
        d: d_x.value.min(d_z.value),
        d_x,
        d_z,
        barrier: barrier_x.zip(barrier_z).map(|(a, b)| a.min(b)),
        barrier_x,
        barrier_z,
        barrier_method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{four_qubit, steane};
    use crate::f2::BitMatrix;

    /// Brute force over all `2^n` vectors.
    fn oracle_distance(code: &CssCode, side: Side) -> Option<usize> {
        (1u64..1 << code.n())
            .map(|m| BitVector::from_mask(code.n(), m))
            .filter(|v| code.is_logical(side, v))
            .map(|v| v.weight())
            .min()
    }

    #[test]
    fn distance_examples() {
        let limits = Limits::default();
        for (code, d) in [(four_qubit(), 2), (steane(), 3)] {
            for side in [Side::X, Side::Z] {
                assert_eq!(oracle_distance(&code, side), Some(d));
                let r = distance(&code, side, DistanceMethod::Exact, &limits).unwrap();
                assert_eq!(r.value, DistanceValue::Exact(d));
                let w = BitVector::from_support(code.n(), r.witness.as_ref().unwrap());
                assert!(code.is_logical(side, &w));
                let b = distance(&code, side, DistanceMethod::BoundedWeight(5), &limits).unwrap();
                assert_eq!(b.value, DistanceValue::Exact(d));
            }
        }
        let short = distance(
            &steane(),
            Side::X,
            DistanceMethod::BoundedWeight(2),
            &limits,
        )
        .unwrap();
        assert_eq!(short.value, DistanceValue::GreaterThan(2));
    }

    #[test]
    fn no_logicals_is_infinite() {
        let code = CssCode::new("k0", BitMatrix::identity(2), BitMatrix::zeros(0, 2)).unwrap();
        let limits = Limits::default();
        for side in [Side::X, Side::Z] {
            let r = distance(&code, side, DistanceMethod::Exact, &limits).unwrap();
            assert_eq!(r.value, DistanceValue::Infinite);
        }
        assert!(matches!(
            energy_barrier(&code, Side::X, &limits),
            Err(Error::NoLogicals)
        ));
    }

    #[test]
    fn exact_refuses_above_limit() {
        let code = CssCode::new("free", BitMatrix::zeros(0, 30), BitMatrix::zeros(0, 30)).unwrap();
        let e = distance(&code, Side::X, DistanceMethod::Exact, &Limits::default()).unwrap_err();
        assert!(matches!(
            e,
            Error::Threshold {
                size: 30,
                limit: 24,
                ..
            }
        ));
    }

    #[test]
    fn four_qubit_barrier_is_one() {
        let limits = Limits::default();
        assert_eq!(energy_barrier(&four_qubit(), Side::X, &limits).unwrap(), 1);
        assert_eq!(energy_barrier(&four_qubit(), Side::Z, &limits).unwrap(), 1);
    }

    #[test]
    fn barrier_bounded_by_delta_times_distance() {
        let limits = Limits::default();
        for code in [four_qubit(), steane()] {
            let p = parameters(&code, DistanceMethod::Exact, &limits).unwrap();
            let d = p.d.exact().unwrap();
            assert!(p.barrier.unwrap() >= 1);
            assert!(p.barrier.unwrap() <= p.delta_max * d);
        }
    }

    #[test]
    fn both_strategies_agree() {
        let code = steane();
        let par = Limits::default();
        let seq = Limits::sequential();
        assert_eq!(
            distance(&code, Side::X, DistanceMethod::Exact, &par).unwrap(),
            distance(&code, Side::X, DistanceMethod::Exact, &seq).unwrap()
        );
        assert_eq!(
            energy_barrier(&code, Side::Z, &par).unwrap(),
            energy_barrier(&code, Side::Z, &seq).unwrap()
        );
    }
}
