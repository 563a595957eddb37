//! Small-set (co)boundary expansion of a code by exhaustive search.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::frontier::Frontier;
use crate::code::CssCode;
use crate::error::Result;
use crate::f2::BitVector;
use crate::limits::Limits;
use crate::par::{self, chunk_for};
use crate::ratio::Ratio;

/// Per-weight frontiers of admissible `(β, γ)`: for a chain `c1` on the
/// qubits there must be `c0` on the X checks with
/// `β|c1 + δ0c0| ≤ |δ1c1|` and `γ|c0| ≤ |c1|`, where `δ0 = a_xᵀ` and
/// `δ1 = a_z`. Swap the code for the boundary version.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallSetProfile {
    pub n: usize,
    /// Index `w` covers the chains of weight exactly `w`.
    pub per_weight: Vec<Frontier>,
    /// Lowest-index chain of each weight admitting no positive `β`.
    pub zero_beta: Vec<Option<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallSetReport {
    pub alpha: Ratio,
    /// `⌊α·n⌋`, the largest chain weight covered.
    pub max_weight: usize,
    pub frontier: Frontier,
    pub witness: Option<Vec<usize>>,
}

impl SmallSetProfile {
    /// Frontier over all chains of weight at most `w`.
    pub fn up_to(&self, w: usize) -> Frontier {
        self.per_weight
            .iter()
            .take(w + 1)
            .fold(Frontier::unbounded(), |acc, f| acc.intersect(f))
    }

    pub fn witness_up_to(&self, w: usize) -> Option<Vec<usize>> {
        self.zero_beta.iter().take(w + 1).flatten().next().cloned()
    }

    /// Largest covered weight for which a positive `β` exists.
    pub fn best_weight(&self) -> usize {
        self.zero_beta
            .iter()
            .position(Option::is_some)
            .map_or(self.per_weight.len() - 1, |w| w - 1)
    }
}

pub fn small_set_profile(
    code: &CssCode,
    max_weight: usize,
    limits: &Limits,
) -> Result<SmallSetProfile> {
    let n = code.n();
    let max_weight = max_weight.min(n);
    Limits::check("small-set expansion qubits", n, limits.small_set_qubits)?;
    Limits::check(
        "small-set expansion checks (log2)",
        code.m_x(),
        limits.small_set_work_log2 as usize,
    )?;
    let mask = |v: &BitVector| v.support().fold(0u64, |m, q| m | 1 << q);
    let x_rows: Vec<u64> = code.a_x().rows().iter().map(mask).collect();
    let z_rows: Vec<u64> = code.a_z().rows().iter().map(mask).collect();

    // min |c0| for each coboundary δ0c0
    let mut cob: HashMap<u64, u32> = HashMap::new();
    let mut b = 0u64;
    for i in 0..1u64 << x_rows.len() {
        if i > 0 {
            b ^= x_rows[i.trailing_zeros() as usize];
        }
        let w = (i ^ (i >> 1)).count_ones();
        cob.entry(b).and_modify(|m| *m = (*m).min(w)).or_insert(w);
    }
    let mut cob: Vec<(u64, u32)> = cob.into_iter().collect();
    cob.sort_unstable();

    let chains: u64 = (0..=max_weight).map(|w| binomial(n as u64, w as u64)).sum();
    let work = chains.saturating_mul(cob.len() as u64);
    Limits::check(
        "small-set expansion pairs (log2)",
        (64 - work.max(1).leading_zeros() - u32::from(work.is_power_of_two())) as usize,
        limits.small_set_work_log2 as usize,
    )?;

    let count = 1u64 << n;
    let slots = max_weight + 1;
    let fresh = || (vec![Frontier::unbounded(); slots], vec![None::<u64>; slots]);
    let (per_weight, zero_beta) = par::map_reduce(
        limits.exec,
        0..count,
        chunk_for(count),
        fresh,
        |range| {
            let (mut fr, mut zb) = fresh();
            for c1 in range {
                let w = c1.count_ones() as usize;
                if w > max_weight {
                    continue;
                }
                let energy = z_rows
                    .iter()
                    .filter(|&&r| (r & c1).count_ones() % 2 == 1)
                    .count() as u64;
                let points: Vec<(Ratio, Ratio)> = cob
                    .iter()
                    .map(|&(b, c0)| {
                        (
                            Ratio::new(energy, u64::from((c1 ^ b).count_ones())),
                            Ratio::new(w as u64, u64::from(c0)),
                        )
                    })
                    .collect();
                let own = Frontier::from_points(points);
                if own.max_beta().is_some_and(Ratio::is_zero) && zb[w].is_none() {
                    zb[w] = Some(c1);
                }
                fr[w] = fr[w].intersect(&own);
            }
            (fr, zb)
        },
        |(fa, za), (fb, zb)| {
            let fr = fa.iter().zip(&fb).map(|(a, b)| a.intersect(b)).collect();
            let z = za
                .into_iter()
                .zip(zb)
                .map(|(a, b)| match (a, b) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                })
                .collect();
            (fr, z)
        },
    );
    let support = |m: u64| (0..n).filter(|&q| m >> q & 1 == 1).collect();
    Ok(SmallSetProfile {
        n,
        per_weight,
        zero_beta: zero_beta.into_iter().map(|z| z.map(support)).collect(),
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Admissible `(β, γ)` for chains of weight at most `⌊α·n⌋`.
pub fn check_small_set_expansion(
    code: &CssCode,
    alpha: Ratio,
    limits: &Limits,
) -> Result<SmallSetReport> {
    let n = code.n() as u64;
    let max_weight = if alpha.is_infinite() {
        n
    } else {
        alpha.floor_mul(n).min(n)
    } as usize;
    let profile = small_set_profile(code, max_weight, limits)?;
    Ok(SmallSetReport {
        alpha,
        max_weight,
        frontier: profile.up_to(max_weight),
        witness: profile.witness_up_to(max_weight),
    })
}

/// Distance and energy-barrier lower bounds implied by small-set expansion
/// on both sides, at the largest `α` where both sides have positive `β`.
///
/// With `w = ⌊α·n⌋` the bounds are `d > w` and `E ≥ ⌈β·w⌉`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionBounds {
    pub n: usize,
    pub alpha: Ratio,
    pub beta: Ratio,
    pub max_weight: usize,
    pub distance_bound: usize,
    /// `None` when `β` is unbounded.
    pub barrier_bound: Option<u64>,
}

pub fn expansion_bounds(code: &CssCode, limits: &Limits) -> Result<ExpansionBounds> {
    let n = code.n();
    let sides = [
        small_set_profile(code, n, limits)?,
        small_set_profile(&code.swapped(), n, limits)?,
    ];
    let w = sides
        .iter()
        .map(SmallSetProfile::best_weight)
        .min()
        .unwrap_or(0);
    let beta = sides
        .iter()
        .filter_map(|p| p.up_to(w).max_beta())
        .min()
        .unwrap_or(Ratio::INFINITY);
    let barrier_bound = (!beta.is_infinite()).then(|| {
        let scaled = beta.mul_int(w as u64);
        scaled.num().div_ceil(scaled.den())
    });
    Ok(ExpansionBounds {
        n,
        alpha: Ratio::new(w as u64, n.max(1) as u64),
        beta,
        max_weight: w,
        distance_bound: w + 1,
        barrier_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{four_qubit, repetition_pair, steane};
    use crate::error::Error;

    #[test]
    fn zero_alpha_is_vacuous() {
        let r = check_small_set_expansion(&steane(), Ratio::ZERO, &Limits::default()).unwrap();
        assert_eq!(r.max_weight, 0);
        assert_eq!(r.frontier, Frontier::unbounded());
        assert!(r.witness.is_none());
    }

    #[test]
    fn logical_of_weight_two_is_the_witness() {
        let code = four_qubit();
        let p = small_set_profile(&code, 4, &Limits::default()).unwrap();
        // X logicals have weight 2 and no Z energy
        assert!(p.zero_beta[1].is_none());
        assert_eq!(p.zero_beta[2], Some(vec![0, 1]));
        assert_eq!(p.best_weight(), 1);
        // a single flipped qubit costs one Z check and is not a coboundary
        assert_eq!(p.up_to(1).max_beta(), Some(Ratio::integer(1)));
    }

    #[test]
    fn bounds_match_exact_parameters_for_steane() {
        let b = expansion_bounds(&steane(), &Limits::default()).unwrap();
        assert_eq!(b.max_weight, 2);
        assert_eq!(b.distance_bound, 3);
        let e = crate::code::energy_barrier(&steane(), crate::code::Side::X, &Limits::default())
            .unwrap();
        assert!(b.barrier_bound.unwrap() as usize <= e);
    }

    #[test]
    fn repetition_code_has_no_z_side_logicals_to_protect() {
        let p = small_set_profile(&repetition_pair(3), 3, &Limits::default()).unwrap();
        // no Z checks: every nonzero X chain outside the row space has zero energy
        assert_eq!(p.zero_beta[1], Some(vec![0]));
    }

    #[test]
    fn code_without_logicals_expands() {
        let chain: Vec<Vec<usize>> = (0..5).map(|i| vec![i, i + 1]).collect();
        let code =
            crate::code::CssCode::from_supports("chain", 6, &chain, &[(0..6).collect()]).unwrap();
        assert_eq!(code.dimension(), 0);
        let r = check_small_set_expansion(&code, Ratio::integer(1), &Limits::default()).unwrap();
        assert_eq!(r.max_weight, 6);
        assert!(r.witness.is_none());
        assert!(r.frontier.max_beta().unwrap() > Ratio::ZERO);
    }

    #[test]
    fn both_strategies_agree() {
        let code = steane();
        let a = small_set_profile(&code, 4, &Limits::default()).unwrap();
        let b = small_set_profile(&code, 4, &Limits::sequential()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn refuses_large_codes() {
        let code = crate::code::CssCode::from_supports("big", 17, &[], &[]).unwrap();
        assert!(matches!(
            small_set_profile(&code, 1, &Limits::default()),
            Err(Error::Threshold { .. })
        ));
    }
}
