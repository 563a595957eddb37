//! Local complexes with boundary around one original vertex.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::frontier::Frontier;
use super::graph::GraphWithBoundary;
use crate::complex::TannerVertex;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::par::{self, chunk_for};
use crate::ratio::Ratio;
use crate::subdivide::{Region, SubVertex, SubdividedComplex};

/// Cells `Y(0), Y(1), Y(2)` plus boundary cells `Y∂(1), Y∂(2)`.
///
/// `cob[i][u]` lists the neighbors of `u ∈ Y(i)` in `Y(i+1)` and in
/// `Y∂(i+1)`, so `δ` of a cell is the sum of those.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalComplex {
    pub sizes: [usize; 3],
    pub boundary_sizes: [usize; 3],
    pub cob: [Vec<(Vec<usize>, Vec<usize>)>; 2],
    /// Subdivided vertex ids of `Y(i)` and `Y∂(i)`, when built from a region.
    pub members: [Vec<usize>; 3],
    pub boundary_members: [Vec<usize>; 3],
}

impl LocalComplex {
    /// `Y(i)` holds the members at level `offset + i`; `Y∂(i+1)` holds the
    /// non-members at level `offset + i + 1` adjacent to `Y(i)`.
    pub fn from_region(sub: &SubdividedComplex, members: &[usize], offset: u8) -> LocalComplex {
        let mut inside = vec![false; sub.vertex_count()];
        for &v in members {
            inside[v] = true;
        }
        let mut ys: [Vec<usize>; 3] = Default::default();
        for &v in members {
            if let Some(i) = sub.level(v).checked_sub(offset) {
                ys[i as usize].push(v);
            }
        }
        for y in &mut ys {
            y.sort_unstable();
        }
        let mut bs: [Vec<usize>; 3] = Default::default();
        for i in 0..2 {
            let up = offset + i as u8 + 1;
            for &v in &ys[i] {
                bs[i + 1].extend(
                    sub.neighbors(v)
                        .iter()
                        .copied()
                        .filter(|&w| !inside[w] && sub.level(w) == up),
                );
            }
            bs[i + 1].sort_unstable();
            bs[i + 1].dedup();
        }
        let position = |list: &[usize]| -> HashMap<usize, usize> {
            list.iter().enumerate().map(|(k, &v)| (v, k)).collect()
        };
        let mut cob: [Vec<(Vec<usize>, Vec<usize>)>; 2] = Default::default();
        for i in 0..2 {
            let up = offset + i as u8 + 1;
            let (ipos, bpos) = (position(&ys[i + 1]), position(&bs[i + 1]));
            cob[i] = ys[i]
                .iter()
                .map(|&v| {
                    let mut int = Vec::new();
                    let mut bd = Vec::new();
                    for &w in sub.neighbors(v) {
                        if sub.level(w) != up {
                            continue;
                        }
                        if let Some(&k) = ipos.get(&w) {
                            int.push(k);
                        } else if let Some(&k) = bpos.get(&w) {
                            bd.push(k);
                        }
                    }
                    int.sort_unstable();
                    bd.sort_unstable();
                    (int, bd)
                })
                .collect();
        }
        LocalComplex {
            sizes: [0, 1, 2].map(|i| ys[i].len()),
            boundary_sizes: [0, 1, 2].map(|i| bs[i].len()),
            cob,
            members: ys,
            boundary_members: bs,
        }
    }

    /// Level-0 complex of a graph: vertices, interior edges, and one boundary
    /// cell per edge that touches a boundary vertex.
    pub fn from_graph(graph: &GraphWithBoundary) -> LocalComplex {
        let nv = graph.interior;
        let mut cob0 = vec![(Vec::new(), Vec::new()); nv];
        let (mut ni, mut nb) = (0, 0);
        for &(a, b) in &graph.edges {
            match (graph.is_boundary(a), graph.is_boundary(b)) {
                (false, false) => {
                    cob0[a].0.push(ni);
                    cob0[b].0.push(ni);
                    ni += 1;
                }
                (false, true) => {
                    cob0[a].1.push(nb);
                    nb += 1;
                }
                (true, false) => {
                    cob0[b].1.push(nb);
                    nb += 1;
                }
                (true, true) => unreachable!("rejected by the graph constructor"),
            }
        }
        LocalComplex {
            sizes: [nv, ni, 0],
            boundary_sizes: [0, nb, 0],
            cob: [cob0, vec![(Vec::new(), Vec::new()); ni]],
            members: Default::default(),
            boundary_members: Default::default(),
        }
    }

    /// Level-0 graph: an interior edge per `Y(1)` cell (which must have two
    /// endpoints) and a boundary vertex per `Y∂(1)` cell.
    pub fn level0_graph(&self) -> Result<GraphWithBoundary> {
        let nv = self.sizes[0];
        let mut ends = vec![Vec::new(); self.sizes[1]];
        let mut edges = Vec::new();
        for (u, (int, bd)) in self.cob[0].iter().enumerate() {
            for &t in int {
                ends[t].push(u);
            }
            for &b in bd {
                edges.push((u, nv + b));
            }
        }
        for (t, e) in ends.iter().enumerate() {
            match e.as_slice() {
                &[a, b] => edges.push((a, b)),
                _ => {
                    return Err(Error::Invariant(format!(
                        "level-1 cell {t} has {} interior endpoints, expected 2",
                        e.len()
                    )))
                }
            }
        }
        edges.sort_unstable();
        GraphWithBoundary::new(nv, self.boundary_sizes[1], edges)
    }
}

/// Admissible `(β, η)` pairs at one level, as a frontier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalExpansion {
    pub level: usize,
    pub frontier: Frontier,
    /// `|Y(level)|`.
    pub cells: usize,
    /// Dimension of the coboundary space the representatives range over.
    pub coboundary_dim: usize,
}

impl LocalExpansion {
    pub fn admits(&self, beta: Ratio, eta: Ratio) -> bool {
        self.frontier.admits(beta, eta)
    }
}

#[derive(Clone, Copy)]
struct Cell {
    weight: u32,
    int: u32,
    bd: u32,
}

fn image_table(y: &LocalComplex, level: usize, exec: par::Exec) -> Vec<Cell> {
    let n = y.sizes[level];
    let cols: Vec<(Vec<u64>, Vec<u64>)> = {
        let words = |len: usize| len.div_ceil(64).max(1);
        let (wi, wb) = (
            words(y.sizes[level + 1]),
            words(y.boundary_sizes[level + 1]),
        );
        y.cob[level]
            .iter()
            .map(|(int, bd)| {
                let mut a = vec![0u64; wi];
                let mut b = vec![0u64; wb];
                for &t in int {
                    a[t / 64] ^= 1 << (t % 64);
                }
                for &t in bd {
                    b[t / 64] ^= 1 << (t % 64);
                }
                (a, b)
            })
            .collect()
    };
    let count = 1u64 << n;
    let chunk = chunk_for(count);
    let pieces = count.div_ceil(chunk) as usize;
    let parts = par::map_range(exec, 0..pieces, |p| {
        let lo = p as u64 * chunk;
        let hi = (lo + chunk).min(count);
        let mut a = vec![0u64; cols.first().map_or(1, |c| c.0.len())];
        let mut b = vec![0u64; cols.first().map_or(1, |c| c.1.len())];
        for (u, col) in cols.iter().enumerate().take(n) {
            if lo >> u & 1 == 1 {
                xor_into(&mut a, &col.0);
                xor_into(&mut b, &col.1);
            }
        }
        let pop = |v: &[u64]| v.iter().map(|w| w.count_ones()).sum::<u32>();
        let mut out = Vec::with_capacity((hi - lo) as usize);
        for m in lo..hi {
            if m != lo {
                // plain binary order: flip the bits that changed
                let mut changed = m ^ (m - 1);
                while changed != 0 {
                    let u = changed.trailing_zeros() as usize;
                    xor_into(&mut a, &cols[u].0);
                    xor_into(&mut b, &cols[u].1);
                    changed &= changed - 1;
                }
            }
            out.push(Cell {
                weight: m.count_ones(),
                int: pop(&a),
                bd: pop(&b),
            });
        }
        out
    });
    parts.concat()
}

fn xor_into(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

/// Reduced echelon basis of mask vectors, pivots at the highest bit.
fn mask_basis(vectors: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            if v & (1 << (63 - b.leading_zeros())) != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            let p = 1u64 << (63 - v.leading_zeros());
            for b in &mut basis {
                if *b & p != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis
}

fn span(basis: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &b in basis {
        let more: Vec<u64> = out.iter().map(|x| x ^ b).collect();
        out.extend(more);
    }
    out
}

/// Exhaustive `(β, η)` search at `level` ∈ {0, 1}.
///
/// For every `f̂` a representative `f ∈ f̂ + B` must satisfy `|f| ≤ |f̂|`,
/// `β|f| ≤ |δf̂|` and `η|δf|∂ ≤ |δf|` (interior weights unless marked). `B`
/// at level 0 is `{0, 1}` (constants count as trivial); at level 1 it is the
/// interior image of `δ` from level 0.
pub fn local_coboundary_expansion(
    y: &LocalComplex,
    level: usize,
    limits: &Limits,
) -> Result<LocalExpansion> {
    local_expansion_impl(y, level, limits, false)
}

fn local_expansion_impl(
    y: &LocalComplex,
    level: usize,
    limits: &Limits,
    force_pairs: bool,
) -> Result<LocalExpansion> {
    if level > 1 {
        return Err(Error::Argument(format!(
            "local expansion level must be 0 or 1, got {level}"
        )));
    }
    let n = y.sizes[level];
    Limits::check("local expansion cells", n, limits.local_work_log2 as usize)?;
    let table = image_table(y, level, limits.exec);
    let basis = if level == 0 {
        mask_basis((n > 0).then(|| (1u64 << n) - 1))
    } else {
        mask_basis(
            y.cob[0]
                .iter()
                .map(|(int, _)| int.iter().fold(0u64, |m, &t| m ^ 1 << t)),
        )
    };
    let r = basis.len();
    let closed = basis.iter().all(|&b| table[b as usize].int == 0);
    let frontier = if closed && !force_pairs {
        grouped_frontier(&table, &basis, n)
    } else {
        Limits::check(
            "local expansion pairs (log2)",
            n + r,
            limits.local_work_log2 as usize,
        )?;
        pair_frontier(&table, &span(&basis), limits)
    };
    Ok(LocalExpansion {
        level,
        frontier,
        cells: n,
        coboundary_dim: r,
    })
}

/// When `B` has no interior coboundary, `|δf̂|` is constant on a coset and
/// the binding `f̂` is a minimum-weight member, whose only admissible
/// representatives are the other minimum-weight members.
fn grouped_frontier(table: &[Cell], basis: &[u64], n: usize) -> Frontier {
    let pivots: u64 = basis
        .iter()
        .fold(0, |m, &b| m | 1 << (63 - b.leading_zeros()));
    let free: Vec<usize> = (0..n).filter(|&u| pivots >> u & 1 == 0).collect();
    // (min weight, int, min boundary at that weight)
    let mut cosets = vec![(u32::MAX, 0u32, u32::MAX); 1 << free.len()];
    for (m, cell) in table.iter().enumerate() {
        let mut rep = m as u64;
        for &b in basis {
            if rep & (1 << (63 - b.leading_zeros())) != 0 {
                rep ^= b;
            }
        }
        let idx = free
            .iter()
            .enumerate()
            .fold(0usize, |acc, (k, &u)| acc | ((rep >> u & 1) as usize) << k);
        let slot = &mut cosets[idx];
        if cell.weight < slot.0 {
            *slot = (cell.weight, cell.int, cell.bd);
        } else if cell.weight == slot.0 {
            slot.2 = slot.2.min(cell.bd);
        }
    }
    let (mut beta, mut eta) = (Ratio::INFINITY, Ratio::INFINITY);
    for &(w, int, bd) in &cosets {
        beta = beta.min(Ratio::new(u64::from(int), u64::from(w)));
        eta = eta.min(Ratio::new(u64::from(int), u64::from(bd)));
    }
    Frontier::from_points(vec![(beta, eta)])
}

fn pair_frontier(table: &[Cell], coboundaries: &[u64], limits: &Limits) -> Frontier {
    let count = table.len() as u64;
    par::map_reduce(
        limits.exec,
        0..count,
        chunk_for(count),
        Frontier::unbounded,
        |range| {
            let mut acc = Frontier::unbounded();
            for m in range {
                let hat = table[m as usize];
                let points = coboundaries
                    .iter()
                    .map(|&b| table[(m ^ b) as usize])
                    .filter(|f| f.weight <= hat.weight)
                    .map(|f| {
                        (
                            Ratio::new(u64::from(hat.int), u64::from(f.weight)),
                            Ratio::new(u64::from(f.int), u64::from(f.bd)),
                        )
                    })
                    .collect();
                acc = acc.intersect(&Frontier::from_points(points));
            }
            acc
        },
        |a, b| a.intersect(&b),
    )
}

/// Local complex of an X check: its S region, the T vertices around it as
/// boundary, the seam (the check's own edge chains) and for every seam
/// vertex `w` the set `D(w)` of level-0 vertices on the lines through `w`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalS {
    pub check: usize,
    pub complex: LocalComplex,
    pub graph: GraphWithBoundary,
    /// Level-0 seam vertices as graph indices, center first.
    pub seam: Vec<usize>,
    /// `D(w)` for each entry of `seam`, as graph indices with `w` first.
    pub lines: Vec<Vec<usize>>,
    /// Number of edge chains at the center.
    pub branches: usize,
    /// Faces at the check.
    pub faces: usize,
    pub warning: Option<String>,
}

/// Local complex of a qubit: its T region, with the Z corners as boundary.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalT {
    pub qubit: usize,
    pub complex: LocalComplex,
    pub graph: GraphWithBoundary,
    /// Number of Z-check chains at the qubit.
    pub branches: usize,
}

pub fn build_local_s(sub: &SubdividedComplex, check: usize) -> Result<LocalS> {
    let code = sub.code();
    if check >= code.m_x() {
        return Err(Error::Argument(format!(
            "X check {check} out of range 0..{}",
            code.m_x()
        )));
    }
    let l = sub.l();
    let members: Vec<usize> = (0..sub.vertex_count())
        .filter(|&v| sub.region(v) == Region::S(check))
        .collect();
    let complex = LocalComplex::from_region(sub, &members, 0);
    let graph = complex.level0_graph()?;
    let pos: HashMap<usize, usize> = complex.members[0]
        .iter()
        .enumerate()
        .map(|(k, &v)| (v, k))
        .collect();
    let at = |v: usize| pos[&v];

    let cx = sub.complex();
    let x = TannerVertex::x(check);
    let edges = cx.edges_at(x);
    let faces = cx.faces_at(x);
    let center = at(sub.corner_id(x));
    let mut seam = vec![center];
    let mut lines = vec![vec![center]];
    for &e in &edges {
        let (_, q) = cx.edge(e);
        for t in (2..l).step_by(2) {
            let w = at(sub.edge_point_id(e, t));
            seam.push(w);
            lines[0].push(w);
            let mut line = vec![w];
            for &f in &faces {
                let (qa, qb) = cx.faces()[f].qubits();
                for s in (2..l).step_by(2) {
                    let v = if q == qa {
                        sub.frame_vertex(f, s, t)
                    } else if q == qb {
                        sub.frame_vertex(f, t, s)
                    } else {
                        break;
                    };
                    line.push(at(v.expect("face interior point")));
                }
            }
            lines.push(line);
        }
    }
    let warning = edges
        .is_empty()
        .then(|| format!("X check {check} has no qubits; its local complex is a single vertex"));
    Ok(LocalS {
        check,
        complex,
        graph,
        seam,
        lines,
        branches: edges.len(),
        faces: faces.len(),
        warning,
    })
}

pub fn build_local_t(sub: &SubdividedComplex, qubit: usize) -> Result<LocalT> {
    let code = sub.code();
    if qubit >= code.n() {
        return Err(Error::Argument(format!(
            "qubit {qubit} out of range 0..{}",
            code.n()
        )));
    }
    let members: Vec<usize> = (0..sub.vertex_count())
        .filter(|&v| sub.region(v) == Region::T(qubit))
        .collect();
    let branches = members
        .iter()
        .filter(|&&v| matches!(sub.vertex(v), SubVertex::EdgePoint { t: 1, .. }))
        .count();
    let complex = LocalComplex::from_region(sub, &members, 1);
    let graph = complex.level0_graph()?;
    Ok(LocalT {
        qubit,
        complex,
        graph,
        branches,
    })
}

/// Outcome of the two seam inequalities over every Boolean assignment on
/// the interior vertices of an S graph, with `L' = (L+1)/2`:
///
/// * bulk: `L·Δ·L'·cut(g) ≥ Σ_w P(D(w))`
/// * merge: `|faces|²·L'·Σ_w P(D(w)) ≥ P(V)`
///
/// where `P(A)` counts ordered pairs in `A` with different values. Boundary
/// vertices copy their neighbor, so only interior edges are cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeamReport {
    pub bulk_holds: bool,
    pub merge_holds: bool,
    /// First assignment (bit mask over interior vertices) violating either.
    pub violation: Option<u64>,
    pub assignments: u64,
}

impl SeamReport {
    pub fn holds(&self) -> bool {
        self.bulk_holds && self.merge_holds
    }
}

pub fn check_seam_inequalities(
    s: &LocalS,
    l: usize,
    delta: usize,
    limits: &Limits,
) -> Result<SeamReport> {
    let nv = s.graph.interior;
    Limits::check("seam inequality vertices", nv, limits.functional_vertices)?;
    let interior_edges: Vec<(usize, usize)> = s
        .graph
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| a < nv && b < nv)
        .collect();
    let line_masks: Vec<(u64, u64)> = s
        .lines
        .iter()
        .map(|line| {
            (
                line.iter().fold(0u64, |m, &v| m | 1 << v),
                line.len() as u64,
            )
        })
        .collect();
    let half = (l as u64).div_ceil(2);
    let faces = s.faces as u64;
    let count = 1u64 << nv;
    let (bulk, merge, violation) = par::map_reduce(
        limits.exec,
        0..count,
        chunk_for(count),
        || (true, true, None::<u64>),
        |range| {
            let mut acc = (true, true, None);
            for g in range {
                let cut = interior_edges
                    .iter()
                    .filter(|&&(a, b)| (g >> a ^ g >> b) & 1 == 1)
                    .count() as u64;
                let lines: u64 = line_masks
                    .iter()
                    .map(|&(m, size)| {
                        let a = u64::from((g & m).count_ones());
                        2 * a * (size - a)
                    })
                    .sum();
                let ones = u64::from(g.count_ones());
                let all = 2 * ones * (nv as u64 - ones);
                let b = l as u64 * delta as u64 * half * cut >= lines;
                let m = faces * faces * half * lines >= all;
                if !(b && m) && acc.2.is_none() {
                    acc.2 = Some(g);
                }
                acc.0 &= b;
                acc.1 &= m;
            }
            acc
        },
        |x, y| {
            let v = match (x.2, y.2) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            (x.0 && y.0, x.1 && y.1, v)
        },
    );
    Ok(SeamReport {
        bulk_holds: bulk,
        merge_holds: merge,
        violation,
        assignments: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{four_qubit, steane, CssCode};
    use crate::complex::{DummyPolicy, SquareSubspaceComplex};
    use crate::expansion::functional_constants;
    use crate::subdivide::subdivide;

    fn r(n: u64, d: u64) -> Ratio {
        Ratio::new(n, d)
    }

    fn single_face(l: usize) -> SubdividedComplex {
        let code = CssCode::from_supports("square", 2, &[vec![0, 1]], &[vec![0, 1]]).unwrap();
        let cx = SquareSubspaceComplex::build(&code, DummyPolicy::None).unwrap();
        subdivide(&cx, l).unwrap()
    }

    fn sub_of(code: &CssCode, l: usize) -> SubdividedComplex {
        subdivide(
            &SquareSubspaceComplex::build(code, DummyPolicy::All).unwrap(),
            l,
        )
        .unwrap()
    }

    #[test]
    fn single_face_quadrant() {
        let sub = single_face(3);
        let s = build_local_s(&sub, 0).unwrap();
        assert_eq!(s.complex.sizes, [4, 4, 1]);
        // qubit corners and one chain point per Z edge
        assert_eq!(s.complex.boundary_sizes, [0, 4, 2]);
        assert_eq!(s.branches, 2);
        assert_eq!(s.seam.len(), 3);
        let lvl1 = local_coboundary_expansion(&s.complex, 1, &Limits::default()).unwrap();
        assert!(lvl1.admits(r(2, 9), r(1, 6)));
        assert!(lvl1.admits(r(2, 3), r(1, 4)));
    }

    #[test]
    fn repetition_graphs_meet_the_level_zero_bounds() {
        for l in [3, 5] {
            let configs = [
                vec![true, true],
                vec![true, false],
                vec![true, true, true],
                vec![true, false, true],
            ];
            for ends in configs {
                let g = GraphWithBoundary::repetition(l, &ends).unwrap();
                let k = functional_constants(&g, &Limits::default()).unwrap();
                assert!(k.c >= r(1, l as u64), "L={l} {ends:?}");
                assert!(k.c_boundary >= r(1, l as u64), "L={l} {ends:?}");
                let y = LocalComplex::from_graph(&g);
                let e = local_coboundary_expansion(&y, 0, &Limits::default()).unwrap();
                assert!(
                    e.admits(r(2, l as u64), r(1, 1)),
                    "L={l} {ends:?}: {:?}",
                    e.frontier
                );
                if !k.c_boundary.is_infinite() {
                    let eta = k
                        .c_boundary
                        .mul_int(g.interior as u64)
                        .div_int(2 * g.boundary as u64);
                    assert!(e.admits(k.c, eta), "conversion L={l} {ends:?}");
                }
            }
        }
    }

    #[test]
    fn star_with_a_single_boundary_end_is_weaker() {
        // all interior zero, the lone boundary vertex one: one cut edge
        // against |V| differing pairs
        for (l, nv) in [(3u64, 4u64), (5, 7)] {
            let g = GraphWithBoundary::repetition(l as usize, &[false, true, false]).unwrap();
            let k = functional_constants(&g, &Limits::default()).unwrap();
            assert_eq!(k.c_boundary, r(1, nv));
            assert!(k.c_boundary < r(1, l));
        }
    }

    #[test]
    fn grouped_search_matches_pair_search() {
        let limits = Limits::default();
        for l in [3, 5] {
            let s = build_local_s(&single_face(l), 0).unwrap();
            for level in [0, 1] {
                let a = local_expansion_impl(&s.complex, level, &limits, false).unwrap();
                let b =
                    local_expansion_impl(&s.complex, level, &Limits::sequential(), true).unwrap();
                assert_eq!(a.frontier, b.frontier, "L={l} level {level}");
            }
        }
        let g = GraphWithBoundary::repetition(5, &[true, false, true]).unwrap();
        let y = LocalComplex::from_graph(&g);
        let a = local_expansion_impl(&y, 0, &limits, false).unwrap();
        let b = local_expansion_impl(&y, 0, &limits, true).unwrap();
        assert_eq!(a.frontier, b.frontier);
    }

    #[test]
    fn seam_of_a_four_qubit_check() {
        let code = four_qubit();
        let sub = sub_of(&code, 3);
        let s = build_local_s(&sub, 0).unwrap();
        assert_eq!(s.branches, 4);
        assert_eq!(s.faces, 8);
        // center plus one even point per chain
        assert_eq!(s.seam.len(), 5);
        // each seam point sees its line in every face through its edge
        for line in &s.lines[1..] {
            assert_eq!(line.len(), 1 + 4);
        }
        let report = check_seam_inequalities(&s, 3, code.delta_max(), &Limits::default()).unwrap();
        assert!(report.holds(), "{report:?}");
        let k = functional_constants(&s.graph, &Limits::default()).unwrap();
        let delta = code.delta_max() as u64;
        assert!(k.c >= r(1, 2 * delta.pow(3) * 3));
        let e = local_coboundary_expansion(&s.complex, 0, &Limits::default()).unwrap();
        let eta_from_c = k
            .c_boundary
            .mul_int(s.graph.interior as u64)
            .div_int(2 * s.graph.boundary as u64);
        assert!(e.admits(k.c, eta_from_c));
    }

    #[test]
    fn qubit_regions_are_repetition_stars() {
        let sub = sub_of(&steane(), 5);
        for q in 0..7 {
            let t = build_local_t(&sub, q).unwrap();
            let z_edges = sub.code().a_z().col_weights()[q];
            assert_eq!(t.branches, z_edges);
            let g = GraphWithBoundary::repetition(5, &vec![true; z_edges]).unwrap();
            assert_eq!(
                (t.graph.interior, t.graph.boundary),
                (g.interior, g.boundary)
            );
            assert_eq!(t.graph.edges.len(), g.edges.len());
            let e = local_coboundary_expansion(&t.complex, 0, &Limits::default()).unwrap();
            assert!(e.admits(r(2, 5), r(1, 1)));
        }
    }

    fn full_faces_only(code: &CssCode, l: usize) -> SubdividedComplex {
        let faces = crate::complex::pair_common_neighbors(code).unwrap();
        subdivide(&SquareSubspaceComplex::from_faces(code, faces).unwrap(), l).unwrap()
    }

    #[test]
    fn two_full_faces_expand_at_level_zero() {
        let mut betas = Vec::new();
        for l in [3, 5] {
            let s = build_local_s(&full_faces_only(&four_qubit(), l), 0).unwrap();
            assert_eq!(s.faces, 2);
            let e = local_coboundary_expansion(&s.complex, 0, &Limits::default()).unwrap();
            let (beta, eta) = e.frontier.corners[0];
            assert!(
                beta > Ratio::ZERO && eta > Ratio::ZERO,
                "L={l}: {:?}",
                e.frontier
            );
            if l == 3 {
                let k = functional_constants(&s.graph, &Limits::default()).unwrap();
                let eta_from_c = k
                    .c_boundary
                    .mul_int(s.graph.interior as u64)
                    .div_int(2 * s.graph.boundary as u64);
                assert!(e.admits(k.c, eta_from_c));
            }
            betas.push(beta);
        }
        assert!(betas[1] < betas[0]);
    }

    #[test]
    fn qubit_without_z_edges_is_a_point() {
        let code = CssCode::from_supports("bare", 2, &[vec![0, 1]], &[]).unwrap();
        let t = build_local_t(&sub_of(&code, 3), 0).unwrap();
        assert_eq!(t.branches, 0);
        assert_eq!((t.graph.interior, t.graph.boundary), (1, 0));
    }

    #[test]
    fn isolated_check_is_a_point() {
        let code = CssCode::from_supports("lonely", 1, &[vec![0], vec![]], &[]).unwrap();
        let sub = sub_of(&code, 3);
        let s = build_local_s(&sub, 1).unwrap();
        assert!(s.warning.is_some());
        assert_eq!(s.complex.sizes, [1, 0, 0]);
        assert!(build_local_s(&sub, 2).is_err());
        assert!(local_coboundary_expansion(&s.complex, 2, &Limits::default()).is_err());
    }
}
