//! Lattice embeddings of the subdivided complex: choosing `L`, measuring
//! locality and density, and a simple deterministic layout.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SquareSubspaceComplex, TannerVertex};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::subdivide::{SubVertex, SubdividedComplex};

fn check_dimension(d: usize) -> Result<()> {
    if d < 3 {
        Err(Error::Argument(format!("D must be ≥ 3, got {d}")))
    } else {
        Ok(())
    }
}

/// Smallest odd `L ≥ 3` with `L ≥ c · vertices^(1/(D−2))`.
pub fn choose_l_for(vertices: usize, d: usize, c: f64) -> Result<usize> {
    check_dimension(d)?;
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Argument(format!(
            "scale c must be positive, got {c}"
        )));
    }
    let e = (d - 2) as i32;
    // compare L^(D−2) against c^(D−2)·|V| to avoid fractional roots
    let target = c.powi(e) * vertices as f64 * (1.0 - 1e-9);
    let mut l = 3usize;
    while (l as f64).powi(e) < target {
        l += 2;
    }
    Ok(l)
}

/// `choose_l_for` on the completion of `complex`: its Tanner vertices plus
/// one extra corner per dummy face.
pub fn choose_l(complex: &SquareSubspaceComplex, d: usize, c: f64) -> Result<usize> {
    choose_l_for(complex.completion_vertex_count(), d, c)
}

pub const EMBEDDING_SCHEMA: &str = "geolocal.embedding/1";

/// One lattice point per subdivided vertex, with the measured locality `a`
/// (largest Euclidean edge length) and density `b` (largest number of
/// vertices on one point).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    #[serde(default = "embedding_schema")]
    pub schema: String,
    #[serde(rename = "D")]
    pub d: usize,
    pub points: Vec<Vec<i64>>,
    pub a: f64,
    pub a_squared: u64,
    pub b: usize,
}

fn embedding_schema() -> String {
    EMBEDDING_SCHEMA.to_string()
}

impl Embedding {
    /// Wraps points and fills in `a` and `b` for the edges of `sub`.
    pub fn new(sub: &SubdividedComplex, d: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        let mut emb = Embedding {
            schema: EMBEDDING_SCHEMA.to_string(),
            d,
            points,
            a: 0.0,
            a_squared: 0,
            b: 0,
        };
        let m = measure(sub, &emb, Exec::default())?;
        emb.a_squared = m.a_squared;
        emb.a = (m.a_squared as f64).sqrt();
        emb.b = m.b;
        Ok(emb)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub a: f64,
    pub a_squared: u64,
    pub b: usize,
    pub a_max: f64,
    pub b_max: usize,
    pub pass: bool,
    /// Longest edges, longest first (at most ten).
    pub worst_edges: Vec<(usize, usize, f64)>,
    /// Most crowded points, most crowded first (at most ten).
    pub crowded_points: Vec<(Vec<i64>, usize)>,
}

struct Measured {
    a_squared: u64,
    b: usize,
    lengths: Vec<u64>,
    counts: HashMap<Vec<i64>, usize>,
}

fn dist2(p: &[i64], q: &[i64]) -> u64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b).unsigned_abs().pow(2))
        .sum()
}

fn measure(sub: &SubdividedComplex, emb: &Embedding, exec: Exec) -> Result<Measured> {
    check_dimension(emb.d)?;
    if emb.points.len() != sub.vertex_count() {
        return Err(Error::Validation(format!(
            "embedding covers {} vertices, complex has {}",
            emb.points.len(),
            sub.vertex_count()
        )));
    }
    if let Some(v) = emb.points.iter().position(|p| p.len() != emb.d) {
        return Err(Error::Validation(format!(
            "vertex {v} has a point of dimension {}",
            emb.points[v].len()
        )));
    }
    let lengths = par::map_slice(exec, sub.edges(), |&(u, v)| {
        dist2(&emb.points[u], &emb.points[v])
    });
    let mut counts: HashMap<Vec<i64>, usize> = HashMap::new();
    for p in &emb.points {
        *counts.entry(p.clone()).or_default() += 1;
    }
    Ok(Measured {
        a_squared: lengths.iter().copied().max().unwrap_or(0),
        b: counts.values().copied().max().unwrap_or(0),
        lengths,
        counts,
    })
}

/// Recomputes `a` and `b` from the points; passes iff `a ≤ a_max` and
/// `b ≤ b_max`.
pub fn verify_embedding(
    sub: &SubdividedComplex,
    emb: &Embedding,
    a_max: f64,
    b_max: usize,
) -> Result<EmbeddingReport> {
    let m = measure(sub, emb, Exec::default())?;
    let a = (m.a_squared as f64).sqrt();
    let mut edges: Vec<(u64, usize)> = m.lengths.iter().copied().zip(0..).collect();
    edges.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let worst_edges = edges
        .iter()
        .take(10)
        .map(|&(l2, e)| (sub.edges()[e].0, sub.edges()[e].1, (l2 as f64).sqrt()))
        .collect();
    let mut crowded: Vec<(Vec<i64>, usize)> =
        m.counts.into_iter().filter(|&(_, c)| c > 1).collect();
    crowded.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    crowded.truncate(10);
    Ok(EmbeddingReport {
        a,
        a_squared: m.a_squared,
        b: m.b,
        a_max,
        b_max,
        pass: m.a_squared as f64 <= a_max * a_max * (1.0 + 1e-12) && m.b <= b_max,
        worst_edges,
        crowded_points: crowded,
    })
}

/// Layout parameters for [`embed_heuristic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutOptions {
    #[serde(rename = "D")]
    pub d: usize,
    /// Number of positions tried above a taken point before sharing one.
    pub column_height: usize,
}

impl LayoutOptions {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            column_height: 4,
        }
    }
}

/// `⌈a / b⌉` for `b > 0`.
fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// `num / den` rounded to the nearest integer, halves toward `−∞`.
fn round_half_down(num: i64, den: i64) -> i64 {
    ceil_div(2 * num - den, 2 * den)
}

/// Coarse vertices: Tanner vertices (in corner order) then one extra
/// corner per dummy face, with their breadth-first cell numbers.
fn coarse_cells(complex: &SquareSubspaceComplex) -> (Vec<usize>, HashMap<usize, usize>) {
    let code = complex.code();
    let (mx, n, mz) = (code.m_x(), code.n(), code.m_z());
    let tanner = mx + n + mz;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); tanner];
    let mut extra_of_face = HashMap::new();
    for e in 0..complex.edge_count() {
        let (check, q) = complex.edge(e);
        let c = if check.level == 0 {
            check.index
        } else {
            mx + n + check.index
        };
        adj[c].push(mx + q);
        adj[mx + q].push(c);
    }
    for (f, face) in complex.faces().iter().enumerate() {
        if matches!(face, Face::Full { .. }) {
            continue;
        }
        let id = adj.len();
        extra_of_face.insert(f, id);
        let (qa, qb) = face.qubits();
        adj.push(vec![mx + qa, mx + qb]);
        adj[mx + qa].push(id);
        adj[mx + qb].push(id);
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    let mut cell = vec![usize::MAX; adj.len()];
    let mut next = 0;
    for root in 0..adj.len() {
        if cell[root] != usize::MAX {
            continue;
        }
        cell[root] = next;
        next += 1;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if cell[w] == usize::MAX {
                    cell[w] = next;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    (cell, extra_of_face)
}

/// Deterministic layout in `Z^D`.
///
/// Coarse vertices go to the cells of a `s^D` grid with pitch `2L` in
/// breadth-first order (`s = ⌈N^(1/D)⌉`). Edge points interpolate linearly
/// between their endpoints and face points bilinearly between the four face
/// corners, rounded to the lattice. A vertex landing on a taken point moves
/// up the last axis, at most `column_height − 1` steps, and otherwise shares
/// the least crowded point of that column.
pub fn embed_heuristic(sub: &SubdividedComplex, options: LayoutOptions) -> Result<Embedding> {
    let d = options.d;
    check_dimension(d)?;
    let h = options.column_height.max(1);
    let complex = sub.complex();
    let code = complex.code();
    let l = sub.l() as i64;
    let (mx, n) = (code.m_x(), code.n());
    let (cells, extra_of_face) = coarse_cells(complex);
    let total = cells.len();
    let mut side = 1usize;
    while side.checked_pow(d as u32).is_some_and(|p| p < total) {
        side += 1;
    }
    let pitch = 2 * l;
    let coarse: Vec<Vec<i64>> = cells
        .iter()
        .map(|&k| {
            let mut k = k;
            (0..d)
                .map(|_| {
                    let digit = k % side;
                    k /= side;
                    digit as i64 * pitch
                })
                .collect()
        })
        .collect();
    let tanner_node = |t: TannerVertex| match t.level {
        0 => t.index,
        1 => mx + t.index,
        _ => mx + n + t.index,
    };

    let desired: Vec<Vec<i64>> = (0..sub.vertex_count())
        .map(|v| match sub.vertex(v) {
            SubVertex::Corner(t) => coarse[tanner_node(t)].clone(),
            SubVertex::EdgePoint { edge, t } => {
                let (check, q) = complex.edge(edge);
                let (c, qp) = (
                    &coarse[tanner_node(check)],
                    &coarse[tanner_node(TannerVertex::qubit(q))],
                );
                let t = t as i64;
                (0..d)
                    .map(|k| round_half_down((l - t) * c[k] + t * qp[k], l))
                    .collect()
            }
            SubVertex::FacePoint { face, i, j } => {
                let f = complex.faces()[face];
                let (qa, qb) = f.qubits();
                let qa = &coarse[mx + qa];
                let qb = &coarse[mx + qb];
                let (v0, v2) = match f {
                    Face::Full { x, z, .. } => (&coarse[x], &coarse[mx + n + z]),
                    Face::Dummy0 { center, .. } => (&coarse[center], &coarse[extra_of_face[&face]]),
                    Face::Dummy2 { center, .. } => {
                        (&coarse[extra_of_face[&face]], &coarse[mx + n + center])
                    }
                };
                let (i, j) = (i as i64, j as i64);
                (0..d)
                    .map(|k| {
                        let num = (l - i) * (l - j) * v0[k]
                            + (l - i) * j * qa[k]
                            + i * (l - j) * qb[k]
                            + i * j * v2[k];
                        round_half_down(num, l * l)
                    })
                    .collect()
            }
        })
        .collect();

    let mut taken: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut points = Vec::with_capacity(desired.len());
    for p in desired {
        let column = (0..h as i64).map(|k| {
            let mut q = p.clone();
            q[d - 1] += k;
            q
        });
        let chosen = match column.clone().find(|q| !taken.contains_key(q)) {
            Some(q) => q,
            None => column
                .min_by_key(|q| taken[q])
                .expect("column height is at least one"),
        };
        *taken.entry(chosen.clone()).or_default() += 1;
        points.push(chosen);
    }
    Embedding::new(sub, d, points)
}

/// Lattice points of the checks and qubits of the subdivided code:
/// `(X checks, qubits, Z checks)` in row/column order.
pub fn code_positions(sub: &SubdividedComplex, emb: &Embedding) -> [Vec<Vec<i64>>; 3] {
    [0u8, 1, 2].map(|level| {
        sub.level_vertices(level)
            .iter()
            .map(|&v| emb.points[v].clone())
            .collect()
    })
}
