//! L-subdivision of the square complex and the code it carries.
//!
//! Every face is drawn in its own frame with integer coordinates `(i, j)`:
//! X check at `(0, 0)`, smaller paired qubit at `(0, L)`, larger at
//! `(L, 0)`, Z check at `(L, L)`. Each Tanner edge becomes a chain of `L`
//! unit edges shared by all faces containing it, with `t` counting from the
//! check. A dummy face at an X check keeps only `[0, L−1]²` plus its two
//! qubit corners; one at a Z check keeps `[1, L]²` plus the qubit corners.
//!
//! The level of a point is the parity pattern of its coordinates: both even
//! gives an X check, both odd a Z check, mixed a qubit. `L` must be odd so
//! that all four corners keep their original levels.

use serde::{Deserialize, Serialize};

use crate::code::CssCode;
use crate::complex::{Face, SquareSubspaceComplex, TannerVertex};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVector};
use crate::par::{self, Exec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubVertex {
    Corner(TannerVertex),
    /// Point `t ∈ 1..L` on Tanner edge `edge`, counted from the check.
    EdgePoint {
        edge: usize,
        t: usize,
    },
    /// Point `(i, j) ∈ [1, L−1]²` inside face `face`.
    FacePoint {
        face: usize,
        i: usize,
        j: usize,
    },
}

/// Which original vertex a subdivided vertex is attributed to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// Owned by X check `v`: its corner, its edge chains and the interiors of
    /// its faces.
    S(usize),
    /// Owned by qubit `q`: its corner and the chains of its Z-check edges.
    T(usize),
    /// The corner of Z check `v`.
    U(usize),
    /// Inside a dummy face at a Z check; no owner.
    Dummy2Interior,
}

#[derive(Clone, Debug)]
pub struct SubdividedComplex {
    l: usize,
    complex: SquareSubspaceComplex,
    vertices: Vec<SubVertex>,
    levels: Vec<u8>,
    regions: Vec<Region>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    by_level: [Vec<usize>; 3],
    /// Position of each vertex within its level.
    level_pos: Vec<usize>,
}

fn parity_level(i: usize, j: usize) -> u8 {
    match (i % 2, j % 2) {
        (0, 0) => 0,
        (1, 1) => 2,
        _ => 1,
    }
}

/// Checks that `l` is an odd integer ≥ 3.
pub fn check_l(l: usize) -> Result<()> {
    if l < 3 || l.is_multiple_of(2) {
        Err(Error::Argument(format!(
            "L must be odd and at least 3, got {l}"
        )))
    } else {
        Ok(())
    }
}

impl SubdividedComplex {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn complex(&self) -> &SquareSubspaceComplex {
        &self.complex
    }

    pub fn code(&self) -> &CssCode {
        self.complex.code()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[SubVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> SubVertex {
        self.vertices[v]
    }

    pub fn level(&self, v: usize) -> u8 {
        self.levels[v]
    }

    pub fn region(&self, v: usize) -> Region {
        self.regions[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Vertex ids of one level in increasing order.
    pub fn level_vertices(&self, level: u8) -> &[usize] {
        &self.by_level[level as usize]
    }

    /// Position of `v` among the vertices of its level: its row (levels 0
    /// and 2) or column (level 1) in the extracted code.
    pub fn level_position(&self, v: usize) -> usize {
        self.level_pos[v]
    }

    pub fn corner_id(&self, t: TannerVertex) -> usize {
        let code = self.code();
        match t.level {
            0 => t.index,
            1 => code.m_x() + t.index,
            _ => code.m_x() + code.n() + t.index,
        }
    }

    fn edge_base(&self) -> usize {
        let code = self.code();
        code.m_x() + code.n() + code.m_z()
    }

    fn face_base(&self) -> usize {
        self.edge_base() + self.complex.edge_count() * (self.l - 1)
    }

    /// Id of point `t` on a Tanner edge; `t = 0` is the check, `t = L` the
    /// qubit.
    pub fn edge_point_id(&self, edge: usize, t: usize) -> usize {
        let (check, q) = self.complex.edge(edge);
        match t {
            0 => self.corner_id(check),
            t if t == self.l => self.corner_id(TannerVertex::qubit(q)),
            t => self.edge_base() + edge * (self.l - 1) + t - 1,
        }
    }

    /// Id of the point at frame coordinates `(i, j)` of face `f`, or `None`
    /// when the point is not part of that face.
    pub fn frame_vertex(&self, f: usize, i: usize, j: usize) -> Option<usize> {
        let l = self.l;
        if i > l || j > l {
            return None;
        }
        let face = self.complex.faces()[f];
        let (qa, qb) = face.qubits();
        let corner_q = |q| Some(self.corner_id(TannerVertex::qubit(q)));
        if (i, j) == (0, l) {
            return corner_q(qa);
        }
        if (i, j) == (l, 0) {
            return corner_q(qb);
        }
        let x_side = |q: usize, t: usize| {
            let x = TannerVertex::x(face.x_check().expect("face has an X check"));
            Some(self.edge_point_id(self.complex.edge_id(x, q).expect("face edge exists"), t))
        };
        let z_side = |q: usize, t: usize| {
            let z = TannerVertex::z(face.z_check().expect("face has a Z check"));
            Some(self.edge_point_id(self.complex.edge_id(z, q).expect("face edge exists"), t))
        };
        let interior =
            || Some(self.face_base() + f * (l - 1) * (l - 1) + (i - 1) * (l - 1) + (j - 1));
        match face {
            Face::Full { .. } => {
                if i == 0 {
                    x_side(qa, j)
                } else if j == 0 {
                    x_side(qb, i)
                } else if j == l {
                    z_side(qa, l - i)
                } else if i == l {
                    z_side(qb, l - j)
                } else {
                    interior()
                }
            }
            Face::Dummy0 { .. } => {
                if i == l || j == l {
                    None
                } else if i == 0 {
                    x_side(qa, j)
                } else if j == 0 {
                    x_side(qb, i)
                } else {
                    interior()
                }
            }
            Face::Dummy2 { .. } => {
                if i == 0 || j == 0 {
                    None
                } else if j == l {
                    z_side(qa, l - i)
                } else if i == l {
                    z_side(qb, l - j)
                } else {
                    interior()
                }
            }
        }
    }

    /// `Q_L`: X checks are the level-0 vertices, qubits the level-1
    /// vertices, Z checks the level-2 vertices, entries the adjacency.
    pub fn extract_code(&self) -> Result<CssCode> {
        let cols = self.by_level[1].len();
        let rows_of = |level: u8| -> Vec<BitVector> {
            self.by_level[level as usize]
                .iter()
                .map(|&v| {
                    let support: Vec<usize> = self.adjacency[v]
                        .iter()
                        .filter(|&&u| self.levels[u] == 1)
                        .map(|&u| self.level_pos[u])
                        .collect();
                    BitVector::from_support(cols, &support)
                })
                .collect()
        };
        let code = CssCode::new(
            format!("{}-L{}", self.code().name, self.l),
            BitMatrix::from_rows(cols, rows_of(0)),
            BitMatrix::from_rows(cols, rows_of(2)),
        )?;
        if let Some((x, z, shared)) = code.first_conflict() {
            return Err(Error::Invariant(format!(
                "subdivided checks do not commute: level-0 vertex {:?} and level-2 vertex {:?} share qubits {shared:?}",
                self.vertices[self.by_level[0][x]],
                self.vertices[self.by_level[2][z]],
            )));
        }
        Ok(code)
    }

    /// Level sizes and the two size bounds.
    pub fn stats(&self) -> SizeStats {
        let code = self.code();
        let original = [code.m_x(), code.n(), code.m_z()];
        let counts = [0, 1, 2].map(|i| self.by_level[i].len());
        let l2 = self.l * self.l;
        let delta = code.delta_max();
        let total = original[0] + original[2];
        let lower = [0, 1, 2].map(|i| 4 * counts[i] >= l2 * original[i]);
        let upper =
            [0, 1, 2].map(|i| 2 * counts[i] <= delta * delta * l2 * (total + 2 * original[i]));
        SizeStats {
            l: self.l,
            original,
            counts,
            delta_max: delta,
            lower_bound_holds: lower,
            upper_bound_holds: upper,
        }
    }

    pub fn to_file(&self) -> SubdividedFile {
        SubdividedFile {
            schema: SUBDIVIDED_SCHEMA.to_string(),
            l: self.l,
            vertices: (0..self.vertices.len())
                .map(|v| VertexRecord {
                    id: v,
                    vertex: self.vertices[v],
                    level: self.levels[v],
                    region: self.regions[v],
                })
                .collect(),
            edges: self.edges.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeStats {
    pub l: usize,
    /// `|X(i)|` for levels 0, 1, 2.
    pub original: [usize; 3],
    /// `|X_L(i)|` for levels 0, 1, 2.
    pub counts: [usize; 3],
    pub delta_max: usize,
    /// `L²/4 · |X(i)| ≤ |X_L(i)|`.
    pub lower_bound_holds: [bool; 3],
    /// `|X_L(i)| ≤ Δ²L²/2 · (|X(0)| + 2|X(i)| + |X(2)|)`.
    pub upper_bound_holds: [bool; 3],
}

impl SizeStats {
    pub fn all_hold(&self) -> bool {
        self.lower_bound_holds
            .iter()
            .chain(&self.upper_bound_holds)
            .all(|&b| b)
    }
}

pub const SUBDIVIDED_SCHEMA: &str = "geolocal.subdivided/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub vertex: SubVertex,
    pub level: u8,
    pub region: Region,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdividedFile {
    pub schema: String,
    #[serde(rename = "L")]
    pub l: usize,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<(usize, usize)>,
}

/// Builds `S̃_L`: corners, then `L − 1` points per Tanner edge, then
/// `(L − 1)²` interior points per face.
pub fn subdivide(complex: &SquareSubspaceComplex, l: usize) -> Result<SubdividedComplex> {
    subdivide_with(complex, l, Exec::default())
}

pub fn subdivide_with(
    complex: &SquareSubspaceComplex,
    l: usize,
    exec: Exec,
) -> Result<SubdividedComplex> {
    check_l(l)?;
    let code = complex.code();
    let n_edges = complex.edge_count();
    let n_faces = complex.faces().len();
    let inner = (l - 1) * (l - 1);
    let total = code.m_x() + code.n() + code.m_z() + n_edges * (l - 1) + n_faces * inner;

    let mut vertices = Vec::with_capacity(total);
    let mut levels = Vec::with_capacity(total);
    let mut regions = Vec::with_capacity(total);
    for (level, count) in [(0u8, code.m_x()), (1, code.n()), (2, code.m_z())] {
        for index in 0..count {
            vertices.push(SubVertex::Corner(TannerVertex { level, index }));
            levels.push(level);
            regions.push(match level {
                0 => Region::S(index),
                1 => Region::T(index),
                _ => Region::U(index),
            });
        }
    }
    for edge in 0..n_edges {
        let (check, q) = complex.edge(edge);
        for t in 1..l {
            vertices.push(SubVertex::EdgePoint { edge, t });
            levels.push(if t % 2 == 0 { check.level } else { 1 });
            regions.push(if check.level == 0 {
                Region::S(check.index)
            } else {
                Region::T(q)
            });
        }
    }
    for (face, f) in complex.faces().iter().enumerate() {
        let region = match f.x_check() {
            Some(x) => Region::S(x),
            None => Region::Dummy2Interior,
        };
        for i in 1..l {
            for j in 1..l {
                vertices.push(SubVertex::FacePoint { face, i, j });
                levels.push(parity_level(i, j));
                regions.push(region);
            }
        }
    }
    debug_assert_eq!(vertices.len(), total);

    let mut sub = SubdividedComplex {
        l,
        complex: complex.clone(),
        vertices,
        levels,
        regions,
        edges: Vec::new(),
        adjacency: Vec::new(),
        by_level: Default::default(),
        level_pos: vec![0; total],
    };

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for e in 0..n_edges {
        for t in 0..l {
            let (a, b) = (sub.edge_point_id(e, t), sub.edge_point_id(e, t + 1));
            edges.push((a.min(b), a.max(b)));
        }
    }
    let per_face = par::map_range(exec, 0..n_faces, |f| {
        let mut out = Vec::new();
        for i in 0..=l {
            for j in 0..=l {
                let Some(a) = sub.frame_vertex(f, i, j) else {
                    continue;
                };
                for (di, dj) in [(1, 0), (0, 1)] {
                    if let Some(b) = sub.frame_vertex(f, i + di, j + dj) {
                        out.push((a.min(b), a.max(b)));
                    }
                }
            }
        }
        out
    });
    edges.extend(per_face.into_iter().flatten());
    edges.sort_unstable();
    edges.dedup();

    let mut adjacency = vec![Vec::new(); total];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for list in adjacency.iter_mut() {
        list.sort_unstable();
    }
    for v in 0..total {
        let lv = sub.levels[v] as usize;
        sub.level_pos[v] = sub.by_level[lv].len();
        sub.by_level[lv].push(v);
    }
    sub.edges = edges;
    sub.adjacency = adjacency;

    for &(a, b) in &sub.edges {
        let (la, lb) = (sub.levels[a], sub.levels[b]);
        if la.abs_diff(lb) != 1 {
            return Err(Error::Invariant(format!(
                "edge {:?}–{:?} joins levels {la} and {lb}",
                sub.vertices[a], sub.vertices[b]
            )));
        }
    }
    Ok(sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{four_qubit, steane};
    use crate::complex::DummyPolicy;

    fn single_face() -> SquareSubspaceComplex {
        let code = CssCode::from_supports("face", 2, &[vec![0, 1]], &[vec![0, 1]]).unwrap();
        SquareSubspaceComplex::build(&code, DummyPolicy::None).unwrap()
    }

    #[test]
    fn rejects_bad_l() {
        for l in [0, 1, 2, 4] {
            assert!(matches!(
                subdivide(&single_face(), l),
                Err(Error::Argument(_))
            ));
        }
    }

    #[test]
    fn single_face_grid() {
        let sub = subdivide(&single_face(), 3).unwrap();
        assert_eq!(sub.vertex_count(), 16);
        assert_eq!(sub.level_vertices(0).len(), 4);
        assert_eq!(sub.level_vertices(1).len(), 8);
        assert_eq!(sub.level_vertices(2).len(), 4);
        assert_eq!(sub.edges().len(), 24);
        for i in 0..=3 {
            for j in 0..=3 {
                let v = sub.frame_vertex(0, i, j).unwrap();
                assert_eq!(sub.level(v), parity_level(i, j), "({i},{j})");
            }
        }
        let code = sub.extract_code().unwrap();
        for x in code.a_x().rows() {
            for z in code.a_z().rows() {
                assert!(matches!(x.overlap(z), 0 | 2));
            }
        }
    }

    #[test]
    fn shared_edges_are_identified() {
        // two full faces on the X check share the edge {x0, q0}
        let code =
            CssCode::from_supports("pair", 3, &[vec![0, 1, 2]], &[vec![0, 1], vec![0, 2]]).unwrap();
        let cx = SquareSubspaceComplex::build(&code, DummyPolicy::All).unwrap();
        let sub = subdivide(&cx, 3).unwrap();
        let e = cx.edge_id(TannerVertex::x(0), 0).unwrap();
        let records = sub
            .vertices()
            .iter()
            .filter(|v| matches!(v, SubVertex::EdgePoint { edge, .. } if *edge == e))
            .count();
        assert_eq!(records, 2);
        assert_eq!(sub.frame_vertex(0, 0, 1), sub.frame_vertex(1, 0, 1));
    }

    #[test]
    fn four_qubit_dimension_and_size() {
        let cx = SquareSubspaceComplex::build(&four_qubit(), DummyPolicy::All).unwrap();
        let sub = subdivide(&cx, 3).unwrap();
        let code = sub.extract_code().unwrap();
        assert_eq!(code.dimension(), 2);
        // corners 4, edge points 8·2, full faces 2·(2 mixed), dummy0 6·(2 mixed), dummy2 6·(2 mixed)
        assert_eq!(sub.stats().counts[1], 4 + 8 + 2 * 2 + 6 * 2 + 6 * 2);
        assert!(sub.stats().all_hold());
    }

    #[test]
    fn steane_dimension_at_several_l() {
        let cx = SquareSubspaceComplex::build(&steane(), DummyPolicy::All).unwrap();
        for l in [3, 5] {
            let code = subdivide(&cx, l).unwrap().extract_code().unwrap();
            assert_eq!(code.dimension(), 1);
        }
    }

    #[test]
    fn zero_face_complex_keeps_corners() {
        let code = CssCode::from_supports("bare", 3, &[], &[]).unwrap();
        let cx = SquareSubspaceComplex::build(&code, DummyPolicy::All).unwrap();
        let sub = subdivide(&cx, 5).unwrap();
        assert_eq!(sub.stats().counts, [0, 3, 0]);
    }

    #[test]
    fn growth_between_l3_and_l5() {
        let cx = SquareSubspaceComplex::build(&four_qubit(), DummyPolicy::All).unwrap();
        let a = subdivide(&cx, 3).unwrap().stats().counts[1] as f64;
        let b = subdivide(&cx, 5).unwrap().stats().counts[1] as f64;
        let ratio = b / a;
        assert!(
            (25.0 / 9.0 / 2.0..=25.0 / 9.0 * 2.0).contains(&ratio),
            "{ratio}"
        );
    }

    #[test]
    fn interior_degrees_and_chain_lengths() {
        let cx = SquareSubspaceComplex::build(&steane(), DummyPolicy::All).unwrap();
        let sub = subdivide(&cx, 5).unwrap();
        for v in 0..sub.vertex_count() {
            if let SubVertex::FacePoint { .. } = sub.vertex(v) {
                assert!(sub.neighbors(v).len() <= 4);
            }
        }
        for e in 0..cx.edge_count() {
            let n = sub
                .vertices()
                .iter()
                .filter(|v| matches!(v, SubVertex::EdgePoint { edge, .. } if *edge == e))
                .count();
            assert_eq!(n, 4);
        }
    }
}
