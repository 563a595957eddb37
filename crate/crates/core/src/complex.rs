//! The square complex on a Tanner graph.
//!
//! Vertices are the X checks, qubits and Z checks; edges are the check-qubit
//! incidences. A full face is an X check, a Z check and two of their common
//! qubits; the common qubits of every (X, Z) pair are split into such pairs.
//! Dummy faces sit on two edges of one check and close the check's link.
//! Their fourth corner and opposite edges are never materialized.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::code::CssCode;
use crate::error::{Error, Result};

/// Level of a Tanner vertex: 0 for X checks, 1 for qubits, 2 for Z checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TannerVertex {
    pub level: u8,
    pub index: usize,
}

impl TannerVertex {
    pub fn x(index: usize) -> Self {
        Self { level: 0, index }
    }

    pub fn qubit(index: usize) -> Self {
        Self { level: 1, index }
    }

    pub fn z(index: usize) -> Self {
        Self { level: 2, index }
    }

    pub fn is_check(self) -> bool {
        self.level != 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceKind {
    Full,
    Dummy0,
    Dummy2,
}

/// A square face. Qubit pairs are stored with `qa < qb`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    Full {
        x: usize,
        z: usize,
        qa: usize,
        qb: usize,
    },
    /// Dummy face at X check `center`.
    Dummy0 { center: usize, qa: usize, qb: usize },
    /// Dummy face at Z check `center`.
    Dummy2 { center: usize, qa: usize, qb: usize },
}

impl Face {
    pub fn kind(&self) -> FaceKind {
        match self {
            Face::Full { .. } => FaceKind::Full,
            Face::Dummy0 { .. } => FaceKind::Dummy0,
            Face::Dummy2 { .. } => FaceKind::Dummy2,
        }
    }

    pub fn qubits(&self) -> (usize, usize) {
        match *self {
            Face::Full { qa, qb, .. }
            | Face::Dummy0 { qa, qb, .. }
            | Face::Dummy2 { qa, qb, .. } => (qa, qb),
        }
    }

    /// The X check on the face, if any.
    pub fn x_check(&self) -> Option<usize> {
        match *self {
            Face::Full { x, .. } | Face::Dummy0 { center: x, .. } => Some(x),
            Face::Dummy2 { .. } => None,
        }
    }

    /// The Z check on the face, if any.
    pub fn z_check(&self) -> Option<usize> {
        match *self {
            Face::Full { z, .. } | Face::Dummy2 { center: z, .. } => Some(z),
            Face::Dummy0 { .. } => None,
        }
    }

    /// Whether the face touches Tanner vertex `v`.
    pub fn touches(&self, v: TannerVertex) -> bool {
        let (qa, qb) = self.qubits();
        match v.level {
            0 => self.x_check() == Some(v.index),
            1 => qa == v.index || qb == v.index,
            _ => self.z_check() == Some(v.index),
        }
    }
}

/// Which dummy faces to add at each check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DummyPolicy {
    /// One dummy face for every pair of edges at every check.
    #[default]
    All,
    /// No dummy faces; every link must already be connected.
    None,
    /// A path through the edges of each check in qubit order. Connects every
    /// link with fewer faces than `All`.
    Spanning,
}

impl std::str::FromStr for DummyPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(DummyPolicy::All),
            "none" => Ok(DummyPolicy::None),
            "spanning" => Ok(DummyPolicy::Spanning),
            other => Err(Error::Argument(format!("unknown dummy policy {other:?}"))),
        }
    }
}

/// Link of a check: one vertex per incident edge (named by its qubit), one
/// edge per incident face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub qubits: Vec<usize>,
    /// Pairs of positions in `qubits`.
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareSubspaceComplex {
    code: CssCode,
    /// Qubit neighbours of each X check, ascending.
    x_nbrs: Vec<Vec<usize>>,
    /// Qubit neighbours of each Z check, ascending.
    z_nbrs: Vec<Vec<usize>>,
    /// First edge id of each X check; Z edges follow all X edges.
    x_offset: Vec<usize>,
    z_offset: Vec<usize>,
    faces: Vec<Face>,
}

/// Full faces from pairing the common qubits of every (X, Z) pair: sorted
/// ascending and paired consecutively.
pub fn pair_common_neighbors(code: &CssCode) -> Result<Vec<Face>> {
    let mut faces = Vec::new();
    for (x, rx) in code.a_x().rows().iter().enumerate() {
        for (z, rz) in code.a_z().rows().iter().enumerate() {
            let common = rx.and(rz).support_vec();
            if common.len() % 2 == 1 {
                return Err(Error::NotCommuting {
                    x,
                    z,
                    shared: common,
                });
            }
            for pair in common.chunks(2) {
                faces.push(Face::Full {
                    x,
                    z,
                    qa: pair[0],
                    qb: pair[1],
                });
            }
        }
    }
    Ok(faces)
}

fn offsets(nbrs: &[Vec<usize>], start: usize) -> Vec<usize> {
    nbrs.iter()
        .scan(start, |acc, l| {
            let here = *acc;
            *acc += l.len();
            Some(here)
        })
        .collect()
}

impl SquareSubspaceComplex {
    /// Full faces by pairing, then dummy faces per `policy`.
    pub fn build(code: &CssCode, policy: DummyPolicy) -> Result<Self> {
        code.require_commuting()?;
        let mut cx = Self::bare(code, pair_common_neighbors(code)?);
        cx.add_dummy_faces(policy);
        if policy == DummyPolicy::None {
            cx.require_connected_links()?;
        }
        Ok(cx)
    }

    /// A complex with a given face list, checked by [`Self::validate_faces`].
    pub fn from_faces(code: &CssCode, faces: Vec<Face>) -> Result<Self> {
        code.require_commuting()?;
        let cx = Self::bare(code, faces);
        cx.validate_faces()?;
        Ok(cx)
    }

    fn bare(code: &CssCode, faces: Vec<Face>) -> Self {
        let x_nbrs = code.a_x().supports();
        let z_nbrs = code.a_z().supports();
        let x_offset = offsets(&x_nbrs, 0);
        let total_x: usize = x_nbrs.iter().map(Vec::len).sum();
        let z_offset = offsets(&z_nbrs, total_x);
        Self {
            code: code.clone(),
            x_nbrs,
            z_nbrs,
            x_offset,
            z_offset,
            faces,
        }
    }

    /// Appends dummy faces: every X check first, then every Z check.
    pub fn add_dummy_faces(&mut self, policy: DummyPolicy) {
        let pairs = |nbrs: &[usize]| -> Vec<(usize, usize)> {
            match policy {
                DummyPolicy::None => Vec::new(),
                DummyPolicy::Spanning => nbrs.windows(2).map(|w| (w[0], w[1])).collect(),
                DummyPolicy::All => (0..nbrs.len())
                    .flat_map(|a| (a + 1..nbrs.len()).map(move |b| (a, b)))
                    .map(|(a, b)| (nbrs[a], nbrs[b]))
                    .collect(),
            }
        };
        for (center, nbrs) in self.x_nbrs.iter().enumerate() {
            for (qa, qb) in pairs(nbrs) {
                self.faces.push(Face::Dummy0 { center, qa, qb });
            }
        }
        for (center, nbrs) in self.z_nbrs.iter().enumerate() {
            for (qa, qb) in pairs(nbrs) {
                self.faces.push(Face::Dummy2 { center, qa, qb });
            }
        }
    }

    /// Checks every face against the Tanner graph: all incidences exist,
    /// qubit pairs are ordered and distinct, and for each (X, Z) pair the full
    /// faces partition their common qubits into pairs.
    pub fn validate_faces(&self) -> Result<()> {
        let mut per_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (f, face) in self.faces.iter().enumerate() {
            let (qa, qb) = face.qubits();
            let bad = |why: &str| Err(Error::Validation(format!("face {f} {face:?}: {why}")));
            if qa >= qb {
                return bad("qubits must be distinct and ordered qa < qb");
            }
            if qb >= self.code.n() {
                return bad("qubit out of range");
            }
            if let Some(x) = face.x_check() {
                if x >= self.code.m_x()
                    || !self.code.a_x().get(x, qa)
                    || !self.code.a_x().get(x, qb)
                {
                    return bad("missing X-check incidence");
                }
            }
            if let Some(z) = face.z_check() {
                if z >= self.code.m_z()
                    || !self.code.a_z().get(z, qa)
                    || !self.code.a_z().get(z, qb)
                {
                    return bad("missing Z-check incidence");
                }
            }
            if let Face::Full { x, z, .. } = *face {
                per_pair.entry((x, z)).or_default().extend([qa, qb]);
            }
        }
        for (x, rx) in self.code.a_x().rows().iter().enumerate() {
            for (z, rz) in self.code.a_z().rows().iter().enumerate() {
                let common = rx.and(rz).support_vec();
                let mut used = per_pair.remove(&(x, z)).unwrap_or_default();
                used.sort_unstable();
                if used != common {
                    return Err(Error::Validation(format!(
                        "full faces on X check {x} and Z check {z} use qubits {used:?}, \
                         expected each of {common:?} exactly once"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn code(&self) -> &CssCode {
        &self.code
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn full_face_count(&self) -> usize {
        self.faces
            .iter()
            .filter(|f| f.kind() == FaceKind::Full)
            .count()
    }

    pub fn dummy_face_count(&self) -> usize {
        self.faces.len() - self.full_face_count()
    }

    /// Qubits of the edges at a check.
    pub fn neighbors(&self, v: TannerVertex) -> &[usize] {
        match v.level {
            0 => &self.x_nbrs[v.index],
            2 => &self.z_nbrs[v.index],
            _ => panic!("neighbors() takes a check, got {v:?}"),
        }
    }

    /// Number of Tanner edges: X edges first, then Z edges.
    pub fn edge_count(&self) -> usize {
        self.x_edge_count() + self.z_nbrs.iter().map(Vec::len).sum::<usize>()
    }

    pub fn x_edge_count(&self) -> usize {
        self.x_nbrs.iter().map(Vec::len).sum()
    }

    /// Id of the edge between check `v` and qubit `q`.
    pub fn edge_id(&self, v: TannerVertex, q: usize) -> Option<usize> {
        let (nbrs, offset) = match v.level {
            0 => (&self.x_nbrs, &self.x_offset),
            2 => (&self.z_nbrs, &self.z_offset),
            _ => return None,
        };
        let pos = nbrs.get(v.index)?.binary_search(&q).ok()?;
        Some(offset[v.index] + pos)
    }

    /// `(check, qubit)` of an edge id.
    pub fn edge(&self, e: usize) -> (TannerVertex, usize) {
        let (nbrs, offset, level) = if e < self.x_edge_count() {
            (&self.x_nbrs, &self.x_offset, 0)
        } else {
            (&self.z_nbrs, &self.z_offset, 2)
        };
        let c = offset.partition_point(|&o| o <= e) - 1;
        // skip checks without edges that share the same offset
        let c = (0..=c)
            .rev()
            .find(|&c| e - offset[c] < nbrs[c].len())
            .expect("edge id in range");
        (TannerVertex { level, index: c }, nbrs[c][e - offset[c]])
    }

    /// Edge ids at `v` (N^E(v)).
    pub fn edges_at(&self, v: TannerVertex) -> Vec<usize> {
        match v.level {
            1 => {
                let mut out: Vec<usize> = (0..self.code.m_x())
                    .filter_map(|x| self.edge_id(TannerVertex::x(x), v.index))
                    .collect();
                out.extend(
                    (0..self.code.m_z()).filter_map(|z| self.edge_id(TannerVertex::z(z), v.index)),
                );
                out
            }
            _ => {
                let start = if v.level == 0 {
                    self.x_offset[v.index]
                } else {
                    self.z_offset[v.index]
                };
                (start..start + self.neighbors(v).len()).collect()
            }
        }
    }

    /// Face ids touching `v` (N^F(v)).
    pub fn faces_at(&self, v: TannerVertex) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].touches(v))
            .collect()
    }

    /// Link of a check, with connectivity from union-find.
    pub fn link(&self, v: TannerVertex) -> Link {
        assert!(v.is_check(), "link() takes a check, got {v:?}");
        let qubits = self.neighbors(v).to_vec();
        let pos = |q: usize| qubits.binary_search(&q).expect("face qubit is a neighbour");
        let edges: Vec<(usize, usize)> = self
            .faces_at(v)
            .into_iter()
            .map(|f| {
                let (qa, qb) = self.faces[f].qubits();
                (pos(qa), pos(qb))
            })
            .collect();
        let mut uf = UnionFind::<usize>::new(qubits.len());
        for &(a, b) in &edges {
            uf.union(a, b);
        }
        let connected = (1..qubits.len()).all(|i| uf.equiv(0, i));
        Link {
            qubits,
            edges,
            connected,
        }
    }

    /// Every check with at least one edge, with a disconnected link.
    pub fn disconnected_links(&self) -> Vec<TannerVertex> {
        let checks = (0..self.code.m_x())
            .map(TannerVertex::x)
            .chain((0..self.code.m_z()).map(TannerVertex::z));
        checks.filter(|&v| !self.link(v).connected).collect()
    }

    pub fn require_connected_links(&self) -> Result<()> {
        match self.disconnected_links().first() {
            None => Ok(()),
            Some(v) => Err(Error::Validation(format!(
                "link of check {v:?} is disconnected; add dummy faces or minimalize a reasonable code"
            ))),
        }
    }

    /// Vertices of the downward-closed completion: Tanner vertices plus one
    /// extra corner per dummy face.
    pub fn completion_vertex_count(&self) -> usize {
        self.code.m_x() + self.code.n() + self.code.m_z() + self.dummy_face_count()
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            schema: COMPLEX_SCHEMA.to_string(),
            vertices: VertexCounts {
                x_checks: self.code.m_x(),
                qubits: self.code.n(),
                z_checks: self.code.m_z(),
            },
            faces: self.faces.iter().map(FaceRecord::from).collect(),
        }
    }
}

pub const COMPLEX_SCHEMA: &str = "geolocal.complex/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCounts {
    pub x_checks: usize,
    pub qubits: usize,
    pub z_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub kind: FaceKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub z: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub center_level: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub center: Option<usize>,
    pub qa: usize,
    pub qb: usize,
}

impl From<&Face> for FaceRecord {
    fn from(f: &Face) -> Self {
        let (qa, qb) = f.qubits();
        let mut r = FaceRecord {
            kind: f.kind(),
            x: None,
            z: None,
            center_level: None,
            center: None,
            qa,
            qb,
        };
        match *f {
            Face::Full { x, z, .. } => {
                r.x = Some(x);
                r.z = Some(z);
            }
            Face::Dummy0 { center, .. } => {
                r.center_level = Some(0);
                r.center = Some(center);
            }
            Face::Dummy2 { center, .. } => {
                r.center_level = Some(2);
                r.center = Some(center);
            }
        }
        r
    }
}

impl TryFrom<&FaceRecord> for Face {
    type Error = Error;

    fn try_from(r: &FaceRecord) -> Result<Self> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::Format(format!("{:?} face without {what}", r.kind)))
        };
        let (qa, qb) = (r.qa, r.qb);
        Ok(match r.kind {
            FaceKind::Full => Face::Full {
                x: need(r.x, "x")?,
                z: need(r.z, "z")?,
                qa,
                qb,
            },
            FaceKind::Dummy0 => Face::Dummy0 {
                center: need(r.center, "center")?,
                qa,
                qb,
            },
            FaceKind::Dummy2 => Face::Dummy2 {
                center: need(r.center, "center")?,
                qa,
                qb,
            },
        })
    }
}

/// JSON form of a complex; the code travels in its own file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub schema: String,
    pub vertices: VertexCounts,
    pub faces: Vec<FaceRecord>,
}

impl ComplexFile {
    pub fn to_complex(&self, code: &CssCode) -> Result<SquareSubspaceComplex> {
        if self.schema != COMPLEX_SCHEMA {
            return Err(Error::Format(format!(
                "unsupported schema {:?}",
                self.schema
            )));
        }
        let v = &self.vertices;
        for (what, found, expected) in [
            ("x_checks", v.x_checks, code.m_x()),
            ("qubits", v.qubits, code.n()),
            ("z_checks", v.z_checks, code.m_z()),
        ] {
            if found != expected {
                return Err(Error::Shape {
                    what: format!("complex {what}"),
                    found,
                    expected,
                });
            }
        }
        let faces = self
            .faces
            .iter()
            .map(Face::try_from)
            .collect::<Result<Vec<_>>>()?;
        SquareSubspaceComplex::from_faces(code, faces)
    }
}
