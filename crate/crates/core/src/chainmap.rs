//! The chain map from the original complex to the subdivided one.
//!
//! An X check is sent to every level-0 vertex of its S region, a qubit to
//! every level-1 vertex of its T region and a Z check to its own corner.

use serde::{Deserialize, Serialize};

use crate::code::{CssCode, Side};
use crate::complex::TannerVertex;
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVector};
use crate::subdivide::{Region, SubdividedComplex};

/// Blocks stored column-wise: `f0[x]`, `f1[q]`, `f2[z]` are vectors over the
/// subdivided level 0, 1, 2 vertices (in level order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub f0: Vec<BitVector>,
    pub f1: Vec<BitVector>,
    pub f2: Vec<BitVector>,
    /// Qubits with no Z-check edge; their T region is the corner alone.
    pub idle_qubits: Vec<usize>,
}

impl ChainMap {
    pub fn build(sub: &SubdividedComplex) -> ChainMap {
        let code = sub.code();
        let sizes = [0u8, 1, 2].map(|l| sub.level_vertices(l).len());
        let mut f0 = vec![BitVector::zeros(sizes[0]); code.m_x()];
        let mut f1 = vec![BitVector::zeros(sizes[1]); code.n()];
        let mut f2 = vec![BitVector::zeros(sizes[2]); code.m_z()];
        for v in 0..sub.vertex_count() {
            let pos = sub.level_position(v);
            match (sub.region(v), sub.level(v)) {
                (Region::S(x), 0) => f0[x].set(pos, true),
                (Region::T(q), 1) => f1[q].set(pos, true),
                _ => {}
            }
        }
        for (z, col) in f2.iter_mut().enumerate() {
            col.set(sub.level_position(sub.corner_id(TannerVertex::z(z))), true);
        }
        ChainMap {
            f0,
            f1,
            f2,
            idle_qubits: code.idle_qubits(Side::X),
        }
    }

    pub fn f0_matrix(&self, rows: usize) -> BitMatrix {
        BitMatrix::from_columns(rows, &self.f0)
    }

    pub fn f1_matrix(&self, rows: usize) -> BitMatrix {
        BitMatrix::from_columns(rows, &self.f1)
    }

    pub fn f2_matrix(&self, rows: usize) -> BitMatrix {
        BitMatrix::from_columns(rows, &self.f2)
    }

    /// `f1 · c1`.
    pub fn lift_logical(&self, c1: &BitVector) -> BitVector {
        assert_eq!(c1.len(), self.f1.len(), "length mismatch");
        let len = self.f1.first().map_or(0, BitVector::len);
        let mut out = BitVector::zeros(len);
        for q in c1.support() {
            out.xor_assign(&self.f1[q]);
        }
        out
    }

    pub fn to_file(&self) -> ChainMapFile {
        let supports = |cols: &[BitVector]| cols.iter().map(BitVector::support_vec).collect();
        ChainMapFile {
            schema: CHAINMAP_SCHEMA.to_string(),
            f0: supports(&self.f0),
            f1: supports(&self.f1),
            f2: supports(&self.f2),
            idle_qubits: self.idle_qubits.clone(),
        }
    }
}

/// Both squares of the chain-map diagram, checked as matrix identities:
/// `δ0ᴸ·f0 = f1·δ0` and `δ1ᴸ·f1 = f2·δ1` with `δ0 = a_xᵀ`, `δ1 = a_z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMapCheck {
    pub level0: bool,
    pub level1: bool,
}

impl ChainMapCheck {
    pub fn holds(&self) -> bool {
        self.level0 && self.level1
    }
}

pub fn verify_chain_map(code: &CssCode, code_l: &CssCode, map: &ChainMap) -> Result<ChainMapCheck> {
    let shape = |what: &str, found: usize, expected: usize| {
        if found == expected {
            Ok(())
        } else {
            Err(Error::Shape {
                what: what.into(),
                found,
                expected,
            })
        }
    };
    shape("f0 columns", map.f0.len(), code.m_x())?;
    shape("f1 columns", map.f1.len(), code.n())?;
    shape("f2 columns", map.f2.len(), code.m_z())?;
    let (m0, m1, m2) = (code_l.m_x(), code_l.n(), code_l.m_z());
    for (what, cols, len) in [
        ("f0 rows", &map.f0, m0),
        ("f1 rows", &map.f1, m1),
        ("f2 rows", &map.f2, m2),
    ] {
        if let Some(c) = cols.iter().find(|c| c.len() != len) {
            shape(what, c.len(), len)?;
        }
    }
    let f0 = map.f0_matrix(m0);
    let f1 = map.f1_matrix(m1);
    let f2 = map.f2_matrix(m2);
    let d0 = code.a_x().transpose();
    let d0_l = code_l.a_x().transpose();
    let level0 = d0_l.mul(&f0) == f1.mul(&d0);
    let level1 = code_l.a_z().mul(&f1) == f2.mul(code.a_z());
    Ok(ChainMapCheck { level0, level1 })
}

/// `k` of the original code equals `k` of the subdivided code.
pub fn verify_dimension_preserved(code: &CssCode, sub: &SubdividedComplex) -> Result<bool> {
    Ok(code.dimension() == sub.extract_code()?.dimension())
}

pub const CHAINMAP_SCHEMA: &str = "geolocal.chainmap/1";

/// Column supports of the three blocks; indices are positions within the
/// subdivided level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMapFile {
    pub schema: String,
    pub f0: Vec<Vec<usize>>,
    pub f1: Vec<Vec<usize>>,
    pub f2: Vec<Vec<usize>>,
    pub idle_qubits: Vec<usize>,
}
