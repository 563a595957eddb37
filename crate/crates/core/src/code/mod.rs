//! CSS codes: representation, validation and parameters.

mod catalog;
mod io;
mod minimal;
mod params;

pub use catalog::{four_qubit, hamming_7, random_commuting, repetition_pair, steane};
pub use io::{parse_alist, read_code, write_alist, CodeFile, CODE_SCHEMA};
pub use minimal::{
    is_reasonable, is_reasonable_full, minimalize, minimalize_code, ReasonableReport,
};
pub use params::{
    distance, energy_barrier, parameters, CodeParameters, DistanceMethod, DistanceValue,
    SideDistance,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVector};

/// Which logical type is meant.
///
/// The X side concerns X-type chains: they must commute with the Z checks
/// (`a_z · c = 0`), are trivial modulo the X checks (rows of `a_x`) and
/// their energy counts violated Z checks. The Z side swaps the matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Z,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Z,
            Side::Z => Side::X,
        }
    }
}

/// A CSS code given by X-check and Z-check supports over `n` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub name: String,
    a_x: BitMatrix,
    a_z: BitMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub commutes: bool,
    pub delta_max: usize,
    pub n: usize,
    pub m_x: usize,
    pub m_z: usize,
    /// First non-commuting `(x, z)` pair and the qubits they share.
    pub offending: Option<(usize, usize, Vec<usize>)>,
}

impl CssCode {
    /// Builds a code; both matrices must have the same number of columns.
    /// Commutation is not checked here, see [`CssCode::validate`].
    pub fn new(name: impl Into<String>, a_x: BitMatrix, a_z: BitMatrix) -> Result<Self> {
        if a_x.ncols() != a_z.ncols() {
            return Err(Error::Shape {
                what: "a_z columns".into(),
                found: a_z.ncols(),
                expected: a_x.ncols(),
            });
        }
        Ok(Self {
            name: name.into(),
            a_x,
            a_z,
        })
    }

    /// Builds a code and rejects it unless the checks commute.
    pub fn checked(name: impl Into<String>, a_x: BitMatrix, a_z: BitMatrix) -> Result<Self> {
        let code = Self::new(name, a_x, a_z)?;
        code.require_commuting()?;
        Ok(code)
    }

    pub fn from_supports(
        name: impl Into<String>,
        n: usize,
        hx: &[Vec<usize>],
        hz: &[Vec<usize>],
    ) -> Result<Self> {
        for (what, rows) in [("hx", hx), ("hz", hz)] {
            for (r, row) in rows.iter().enumerate() {
                if let Some(&bad) = row.iter().find(|&&q| q >= n) {
                    return Err(Error::Shape {
                        what: format!("{what} row {r} column index"),
                        found: bad,
                        expected: n,
                    });
                }
                let mut sorted = row.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Format(format!("{what} row {r} repeats a column")));
                }
            }
        }
        Self::new(
            name,
            BitMatrix::from_supports(n, hx),
            BitMatrix::from_supports(n, hz),
        )
    }

    pub fn n(&self) -> usize {
        self.a_x.ncols()
    }

    pub fn m_x(&self) -> usize {
        self.a_x.nrows()
    }

    pub fn m_z(&self) -> usize {
        self.a_z.nrows()
    }

    pub fn a_x(&self) -> &BitMatrix {
        &self.a_x
    }

    pub fn a_z(&self) -> &BitMatrix {
        &self.a_z
    }

    /// Checks whose kernel holds the logicals of `side`.
    pub fn check_matrix(&self, side: Side) -> &BitMatrix {
        match side {
            Side::X => &self.a_z,
            Side::Z => &self.a_x,
        }
    }

    /// Stabilizers of the same type as the logicals of `side`.
    pub fn stabilizer_matrix(&self, side: Side) -> &BitMatrix {
        match side {
            Side::X => &self.a_x,
            Side::Z => &self.a_z,
        }
    }

    /// The code with the roles of X and Z exchanged.
    pub fn swapped(&self) -> CssCode {
        CssCode {
            name: self.name.clone(),
            a_x: self.a_z.clone(),
            a_z: self.a_x.clone(),
        }
    }

    /// Largest row or column weight over both matrices.
    pub fn delta_max(&self) -> usize {
        let rows = self
            .a_x
            .row_weights()
            .into_iter()
            .chain(self.a_z.row_weights());
        let cols = self
            .a_x
            .col_weights()
            .into_iter()
            .chain(self.a_z.col_weights());
        rows.chain(cols).max().unwrap_or(0)
    }

    /// First pair of checks with odd overlap.
    pub fn first_conflict(&self) -> Option<(usize, usize, Vec<usize>)> {
        for (x, rx) in self.a_x.rows().iter().enumerate() {
            for (z, rz) in self.a_z.rows().iter().enumerate() {
                if rx.dot(rz) {
                    return Some((x, z, rx.and(rz).support_vec()));
                }
            }
        }
        None
    }

    pub fn validate(&self) -> ValidationReport {
        let offending = self.first_conflict();
        ValidationReport {
            commutes: offending.is_none(),
            delta_max: self.delta_max(),
            n: self.n(),
            m_x: self.m_x(),
            m_z: self.m_z(),
            offending,
        }
    }

    pub fn require_commuting(&self) -> Result<()> {
        match self.first_conflict() {
            None => Ok(()),
            Some((x, z, shared)) => Err(Error::NotCommuting { x, z, shared }),
        }
    }

    /// `k = n − rank(a_x) − rank(a_z)`.
    pub fn dimension(&self) -> usize {
        self.n() - self.a_x.rank() - self.a_z.rank()
    }

    /// Whether `c` is a nontrivial logical of `side`.
    pub fn is_logical(&self, side: Side, c: &BitVector) -> bool {
        self.check_matrix(side).mul_vec(c).is_zero() && !self.stabilizer_matrix(side).in_rowspace(c)
    }

    /// Representatives of a basis of the logicals of `side`: kernel vectors
    /// of the check matrix that are independent modulo the stabilizers.
    pub fn logical_basis(&self, side: Side) -> Vec<BitVector> {
        let mut span = self.stabilizer_matrix(side).echelon().clone();
        self.check_matrix(side)
            .kernel_basis()
            .into_iter()
            .filter(|v| span.insert(v))
            .collect()
    }

    /// Qubits outside every row of `check_matrix(side)`, e.g. `Side::X`
    /// gives qubits without a Z check.
    pub fn idle_qubits(&self, side: Side) -> Vec<usize> {
        self.check_matrix(side)
            .col_weights()
            .into_iter()
            .enumerate()
            .filter(|&(_, w)| w == 0)
            .map(|(q, _)| q)
            .collect()
    }
}
