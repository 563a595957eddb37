//! Code files: a JSON container for both check families, and MacKay alist
//! for single matrices.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CssCode;
use crate::error::{Error, Result};
use crate::f2::BitMatrix;

pub const CODE_SCHEMA: &str = "geolocal.code/1";

/// JSON form of a code. `hx` rows are X checks, `hz` rows are Z checks;
/// entries are 0-based qubit indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    #[serde(default = "default_schema")]
    pub schema: String,
    #[serde(default)]
    pub name: String,
    pub n: usize,
    pub m_x: usize,
    pub m_z: usize,
    pub hx: Vec<Vec<usize>>,
    pub hz: Vec<Vec<usize>>,
}

fn default_schema() -> String {
    CODE_SCHEMA.to_string()
}

impl CodeFile {
    pub fn from_code(code: &CssCode) -> Self {
        Self {
            schema: CODE_SCHEMA.to_string(),
            name: code.name.clone(),
            n: code.n(),
            m_x: code.m_x(),
            m_z: code.m_z(),
            hx: code.a_x().supports(),
            hz: code.a_z().supports(),
        }
    }

    pub fn to_code(&self) -> Result<CssCode> {
        if self.schema != CODE_SCHEMA {
            return Err(Error::Format(format!(
                "unsupported schema {:?}",
                self.schema
            )));
        }
        for (what, rows, m) in [
            ("hx rows", &self.hx, self.m_x),
            ("hz rows", &self.hz, self.m_z),
        ] {
            if rows.len() != m {
                return Err(Error::Shape {
                    what: what.into(),
                    found: rows.len(),
                    expected: m,
                });
            }
        }
        CssCode::from_supports(self.name.clone(), self.n, &self.hx, &self.hz)
    }
}

/// Reads a JSON code file. Commutation is not checked.
pub fn read_code(path: &Path) -> Result<CssCode> {
    let text = std::fs::read_to_string(path)?;
    let file: CodeFile = serde_json::from_str(&text)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    file.to_code()
}

/// Parses a MacKay alist matrix. The header gives `cols rows`, then the
/// maximum column and row weights, the per-column and per-row weights, then
/// the column lists and the row lists with 1-based indices (0 pads short
/// lists). Row and column lists must describe the same matrix.
pub fn parse_alist(text: &str) -> Result<BitMatrix> {
    let mut nums = text.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|e| Error::Format(format!("alist token {t:?}: {e}")))
    });
    let mut next = |what: &str| -> Result<usize> {
        nums.next()
            .unwrap_or_else(|| Err(Error::Format(format!("alist ends before {what}"))))
    };
    let cols = next("column count")?;
    let rows = next("row count")?;
    let max_col = next("max column weight")?;
    let max_row = next("max row weight")?;
    let col_w = (0..cols)
        .map(|_| next("column weights"))
        .collect::<Result<Vec<_>>>()?;
    let row_w = (0..rows)
        .map(|_| next("row weights"))
        .collect::<Result<Vec<_>>>()?;
    let mut read_lists =
        |count: usize, width: usize, weights: &[usize], bound: usize, what: &str| {
            let mut out = Vec::with_capacity(count);
            for (i, &w) in weights.iter().enumerate() {
                let mut list = Vec::with_capacity(w);
                for _ in 0..width {
                    let v = next(what)?;
                    if v == 0 {
                        continue;
                    }
                    if v > bound {
                        return Err(Error::Shape {
                            what: format!("alist {what} entry"),
                            found: v,
                            expected: bound,
                        });
                    }
                    list.push(v - 1);
                }
                if list.len() != w {
                    return Err(Error::Format(format!(
                        "alist {what} {i}: weight {} declared {w}",
                        list.len()
                    )));
                }
                out.push(list);
            }
            Ok(out)
        };
    let col_lists = read_lists(cols, max_col, &col_w, rows, "column")?;
    let row_lists = read_lists(rows, max_row, &row_w, cols, "row")?;
    let m = BitMatrix::from_supports(cols, &row_lists);
    let mut by_col = m.columns();
    let mut declared = col_lists;
    for l in by_col.iter_mut().chain(declared.iter_mut()) {
        l.sort_unstable();
    }
    if by_col != declared {
        return Err(Error::Format("alist row and column lists disagree".into()));
    }
    Ok(m)
}

pub fn write_alist(m: &BitMatrix) -> String {
    let cols = m.columns();
    let rows = m.supports();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let join =
        |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!("{} {}\n{} {}\n", m.ncols(), m.nrows(), max_col, max_row);
    out += &join(&mut cols.iter().map(Vec::len));
    out += "\n";
    out += &join(&mut rows.iter().map(Vec::len));
    out += "\n";
    for (lists, width) in [(&cols, max_col), (&rows, max_row)] {
        for l in lists.iter() {
            let mut padded: Vec<usize> = l.iter().map(|x| x + 1).collect();
            padded.resize(width, 0);
            out += &join(&mut padded.into_iter());
            out += "\n";
        }
    }
    out
}
