use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Exec;

/// Size thresholds for the exhaustive searches. A search above its threshold
/// is refused with [`Error::Threshold`]; nothing falls back to an estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    #[serde(skip)]
    pub exec: Exec,
    /// Largest kernel dimension enumerated by the exact distance search.
    pub exact_kernel_dim: usize,
    /// Largest `log2` of the number of supports tried by the bounded-weight
    /// distance search.
    pub bounded_work_log2: u32,
    /// Largest qubit count for energy barriers (state space `2^n`).
    pub barrier_qubits: usize,
    /// Largest qubit count for the full reasonableness check.
    pub reasonable_qubits: usize,
    /// Largest `|V| + |V∂|` for functional-inequality constants.
    pub functional_vertices: usize,
    /// Largest `log2` of the number of chain pairs in a local expansion search.
    pub local_work_log2: u32,
    /// Largest qubit count for small-set expansion.
    pub small_set_qubits: usize,
    /// Largest `log2` of the number of chain pairs in small-set expansion.
    pub small_set_work_log2: u32,
    /// Largest generator weight accepted by `minimalize`.
    pub minimal_row_weight: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            exec: Exec::default(),
            exact_kernel_dim: 24,
            bounded_work_log2: 32,
            barrier_qubits: 20,
            reasonable_qubits: 20,
            functional_vertices: 24,
            local_work_log2: 22,
            small_set_qubits: 16,
            small_set_work_log2: 26,
            minimal_row_weight: 24,
        }
    }
}

impl Limits {
    pub fn sequential() -> Self {
        Self {
            exec: Exec::Sequential,
            ..Self::default()
        }
    }

    pub fn with_exec(self, exec: Exec) -> Self {
        Self { exec, ..self }
    }

    pub(crate) fn check(what: &'static str, size: usize, limit: usize) -> Result<()> {
        if size > limit {
            Err(Error::Threshold { what, size, limit })
        } else {
            Ok(())
        }
    }
}
