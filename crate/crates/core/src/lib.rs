//! Geometrically local quantum codes from CSS LDPC codes.
//!
//! The pipeline turns a CSS code into a square complex built on its Tanner
//! graph ([`complex`]), subdivides every face into an `L × L` grid
//! ([`subdivide`]), reads off a new CSS code whose checks and qubits are the
//! grid points, relates the two codes by an explicit chain map
//! ([`chainmap`]) and lays the subdivided complex out in `Z^D` ([`embed`]).
//! [`expansion`] holds exhaustive certifiers for the local expansion
//! quantities, usable at small sizes.
//!
//! Matrix convention: rows of `a_x` are X checks, rows of `a_z` are Z checks,
//! columns are qubits. The coboundaries are `δ0 = a_xᵀ` and `δ1 = a_z`, so
//! `δ1 δ0 = 0` is exactly commutation of the two check families.

pub mod chainmap;
pub mod code;
pub mod complex;
pub mod embed;
pub mod error;
pub mod expansion;
pub mod f2;
pub mod limits;
pub mod par;
pub mod ratio;
pub mod subdivide;

pub use code::CssCode;
pub use error::{Error, Result};
pub use f2::{BitMatrix, BitVector};
pub use limits::Limits;
pub use par::Exec;
pub use ratio::Ratio;
