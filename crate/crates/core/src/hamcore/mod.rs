//! Pauli-string operator algebra, FCIDUMP ingestion, and the Jordan–Wigner compiler.

pub mod diagonal;
pub mod fcidump;
pub mod jw;
pub mod pauli;

pub use diagonal::{diagonal_part, DiagonalOperator};
pub use fcidump::{parse_fcidump, MolecularIntegrals};
pub use jw::{jordan_wigner, jw_ladder, number_operator, sz_operator, Ladder};
pub use pauli::{Pauli, PauliString, PauliSum, PauliSumJson, DEFAULT_DROP_TOL, DENSE_QUBIT_LIMIT};
