//! Exact integral computations in generalized Schur superalgebras.

pub mod error;
pub mod bialgebra;
pub mod combinatorics;
pub mod dcp;
pub mod exactlin;
pub mod forms;
pub mod schur;
pub mod superalgebra;
pub mod verify;

pub use error::{Error, Result};
pub use exactlin::{IntMatrix, Lattice, RationalScalar, RowEchelon, Scalar, SmithForm, SparseVec};
