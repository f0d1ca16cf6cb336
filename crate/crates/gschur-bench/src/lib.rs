//! Fixtures shared by the benchmarks.

use gschur::schur::{Basis, SchurAlgebra, SchurElement};
use gschur::superalgebra::make_extended_zigzag;

/// `T(n,d)` of the extended zigzag algebra with `ell` vertices.
pub fn zigzag_schur(ell: usize, n: usize) -> SchurAlgebra {
    SchurAlgebra::new(make_extended_zigzag(ell).expect("builtin algebra"), n)
}

/// Rescaled basis elements of degree `d`, every `step`-th one.
pub fn sample_basis(alg: &SchurAlgebra, d: usize, step: usize) -> Vec<SchurElement> {
    alg.basis(d).iter().step_by(step.max(1)).map(|t| alg.basis_element(t, Basis::Eta)).collect()
}
