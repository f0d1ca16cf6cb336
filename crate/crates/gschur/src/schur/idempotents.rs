//! Distinguished even elements: weight idempotents, diagonal powers of
//! algebra elements, multicomposition idempotents and permutation elements.

use num_traits::One;

use super::tensor::diagonal_power;
use super::{Basis, SchurAlgebra, SchurElement};
use crate::combinatorics::{inverse, leading_word, Composition, Letter, MultiComposition};
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::superalgebra::{AlgebraElement, Parity};

fn require_even(alg: &SchurAlgebra, f: &AlgebraElement) -> Result<()> {
    match f.parity(alg.presentation()) {
        Some(Parity::Odd) => Err(Error::Unsupported("expected an even algebra element".into())),
        _ => Ok(()),
    }
}

/// Letters of `Σ_r f E_{σ(r), r}`: for each term `c·b` of `f` and each `r`,
/// the letter `(b, σ(r), r)` with coefficient `c`.
fn degree_one_letters(alg: &SchurAlgebra, f: &AlgebraElement, sigma: Option<&[usize]>) -> Vec<(Letter, Scalar)> {
    let mut out = Vec::new();
    for r in 0..alg.n() {
        let row = sigma.map_or(r, |s| s[r]);
        for (b, c) in f.terms() {
            out.push((Letter::new(b, row + 1, r + 1), c.clone()));
        }
    }
    out
}

/// `ξ^f = f^{⊗d}` restricted to the diagonal: `Σ_λ ξ^f_λ`.
pub fn xi_f(alg: &SchurAlgebra, f: &AlgebraElement, d: usize) -> Result<SchurElement> {
    require_even(alg, f)?;
    diagonal_power(alg, &degree_one_letters(alg, f, None), d)
}

/// The identity of `S^A(n,d)`; requires a unital algebra.
pub fn identity(alg: &SchurAlgebra, d: usize) -> Result<SchurElement> {
    let one = alg.presentation().unit_element().ok_or_else(|| Error::Unsupported(format!("{} has no unit", alg.presentation().name())))?;
    xi_f(alg, &one, d)
}

/// `ξ^f_λ`: the element `ξ^{f,…,f}_{l^λ, l^λ}`.
pub fn xi_f_lambda(alg: &SchurAlgebra, f: &AlgebraElement, lambda: &[usize]) -> Result<SchurElement> {
    require_even(alg, f)?;
    if lambda.len() != alg.n() {
        return Err(Error::InvalidTriple(format!("composition has {} parts, expected {}", lambda.len(), alg.n())));
    }
    let w = leading_word(lambda);
    let a = vec![f.clone(); w.len()];
    alg.expand_general(&a, &w, &w)
}

/// Weight idempotent `ξ_λ` (the case `f = 1`).
pub fn xi_lambda(alg: &SchurAlgebra, lambda: &[usize]) -> Result<SchurElement> {
    let one = alg.presentation().unit_element().ok_or_else(|| Error::Unsupported(format!("{} has no unit", alg.presentation().name())))?;
    xi_f_lambda(alg, &one, lambda)
}

/// Sum of `ξ_λ` over compositions of `d` into `N = alg.n()` parts that
/// vanish beyond the first `m`.
pub fn xi_window(alg: &SchurAlgebra, m: usize, d: usize) -> Result<SchurElement> {
    if m > alg.n() {
        return Err(Error::InvalidTriple(format!("window {m} exceeds n = {}", alg.n())));
    }
    let one = alg.presentation().unit_element().ok_or_else(|| Error::Unsupported(format!("{} has no unit", alg.presentation().name())))?;
    let mut g = Vec::new();
    for r in 0..m {
        for (b, c) in one.terms() {
            g.push((Letter::new(b, r + 1, r + 1), c.clone()));
        }
    }
    diagonal_power(alg, &g, d)
}

/// Checks that `idems` are pairwise orthogonal even idempotents.
pub fn check_orthogonal_idempotents(alg: &SchurAlgebra, idems: &[AlgebraElement]) -> Result<()> {
    let p = alg.presentation();
    for (i, e) in idems.iter().enumerate() {
        require_even(alg, e)?;
        for (j, f) in idems.iter().enumerate() {
            let prod = p.multiply(e, f);
            let ok = if i == j { prod == *e } else { prod.is_zero() };
            if !ok {
                return Err(Error::InvalidPresentation(format!("idempotents {i} and {j} fail orthogonality")));
            }
        }
    }
    Ok(())
}

/// `e_𝛌 = ξ^{e_0}_{λ(0)} * … * ξ^{e_k}_{λ(k)}` for orthogonal idempotents `e_i`.
pub fn e_multicomposition(alg: &SchurAlgebra, idems: &[AlgebraElement], lam: &MultiComposition) -> Result<SchurElement> {
    if idems.len() != lam.len() {
        return Err(Error::InvalidTriple("multicomposition and idempotent family differ in length".into()));
    }
    let mut acc = alg.zero(0, Basis::Xi);
    acc.add_term(crate::combinatorics::CanonicalTriple::empty(), Scalar::one());
    for (e, l) in idems.iter().zip(lam) {
        let piece = xi_f_lambda(alg, e, l)?;
        acc = acc.star(&piece)?;
    }
    Ok(acc)
}

/// `σλ = (λ_{σ⁻¹(1)}, …)` applied componentwise.
pub fn permute_multicomposition(perms: &[Vec<usize>], lam: &MultiComposition) -> MultiComposition {
    perms
        .iter()
        .zip(lam)
        .map(|(s, l)| {
            let inv = inverse(s);
            (0..l.len()).map(|r| l[inv[r]]).collect::<Composition>()
        })
        .collect()
}

/// `ξ_𝛔 = (Σ_i ξ^{e_i}_{σ_i})^{⊗d}`, with `ξ^a_σ = Σ_r ξ^a_{σ(r), r}`.
pub fn xi_permutation(alg: &SchurAlgebra, idems: &[AlgebraElement], perms: &[Vec<usize>], d: usize) -> Result<SchurElement> {
    if idems.len() != perms.len() {
        return Err(Error::InvalidTriple("permutation family and idempotent family differ in length".into()));
    }
    let mut g = Vec::new();
    for (e, s) in idems.iter().zip(perms) {
        require_even(alg, e)?;
        if s.len() != alg.n() {
            return Err(Error::InvalidTriple("permutation size differs from n".into()));
        }
        g.extend(degree_one_letters(alg, e, Some(s)));
    }
    diagonal_power(alg, &g, d)
}

/// Coordinatewise sum of multicompositions.
pub fn add_multicompositions(a: &MultiComposition, b: &MultiComposition) -> MultiComposition {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect()
}

/// Total size of a multicomposition.
pub fn multicomposition_degree(lam: &MultiComposition) -> usize {
    lam.iter().flatten().sum()
}
