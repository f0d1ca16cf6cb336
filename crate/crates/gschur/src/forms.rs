//! Central and symmetrizing forms on `A`, `M_n(A)^{⊗d}`, `S^A(n,d)` and
//! `T^A_𝔞(n,d)`, with Gram matrices and perfect-pairing verdicts.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{canonicalize, factorial, full_factorial, CanonicalTriple, Letter};
use crate::error::{Error, Result};
use crate::exactlin::{smith_normal_form, solve_rational, IntMatrix, RationalScalar, Scalar, SmithForm, SparseVec};
use crate::schur::{structure_table, Basis, SchurAlgebra, SchurElement, TensorElement};
use crate::superalgebra::{AlgebraElement, Sector, SuperalgebraPresentation};

/// A linear functional `t` on `A`, one value per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralForm {
    values: Vec<Scalar>,
}

impl CentralForm {
    /// Validates that `t` vanishes on odd basis elements and that
    /// `t(ab) = t(ba)` on all basis pairs.
    pub fn new(p: &SuperalgebraPresentation, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != p.dim() {
            return Err(Error::InvalidPresentation(format!("form has {} values, algebra has dimension {}", values.len(), p.dim())));
        }
        let f = CentralForm { values };
        for i in 0..p.dim() {
            if p.is_odd(i) && !f.values[i].is_zero() {
                return Err(Error::AxiomFailure(format!("form is nonzero on odd element {}", p.label(i))));
            }
        }
        for i in 0..p.dim() {
            for j in i + 1..p.dim() {
                if f.pair(p, i, j) != f.pair(p, j, i) {
                    return Err(Error::AxiomFailure(format!("form is not central: t({0}{1}) != t({1}{0})", p.label(i), p.label(j))));
                }
            }
        }
        Ok(f)
    }

    pub fn from_i64(p: &SuperalgebraPresentation, values: &[i64]) -> Result<Self> {
        Self::new(p, values.iter().map(|&v| Scalar::from(v)).collect())
    }

    /// The form attached to the presentation.
    pub fn from_presentation(p: &SuperalgebraPresentation) -> Result<Self> {
        let v = p.form().ok_or_else(|| Error::Unsupported(format!("{} carries no form", p.name())))?;
        Self::from_i64(p, v)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn eval(&self, x: &AlgebraElement) -> Scalar {
        x.terms().map(|(i, c)| c * &self.values[i]).sum()
    }

    /// `(b_i, b_j)_t = t(b_i b_j)`.
    pub fn pair(&self, p: &SuperalgebraPresentation, i: usize, j: usize) -> Scalar {
        p.kappa(i, j).iter().map(|&(k, c)| Scalar::from(c) * &self.values[k]).sum()
    }

    /// `δ_{𝐫,𝐬} t(b_1)…t(b_d)` for a word of letters.
    pub fn eval_letters(&self, w: &[Letter]) -> Scalar {
        if w.iter().any(|l| l.r != l.s) {
            return Scalar::zero();
        }
        w.iter().map(|l| self.values[l.basis()].clone()).product()
    }

    /// Gram matrix `[t(b_i b_j)]` over the listed basis indices.
    pub fn gram(&self, p: &SuperalgebraPresentation, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let dense: Vec<Vec<Scalar>> = rows.iter().map(|&i| cols.iter().map(|&j| self.pair(p, i, j)).collect()).collect();
        if dense.is_empty() {
            return IntMatrix::zeros(0, cols.len());
        }
        IntMatrix::from_dense(&dense)
    }
}

/// Outcome of the (A,𝔞)-symmetrizing check.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetrizingReport {
    pub symmetrizing: bool,
    /// Reason for rejection.
    pub witness: Option<String>,
    /// `[t(a c)]` over sector a × sector c, when both are defined.
    #[serde(skip)]
    pub ac_gram: Option<IntMatrix>,
    /// Dual basis: `b_i* = Σ_j dual[i][j] b_j`.
    #[serde(skip)]
    pub dual_basis: Option<Vec<AlgebraElement>>,
    /// `b_i* = ε_i b_{π(i)}` when the dual basis is a signed permutation.
    pub dual_permutation: Option<Vec<(usize, i64)>>,
}

impl SymmetrizingReport {
    fn reject(witness: String, ac_gram: Option<IntMatrix>) -> Self {
        SymmetrizingReport { symmetrizing: false, witness: Some(witness), ac_gram, dual_basis: None, dual_permutation: None }
    }
}

/// Obstruction visible from the sector sizes alone: a perfect pairing of
/// 𝔞 with 𝔠 needs equal ranks.
pub fn symmetrizing_obstruction(p: &SuperalgebraPresentation) -> Option<String> {
    let a = p.sector_indices(Sector::A).len();
    let c = p.sector_indices(Sector::C).len();
    (a != c).then(|| format!("rank of sector a is {a}, rank of sector c is {c}; no perfect pairing between them"))
}

/// Checks that `t(𝔞𝔞) = 0`, that `t` pairs 𝔞 with 𝔠 perfectly and that `t`
/// is symmetrizing on `A`. On success the dual basis is returned, and its
/// sector pattern (`𝔞* ⊆ 𝔠`, `𝔠* ⊆ 𝔞`, odd to odd) is verified.
pub fn check_aa_symmetrizing(p: &SuperalgebraPresentation, t: &CentralForm) -> Result<SymmetrizingReport> {
    let t = CentralForm::new(p, t.values.clone())?;
    if let Some(w) = symmetrizing_obstruction(p) {
        return Ok(SymmetrizingReport::reject(w, None));
    }
    let a = p.sector_indices(Sector::A);
    let c = p.sector_indices(Sector::C);
    for &i in &a {
        for &j in &a {
            let v = t.pair(p, i, j);
            if !v.is_zero() {
                return Ok(SymmetrizingReport::reject(format!("t({}{}) = {v}", p.label(i), p.label(j)), None));
            }
        }
    }
    let ac = t.gram(p, &a, &c);
    if !is_unimodular(&ac) {
        return Ok(SymmetrizingReport::reject("pairing of sector a with sector c is not perfect".into(), Some(ac)));
    }
    let all: Vec<usize> = (0..p.dim()).collect();
    let full = t.gram(p, &all, &all);
    if !is_unimodular(&full) {
        return Ok(SymmetrizingReport::reject("t is not symmetrizing on A".into(), Some(ac)));
    }
    let dual = dual_basis(&full)?;
    for (i, x) in dual.iter().enumerate() {
        let want = match p.sector(i) {
            Sector::A => Sector::C,
            Sector::C => Sector::A,
            Sector::Odd => Sector::Odd,
        };
        if let Some((j, _)) = x.terms().find(|&(j, _)| p.sector(j) != want) {
            let w = format!("dual of {} has a component on {} outside sector {}", p.label(i), p.label(j), want.name());
            return Ok(SymmetrizingReport::reject(w, Some(ac)));
        }
    }
    let perm = signed_permutation(&dual);
    Ok(SymmetrizingReport { symmetrizing: true, witness: None, ac_gram: Some(ac), dual_basis: Some(dual), dual_permutation: perm })
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.nrows() == m.ncols() && {
        let s = smith_normal_form(m);
        s.rank == m.nrows() && s.is_unimodular_image()
    }
}

/// Columns of the inverse of a unimodular Gram matrix `G`: `b_i*` with
/// `t(b_j b_i*) = δ_{ij}`.
fn dual_basis(g: &IntMatrix) -> Result<Vec<AlgebraElement>> {
    let n = g.nrows();
    let cols: Vec<SparseVec> = (0..n).map(|j| (0..n).filter_map(|i| Some((i, g.get(i, j))).filter(|(_, x)| !x.is_zero())).collect()).collect();
    (0..n)
        .map(|i| {
            let x = solve_rational(&cols, n, &vec![(i, Scalar::one())]).ok_or_else(|| Error::NotIntegral("Gram matrix is singular".into()))?;
            let mut e = AlgebraElement::zero();
            for (j, q) in x.into_iter().enumerate() {
                if !q.is_integer() {
                    return Err(Error::NotIntegral("dual basis is not integral".into()));
                }
                e.add_term(j, q.to_integer());
            }
            Ok(e)
        })
        .collect()
}

fn signed_permutation(dual: &[AlgebraElement]) -> Option<Vec<(usize, i64)>> {
    let mut seen = vec![false; dual.len()];
    let mut out = Vec::with_capacity(dual.len());
    for x in dual {
        let mut terms = x.terms();
        let (j, c) = terms.next()?;
        if terms.next().is_some() || !c.abs().is_one() || seen[j] {
            return None;
        }
        seen[j] = true;
        out.push((j, if c.is_positive() { 1 } else { -1 }));
    }
    Some(out)
}

/// `t^M` on tensors: `δ_{𝐫,𝐬} ∏ t(b_k)` on elementary tensors.
pub fn t_m(t: &CentralForm, x: &TensorElement) -> Scalar {
    x.terms().map(|(w, c)| c * t.eval_letters(w)).sum()
}

/// `t^S(ξ_T) = d!/[T]! · δ · ∏ t(b_k)`.
pub fn t_s(t: &CentralForm, x: &SchurElement) -> RationalScalar {
    let d = factorial(x.degree());
    x.to_xi()
        .terms()
        .map(|(tr, c)| {
            let v = t.eval_letters(tr.letters());
            if v.is_zero() {
                return BigRational::zero();
            }
            BigRational::new(&d * c * v, full_factorial(tr))
        })
        .sum()
}

/// `t^T(η_T) = δ · ∏ t(b_k)`, extended linearly in `η` coordinates.
pub fn t_t(t: &CentralForm, x: &SchurElement) -> Result<Scalar> {
    let e = x.to_eta()?;
    Ok(e.terms().map(|(tr, c)| c * t.eval_letters(tr.letters())).sum())
}

/// `t^T` for the form attached to the ambient presentation.
pub fn t_t_attached(x: &SchurElement) -> Result<Scalar> {
    t_t(&CentralForm::from_presentation(x.algebra().presentation())?, x)
}

/// Gram matrix `[t^T(η_i η_j)]` over the `η` basis of `T^A_𝔞(n,d)`.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub labels: Vec<CanonicalTriple>,
    pub matrix: IntMatrix,
}

impl GramMatrix {
    pub fn to_text(&self) -> String {
        self.matrix.to_text()
    }
}

/// Gram matrix together with its verdicts.
#[derive(Clone, Debug)]
pub struct GramReport {
    pub gram: GramMatrix,
    pub smith: SmithForm,
    /// All elementary divisors 1 and full rank.
    pub unimodular: bool,
    /// `G` equals its transpose, i.e. `t^T(xy) = t^T(yx)` on basis pairs.
    pub symmetric: bool,
    /// Each row has a single `±1`, at the column predicted by the dual
    /// basis reindexing `(𝐛, 𝐫, 𝐬) ↦ (𝐛*, 𝐬, 𝐫)`. `Err` carries the first
    /// violation.
    pub dual_pattern: std::result::Result<(), String>,
}

/// The column predicted for `η_T` by the dual reindexing, or `None` when the
/// dual basis is not a signed permutation of the basis.
pub fn dual_label(tr: &CanonicalTriple, perm: &[(usize, i64)], p: &SuperalgebraPresentation) -> Option<CanonicalTriple> {
    let w: Vec<Letter> = tr.letters().iter().map(|l| Letter { b: perm[l.basis()].0 as u32, r: l.s, s: l.r }).collect();
    canonicalize(&w, p).map(|(c, _)| c)
}

/// Builds the Gram matrix of `t^T` on `T^A_𝔞(n,d)` and checks the perfect
/// pairing and the dual-basis pattern. Requires an (A,𝔞)-symmetrizing form
/// attached to the presentation.
pub fn gram_t_t(alg: &SchurAlgebra, d: usize) -> Result<GramReport> {
    let p = alg.presentation();
    let t = CentralForm::from_presentation(p)?;
    let rep = check_aa_symmetrizing(p, &t)?;
    if !rep.symmetrizing {
        return Err(Error::AxiomFailure(format!("attached form is not (A,a)-symmetrizing: {}", rep.witness.unwrap_or_default())));
    }
    let (labels, entries) = structure_table(alg, d, Basis::Eta)?;
    let values: Vec<Scalar> = labels.iter().map(|tr| t.eval_letters(tr.letters())).collect();
    let n = labels.len();
    let mut dense = vec![vec![Scalar::zero(); n]; n];
    for e in &entries {
        if !values[e.k].is_zero() {
            dense[e.i][e.j] += &e.coeff * &values[e.k];
        }
    }
    let symmetric = (0..n).all(|i| (0..i).all(|j| dense[i][j] == dense[j][i]));
    let index: HashMap<&CanonicalTriple, usize> = labels.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let dual_pattern = match &rep.dual_permutation {
        None => Err("dual basis is not a signed permutation of the basis".to_string()),
        Some(perm) => check_dual_pattern(&labels, &index, &dense, perm, p),
    };
    let matrix = if n == 0 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_dense(&dense) };
    let smith = smith_normal_form(&matrix);
    let unimodular = smith.rank == n && smith.is_unimodular_image();
    Ok(GramReport { gram: GramMatrix { labels, matrix }, smith, unimodular, symmetric, dual_pattern })
}

fn check_dual_pattern(
    labels: &[CanonicalTriple],
    index: &HashMap<&CanonicalTriple, usize>,
    dense: &[Vec<Scalar>],
    perm: &[(usize, i64)],
    p: &SuperalgebraPresentation,
) -> std::result::Result<(), String> {
    for (i, tr) in labels.iter().enumerate() {
        let text = || tr.to_text(p);
        let want = dual_label(tr, perm, p).and_then(|c| index.get(&c).copied()).ok_or_else(|| format!("row {} has no dual label", text()))?;
        for (j, v) in dense[i].iter().enumerate() {
            let ok = if j == want { v.abs().is_one() } else { v.is_zero() };
            if !ok {
                return Err(format!("row {} column {}: entry {v}", text(), labels[j].to_text(p)));
            }
        }
    }
    Ok(())
}
