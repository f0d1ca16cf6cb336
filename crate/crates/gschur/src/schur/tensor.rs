//! Independent model of `S^A(n,d)` inside `M_n(A)^{⊗d}`.
//!
//! Elements are expanded into elementary tensors `E_{b,r,s}` position by
//! position, multiplied positionwise with the super sign, and read back by
//! taking the coefficients at sorted words. The read-back is verified by
//! re-expanding, so any element outside the invariants is rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Basis, SchurAlgebra, SchurElement};
use crate::combinatorics::{act, coset_representatives, is_admissible, odd_mask, sign_pair, sign_sigma, CanonicalTriple, Letter};
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::superalgebra::SuperalgebraPresentation;

/// A combination of elementary tensors `E_{l_1} ⊗ … ⊗ E_{l_d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pres: Arc<SuperalgebraPresentation>,
    degree: usize,
    terms: BTreeMap<Vec<Letter>, Scalar>,
}

impl TensorElement {
    pub fn zero(pres: Arc<SuperalgebraPresentation>, degree: usize) -> Self {
        TensorElement { pres, degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Letter]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Vec<Letter>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Signed place permutation: `(E_T)^σ = (−1)^{⟨σ;T⟩} E_{Tσ}`.
    pub fn act(&self, sigma: &[usize]) -> TensorElement {
        let mut out = TensorElement::zero(self.pres.clone(), self.degree);
        for (w, c) in &self.terms {
            let odd = odd_mask(w, &self.pres);
            let sign = if sign_sigma(sigma, &odd).is_multiple_of(2) { c.clone() } else { -c.clone() };
            out.add_term(act(w, sigma), sign);
        }
        out
    }

    /// Invariance under the signed action of every adjacent transposition.
    pub fn is_invariant(&self) -> bool {
        (0..self.degree.saturating_sub(1)).all(|k| {
            let mut s: Vec<usize> = (0..self.degree).collect();
            s.swap(k, k + 1);
            self.act(&s) == *self
        })
    }

    /// Positionwise product with the super sign `(−1)^{⟨a', c'⟩}`.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let p = &self.pres;
        let mut out = TensorElement::zero(p.clone(), self.degree);
        for (u, a) in &self.terms {
            let ou = odd_mask(u, p);
            for (v, b) in &other.terms {
                if u.iter().zip(v).any(|(x, y)| x.s != y.r) {
                    continue;
                }
                let ov = odd_mask(v, p);
                let mut coef = a * b;
                if sign_pair(&ou, &ov) % 2 == 1 {
                    coef = -coef;
                }
                let supports: Vec<&[(usize, i64)]> = u.iter().zip(v).map(|(x, y)| p.kappa(x.basis(), y.basis())).collect();
                if supports.iter().any(|s| s.is_empty()) {
                    continue;
                }
                let mut idx = vec![0usize; self.degree];
                loop {
                    let mut c = coef.clone();
                    let mut w = Vec::with_capacity(self.degree);
                    for k in 0..self.degree {
                        let (bb, kc) = supports[k][idx[k]];
                        c *= Scalar::from(kc);
                        w.push(Letter { b: bb as u32, r: u[k].r, s: v[k].s });
                    }
                    out.add_term(w, c);
                    let mut k = 0;
                    while k < self.degree {
                        idx[k] += 1;
                        if idx[k] < supports[k].len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == self.degree {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Plain concatenation `x ⊗ y` (no symmetrization).
    pub fn concat(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.pres.clone(), self.degree + other.degree);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }

    /// Star product: the concatenation summed over shuffle representatives.
    pub fn star(&self, other: &TensorElement) -> TensorElement {
        let cat = self.concat(other);
        let word: Vec<u8> = std::iter::repeat_n(0, self.degree).chain(std::iter::repeat_n(1, other.degree)).collect();
        let mut out = TensorElement::zero(self.pres.clone(), cat.degree);
        for (sigma, _) in coset_representatives(&word) {
            out = out.add(&cat.act(&sigma));
        }
        out
    }
}

/// Expansion of an element into elementary tensors.
pub fn to_tensor(x: &SchurElement) -> TensorElement {
    let p = x.alg.presentation_arc();
    let xi = x.to_xi();
    let mut out = TensorElement::zero(p.clone(), x.degree);
    for (t, c) in &xi.coeffs {
        let odd = odd_mask(t.letters(), &p);
        for (sigma, w) in coset_representatives(t.letters()) {
            let sign = if sign_sigma(&sigma, &odd).is_multiple_of(2) { c.clone() } else { -c.clone() };
            out.add_term(w, sign);
        }
    }
    out
}

/// Reads an invariant tensor back in the `ξ` basis; errors if the tensor is
/// not in the image of [`to_tensor`].
pub fn from_tensor(alg: &SchurAlgebra, t: &TensorElement) -> Result<SchurElement> {
    let p = alg.presentation();
    let mut out = alg.zero(t.degree, Basis::Xi);
    for (w, c) in &t.terms {
        if w.windows(2).all(|e| e[0] <= e[1]) && is_admissible(w, p) {
            out.add_term(CanonicalTriple::from_sorted_unchecked(w.clone()), c.clone());
        }
    }
    if to_tensor(&out) != *t {
        return Err(Error::AmbientMismatch("tensor is not a combination of orbit sums".into()));
    }
    Ok(out)
}

/// Product computed in the tensor model. `η ⋅ η` is returned `η`-tagged.
pub fn multiply_oracle(x: &SchurElement, y: &SchurElement) -> Result<SchurElement> {
    x.check_compatible(y)?;
    let prod = from_tensor(&x.alg, &to_tensor(x).mul(&to_tensor(y)))?;
    if x.tag == Basis::Eta && y.tag == Basis::Eta {
        prod.to_eta()
    } else {
        Ok(prod)
    }
}

/// Star product computed in the tensor model.
pub fn star_oracle(x: &SchurElement, y: &SchurElement) -> Result<SchurElement> {
    if x.alg != y.alg {
        return Err(Error::AmbientMismatch("star of elements over different algebras".into()));
    }
    let prod = from_tensor(&x.alg, &to_tensor(x).star(&to_tensor(y)))?;
    if x.tag == Basis::Eta && y.tag == Basis::Eta {
        prod.to_eta()
    } else {
        Ok(prod)
    }
}

/// `g^{⊗d}` for an even degree-one element `g = Σ c_l E_l`, in the `ξ` basis.
/// The `ξ_W` coefficient is the product of the coefficients of the letters of `W`.
pub fn diagonal_power(alg: &SchurAlgebra, g: &[(Letter, Scalar)], d: usize) -> Result<SchurElement> {
    let p = alg.presentation();
    let mut support: BTreeMap<Letter, Scalar> = BTreeMap::new();
    for (l, c) in g {
        if p.is_odd(l.basis()) {
            return Err(Error::Unsupported("diagonal power of an odd letter".into()));
        }
        *support.entry(*l).or_insert_with(Scalar::zero) += c;
    }
    support.retain(|_, c| !c.is_zero());
    let letters: Vec<(Letter, Scalar)> = support.into_iter().collect();
    let mut out = alg.zero(d, Basis::Xi);
    let mut cur: Vec<Letter> = Vec::with_capacity(d);
    fn rec(letters: &[(Letter, Scalar)], start: usize, d: usize, cur: &mut Vec<Letter>, coef: Scalar, out: &mut SchurElement) {
        if cur.len() == d {
            out.add_term(CanonicalTriple::from_sorted_unchecked(cur.clone()), coef);
            return;
        }
        for k in start..letters.len() {
            cur.push(letters[k].0);
            rec(letters, k, d, cur, &coef * &letters[k].1, out);
            cur.pop();
        }
    }
    rec(&letters, 0, d, &mut cur, Scalar::one(), &mut out);
    Ok(out)
}
