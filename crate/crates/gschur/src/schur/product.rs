//! Closed-form products of basis elements.
//!
//! The coefficient of `ξ_W` (W canonical) in `ξ_X ξ_Y` equals the coefficient
//! of the elementary tensor `E_W` in the product of the orbit sums. It is
//! computed by placing, position by position, a remaining letter `x` of `X`
//! and `y` of `Y` with matching inner index, together with a basis element
//! `b` in the support of `x.b · y.b`, such that the produced letters
//! `(b, x.r, y.s)` come out sorted. Within a run of equal output letters only
//! one ordering of the contributing pairs is visited and weighted by the
//! number of distinct rearrangements; all rearrangements carry the same sign.

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use super::{Basis, SchurAlgebra, SchurElement};
use crate::combinatorics::{c_factorial, CanonicalTriple, Letter};
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::superalgebra::SuperalgebraPresentation;

struct Search<'a> {
    p: &'a SuperalgebraPresentation,
    xr: Vec<(Letter, usize)>,
    yr: Vec<(Letter, usize)>,
    d: usize,
    xleft: Vec<usize>,
    yleft: Vec<usize>,
    // (output letter, x-run index, y-run index)
    placed: Vec<(Letter, usize, usize)>,
    odd_x: Vec<Letter>,
    odd_y: Vec<Letter>,
    out: HashMap<Vec<Letter>, i128>,
}

impl Search<'_> {
    fn run(&mut self, parity: usize, coef: i128) {
        if self.placed.len() == self.d {
            let mult = run_multiplicity(&self.placed);
            let signed = if parity.is_multiple_of(2) { coef } else { -coef };
            let w: Vec<Letter> = self.placed.iter().map(|e| e.0).collect();
            let v = signed.checked_mul(mult).expect("structure constant overflow");
            let slot = self.out.entry(w).or_insert(0);
            *slot = slot.checked_add(v).expect("structure constant overflow");
            return;
        }
        let last = self.placed.last().copied();
        for i in 0..self.xr.len() {
            if self.xleft[i] == 0 {
                continue;
            }
            let x = self.xr[i].0;
            let x_odd = self.p.is_odd(x.basis());
            for j in 0..self.yr.len() {
                if self.yleft[j] == 0 {
                    continue;
                }
                let y = self.yr[j].0;
                if y.r != x.s {
                    continue;
                }
                let y_odd = self.p.is_odd(y.basis());
                let kappa = self.p.kappa(x.basis(), y.basis());
                if kappa.is_empty() {
                    continue;
                }
                let dx = if x_odd { self.odd_x.iter().filter(|&&o| o > x).count() } else { 0 };
                let dy = if y_odd { self.odd_y.iter().filter(|&&o| o > y).count() } else { 0 };
                let dxy = if x_odd { self.odd_y.len() } else { 0 };
                for &(b, c) in kappa {
                    let w = Letter { b: b as u32, r: x.r, s: y.s };
                    if let Some((lw, li, lj)) = last {
                        if w < lw {
                            continue;
                        }
                        if w == lw && (self.p.is_odd(b) || (i, j) < (li, lj)) {
                            continue;
                        }
                    }
                    self.xleft[i] -= 1;
                    self.yleft[j] -= 1;
                    self.placed.push((w, i, j));
                    if x_odd {
                        self.odd_x.push(x);
                    }
                    if y_odd {
                        self.odd_y.push(y);
                    }
                    self.run(parity + dx + dy + dxy, coef * c as i128);
                    if x_odd {
                        self.odd_x.pop();
                    }
                    if y_odd {
                        self.odd_y.pop();
                    }
                    self.placed.pop();
                    self.xleft[i] += 1;
                    self.yleft[j] += 1;
                }
            }
        }
    }
}

/// Number of distinct rearrangements of the contributing pairs inside each
/// run of equal output letters.
fn run_multiplicity(placed: &[(Letter, usize, usize)]) -> i128 {
    let mut total: i128 = 1;
    let mut k = 0;
    while k < placed.len() {
        let mut l = k;
        while l < placed.len() && placed[l].0 == placed[k].0 {
            l += 1;
        }
        if l - k > 1 {
            let mut m = fact_i128(l - k);
            let mut a = k;
            while a < l {
                let mut b = a;
                while b < l && (placed[b].1, placed[b].2) == (placed[a].1, placed[a].2) {
                    b += 1;
                }
                m /= fact_i128(b - a);
                a = b;
            }
            total *= m;
        }
        k = l;
    }
    total
}

fn fact_i128(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// `ξ_X ξ_Y` in the `ξ` basis, uncached.
pub fn xi_product_basis(p: &SuperalgebraPresentation, x: &CanonicalTriple, y: &CanonicalTriple) -> Vec<(CanonicalTriple, Scalar)> {
    assert_eq!(x.degree(), y.degree(), "degree mismatch");
    // inner indices must match as multisets
    let mut cols = x.cols();
    let mut rows = y.rows();
    cols.sort_unstable();
    rows.sort_unstable();
    if cols != rows {
        return Vec::new();
    }
    let xr = x.runs();
    let yr = y.runs();
    let mut s = Search {
        p,
        xleft: xr.iter().map(|e| e.1).collect(),
        yleft: yr.iter().map(|e| e.1).collect(),
        xr,
        yr,
        d: x.degree(),
        placed: Vec::with_capacity(x.degree()),
        odd_x: Vec::new(),
        odd_y: Vec::new(),
        out: HashMap::new(),
    };
    s.run(0, 1);
    let mut out: Vec<(CanonicalTriple, Scalar)> = s
        .out
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(w, c)| (CanonicalTriple::from_sorted_unchecked(w), Scalar::from(c)))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Cached `ξ_X ξ_Y`.
pub(super) fn cached_xi_product(alg: &SchurAlgebra, x: &CanonicalTriple, y: &CanonicalTriple) -> Arc<Vec<(CanonicalTriple, Scalar)>> {
    if !alg.cache_enabled() {
        return Arc::new(xi_product_basis(alg.presentation(), x, y));
    }
    let key = (x.clone(), y.clone());
    if let Some(v) = alg.0.cache.read().expect("cache lock").get(&key) {
        return v.clone();
    }
    let v = Arc::new(xi_product_basis(alg.presentation(), x, y));
    alg.0.cache.write().expect("cache lock").insert(key, v.clone());
    v
}

/// `η_X η_Y` in the `η` basis; errors on a non-integral coefficient.
pub(super) fn eta_product_basis(alg: &SchurAlgebra, x: &CanonicalTriple, y: &CanonicalTriple) -> Result<Vec<(CanonicalTriple, Scalar)>> {
    let p = alg.presentation();
    let scale = c_factorial(x, p) * c_factorial(y, p);
    cached_xi_product(alg, x, y)
        .iter()
        .map(|(w, c)| {
            let num = c * &scale;
            let den = c_factorial(w, p);
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return Err(Error::NotIntegral(format!(
                    "eta product {} * {} has coefficient {num}/{den} at {}",
                    x.to_text(p),
                    y.to_text(p),
                    w.to_text(p)
                )));
            }
            Ok((w.clone(), q))
        })
        .collect()
}

pub(super) fn multiply_fast(x: &SchurElement, y: &SchurElement) -> Result<SchurElement> {
    let alg = &x.alg;
    let both_eta = x.tag == Basis::Eta && y.tag == Basis::Eta;
    let (xx, yy) = if both_eta { (x.clone(), y.clone()) } else { (x.to_xi(), y.to_xi()) };
    let tag = if both_eta { Basis::Eta } else { Basis::Xi };
    let mut out = alg.zero(x.degree, tag);
    for (s, a) in &xx.coeffs {
        for (t, b) in &yy.coeffs {
            let ab = a * b;
            if both_eta {
                for (w, c) in eta_product_basis(alg, s, t)? {
                    out.add_term(w, &ab * c);
                }
            } else {
                for (w, c) in cached_xi_product(alg, s, t).iter() {
                    out.add_term(w.clone(), &ab * c);
                }
            }
        }
    }
    Ok(out)
}

/// One structure constant `e_i e_j ∋ coeff · e_k` (basis indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Scalar,
}

pub(super) fn structure_table(alg: &SchurAlgebra, d: usize, tag: Basis) -> Result<(Vec<CanonicalTriple>, Vec<StructureEntry>)> {
    let basis = alg.basis(d);
    let index: HashMap<&CanonicalTriple, usize> = basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let rows: Vec<Result<Vec<StructureEntry>>> = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let mut row = Vec::new();
            for j in 0..basis.len() {
                let prod = match tag {
                    Basis::Xi => xi_product_basis(alg.presentation(), &basis[i], &basis[j]),
                    Basis::Eta => eta_product_basis_uncached(alg, &basis[i], &basis[j])?,
                };
                for (w, c) in prod {
                    row.push(StructureEntry { i, j, k: index[&w], coeff: c });
                }
            }
            Ok(row)
        })
        .collect();
    let mut entries = Vec::new();
    for r in rows {
        entries.extend(r?);
    }
    Ok((basis, entries))
}

fn eta_product_basis_uncached(alg: &SchurAlgebra, x: &CanonicalTriple, y: &CanonicalTriple) -> Result<Vec<(CanonicalTriple, Scalar)>> {
    let p = alg.presentation();
    let scale = c_factorial(x, p) * c_factorial(y, p);
    xi_product_basis(p, x, y)
        .into_iter()
        .map(|(w, c)| {
            let num = c * &scale;
            let den = c_factorial(&w, p);
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return Err(Error::NotIntegral(format!("eta structure constant {num}/{den}")));
            }
            Ok((w, q))
        })
        .collect()
}

