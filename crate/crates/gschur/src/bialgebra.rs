//! Coproduct, star product and the structures built from them: iterated
//! coproducts, separated embeddings, generation closure and characters of
//! left ideals.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{c_factorial, canonicalize, multicompositions, splits, CanonicalTriple, Letter, MultiComposition};
use crate::error::{Error, Result};
use crate::exactlin::{Lattice, RowEchelon, Scalar, SparseVec};
use crate::schur::{e_multicomposition, identity, permute_multicomposition, star_oracle, Basis, SchurAlgebra, SchurElement};
use crate::superalgebra::{AlgebraElement, Sector};

/// Parity bit of a basis triple (number of odd letters mod 2).
pub fn triple_parity(alg: &SchurAlgebra, t: &CanonicalTriple) -> usize {
    let p = alg.presentation();
    t.letters().iter().filter(|l| p.is_odd(l.basis())).count() % 2
}

/// An element of `S(n,d_1) ⊗ … ⊗ S(n,d_k)`, summed over shapes with
/// `Σ d_i = d`.
#[derive(Clone, PartialEq, Eq)]
pub struct SplitElement {
    alg: SchurAlgebra,
    total: usize,
    factors: usize,
    tag: Basis,
    terms: BTreeMap<Vec<CanonicalTriple>, Scalar>,
}

impl std::fmt::Debug for SplitElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl SplitElement {
    pub fn zero(alg: &SchurAlgebra, total: usize, factors: usize, tag: Basis) -> Self {
        SplitElement { alg: alg.clone(), total, factors, tag, terms: BTreeMap::new() }
    }

    pub fn total_degree(&self) -> usize {
        self.total
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn tag(&self) -> Basis {
        self.tag
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<CanonicalTriple>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &[CanonicalTriple]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: Vec<CanonicalTriple>, c: Scalar) {
        debug_assert_eq!(key.len(), self.factors);
        debug_assert_eq!(key.iter().map(CanonicalTriple::degree).sum::<usize>(), self.total);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Elementary tensor of elements (no sign: factors are placed in order).
    pub fn from_factors(factors: &[SchurElement]) -> Result<Self> {
        let first = factors.first().ok_or_else(|| Error::InvalidTriple("empty factor list".into()))?;
        let alg = first.algebra().clone();
        let tag = if factors.iter().all(|f| f.tag() == Basis::Eta) { Basis::Eta } else { Basis::Xi };
        let total = factors.iter().map(SchurElement::degree).sum();
        let mut acc: Vec<(Vec<CanonicalTriple>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for f in factors {
            if *f.algebra() != alg {
                return Err(Error::AmbientMismatch("tensor factors over different algebras".into()));
            }
            let f = f.in_basis(tag)?;
            let mut next = Vec::new();
            for (k, c) in &acc {
                for (t, x) in f.terms() {
                    let mut k2 = k.clone();
                    k2.push(t.clone());
                    next.push((k2, c * x));
                }
            }
            acc = next;
        }
        let mut out = SplitElement::zero(&alg, total, factors.len(), tag);
        for (k, c) in acc {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &SplitElement) -> Result<SplitElement> {
        if self.alg != other.alg || self.total != other.total || self.factors != other.factors {
            return Err(Error::AmbientMismatch("split elements of different shape".into()));
        }
        let other = other.in_basis(self.tag)?;
        let mut out = self.clone();
        for (k, c) in other.terms {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Scalar) -> SplitElement {
        let mut out = SplitElement::zero(&self.alg, self.total, self.factors, self.tag);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c * k);
        }
        out
    }

    /// Keeps only the terms whose factor degrees equal `shape`.
    pub fn project(&self, shape: &[usize]) -> SplitElement {
        let mut out = SplitElement::zero(&self.alg, self.total, self.factors, self.tag);
        for (k, c) in &self.terms {
            if k.iter().map(CanonicalTriple::degree).eq(shape.iter().copied()) {
                out.add_term(k.clone(), c.clone());
            }
        }
        out
    }

    pub fn to_xi(&self) -> SplitElement {
        if self.tag == Basis::Xi {
            return self.clone();
        }
        let p = self.alg.presentation();
        let mut out = SplitElement::zero(&self.alg, self.total, self.factors, Basis::Xi);
        for (k, c) in &self.terms {
            let f: Scalar = k.iter().map(|t| c_factorial(t, p)).product();
            out.add_term(k.clone(), c * f);
        }
        out
    }

    pub fn to_eta(&self) -> Result<SplitElement> {
        if self.tag == Basis::Eta {
            return Ok(self.clone());
        }
        let p = self.alg.presentation();
        let mut out = SplitElement::zero(&self.alg, self.total, self.factors, Basis::Eta);
        for (k, c) in &self.terms {
            let f: Scalar = k.iter().map(|t| c_factorial(t, p)).product();
            let (q, r) = c.div_rem(&f);
            if !r.is_zero() {
                return Err(Error::NotIntegral(format!("split coefficient {c} not divisible by {f}")));
            }
            out.add_term(k.clone(), q);
        }
        Ok(out)
    }

    pub fn in_basis(&self, tag: Basis) -> Result<SplitElement> {
        match tag {
            Basis::Xi => Ok(self.to_xi()),
            Basis::Eta => self.to_eta(),
        }
    }

    /// Componentwise product with the sign `(−1)^{Σ_{i>j} |x_i||y_j|}`.
    /// Terms whose factor degrees differ contribute nothing.
    pub fn mul(&self, other: &SplitElement) -> Result<SplitElement> {
        if self.alg != other.alg || self.total != other.total || self.factors != other.factors {
            return Err(Error::AmbientMismatch("split elements of different shape".into()));
        }
        let tag = if self.tag == Basis::Eta && other.tag == Basis::Eta { Basis::Eta } else { Basis::Xi };
        let (x, y) = (self.in_basis(tag)?, other.in_basis(tag)?);
        let mut out = SplitElement::zero(&self.alg, self.total, self.factors, tag);
        for (kx, cx) in &x.terms {
            for (ky, cy) in &y.terms {
                if kx.iter().zip(ky).any(|(a, b)| a.degree() != b.degree()) {
                    continue;
                }
                let mut sign = 0usize;
                let mut odd_y_before = 0usize;
                for (a, b) in kx.iter().zip(ky) {
                    if triple_parity(&self.alg, a) == 1 {
                        sign += odd_y_before;
                    }
                    odd_y_before += triple_parity(&self.alg, b);
                }
                let mut acc: Vec<(Vec<CanonicalTriple>, Scalar)> = vec![(Vec::new(), if sign.is_multiple_of(2) { cx * cy } else { -(cx * cy) })];
                for (a, b) in kx.iter().zip(ky) {
                    let ea = self.alg.basis_element(a, tag);
                    let eb = self.alg.basis_element(b, tag);
                    let prod = ea.mul(&eb)?;
                    let mut next = Vec::new();
                    for (k, c) in &acc {
                        for (t, v) in prod.terms() {
                            let mut k2 = k.clone();
                            k2.push(t.clone());
                            next.push((k2, c * v));
                        }
                    }
                    acc = next;
                }
                for (k, c) in acc {
                    out.add_term(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Applies the coproduct to factor `i`, giving one more factor.
    pub fn coproduct_at(&self, i: usize) -> Result<SplitElement> {
        if i >= self.factors {
            return Err(Error::InvalidTriple(format!("factor {i} out of range")));
        }
        let mut out = SplitElement::zero(&self.alg, self.total, self.factors + 1, self.tag);
        for (k, c) in &self.terms {
            let piece = coproduct(&self.alg.basis_element(&k[i], self.tag))?;
            for (pk, pc) in &piece.terms {
                let mut key = k[..i].to_vec();
                key.extend(pk.iter().cloned());
                key.extend(k[i + 1..].iter().cloned());
                out.add_term(key, c * pc);
            }
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let p = self.alg.presentation();
        self.terms
            .iter()
            .map(|(k, c)| {
                let parts: Vec<String> = k.iter().map(|t| format!("({})", t.to_text(p))).collect();
                format!("{c}*{}", parts.join("⊗"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `∇(x)` as a two-factor split element summed over all split points.
pub fn coproduct(x: &SchurElement) -> Result<SplitElement> {
    let alg = x.algebra();
    let p = alg.presentation();
    let d = x.degree();
    let mut out = SplitElement::zero(alg, d, 2, x.tag());
    for (t, c) in x.terms() {
        for l in 0..=d {
            for (t1, t2, sign) in splits(t, l, p) {
                let mut coef = c * Scalar::from(sign);
                if x.tag() == Basis::Eta {
                    let num = c_factorial(t, p);
                    let den = c_factorial(&t1, p) * c_factorial(&t2, p);
                    let (q, r) = num.div_rem(&den);
                    if !r.is_zero() {
                        return Err(Error::NotIntegral(format!("coproduct multiplicity {num}/{den}")));
                    }
                    coef *= q;
                }
                out.add_term(vec![t1, t2], coef);
            }
        }
    }
    Ok(out)
}

/// Counit: the degree-zero coefficient.
pub fn counit(x: &SchurElement) -> Scalar {
    if x.degree() == 0 {
        x.coeff(&CanonicalTriple::empty())
    } else {
        Scalar::zero()
    }
}

/// `∇_δ(x)`: the iterated coproduct projected onto the shape `δ`.
pub fn iterated_coproduct(x: &SchurElement, delta: &[usize]) -> Result<SplitElement> {
    if delta.iter().sum::<usize>() != x.degree() || delta.is_empty() {
        return Err(Error::InvalidTriple(format!("shape {delta:?} does not sum to {}", x.degree())));
    }
    let mut cur = SplitElement::from_factors(std::slice::from_ref(x))?;
    for k in 1..delta.len() {
        // split the last factor so that the first k pieces match δ
        cur = cur.coproduct_at(k - 1)?;
        let mut shape: Vec<usize> = delta[..k].to_vec();
        let rest: usize = delta[k..].iter().sum();
        shape.push(rest);
        cur = cur.project(&shape);
    }
    Ok(cur)
}

/// Star product of two elements (closed form).
pub fn star(x: &SchurElement, y: &SchurElement) -> Result<SchurElement> {
    x.star(y)
}

/// Star product recomputed in the tensor model.
pub fn star_via_tensors(x: &SchurElement, y: &SchurElement) -> Result<SchurElement> {
    star_oracle(x, y)
}

/// Star products of every pair of factors of a split element, i.e. the
/// multiplication map applied factorwise in order.
pub fn star_all(factors: &[SchurElement]) -> Result<SchurElement> {
    let mut it = factors.iter();
    let first = it.next().ok_or_else(|| Error::InvalidTriple("empty star product".into()))?.clone();
    it.try_fold(first, |acc, f| acc.star(f))
}

fn parity_of_basis(alg: &SchurAlgebra, t: &CanonicalTriple) -> usize {
    triple_parity(alg, t)
}

fn homogeneous_terms(x: &SchurElement) -> Vec<SchurElement> {
    x.terms().map(|(t, c)| x.algebra().basis_element(t, x.tag()).scale(c)).collect()
}

/// Both sides of the compatibility between the product and the star
/// product with coproducts, for `x, y, z, u` with `|x|+|y| = |z|+|u|`.
pub fn bialgebra_identity_sides(x: &SchurElement, y: &SchurElement, z: &SchurElement, u: &SchurElement) -> Result<(SchurElement, SchurElement)> {
    let alg = x.algebra();
    let d = x.degree() + y.degree();
    if z.degree() + u.degree() != d {
        return Err(Error::AmbientMismatch("degrees of the two star products differ".into()));
    }
    let lhs = x.star(y)?.mul(&z.star(u)?)?.to_xi();
    let mut rhs = alg.zero(d, Basis::Xi);
    for xh in homogeneous_terms(x) {
        let cx = coproduct(&xh.to_xi())?;
        for yh in homogeneous_terms(y) {
            let cy = coproduct(&yh.to_xi())?;
            for zh in homogeneous_terms(z) {
                let zbar = zh.support().first().map_or(0, |t| parity_of_basis(alg, t));
                let cz = coproduct(&zh.to_xi())?;
                for uh in homogeneous_terms(u) {
                    let cu = coproduct(&uh.to_xi())?;
                    for (kx, ax) in cx.terms() {
                        for (ky, ay) in cy.terms() {
                            for (kz, az) in cz.terms() {
                                if kz[0].degree() != kx[0].degree() || kz[1].degree() != ky[0].degree() {
                                    continue;
                                }
                                for (ku, au) in cu.terms() {
                                    if ku[0].degree() != kx[1].degree() || ku[1].degree() != ky[1].degree() {
                                        continue;
                                    }
                                    let par = |t: &CanonicalTriple| parity_of_basis(alg, t);
                                    let s = (par(&kx[1]) + par(&ky[1])) * zbar + par(&ky[0]) * (par(&kx[1]) + par(&kz[0])) + par(&ky[1]) * par(&ku[0]);
                                    let e = |t: &CanonicalTriple| alg.basis_element(t, Basis::Xi);
                                    let f1 = e(&kx[0]).mul(&e(&kz[0]))?;
                                    let f2 = e(&ky[0]).mul(&e(&kz[1]))?;
                                    let f3 = e(&kx[1]).mul(&e(&ku[0]))?;
                                    let f4 = e(&ky[1]).mul(&e(&ku[1]))?;
                                    let prod = f1.star(&f2)?.star(&f3)?.star(&f4)?;
                                    let mut coef = ax * ay * az * au;
                                    if s % 2 == 1 {
                                        coef = -coef;
                                    }
                                    rhs = rhs.add(&prod.scale(&coef))?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((lhs, rhs))
}

/// True when both sides of the product/star compatibility agree.
pub fn check_bialgebra_identity(x: &SchurElement, y: &SchurElement, z: &SchurElement, u: &SchurElement) -> Result<bool> {
    let (l, r) = bialgebra_identity_sides(x, y, z, u)?;
    Ok(l == r)
}

/// A random quadruple of small `η` combinations (up to `terms` basis
/// elements each, coefficients in `[-2, 2]`) with `|x|+|y| = |z|+|u| = d`.
pub fn random_quadruple(alg: &SchurAlgebra, d: usize, terms: usize, rng: &mut impl Rng) -> [SchurElement; 4] {
    let a = rng.gen_range(0..=d);
    let c = rng.gen_range(0..=d);
    let mut pick = |deg: usize| {
        let b = alg.basis(deg);
        let mut e = alg.zero(deg, Basis::Eta);
        for _ in 0..rng.gen_range(1..=terms) {
            let t = b.choose(rng).expect("nonempty basis").clone();
            e.add_term(t, Scalar::from(rng.gen_range(-2i64..=2)));
        }
        e
    };
    [pick(a), pick(d - a), pick(c), pick(d - c)]
}

/// Seeded generator used by sampled checks.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shifts row and column indices of a triple by `m`.
fn shift(t: &CanonicalTriple, m: u32) -> Vec<Letter> {
    t.letters().iter().map(|l| Letter { b: l.b, r: l.r + m, s: l.s + m }).collect()
}

/// Separated embedding `T(n_1,d_1) ⊗ … ⊗ T(n_a,d_a) → T(n,d)` applied to an
/// elementary tensor of elements, `n = Σ n_k`. Tags are preserved.
pub fn separated_embedding(target: &SchurAlgebra, factors: &[SchurElement]) -> Result<SchurElement> {
    let nsum: usize = factors.iter().map(|f| f.algebra().n()).sum();
    if nsum != target.n() {
        return Err(Error::AmbientMismatch(format!("block sizes sum to {nsum}, target has n = {}", target.n())));
    }
    if factors.iter().any(|f| f.algebra().presentation() != target.presentation()) {
        return Err(Error::AmbientMismatch("embedding factors over a different algebra".into()));
    }
    let tag = if factors.iter().all(|f| f.tag() == Basis::Eta) { Basis::Eta } else { Basis::Xi };
    let d: usize = factors.iter().map(SchurElement::degree).sum();
    let mut acc: Vec<(Vec<Letter>, Scalar)> = vec![(Vec::new(), Scalar::one())];
    let mut offset = 0u32;
    for f in factors {
        let f = f.in_basis(tag)?;
        let mut next = Vec::new();
        for (w, c) in &acc {
            for (t, x) in f.terms() {
                let mut w2 = w.clone();
                w2.extend(shift(t, offset));
                next.push((w2, c * x));
            }
        }
        acc = next;
        offset += f.algebra().n() as u32;
    }
    let p = target.presentation();
    let mut out = target.zero(d, tag);
    for (w, c) in acc {
        if let Some((t, s)) = canonicalize(&w, p) {
            out.add_term(t, c * Scalar::from(s));
        }
    }
    Ok(out)
}

/// `ξ(ν;δ)`: the image of the identity under the separated embedding.
pub fn xi_nu_delta(target: &SchurAlgebra, nu: &[usize], delta: &[usize]) -> Result<SchurElement> {
    if nu.len() != delta.len() {
        return Err(Error::InvalidTriple("ν and δ differ in length".into()));
    }
    let factors: Vec<SchurElement> = nu.iter().zip(delta).map(|(&n, &d)| identity(&target.with_n(n), d)).collect::<Result<_>>()?;
    separated_embedding(target, &factors)
}

/// Coordinates of an element in a fixed basis list, in its own tag.
pub fn coordinates(x: &SchurElement, index: &HashMap<CanonicalTriple, usize>) -> SparseVec {
    let mut v: SparseVec = x.terms().map(|(t, c)| (index[t], c.clone())).collect();
    v.sort_by_key(|e| e.0);
    v
}

/// Outcome of the generation closure.
#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub dimension: usize,
    pub generators: usize,
    pub rounds: usize,
    pub rank: usize,
    pub elementary_divisors: Vec<String>,
    pub full: bool,
}

/// Generators `S^𝔞(n,d) ∪ 1^{⊗d−1} * Y`, in the `η` basis.
pub fn generation_generators(alg: &SchurAlgebra, d: usize) -> Result<Vec<SchurElement>> {
    let p = alg.presentation();
    if !p.is_unital_good_pair() {
        return Err(Error::Unsupported("generation needs a unital good pair".into()));
    }
    let mut gens: Vec<SchurElement> = alg
        .basis(d)
        .into_iter()
        .filter(|t| t.letters().iter().all(|l| p.sector(l.basis()) == Sector::A))
        .map(|t| alg.basis_element(&t, Basis::Eta))
        .collect();
    if d >= 1 {
        let one = identity(alg, d - 1)?.to_eta()?;
        for b in (0..p.dim()).filter(|&b| p.sector(b) != Sector::A) {
            for r in 1..=alg.n() {
                for s in 1..=alg.n() {
                    let y = alg.xi(&[Letter::new(b, r, s)]).to_eta()?;
                    gens.push(one.star(&y)?.to_eta()?);
                }
            }
        }
    }
    Ok(gens)
}

/// Closes the span of the generators under right multiplication by
/// generators and compares the result with the full `η` lattice.
pub fn generation_closure(alg: &SchurAlgebra, d: usize) -> Result<GenerationReport> {
    let basis = alg.basis(d);
    let index: HashMap<CanonicalTriple, usize> = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let gens = generation_generators(alg, d)?;
    let mut lat = Lattice::new(basis.len());
    for g in &gens {
        lat.insert(coordinates(&g.to_eta()?, &index));
    }
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut grew = false;
        for v in lat.basis() {
            let x = SchurElement::from_terms(alg, d, Basis::Eta, v.iter().map(|(i, c)| (basis[*i].clone(), c.clone())));
            for g in &gens {
                let w = coordinates(&x.mul(g)?.to_eta()?, &index);
                if !lat.contains(&w) {
                    lat.insert(w);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let snf = lat.smith();
    Ok(GenerationReport {
        dimension: basis.len(),
        generators: gens.len(),
        rounds,
        rank: lat.rank(),
        elementary_divisors: snf.nontrivial_divisors().iter().map(|x| x.to_string()).collect(),
        full: lat.is_full(),
    })
}

/// Lattice spanned by `S^𝔞(n,d−e) * Star^e Y` over `e = 0..=d`.
pub fn star_decomposition_lattice(alg: &SchurAlgebra, d: usize) -> Result<Lattice> {
    let p = alg.presentation();
    let basis = alg.basis(d);
    let index: HashMap<CanonicalTriple, usize> = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let ys: Vec<SchurElement> = (0..p.dim())
        .filter(|&b| p.sector(b) != Sector::A)
        .flat_map(|b| (1..=alg.n()).flat_map(move |r| (1..=alg.n()).map(move |s| Letter::new(b, r, s))))
        .map(|l| alg.xi(&[l]).to_eta().expect("degree one is integral"))
        .collect();
    let mut lat = Lattice::new(basis.len());
    for e in 0..=d {
        let heads: Vec<SchurElement> = alg
            .basis(d - e)
            .into_iter()
            .filter(|t| t.letters().iter().all(|l| p.sector(l.basis()) == Sector::A))
            .map(|t| alg.basis_element(&t, Basis::Eta))
            .collect();
        // all star words of length e in Y (unordered suffices by supercommutativity)
        let mut words: Vec<SchurElement> = vec![{
            let mut z = alg.zero(0, Basis::Eta);
            z.add_term(CanonicalTriple::empty(), Scalar::one());
            z
        }];
        for _ in 0..e {
            let mut next = Vec::new();
            for w in &words {
                for y in &ys {
                    let s = w.star(y)?;
                    if !s.is_zero() {
                        next.push(s);
                    }
                }
            }
            words = next;
        }
        for h in &heads {
            for w in &words {
                let v = h.star(w)?.to_eta()?;
                lat.insert(coordinates(&v, &index));
            }
        }
    }
    Ok(lat)
}

/// Even and odd ranks of a homogeneous-spanned module.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuperRank {
    pub even: usize,
    pub odd: usize,
}

impl SuperRank {
    pub fn total(self) -> usize {
        self.even + self.odd
    }
}

/// One entry of a character table: `rank_π e_𝛌 T e_𝛍`.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterEntry {
    pub lambda: MultiComposition,
    pub mu: MultiComposition,
    pub rank: SuperRank,
}

/// Super-ranks of `e_𝛌 T(n,d) e_𝛍` for every pair of multicompositions of
/// `d` indexed by the idempotent family.
pub fn left_ideal_characters(alg: &SchurAlgebra, idems: &[AlgebraElement], d: usize) -> Result<Vec<CharacterEntry>> {
    crate::schur::check_orthogonal_idempotents(alg, idems)?;
    let basis = alg.basis(d);
    let index: HashMap<CanonicalTriple, usize> = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let lams = multicompositions(idems.len(), alg.n(), d);
    let es: Vec<SchurElement> = lams.iter().map(|l| e_multicomposition(alg, idems, l)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (mu, emu) in lams.iter().zip(&es) {
        let right: Vec<(usize, SchurElement)> = basis
            .iter()
            .map(|t| Ok((triple_parity(alg, t), alg.basis_element(t, Basis::Eta).mul(emu)?)))
            .collect::<Result<_>>()?;
        for (lambda, elam) in lams.iter().zip(&es) {
            let mut even = RowEchelon::new(basis.len());
            let mut odd = RowEchelon::new(basis.len());
            for (par, x) in &right {
                if x.is_zero() {
                    continue;
                }
                let v = coordinates(&elam.mul(x)?.to_xi(), &index);
                if par % 2 == 0 {
                    even.insert(v);
                } else {
                    odd.insert(v);
                }
            }
            out.push(CharacterEntry { lambda: lambda.clone(), mu: mu.clone(), rank: SuperRank { even: even.rank(), odd: odd.rank() } });
        }
    }
    Ok(out)
}

/// Checks that the character table is constant along permutation orbits in
/// the left index and that ranks over `𝛌` add up to the rank of `T e_𝛍`.
pub fn check_character_symmetry(alg: &SchurAlgebra, idems: &[AlgebraElement], table: &[CharacterEntry]) -> Result<bool> {
    let lookup: HashMap<(MultiComposition, MultiComposition), SuperRank> = table.iter().map(|e| ((e.lambda.clone(), e.mu.clone()), e.rank)).collect();
    let perms = crate::combinatorics::all_permutations(alg.n());
    let mut families: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for _ in idems {
        families = families.into_iter().flat_map(|f| perms.iter().map(move |p| {
            let mut g = f.clone();
            g.push(p.clone());
            g
        })).collect();
    }
    for e in table {
        for s in &families {
            let moved = permute_multicomposition(s, &e.lambda);
            if lookup.get(&(moved, e.mu.clone())) != Some(&e.rank) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rank of the left ideal `T e_𝛍` split by parity.
pub fn left_ideal_rank(alg: &SchurAlgebra, idems: &[AlgebraElement], mu: &MultiComposition) -> Result<SuperRank> {
    let d = crate::schur::multicomposition_degree(mu);
    let basis = alg.basis(d);
    let index: HashMap<CanonicalTriple, usize> = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let emu = e_multicomposition(alg, idems, mu)?;
    let mut even = RowEchelon::new(basis.len());
    let mut odd = RowEchelon::new(basis.len());
    for t in &basis {
        let v = coordinates(&alg.basis_element(t, Basis::Xi).mul(&emu)?, &index);
        if triple_parity(alg, t) == 0 {
            even.insert(v);
        } else {
            odd.insert(v);
        }
    }
    Ok(SuperRank { even: even.rank(), odd: odd.rank() })
}
