//! Elements of `S^A(n,d)` and its integral form `T^A_a(n,d)`.
//!
//! An element is a sparse combination of canonical triples, tagged with the
//! basis it is written in: `Xi` (the orbit-sum basis) or `Eta` (the same
//! elements rescaled by the sector-c factorial weight).

mod idempotents;
mod product;
mod table;
mod tensor;

pub use idempotents::*;
pub use product::{xi_product_basis, StructureEntry};
pub use table::StructureTable;
pub use tensor::{diagonal_power, from_tensor, multiply_oracle, star_oracle, to_tensor, TensorElement};

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{
    a_factorial, c_factorial, canonicalize, enumerate_canonical, factorial, full_factorial, parse_letters, CanonicalTriple, Letter,
};
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::superalgebra::{AlgebraElement, Parity, SuperalgebraPresentation};

/// Which basis the coefficients of a [`SchurElement`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Xi,
    Eta,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Xi => "xi",
            Basis::Eta => "eta",
        }
    }
}

type ProductCache = RwLock<HashMap<(CanonicalTriple, CanonicalTriple), Arc<Vec<(CanonicalTriple, Scalar)>>>>;

struct Inner {
    pres: Arc<SuperalgebraPresentation>,
    n: usize,
    cache: ProductCache,
    cache_enabled: AtomicBool,
}

/// The family `S^A(n,d)`, `d ≥ 0`, for fixed `A` and `n`. Cheap to clone;
/// clones share the product cache.
#[derive(Clone)]
pub struct SchurAlgebra(Arc<Inner>);

impl fmt::Debug for SchurAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchurAlgebra({}, n={})", self.0.pres.name(), self.0.n)
    }
}

impl PartialEq for SchurAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.n == other.0.n && *self.0.pres == *other.0.pres)
    }
}

impl Eq for SchurAlgebra {}

impl SchurAlgebra {
    pub fn new(pres: SuperalgebraPresentation, n: usize) -> Self {
        Self::from_arc(Arc::new(pres), n)
    }

    pub fn from_arc(pres: Arc<SuperalgebraPresentation>, n: usize) -> Self {
        assert!(n >= 1, "n must be positive");
        SchurAlgebra(Arc::new(Inner { pres, n, cache: RwLock::new(HashMap::new()), cache_enabled: AtomicBool::new(true) }))
    }

    pub fn presentation(&self) -> &SuperalgebraPresentation {
        &self.0.pres
    }

    pub fn presentation_arc(&self) -> Arc<SuperalgebraPresentation> {
        self.0.pres.clone()
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    /// Same algebra `A` with a different `n` (fresh cache).
    pub fn with_n(&self, n: usize) -> SchurAlgebra {
        SchurAlgebra::from_arc(self.0.pres.clone(), n)
    }

    pub fn set_cache_enabled(&self, on: bool) {
        self.0.cache_enabled.store(on, Ordering::SeqCst);
    }

    pub fn cache_enabled(&self) -> bool {
        self.0.cache_enabled.load(Ordering::SeqCst)
    }

    pub fn clear_cache(&self) {
        self.0.cache.write().expect("cache lock").clear();
    }

    pub fn cache_len(&self) -> usize {
        self.0.cache.read().expect("cache lock").len()
    }

    /// Canonical basis triples of degree `d`.
    pub fn basis(&self, d: usize) -> Vec<CanonicalTriple> {
        enumerate_canonical(self.presentation(), self.n(), d)
    }

    pub fn zero(&self, d: usize, tag: Basis) -> SchurElement {
        SchurElement { alg: self.clone(), degree: d, tag, coeffs: BTreeMap::new() }
    }

    /// The basis element indexed by a canonical triple.
    pub fn basis_element(&self, t: &CanonicalTriple, tag: Basis) -> SchurElement {
        let mut e = self.zero(t.degree(), tag);
        e.coeffs.insert(t.clone(), Scalar::one());
        e
    }

    /// `ξ` of an arbitrary letter sequence: canonicalized, with sign.
    pub fn xi(&self, letters: &[Letter]) -> SchurElement {
        self.from_letters(letters, Basis::Xi)
    }

    /// `η` of an arbitrary letter sequence: canonicalized, with sign.
    pub fn eta(&self, letters: &[Letter]) -> SchurElement {
        self.from_letters(letters, Basis::Eta)
    }

    fn from_letters(&self, letters: &[Letter], tag: Basis) -> SchurElement {
        let mut e = self.zero(letters.len(), tag);
        if let Some((t, s)) = canonicalize(letters, self.presentation()) {
            e.coeffs.insert(t, Scalar::from(s));
        }
        e
    }

    /// Parses one triple `b1,..|r1,..|s1,..` into a signed basis element.
    pub fn parse_triple(&self, text: &str, tag: Basis) -> Result<SchurElement> {
        let letters = parse_letters(text, self.presentation(), self.n())?;
        Ok(self.from_letters(&letters, tag))
    }

    /// Parses a combination such as `2*(e0,c0|1,1|1,2) - (a0_1|1|2)` or a
    /// bare triple.
    pub fn parse_element(&self, text: &str, tag: Basis) -> Result<SchurElement> {
        parse_combination(self, text, tag)
    }

    /// `ξ^a_{r,s}` for homogeneous algebra elements `a_k`.
    pub fn expand_general(&self, a: &[AlgebraElement], r: &[u32], s: &[u32]) -> Result<SchurElement> {
        expand_general(self, a, r, s)
    }
}

/// A sparse combination of canonical triples of a fixed degree.
#[derive(Clone)]
pub struct SchurElement {
    alg: SchurAlgebra,
    degree: usize,
    tag: Basis,
    coeffs: BTreeMap<CanonicalTriple, Scalar>,
}

impl PartialEq for SchurElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.degree == other.degree && self.tag == other.tag && self.coeffs == other.coeffs
    }
}

impl Eq for SchurElement {}

impl fmt::Debug for SchurElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.tag.name(), self.to_text())
    }
}

impl SchurElement {
    pub fn algebra(&self) -> &SchurAlgebra {
        &self.alg
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tag(&self) -> Basis {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, t: &CanonicalTriple) -> Scalar {
        self.coeffs.get(t).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalTriple, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<CanonicalTriple> {
        self.coeffs.keys().cloned().collect()
    }

    /// Builds an element from raw terms; zeros are dropped and repeated keys summed.
    pub fn from_terms(alg: &SchurAlgebra, degree: usize, tag: Basis, terms: impl IntoIterator<Item = (CanonicalTriple, Scalar)>) -> Self {
        let mut e = alg.zero(degree, tag);
        for (t, c) in terms {
            debug_assert_eq!(t.degree(), degree);
            e.add_term(t, c);
        }
        e
    }

    pub fn add_term(&mut self, t: CanonicalTriple, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &SchurElement) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AmbientMismatch(format!("{:?} vs {:?}", self.alg, other.alg)));
        }
        if self.degree != other.degree {
            return Err(Error::AmbientMismatch(format!("degree {} vs {}", self.degree, other.degree)));
        }
        Ok(())
    }

    /// Sum; the right operand is converted to the left operand's basis.
    pub fn add(&self, other: &SchurElement) -> Result<SchurElement> {
        self.check_compatible(other)?;
        let other = other.in_basis(self.tag)?;
        let mut out = self.clone();
        for (t, c) in other.coeffs {
            out.add_term(t, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SchurElement) -> Result<SchurElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SchurElement {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, k: &Scalar) -> SchurElement {
        let mut out = self.alg.zero(self.degree, self.tag);
        if !k.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(t, c)| (t.clone(), c * k)).collect();
        }
        out
    }

    /// Rewrites in the `ξ` basis (always integral).
    pub fn to_xi(&self) -> SchurElement {
        match self.tag {
            Basis::Xi => self.clone(),
            Basis::Eta => {
                let p = self.alg.presentation();
                let mut out = self.alg.zero(self.degree, Basis::Xi);
                for (t, c) in &self.coeffs {
                    out.add_term(t.clone(), c * c_factorial(t, p));
                }
                out
            }
        }
    }

    /// Rewrites in the `η` basis; fails if a coefficient is not divisible.
    pub fn to_eta(&self) -> Result<SchurElement> {
        match self.tag {
            Basis::Eta => Ok(self.clone()),
            Basis::Xi => {
                let p = self.alg.presentation();
                let mut out = self.alg.zero(self.degree, Basis::Eta);
                for (t, c) in &self.coeffs {
                    let f = c_factorial(t, p);
                    let (q, r) = c.div_rem(&f);
                    if !r.is_zero() {
                        return Err(Error::NotIntegral(format!("coefficient {c} of {} not divisible by {f}", t.to_text(p))));
                    }
                    out.add_term(t.clone(), q);
                }
                Ok(out)
            }
        }
    }

    /// `η`-coordinates over ℚ (defined for every element).
    pub fn eta_coordinates(&self) -> BTreeMap<CanonicalTriple, BigRational> {
        let p = self.alg.presentation();
        self.to_xi().coeffs.iter().map(|(t, c)| (t.clone(), BigRational::new(c.clone(), c_factorial(t, p)))).collect()
    }

    /// True when every `η`-coordinate is an integer.
    pub fn is_eta_integral(&self) -> bool {
        self.to_eta().is_ok()
    }

    pub fn in_basis(&self, tag: Basis) -> Result<SchurElement> {
        match tag {
            Basis::Xi => Ok(self.to_xi()),
            Basis::Eta => self.to_eta(),
        }
    }

    /// Product in `S^A(n,d)` by the closed-form structure constants. If both
    /// operands are `η`-tagged the result is `η`-tagged (and integral);
    /// otherwise it is `ξ`-tagged.
    pub fn mul(&self, other: &SchurElement) -> Result<SchurElement> {
        self.check_compatible(other)?;
        product::multiply_fast(self, other)
    }

    /// Star product of basis expansions (degree adds).
    pub fn star(&self, other: &SchurElement) -> Result<SchurElement> {
        if self.alg != other.alg {
            return Err(Error::AmbientMismatch("star of elements over different algebras".into()));
        }
        let p = self.alg.presentation();
        let both_eta = self.tag == Basis::Eta && other.tag == Basis::Eta;
        let (x, y) = if both_eta { (self.clone(), other.clone()) } else { (self.to_xi(), other.to_xi()) };
        let tag = if both_eta { Basis::Eta } else { Basis::Xi };
        let mut out = self.alg.zero(self.degree + other.degree, tag);
        for (s, a) in &x.coeffs {
            for (t, b) in &y.coeffs {
                let mut cat = s.letters().to_vec();
                cat.extend_from_slice(t.letters());
                let Some((w, sign)) = canonicalize(&cat, p) else { continue };
                let factor = if both_eta {
                    a_factorial(&w, p) / (a_factorial(s, p) * a_factorial(t, p))
                } else {
                    full_factorial(&w) / (full_factorial(s) * full_factorial(t))
                };
                out.add_term(w, a * b * factor * Scalar::from(sign));
            }
        }
        Ok(out)
    }

    /// Parity of a homogeneous element (`None` for zero or mixed support).
    pub fn parity(&self) -> Option<Parity> {
        let p = self.alg.presentation();
        let mut it = self.coeffs.keys().map(|t| {
            let odd = t.letters().iter().filter(|l| p.is_odd(l.basis())).count();
            if odd % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            }
        });
        let first = it.next()?;
        it.all(|q| q == first).then_some(first)
    }

    /// Text form: signed combination of triples in canonical order.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let p = self.alg.presentation();
        let mut s = String::new();
        for (k, (t, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&format!("({})", t.to_text(p)));
        }
        s
    }
}

fn parse_combination(alg: &SchurAlgebra, text: &str, tag: Basis) -> Result<SchurElement> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty element expression".into()));
    }
    if !text.contains('(') {
        return alg.parse_triple(text, tag);
    }
    let mut out: Option<SchurElement> = None;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    let mut first = true;
    while i < chars.len() {
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if i >= chars.len() {
            break;
        }
        let mut sign = Scalar::one();
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if !first {
            return Err(Error::Parse(format!("expected '+' or '-' at position {i} in {text:?}")));
        }
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff = Scalar::one();
        if i > start {
            coeff = chars[start..i].iter().collect::<String>().parse().map_err(|_| Error::Parse(format!("bad coefficient at position {start}")))?;
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            if i >= chars.len() || chars[i] != '*' {
                return Err(Error::Parse(format!("expected '*' at position {i} in {text:?}")));
            }
            i += 1;
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
        }
        if i >= chars.len() || chars[i] != '(' {
            return Err(Error::Parse(format!("expected '(' at position {i} in {text:?}")));
        }
        let close = chars[i..].iter().position(|&c| c == ')').map(|k| k + i).ok_or_else(|| Error::Parse(format!("unclosed '(' at position {i}")))?;
        let inner: String = chars[i + 1..close].iter().collect();
        let term = alg.parse_triple(&inner, tag)?.scale(&(sign * coeff));
        out = Some(match out {
            None => term,
            Some(acc) => acc.add(&term)?,
        });
        i = close + 1;
        first = false;
    }
    out.ok_or_else(|| Error::Parse("no terms".into()))
}

/// `ξ^a_{r,s}` for a tuple of homogeneous elements, expanded multilinearly.
pub fn expand_general(alg: &SchurAlgebra, a: &[AlgebraElement], r: &[u32], s: &[u32]) -> Result<SchurElement> {
    let p = alg.presentation();
    let d = a.len();
    if r.len() != d || s.len() != d {
        return Err(Error::InvalidTriple("word lengths differ".into()));
    }
    if r.iter().chain(s).any(|&x| x == 0 || x as usize > alg.n()) {
        return Err(Error::InvalidTriple("row/column index out of range".into()));
    }
    let mut parity = Vec::with_capacity(d);
    for x in a {
        match x.parity(p) {
            Some(q) => parity.push(q),
            None if x.is_zero() => return Ok(alg.zero(d, Basis::Xi)),
            None => return Err(Error::InvalidTriple("non-homogeneous element in expand_general".into())),
        }
    }
    // stabilizer of (a, r, s): positions with equal element and equal indices
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut seen = vec![false; d];
    for k in 0..d {
        if seen[k] {
            continue;
        }
        let mut m = 0;
        for l in k..d {
            if !seen[l] && a[l] == a[k] && r[l] == r[k] && s[l] == s[k] {
                seen[l] = true;
                m += 1;
            }
        }
        groups.push((k, m));
    }
    if groups.iter().any(|&(k, m)| m > 1 && parity[k] == Parity::Odd) {
        return Ok(alg.zero(d, Basis::Xi));
    }
    let stab: Scalar = groups.iter().map(|&(_, m)| factorial(m)).product();
    let supports: Vec<Vec<(usize, Scalar)>> = a.iter().map(|x| x.terms().map(|(i, c)| (i, c.clone())).collect()).collect();
    let mut acc: BTreeMap<CanonicalTriple, BigRational> = BTreeMap::new();
    let mut idx = vec![0usize; d];
    loop {
        let mut coef = Scalar::one();
        let mut letters = Vec::with_capacity(d);
        for k in 0..d {
            let (b, c) = &supports[k][idx[k]];
            coef *= c;
            letters.push(Letter { b: *b as u32, r: r[k], s: s[k] });
        }
        if let Some((t, sign)) = canonicalize(&letters, p) {
            let w = BigRational::new(coef * full_factorial(&t) * Scalar::from(sign), stab.clone());
            *acc.entry(t).or_insert_with(BigRational::zero) += w;
        }
        // advance the mixed-radix counter
        let mut k = 0;
        while k < d {
            idx[k] += 1;
            if idx[k] < supports[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
    }
    let mut out = alg.zero(d, Basis::Xi);
    for (t, q) in acc {
        if !q.is_integer() {
            return Err(Error::NotIntegral(format!("expand_general produced {q} at {}", t.to_text(p))));
        }
        out.add_term(t, q.to_integer());
    }
    Ok(out)
}

/// `τ_{n,d}`: applies the declared anti-involution letterwise and swaps rows
/// with columns. Tags are preserved.
pub fn apply_tau(x: &SchurElement) -> Result<SchurElement> {
    let p = x.alg.presentation();
    let inv = p.involution().ok_or_else(|| Error::Unsupported(format!("{} declares no involution", p.name())))?;
    let mut out = x.alg.zero(x.degree, x.tag);
    for (t, c) in &x.coeffs {
        let mut sign = 1i64;
        let letters: Vec<Letter> = t
            .letters()
            .iter()
            .map(|l| {
                let (b, s) = inv[l.basis()];
                sign *= s;
                Letter { b: b as u32, r: l.s, s: l.r }
            })
            .collect();
        if let Some((w, s2)) = canonicalize(&letters, p) {
            out.add_term(w, c * Scalar::from(sign * s2 as i64));
        }
    }
    Ok(out)
}

/// `τ` twisted by `(−1)^{m(m−1)/2}` on triples with `m` odd letters. Unlike
/// the letterwise map, this is exactly anti-multiplicative when the
/// involution of `A` is.
pub fn apply_tau_signed(x: &SchurElement) -> Result<SchurElement> {
    let p = x.alg.presentation();
    let t = apply_tau(x)?;
    let mut out = x.alg.zero(x.degree, x.tag);
    for (w, c) in t.coeffs {
        let m = w.letters().iter().filter(|l| p.is_odd(l.basis())).count();
        let c = if (m * m.saturating_sub(1) / 2) % 2 == 0 { c } else { -c };
        out.add_term(w, c);
    }
    Ok(out)
}

/// Canonical triples all of whose letters survive truncation by `e`
/// (`ebe = b`); errors if some basis element is neither fixed nor killed.
pub fn truncation_basis(alg: &SchurAlgebra, d: usize, e: &AlgebraElement) -> Result<Vec<CanonicalTriple>> {
    let keep = surviving_labels(alg.presentation(), e)?;
    Ok(crate::combinatorics::enumerate_canonical_filtered(alg.presentation(), alg.n(), d, |l| keep[l.basis()]))
}

/// For each basis index, whether `ebe = b`.
pub fn surviving_labels(p: &SuperalgebraPresentation, e: &AlgebraElement) -> Result<Vec<bool>> {
    if p.multiply(e, e) != *e {
        return Err(Error::InvalidPresentation("truncation element is not idempotent".into()));
    }
    (0..p.dim())
        .map(|i| {
            let b = AlgebraElement::basis(i);
            let ebe = p.multiply(&p.multiply(e, &b), e);
            if ebe == b {
                Ok(true)
            } else if ebe.is_zero() {
                Ok(false)
            } else {
                Err(Error::InvalidPresentation(format!("basis not admissible: witness {}", p.label(i))))
            }
        })
        .collect()
}

/// Every product of basis elements of degree `d` in the requested basis.
pub fn structure_table(alg: &SchurAlgebra, d: usize, tag: Basis) -> Result<(Vec<CanonicalTriple>, Vec<StructureEntry>)> {
    product::structure_table(alg, d, tag)
}

#[cfg(test)]
mod tests;
