//! Finite-dimensional superalgebras given by integer structure constants,
//! together with a chosen good pair (sector `a` subalgebra, complement `c`,
//! odd part) and the standard example constructors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::Scalar;

/// ℤ/2 grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Result<Self> {
        match b {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::InvalidPresentation(format!("parity must be 0 or 1, got {b}"))),
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Which part of the good-pair decomposition a basis element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sector {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "odd")]
    Odd,
}

impl Sector {
    pub fn name(self) -> &'static str {
        match self {
            Sector::A => "a",
            Sector::C => "c",
            Sector::Odd => "odd",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub parity: Parity,
    pub sector: Sector,
}

/// Structure-constant row: `(result index, coefficient)`, sorted, no zeros.
pub type KappaRow = Vec<(usize, i64)>;

/// A superalgebra with a distinguished homogeneous basis split into sectors.
///
/// Basis order is declaration order; it fixes the total order used for
/// canonical triples. Structure constants are machine integers; every
/// derived quantity is computed in arbitrary precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperalgebraPresentation {
    name: String,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    table: Vec<Vec<KappaRow>>,
    unit: Option<KappaRow>,
    involution: Option<Vec<(usize, i64)>>,
    form: Option<Vec<i64>>,
}

/// One entry of the structure-constant table: `left · right ∋ coeff · result`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductEntry {
    pub left: usize,
    pub right: usize,
    pub result: usize,
    pub coeff: i64,
}

impl SuperalgebraPresentation {
    /// Builds a presentation from index-based data. Duplicate product entries
    /// are summed. Only structural sanity (labels, indices) is checked here;
    /// algebraic axioms are checked by [`validate`].
    pub fn new(
        name: impl Into<String>,
        basis: Vec<BasisElement>,
        products: impl IntoIterator<Item = ProductEntry>,
        unit: Option<Vec<(usize, i64)>>,
        involution: Option<Vec<(usize, i64)>>,
    ) -> Result<Self> {
        let dim = basis.len();
        let mut index = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            check_label(&b.label)?;
            if index.insert(b.label.clone(), i).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate label {}", b.label)));
            }
        }
        let mut acc: Vec<Vec<BTreeMap<usize, i64>>> = vec![vec![BTreeMap::new(); dim]; dim];
        for e in products {
            if e.left >= dim || e.right >= dim || e.result >= dim {
                return Err(Error::InvalidPresentation("product index out of range".into()));
            }
            *acc[e.left][e.right].entry(e.result).or_default() += e.coeff;
        }
        let table = acc
            .into_iter()
            .map(|row| row.into_iter().map(|m| m.into_iter().filter(|e| e.1 != 0).collect()).collect())
            .collect();
        let unit = unit.map(|u| normalize_row(u, dim)).transpose()?;
        if let Some(inv) = &involution {
            if inv.len() != dim {
                return Err(Error::InvalidPresentation("involution must list every basis label".into()));
            }
            if inv.iter().any(|(j, s)| *j >= dim || (*s != 1 && *s != -1)) {
                return Err(Error::InvalidPresentation("involution entries must be (label, ±1)".into()));
            }
        }
        Ok(SuperalgebraPresentation { name: name.into(), basis, index, table, unit, involution, form: None })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.basis[i].parity.is_odd()
    }

    pub fn sector(&self, i: usize) -> Sector {
        self.basis[i].sector
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require_index(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::Parse(format!("unknown basis label {label:?} in {}", self.name)))
    }

    /// `κ(i, j)`: the expansion of `b_i b_j` in the basis.
    pub fn kappa(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i][j]
    }

    pub fn unit(&self) -> Option<&[(usize, i64)]> {
        self.unit.as_deref()
    }

    /// True when the unit exists and lies in sector `a`.
    pub fn is_unital_good_pair(&self) -> bool {
        self.unit.as_ref().is_some_and(|u| u.iter().all(|(i, _)| self.sector(*i) == Sector::A))
    }

    pub fn involution(&self) -> Option<&[(usize, i64)]> {
        self.involution.as_deref()
    }

    /// The attached central form, one value per basis element.
    pub fn form(&self) -> Option<&[i64]> {
        self.form.as_deref()
    }

    pub fn with_form(mut self, values: Vec<i64>) -> Result<Self> {
        if values.len() != self.dim() {
            return Err(Error::InvalidPresentation("form must give one value per basis element".into()));
        }
        self.form = Some(values);
        Ok(self)
    }

    pub fn without_form(mut self) -> Self {
        self.form = None;
        self
    }

    pub fn sector_indices(&self, s: Sector) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.sector(i) == s).collect()
    }

    /// Every nonzero structure constant.
    pub fn product_entries(&self) -> Vec<ProductEntry> {
        let mut out = Vec::new();
        for (l, row) in self.table.iter().enumerate() {
            for (r, k) in row.iter().enumerate() {
                for &(res, coeff) in k {
                    out.push(ProductEntry { left: l, right: r, result: res, coeff });
                }
            }
        }
        out
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(i)
    }

    pub fn element(&self, terms: &[(&str, i64)]) -> Result<AlgebraElement> {
        let mut e = AlgebraElement::zero();
        for (l, c) in terms {
            e.add_term(self.require_index(l)?, Scalar::from(*c));
        }
        Ok(e)
    }

    pub fn unit_element(&self) -> Option<AlgebraElement> {
        self.unit.as_ref().map(|u| AlgebraElement::from_i64(u))
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, a) in &x.coeffs {
            for (j, b) in &y.coeffs {
                let ab = a * b;
                for &(k, c) in self.kappa(*i, *j) {
                    out.add_term(k, &ab * c);
                }
            }
        }
        out
    }

    fn multiply_rows(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> BTreeMap<usize, i64> {
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for &(i, a) in x {
            for &(j, b) in y {
                for &(k, c) in self.kappa(i, j) {
                    *out.entry(k).or_default() += a * b * c;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Applies the declared anti-involution.
    pub fn apply_involution(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        let inv = self.involution.as_ref().ok_or_else(|| Error::Unsupported(format!("{} declares no involution", self.name)))?;
        let mut out = AlgebraElement::zero();
        for (i, c) in &x.coeffs {
            let (j, s) = inv[*i];
            out.add_term(j, c * s);
        }
        Ok(out)
    }

    /// Serializes to the JSON spec-file format.
    pub fn to_spec(&self) -> AlgebraSpecFile {
        AlgebraSpecFile {
            name: self.name.clone(),
            basis: self
                .basis
                .iter()
                .map(|b| SpecBasis { label: b.label.clone(), parity: b.parity.bit(), sector: b.sector })
                .collect(),
            products: self
                .product_entries()
                .into_iter()
                .map(|e| (self.label(e.left).to_string(), self.label(e.right).to_string(), self.label(e.result).to_string(), e.coeff))
                .collect(),
            unit: self.unit.as_ref().map(|u| u.iter().map(|(i, c)| (self.label(*i).to_string(), *c)).collect()),
            involution: self.involution.as_ref().map(|inv| {
                inv.iter().enumerate().map(|(i, (j, s))| (self.label(i).to_string(), self.label(*j).to_string(), *s)).collect()
            }),
            form: self.form.as_ref().map(|f| {
                f.iter().enumerate().filter(|(_, v)| **v != 0).map(|(i, v)| (self.label(i).to_string(), *v)).collect()
            }),
        }
    }

    pub fn from_spec(spec: &AlgebraSpecFile) -> Result<Self> {
        let basis: Vec<BasisElement> = spec
            .basis
            .iter()
            .map(|b| Ok(BasisElement { label: b.label.clone(), parity: Parity::from_bit(b.parity)?, sector: b.sector }))
            .collect::<Result<_>>()?;
        let index: HashMap<&str, usize> = basis.iter().enumerate().map(|(i, b)| (b.label.as_str(), i)).collect();
        let look = |l: &str| -> Result<usize> {
            index.get(l).copied().ok_or_else(|| Error::InvalidPresentation(format!("unknown label {l:?}")))
        };
        let products = spec
            .products
            .iter()
            .map(|(l, r, res, c)| Ok(ProductEntry { left: look(l)?, right: look(r)?, result: look(res)?, coeff: *c }))
            .collect::<Result<Vec<_>>>()?;
        let unit = spec.unit.as_ref().map(|u| u.iter().map(|(l, c)| Ok((look(l)?, *c))).collect::<Result<Vec<_>>>()).transpose()?;
        let involution = match &spec.involution {
            None => None,
            Some(list) => {
                let mut inv: Vec<Option<(usize, i64)>> = vec![None; basis.len()];
                for (l, m, s) in list {
                    let i = look(l)?;
                    if inv[i].replace((look(m)?, *s)).is_some() {
                        return Err(Error::InvalidPresentation(format!("involution lists {l:?} twice")));
                    }
                }
                Some(
                    inv.into_iter()
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| Error::InvalidPresentation("involution must list every basis label".into()))?,
                )
            }
        };
        let form = match &spec.form {
            None => None,
            Some(list) => {
                let mut f = vec![0i64; basis.len()];
                for (l, v) in list {
                    f[look(l)?] += v;
                }
                Some(f)
            }
        };
        let mut p = Self::new(spec.name.clone(), basis, products, unit, involution)?;
        p.form = form;
        Ok(p)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_spec())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: AlgebraSpecFile = serde_json::from_str(s)?;
        Self::from_spec(&spec)
    }
}

fn check_label(l: &str) -> Result<()> {
    if l.is_empty() || l.chars().any(|c| c.is_whitespace() || matches!(c, ',' | '|' | '+' | '(' | ')' | '[' | ']' | '#')) {
        return Err(Error::InvalidPresentation(format!("bad basis label {l:?}")));
    }
    Ok(())
}

fn normalize_row(u: Vec<(usize, i64)>, dim: usize) -> Result<KappaRow> {
    let mut m: BTreeMap<usize, i64> = BTreeMap::new();
    for (i, c) in u {
        if i >= dim {
            return Err(Error::InvalidPresentation("unit index out of range".into()));
        }
        *m.entry(i).or_default() += c;
    }
    Ok(m.into_iter().filter(|e| e.1 != 0).collect())
}

/// On-disk algebra description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpecFile {
    pub name: String,
    pub basis: Vec<SpecBasis>,
    #[serde(default)]
    pub products: Vec<(String, String, String, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<(String, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<(String, String, i64)>>,
    /// Optional central form: `[label, value]` pairs, absent labels are 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<(String, i64)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecBasis {
    pub label: String,
    pub parity: u8,
    pub sector: Sector,
}

/// Sparse element of the algebra, keyed by basis index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: BTreeMap<usize, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut e = Self::zero();
        e.coeffs.insert(i, Scalar::one());
        e
    }

    pub fn from_i64(terms: &[(usize, i64)]) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(*i, Scalar::from(*c));
        }
        e
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(i).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.add_term(*i, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, c) in &self.coeffs {
            out.add_term(*i, c * k);
        }
        out
    }

    /// Common parity of the support, `None` for zero or mixed elements.
    pub fn parity(&self, p: &SuperalgebraPresentation) -> Option<Parity> {
        let mut it = self.coeffs.keys().map(|&i| p.parity(i));
        let first = it.next()?;
        it.all(|q| q == first).then_some(first)
    }

    pub fn display(&self, p: &SuperalgebraPresentation) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, c)) in self.coeffs.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(p.label(*i));
        }
        s
    }
}

/// Kinds of validation failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FailureKind {
    SectorParity,
    ParityCompatibility,
    Associativity,
    SectorAClosure,
    Unit,
    Involution,
    Form,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub kind: FailureKind,
    /// Labels witnessing the failure.
    pub witness: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
    pub has_unit: bool,
    pub unital_good_pair: bool,
    pub has_involution: bool,
    pub has_form: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid (unit: {}, unital good pair: {})", self.has_unit, self.unital_good_pair)
        } else {
            writeln!(f, "{} failure(s):", self.failures.len())?;
            for x in &self.failures {
                writeln!(f, "  {:?} at [{}]: {}", x.kind, x.witness.join(", "), x.detail)?;
            }
            Ok(())
        }
    }
}

/// Checks every presentation invariant, collecting witnesses.
pub fn validate(p: &SuperalgebraPresentation) -> ValidationReport {
    let mut rep = ValidationReport {
        has_unit: p.unit.is_some(),
        unital_good_pair: p.is_unital_good_pair(),
        has_involution: p.involution.is_some(),
        has_form: p.form.is_some(),
        ..Default::default()
    };
    let n = p.dim();
    let lab = |i: usize| p.label(i).to_string();
    let mut fail = |kind, witness: Vec<String>, detail: String| rep.failures.push(ValidationFailure { kind, witness, detail });

    for i in 0..n {
        let b = &p.basis[i];
        let ok = match b.sector {
            Sector::A | Sector::C => b.parity == Parity::Even,
            Sector::Odd => b.parity == Parity::Odd,
        };
        if !ok {
            fail(FailureKind::SectorParity, vec![lab(i)], format!("sector {} with parity {}", b.sector.name(), b.parity.bit()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for &(k, _) in p.kappa(i, j) {
                if p.parity(k) != p.parity(i).add(p.parity(j)) {
                    fail(FailureKind::ParityCompatibility, vec![lab(i), lab(j), lab(k)], "result parity mismatch".into());
                }
                if p.sector(i) == Sector::A && p.sector(j) == Sector::A && p.sector(k) != Sector::A {
                    fail(FailureKind::SectorAClosure, vec![lab(i), lab(j), lab(k)], "product of sector-a elements leaves sector a".into());
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = p.multiply_rows(&p.table[i][j], &[(k, 1)]);
                let right = p.multiply_rows(&[(i, 1)], &p.table[j][k]);
                if left != right {
                    fail(FailureKind::Associativity, vec![lab(i), lab(j), lab(k)], "(xy)z != x(yz)".into());
                }
            }
        }
    }
    if let Some(u) = &p.unit {
        for i in 0..n {
            let l = p.multiply_rows(u, &[(i, 1)]);
            let r = p.multiply_rows(&[(i, 1)], u);
            let want: BTreeMap<usize, i64> = [(i, 1)].into_iter().collect();
            if l != want || r != want {
                fail(FailureKind::Unit, vec![lab(i)], "unit does not act as identity".into());
            }
        }
    }
    if let Some(inv) = &p.involution {
        for i in 0..n {
            let (j, s) = inv[i];
            let (k, t) = inv[j];
            if k != i || s * t != 1 {
                fail(FailureKind::Involution, vec![lab(i)], "involution does not square to the identity".into());
            }
            if p.sector(j) != p.sector(i) {
                fail(FailureKind::Involution, vec![lab(i), lab(j)], "involution does not preserve sectors".into());
            }
        }
        for i in 0..n {
            for j in 0..n {
                let l: BTreeMap<usize, i64> = {
                    let mut m = BTreeMap::new();
                    for &(k, c) in p.kappa(i, j) {
                        let (kk, s) = inv[k];
                        *m.entry(kk).or_insert(0) += c * s;
                    }
                    m.retain(|_, v| *v != 0);
                    m
                };
                let (ti, si) = inv[i];
                let (tj, sj) = inv[j];
                let mut r = p.multiply_rows(&[(tj, sj)], &[(ti, si)]);
                r.retain(|_, v| *v != 0);
                if l != r {
                    fail(FailureKind::Involution, vec![lab(i), lab(j)], "not anti-multiplicative".into());
                }
            }
        }
    }
    if let Some(t) = &p.form {
        for i in 0..n {
            if p.is_odd(i) && t[i] != 0 {
                fail(FailureKind::Form, vec![lab(i)], "form is nonzero on an odd element".into());
            }
        }
        let ev = |row: &[(usize, i64)]| -> i64 { row.iter().map(|(k, c)| c * t[*k]).sum() };
        for i in 0..n {
            for j in 0..n {
                if ev(p.kappa(i, j)) != ev(p.kappa(j, i)) {
                    fail(FailureKind::Form, vec![lab(i), lab(j)], "form is not central".into());
                }
            }
        }
    }
    rep
}

/// Validates and returns the presentation, or an error carrying the report.
pub fn validated(p: SuperalgebraPresentation) -> Result<SuperalgebraPresentation> {
    let r = validate(&p);
    if r.is_valid() {
        Ok(p)
    } else {
        Err(Error::AxiomFailure(r.to_string()))
    }
}

struct Builder {
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    products: Vec<ProductEntry>,
}

impl Builder {
    fn new() -> Self {
        Builder { basis: Vec::new(), index: HashMap::new(), products: Vec::new() }
    }

    fn add(&mut self, label: String, parity: Parity, sector: Sector) -> usize {
        let i = self.basis.len();
        self.index.insert(label.clone(), i);
        self.basis.push(BasisElement { label, parity, sector });
        i
    }

    fn idx(&self, l: &str) -> usize {
        self.index[l]
    }

    fn prod(&mut self, l: &str, r: &str, res: &str, coeff: i64) {
        let e = ProductEntry { left: self.idx(l), right: self.idx(r), result: self.idx(res), coeff };
        self.products.push(e);
    }
}

fn arrow(i: usize, j: usize) -> String {
    format!("a{i}_{j}")
}

/// The extended zigzag algebra on vertices `0..=ell`.
///
/// Basis: idempotents `e0..e{ell}` (sector a), cycles `c0..c{ell-1}`
/// (sector c), arrows `a{i}_{j}` between neighbours (odd). Length-two cycles
/// at a vertex agree, the cycle at `ell` vanishes, every other length-two path
/// and every longer path vanishes. Carries the arrow-reversing involution.
pub fn make_extended_zigzag(ell: usize) -> Result<SuperalgebraPresentation> {
    if ell < 1 {
        return Err(Error::InvalidPresentation("extended zigzag needs ell >= 1".into()));
    }
    let mut b = Builder::new();
    for i in 0..=ell {
        b.add(format!("e{i}"), Parity::Even, Sector::A);
    }
    for j in 0..ell {
        b.add(format!("c{j}"), Parity::Even, Sector::C);
    }
    let mut arrows = Vec::new();
    for j in 0..ell {
        arrows.push((j, j + 1));
        arrows.push((j + 1, j));
    }
    for &(i, j) in &arrows {
        b.add(arrow(i, j), Parity::Odd, Sector::Odd);
    }
    // idempotents
    for i in 0..=ell {
        let e = format!("e{i}");
        b.prod(&e, &e, &e, 1);
    }
    for j in 0..ell {
        let (e, c) = (format!("e{j}"), format!("c{j}"));
        b.prod(&e, &c, &c, 1);
        b.prod(&c, &e, &c, 1);
    }
    for &(i, j) in &arrows {
        let a = arrow(i, j);
        b.prod(&format!("e{i}"), &a, &a, 1);
        b.prod(&a, &format!("e{j}"), &a, 1);
    }
    // length-two cycles: a_{i,j} a_{j,i} is the cycle at i
    for &(i, j) in &arrows {
        if i < ell {
            b.prod(&arrow(i, j), &arrow(j, i), &format!("c{i}"), 1);
        }
    }
    let unit = (0..=ell).map(|i| (i, 1)).collect();
    let involution: Vec<(usize, i64)> = (0..b.basis.len())
        .map(|k| {
            let l = b.basis[k].label.clone();
            match arrows.iter().find(|&&(i, j)| arrow(i, j) == l) {
                Some(&(i, j)) => (b.idx(&arrow(j, i)), 1),
                None => (k, 1),
            }
        })
        .collect();
    SuperalgebraPresentation::new(format!("ext-zigzag:{ell}"), b.basis, b.products, Some(unit), Some(involution))
}

/// The zigzag algebra: the truncation of the extended zigzag algebra by
/// `e0 + … + e{ell-1}`, carrying its standard central form (1 on cycles).
pub fn make_zigzag(ell: usize) -> Result<SuperalgebraPresentation> {
    let z = make_extended_zigzag(ell)?;
    let e = AlgebraElement::from_i64(&(0..ell).map(|i| (i, 1)).collect::<Vec<_>>());
    let t = truncate(&z, &e)?;
    let form: Vec<i64> = t.basis().iter().map(|b| if b.sector == Sector::C { 1 } else { 0 }).collect();
    t.with_name(format!("zigzag:{ell}")).with_form(form)
}

fn matrix_label(r: usize, s: usize, m: usize) -> String {
    if m <= 9 {
        format!("E{r}{s}")
    } else {
        format!("E{r}_{s}")
    }
}

fn matrix_algebra(name: String, m: usize, class: impl Fn(usize, usize) -> (Parity, Sector)) -> Result<SuperalgebraPresentation> {
    let mut b = Builder::new();
    for r in 1..=m {
        for s in 1..=m {
            let (p, sec) = class(r, s);
            b.add(matrix_label(r, s, m), p, sec);
        }
    }
    for r in 1..=m {
        for s in 1..=m {
            for u in 1..=m {
                b.prod(&matrix_label(r, s, m), &matrix_label(s, u, m), &matrix_label(r, u, m), 1);
            }
        }
    }
    let unit = (1..=m).map(|r| (b.idx(&matrix_label(r, r, m)), 1)).collect();
    let involution = (0..m * m).map(|k| ((k % m) * m + k / m, 1)).collect();
    SuperalgebraPresentation::new(name, b.basis, b.products, Some(unit), Some(involution))
}

/// The matrix superalgebra `M_{p|q}` with sector a spanned by the units
/// `E_rs`, `r,s ≤ p`. The algebra unit is recorded; the good pair is
/// non-unital whenever `q > 0`.
pub fn make_matrix_superalgebra(p: usize, q: usize) -> Result<SuperalgebraPresentation> {
    if p + q == 0 {
        return Err(Error::InvalidPresentation("matrix superalgebra needs p + q >= 1".into()));
    }
    let m = matrix_algebra(format!("matrix:{p},{q}"), p + q, |r, s| {
        let even = (r <= p) == (s <= p);
        if !even {
            (Parity::Odd, Sector::Odd)
        } else if r <= p {
            (Parity::Even, Sector::A)
        } else {
            (Parity::Even, Sector::C)
        }
    })?;
    Ok(m)
}

/// Purely even `M_m` with sector a the diagonal units and sector c the
/// off-diagonal units (a unital good pair).
pub fn make_matrix_diagonal_pair(m: usize) -> Result<SuperalgebraPresentation> {
    if m == 0 {
        return Err(Error::InvalidPresentation("matrix size must be >= 1".into()));
    }
    matrix_algebra(format!("mdiag:{m}"), m, |r, s| (Parity::Even, if r == s { Sector::A } else { Sector::C }))
}

/// Trivial extension `C ⊕ C*`. Dual labels get a trailing `*`.
///
/// Sectors: even basis of C is sector a, duals of the even basis are sector
/// c, odd elements and their duals are odd. The attached form evaluates the
/// dual part at the unit of C.
pub fn make_trivial_extension(c: &SuperalgebraPresentation) -> Result<SuperalgebraPresentation> {
    let unit = c.unit().ok_or_else(|| Error::Unsupported("trivial extension needs a unital algebra".into()))?.to_vec();
    let n = c.dim();
    let mut basis: Vec<BasisElement> = c
        .basis()
        .iter()
        .map(|b| BasisElement { label: b.label.clone(), parity: b.parity, sector: if b.parity.is_odd() { Sector::Odd } else { Sector::A } })
        .collect();
    for b in c.basis() {
        basis.push(BasisElement {
            label: format!("{}*", b.label),
            parity: b.parity,
            sector: if b.parity.is_odd() { Sector::Odd } else { Sector::C },
        });
    }
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for &(k, v) in c.kappa(i, j) {
                products.push(ProductEntry { left: i, right: j, result: k, coeff: v });
                // b_k* · b_i = Σ_j κ^k_{i,j} b_j*  (functional x ↦ b_k*(b_i x))
                products.push(ProductEntry { left: n + k, right: i, result: n + j, coeff: v });
                // b_j · b_k* = Σ_i κ^k_{i,j} b_i*  (functional x ↦ b_k*(x b_j))
                products.push(ProductEntry { left: j, right: n + k, result: n + i, coeff: v });
            }
        }
    }
    let involution = c.involution().map(|inv| {
        let mut v = inv.to_vec();
        v.extend(inv.iter().map(|(j, s)| (n + j, *s)));
        v
    });
    let mut form = vec![0i64; 2 * n];
    for &(i, u) in &unit {
        form[n + i] = u;
    }
    let p = SuperalgebraPresentation::new(format!("trivext:{}", c.name()), basis, products, Some(unit), involution)?;
    p.with_form(form)
}

/// The idempotent truncation `eAe` on the basis elements fixed by `x ↦ exe`.
pub fn truncate(p: &SuperalgebraPresentation, e: &AlgebraElement) -> Result<SuperalgebraPresentation> {
    if p.multiply(e, e) != *e {
        return Err(Error::InvalidPresentation("truncation element is not idempotent".into()));
    }
    let mut keep = Vec::new();
    for i in 0..p.dim() {
        let b = AlgebraElement::basis(i);
        let ebe = p.multiply(&p.multiply(e, &b), e);
        if ebe == b {
            keep.push(i);
        } else if !ebe.is_zero() {
            return Err(Error::InvalidPresentation(format!("basis is not admissible for the idempotent: witness {}", p.label(i))));
        }
    }
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let basis = keep.iter().map(|&i| p.basis[i].clone()).collect();
    let mut products = Vec::new();
    for &i in &keep {
        for &j in &keep {
            for &(k, c) in p.kappa(i, j) {
                let kk = *pos.get(&k).ok_or_else(|| Error::InvalidPresentation("truncation not closed".into()))?;
                products.push(ProductEntry { left: pos[&i], right: pos[&j], result: kk, coeff: c });
            }
        }
    }
    let mut unit = Vec::new();
    for (i, c) in e.terms() {
        let k = *pos.get(&i).ok_or_else(|| Error::InvalidPresentation("idempotent not in its own truncation".into()))?;
        let c: i64 = c.try_into().map_err(|_| Error::InvalidPresentation("idempotent coefficient too large".into()))?;
        unit.push((k, c));
    }
    let involution = p.involution().and_then(|inv| keep.iter().map(|&i| pos.get(&inv[i].0).map(|&k| (k, inv[i].1))).collect());
    let form = p.form().map(|f| keep.iter().map(|&i| f[i]).collect());
    let mut out = SuperalgebraPresentation::new(format!("{}|trunc", p.name()), basis, products, Some(unit), involution)?;
    out.form = form;
    Ok(out)
}

/// Block-diagonal direct sum. Colliding labels of the second summand get
/// primes appended.
pub fn direct_sum(p1: &SuperalgebraPresentation, p2: &SuperalgebraPresentation) -> Result<SuperalgebraPresentation> {
    let n1 = p1.dim();
    let mut basis = p1.basis.clone();
    let mut taken: std::collections::HashSet<String> = basis.iter().map(|b| b.label.clone()).collect();
    for b in &p2.basis {
        let mut l = b.label.clone();
        while taken.contains(&l) {
            l.push('\'');
        }
        taken.insert(l.clone());
        basis.push(BasisElement { label: l, ..b.clone() });
    }
    let mut products = p1.product_entries();
    products.extend(p2.product_entries().into_iter().map(|e| ProductEntry {
        left: e.left + n1,
        right: e.right + n1,
        result: e.result + n1,
        coeff: e.coeff,
    }));
    let unit = match (p1.unit(), p2.unit()) {
        (Some(u1), Some(u2)) => Some(u1.iter().cloned().chain(u2.iter().map(|(i, c)| (i + n1, *c))).collect()),
        _ => None,
    };
    let involution = match (p1.involution(), p2.involution()) {
        (Some(a), Some(b)) => Some(a.iter().cloned().chain(b.iter().map(|(j, s)| (j + n1, *s))).collect()),
        _ => None,
    };
    let form = match (p1.form(), p2.form()) {
        (Some(a), Some(b)) => Some(a.iter().chain(b.iter()).cloned().collect()),
        _ => None,
    };
    let mut out = SuperalgebraPresentation::new(format!("sum:{}+{}", p1.name(), p2.name()), basis, products, unit, involution)?;
    out.form = form;
    Ok(out)
}

/// The one-dimensional even algebra `𝕜` with its unit in sector a.
pub fn make_ground_ring() -> SuperalgebraPresentation {
    SuperalgebraPresentation::new(
        "ground",
        vec![BasisElement { label: "u".into(), parity: Parity::Even, sector: Sector::A }],
        vec![ProductEntry { left: 0, right: 0, result: 0, coeff: 1 }],
        Some(vec![(0, 1)]),
        Some(vec![(0, 1)]),
    )
    .expect("static presentation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(p: &SuperalgebraPresentation, l: &str) -> AlgebraElement {
        AlgebraElement::basis(p.index_of(l).unwrap())
    }

    #[test]
    fn zigzag_relations() {
        let z = make_extended_zigzag(1).unwrap();
        assert_eq!(z.dim(), 5);
        let labels: Vec<&str> = z.basis().iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["e0", "e1", "c0", "a0_1", "a1_0"]);
        assert_eq!(z.multiply(&el(&z, "a0_1"), &el(&z, "a1_0")), el(&z, "c0"));
        assert!(z.multiply(&el(&z, "a1_0"), &el(&z, "a0_1")).is_zero());
        assert!(validate(&z).is_valid());
        let z2 = make_extended_zigzag(2).unwrap();
        assert!(validate(&z2).is_valid(), "{}", validate(&z2));
        assert!(z2.multiply(&el(&z2, "a0_1"), &el(&z2, "a1_2")).is_zero());
        assert_eq!(z2.multiply(&el(&z2, "a1_0"), &el(&z2, "a0_1")), el(&z2, "c1"));
        assert_eq!(z2.multiply(&el(&z2, "a1_2"), &el(&z2, "a2_1")), el(&z2, "c1"));
        assert!(z2.multiply(&el(&z2, "a2_1"), &el(&z2, "a1_2")).is_zero());
    }

    #[test]
    fn zigzag_truncation_dims() {
        for ell in 1..=3 {
            let z = make_zigzag(ell).unwrap();
            assert_eq!(z.dim(), 4 * ell - 2);
            let r = validate(&z);
            assert!(r.is_valid() && r.unital_good_pair, "{r}");
        }
        let z = make_zigzag(1).unwrap();
        let c = el(&z, "c0");
        assert!(z.multiply(&c, &c).is_zero());
        assert_eq!(z.unit_element().unwrap(), el(&z, "e0"));
    }

    #[test]
    fn validation_catches_bad_presentations() {
        let z = make_extended_zigzag(1).unwrap();
        let mut products = z.product_entries();
        products.push(ProductEntry { left: 0, right: 1, result: 2, coeff: 1 });
        let bad = SuperalgebraPresentation::new("bad", z.basis().to_vec(), products, z.unit().map(<[_]>::to_vec), None).unwrap();
        let r = validate(&bad);
        assert!(r.failures.iter().any(|f| f.kind == FailureKind::Associativity || f.kind == FailureKind::Unit));

        let mut basis = z.basis().to_vec();
        basis[3].sector = Sector::A;
        let bad = SuperalgebraPresentation::new("bad", basis, z.product_entries(), None, None).unwrap();
        assert!(validate(&bad).failures.iter().any(|f| f.kind == FailureKind::SectorParity));
    }

    #[test]
    fn matrix_superalgebra() {
        let m = make_matrix_superalgebra(1, 1).unwrap();
        assert!(m.is_odd(m.index_of("E12").unwrap()));
        assert!(m.is_odd(m.index_of("E21").unwrap()));
        assert_eq!(m.sector(m.index_of("E11").unwrap()), Sector::A);
        assert_eq!(m.sector(m.index_of("E22").unwrap()), Sector::C);
        assert_eq!(m.multiply(&el(&m, "E12"), &el(&m, "E21")), el(&m, "E11"));
        let r = validate(&m);
        assert!(r.is_valid());
        assert!(!r.unital_good_pair);
        let d = make_matrix_diagonal_pair(2).unwrap();
        let r = validate(&d);
        assert!(r.is_valid() && r.unital_good_pair);
    }

    #[test]
    fn trivial_extension_of_ground_ring() {
        let k = make_ground_ring();
        let e = make_trivial_extension(&k).unwrap();
        assert_eq!(e.dim(), 2);
        assert_eq!(e.multiply(&el(&e, "u"), &el(&e, "u*")), el(&e, "u*"));
        assert_eq!(e.multiply(&el(&e, "u*"), &el(&e, "u")), el(&e, "u*"));
        assert!(e.multiply(&el(&e, "u*"), &el(&e, "u*")).is_zero());
        assert!(validate(&e).is_valid());
    }

    #[test]
    fn trivial_extension_dual_pairing() {
        let c = make_zigzag(2).unwrap();
        let e = make_trivial_extension(&c).unwrap();
        assert_eq!(e.dim(), 2 * c.dim());
        let r = validate(&e);
        assert!(r.is_valid(), "{r}");
        let n = c.dim();
        // ⟨b_k* · a, b⟩ = ⟨b_k*, a b⟩ and ⟨a · b_k*, b⟩ = ⟨b_k*, b a⟩
        for k in 0..n {
            for a in 0..n {
                let left = e.multiply(&AlgebraElement::basis(n + k), &AlgebraElement::basis(a));
                let right = e.multiply(&AlgebraElement::basis(a), &AlgebraElement::basis(n + k));
                for b in 0..n {
                    let ab = c.multiply(&AlgebraElement::basis(a), &AlgebraElement::basis(b));
                    let ba = c.multiply(&AlgebraElement::basis(b), &AlgebraElement::basis(a));
                    assert_eq!(left.coeff(n + b), ab.coeff(k));
                    assert_eq!(right.coeff(n + b), ba.coeff(k));
                }
            }
        }
    }

    #[test]
    fn truncation_cases() {
        let m = make_matrix_superalgebra(1, 1).unwrap();
        let t = truncate(&m, &el(&m, "E11")).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(validate(&t).is_valid());
        let z = make_extended_zigzag(2).unwrap();
        let t = truncate(&z, &z.unit_element().unwrap()).unwrap();
        assert_eq!(t.dim(), z.dim());
        assert_eq!(t.product_entries(), z.product_entries());
        let not_idem = el(&z, "c0");
        assert!(truncate(&z, &not_idem).is_err());
    }

    #[test]
    fn direct_sum_blocks() {
        let z = make_zigzag(1).unwrap();
        let s = direct_sum(&z, &z).unwrap();
        assert_eq!(s.dim(), 2 * z.dim());
        assert!(validate(&s).is_valid());
        for i in 0..z.dim() {
            for j in 0..z.dim() {
                assert!(s.kappa(i, z.dim() + j).is_empty());
                assert!(s.kappa(z.dim() + i, j).is_empty());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        for p in [
            make_extended_zigzag(2).unwrap(),
            make_zigzag(2).unwrap(),
            make_matrix_superalgebra(1, 2).unwrap(),
            make_trivial_extension(&make_zigzag(1).unwrap()).unwrap(),
        ] {
            let s = p.to_json().unwrap();
            let q = SuperalgebraPresentation::from_json(&s).unwrap();
            assert_eq!(p, q);
            assert_eq!(q.to_json().unwrap(), s);
        }
    }

    #[test]
    fn element_helpers() {
        let z = make_extended_zigzag(1).unwrap();
        let u = z.unit_element().unwrap();
        let x = z.element(&[("a0_1", 2), ("c0", -1)]).unwrap();
        assert_eq!(z.multiply(&u, &x), x);
        assert_eq!(x.display(&z), "-c0 + 2*a0_1");
        assert_eq!(x.parity(&z), None);
        assert_eq!(el(&z, "a0_1").parity(&z), Some(Parity::Odd));
        let t = z.apply_involution(&el(&z, "a0_1")).unwrap();
        assert_eq!(t, el(&z, "a1_0"));
    }
}
