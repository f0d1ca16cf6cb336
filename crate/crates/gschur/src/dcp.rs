//! Endomorphism lattices of idempotent truncations, the map
//! `λ: S → End_{eSe}(Se)`, and soundness / double-centralizer verdicts.
//!
//! The algebra `S` is given by structure constants on a ℤ-basis. `Se` is
//! split along a family of orthogonal idempotents `ε_α` summing to `e`
//! (the family `{e}` is always allowed). A homomorphism commutes with right
//! multiplication by each `ε_α`, so it preserves every `Se ε_α`; it is
//! recorded by its values on module generators `x_i ∈ Se ε_{α_i}`. The
//! generators are chosen so that the products `x_i g`, with `g` running over
//! lattice bases of the blocks `ε_α S ε_β`, span `Se` over ℤ. Integrality on
//! the generators is then integrality everywhere, and the well-definedness
//! conditions come from the ℚ-relations among these products.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{multicompositions, CanonicalTriple};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_from_echelon, lin_comb, smith_normal_form, sparse_from_dense, IntMatrix, Lattice, RowEchelon, Scalar, SparseVec};
use crate::schur::{e_multicomposition, xi_f, Basis, SchurAlgebra, SchurElement};
use crate::superalgebra::{AlgebraElement, SuperalgebraPresentation};

/// An algebra given by integral structure constants on a fixed basis.
pub trait StructureConstants: Sync {
    fn dim(&self) -> usize;
    /// Coordinates of `b_i b_j`, sorted by index.
    fn mul_basis(&self, i: usize, j: usize) -> Result<SparseVec>;
    /// Short description used in reports.
    fn describe(&self) -> String;
}

/// Product of two coordinate vectors.
pub fn mul_vec(s: &dyn StructureConstants, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, a) in x {
        for (j, b) in y {
            for (k, c) in s.mul_basis(*i, *j)? {
                *acc.entry(k).or_insert_with(Scalar::zero) += a * b * c;
            }
        }
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

impl StructureConstants for SuperalgebraPresentation {
    fn dim(&self) -> usize {
        SuperalgebraPresentation::dim(self)
    }

    fn mul_basis(&self, i: usize, j: usize) -> Result<SparseVec> {
        let mut v: SparseVec = self.kappa(i, j).iter().map(|&(k, c)| (k, Scalar::from(c))).collect();
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    fn describe(&self) -> String {
        self.name().to_string()
    }
}

/// Coordinates of an algebra element.
pub fn algebra_vector(x: &AlgebraElement) -> SparseVec {
    let mut v: SparseVec = x.terms().map(|(i, c)| (i, c.clone())).collect();
    v.sort_by_key(|e| e.0);
    v
}

/// `S^A(n,d)` on its `ξ` basis, or `T^A_𝔞(n,d)` on its `η` basis.
pub struct SchurLattice {
    alg: SchurAlgebra,
    d: usize,
    tag: Basis,
    basis: Vec<CanonicalTriple>,
    index: HashMap<CanonicalTriple, usize>,
}

impl SchurLattice {
    pub fn new(alg: &SchurAlgebra, d: usize, tag: Basis) -> Self {
        let basis = alg.basis(d);
        let index = basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        SchurLattice { alg: alg.clone(), d, tag, basis, index }
    }

    pub fn algebra(&self) -> &SchurAlgebra {
        &self.alg
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn tag(&self) -> Basis {
        self.tag
    }

    pub fn basis(&self) -> &[CanonicalTriple] {
        &self.basis
    }

    /// Coordinates of `x`; errors if `x` is not integral on this lattice.
    pub fn coordinates(&self, x: &SchurElement) -> Result<SparseVec> {
        if x.degree() != self.d {
            return Err(Error::AmbientMismatch(format!("degree {} element in degree {} lattice", x.degree(), self.d)));
        }
        let y = x.in_basis(self.tag)?;
        let mut v: SparseVec = y.terms().map(|(t, c)| (self.index[t], c.clone())).collect();
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    pub fn element(&self, v: &SparseVec) -> SchurElement {
        SchurElement::from_terms(&self.alg, self.d, self.tag, v.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())))
    }
}

impl StructureConstants for SchurLattice {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn mul_basis(&self, i: usize, j: usize) -> Result<SparseVec> {
        let x = self.alg.basis_element(&self.basis[i], self.tag);
        let y = self.alg.basis_element(&self.basis[j], self.tag);
        self.coordinates(&x.mul(&y)?)
    }

    fn describe(&self) -> String {
        let name = match self.tag {
            Basis::Xi => "S",
            Basis::Eta => "T",
        };
        format!("{name}({}; n={}, d={})", self.alg.presentation().name(), self.alg.n(), self.d)
    }
}

/// One weight block `S ε_α` of `Se`.
#[derive(Clone, Debug)]
pub struct Block {
    pub idempotent: SparseVec,
    lattice: Lattice,
    /// Lattice basis of `S ε_α`, in `S` coordinates.
    pub module: Vec<SparseVec>,
}

impl Block {
    fn coords(&self, v: &SparseVec) -> Result<SparseVec> {
        let c = self.lattice.coordinates(v).ok_or_else(|| Error::AxiomFailure("vector leaves its weight block".into()))?;
        Ok(sparse_from_dense(&c))
    }
}

/// `End_{eSe}(Se)` as a saturated lattice.
#[derive(Clone, Debug)]
pub struct HomLattice {
    pub idempotent: SparseVec,
    pub blocks: Vec<Block>,
    /// Lattice bases of the nonzero blocks `ε_α S ε_β`.
    pub ese: BTreeMap<(usize, usize), Vec<SparseVec>>,
    /// Module generators `(block, element)`.
    pub generators: Vec<(usize, SparseVec)>,
    offsets: Vec<usize>,
    unknowns: usize,
    lattice: Lattice,
    /// Saturated basis; an endomorphism is the concatenation of the block
    /// coordinates of its values on the generators.
    pub end_basis: Vec<SparseVec>,
}

impl HomLattice {
    pub fn rank(&self) -> usize {
        self.end_basis.len()
    }

    pub fn se_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.module.len()).sum()
    }

    pub fn ese_dim(&self) -> usize {
        self.ese.values().map(Vec::len).sum()
    }

    /// Length of an endomorphism vector.
    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Lattice basis of `Se` in `S` coordinates, block by block.
    pub fn se_basis(&self) -> Vec<SparseVec> {
        self.blocks.iter().flat_map(|b| b.module.iter().cloned()).collect()
    }

    /// Lattice basis of `eSe` in `S` coordinates.
    pub fn ese_basis(&self) -> Vec<SparseVec> {
        self.ese.values().flatten().cloned().collect()
    }

    /// The endomorphism vector of `x ↦ a x`.
    pub fn left_multiplication(&self, s: &dyn StructureConstants, a: &SparseVec) -> Result<SparseVec> {
        let mut out = Vec::new();
        for (i, (b, x)) in self.generators.iter().enumerate() {
            let v = mul_vec(s, a, x)?;
            out.extend(self.blocks[*b].coords(&v)?.into_iter().map(|(k, c)| (self.offsets[i] + k, c)));
        }
        Ok(out)
    }

    /// Coordinates of an endomorphism vector in `end_basis`.
    pub fn end_coordinates(&self, f: &SparseVec) -> Option<Vec<Scalar>> {
        self.lattice.coordinates(f)
    }

    fn generator_value(&self, f: &SparseVec, i: usize) -> SparseVec {
        let (b, _) = &self.generators[i];
        let module = &self.blocks[*b].module;
        let lo = self.offsets[i];
        let mut v: SparseVec = Vec::new();
        for (k, c) in f.iter().filter(|(k, _)| *k >= lo && *k < lo + module.len()) {
            v = lin_comb(&Scalar::one(), &v, c, &module[k - lo]);
        }
        v
    }

    /// Matrix of an endomorphism on [`HomLattice::se_basis`]: row `a` holds
    /// the coordinates of the image of the `a`-th basis vector. Errors if
    /// the generator values do not define a homomorphism.
    pub fn endomorphism_matrix(&self, s: &dyn StructureConstants, f: &SparseVec) -> Result<IntMatrix> {
        let total = self.se_dim();
        let mut rows = Vec::with_capacity(total);
        let mut shift = 0;
        for (beta, block) in self.blocks.iter().enumerate() {
            let m = block.module.len();
            let mut ech = RowEchelon::new(2 * m);
            for (i, (alpha, x)) in self.generators.iter().enumerate() {
                let value = self.generator_value(f, i);
                for g in self.ese.get(&(*alpha, beta)).into_iter().flatten() {
                    let src = block.coords(&mul_vec(s, x, g)?)?;
                    let dst = block.coords(&mul_vec(s, &value, g)?)?;
                    let mut row = src;
                    row.extend(dst.into_iter().map(|(k, c)| (m + k, c)));
                    ech.insert(row);
                }
            }
            let reduced = ech.reduced_rows();
            if reduced.len() != m || reduced.iter().any(|r| r[0].0 >= m) {
                return Err(Error::AxiomFailure("generator values do not define a homomorphism".into()));
            }
            for r in reduced {
                let a = r[0].1.clone();
                let mut img = Vec::new();
                for (k, c) in r.iter().skip(1) {
                    if !c.is_multiple_of(&a) {
                        return Err(Error::NotIntegral("endomorphism value is not integral".into()));
                    }
                    img.push((shift + k - m, c / &a));
                }
                rows.push(img);
            }
            shift += m;
        }
        Ok(IntMatrix::from_rows(total, rows))
    }
}

fn check_idempotent_family(s: &dyn StructureConstants, e: &SparseVec, family: &[SparseVec]) -> Result<()> {
    if mul_vec(s, e, e)? != *e {
        return Err(Error::InvalidPresentation("e is not idempotent".into()));
    }
    let mut sum: SparseVec = Vec::new();
    for (a, x) in family.iter().enumerate() {
        for (b, y) in family.iter().enumerate() {
            let p = mul_vec(s, x, y)?;
            let ok = if a == b { p == *x } else { p.is_empty() };
            if !ok {
                return Err(Error::InvalidPresentation(format!("block idempotents {a} and {b} are not orthogonal idempotents")));
            }
        }
        sum = lin_comb(&Scalar::one(), &sum, &Scalar::one(), x);
    }
    if sum != *e {
        return Err(Error::InvalidPresentation("block idempotents do not sum to e".into()));
    }
    Ok(())
}

fn par_products(s: &dyn StructureConstants, pairs: &[(&SparseVec, &SparseVec)]) -> Result<Vec<SparseVec>> {
    pairs.par_iter().map(|(x, y)| mul_vec(s, x, y)).collect()
}

/// Computes `End_{eSe}(Se)` for an idempotent `e` of `S`, split along the
/// orthogonal idempotents `family` (empty means `{e}`).
pub fn hom_lattice(s: &dyn StructureConstants, e: &SparseVec, family: &[SparseVec]) -> Result<HomLattice> {
    let family: Vec<SparseVec> = if family.is_empty() { vec![e.clone()] } else { family.to_vec() };
    check_idempotent_family(s, e, &family)?;
    let dim = s.dim();
    let units: Vec<SparseVec> = (0..dim).map(|i| vec![(i, Scalar::one())]).collect();

    // S ε_β
    let mut blocks = Vec::with_capacity(family.len());
    for eps in &family {
        let pairs: Vec<(&SparseVec, &SparseVec)> = units.iter().map(|u| (u, eps)).collect();
        let lattice = Lattice::from_vectors(dim, par_products(s, &pairs)?.into_iter().filter(|v| !v.is_empty()));
        blocks.push(Block { idempotent: eps.clone(), module: lattice.basis(), lattice });
    }

    // ε_α S ε_β
    let mut ese = BTreeMap::new();
    for (beta, b) in blocks.iter().enumerate() {
        for (alpha, eps) in family.iter().enumerate() {
            let pairs: Vec<(&SparseVec, &SparseVec)> = b.module.iter().map(|u| (eps, u)).collect();
            let l = Lattice::from_vectors(dim, par_products(s, &pairs)?.into_iter().filter(|v| !v.is_empty()));
            if l.rank() > 0 {
                ese.insert((alpha, beta), l.basis());
            }
        }
    }

    // Right multiplication tables: rmul[(α,β)][g][u] = block-β coordinates of u·g.
    let mut rmul: BTreeMap<(usize, usize), Vec<Vec<SparseVec>>> = BTreeMap::new();
    for (&(alpha, beta), gs) in &ese {
        let pairs: Vec<(&SparseVec, &SparseVec)> = gs.iter().flat_map(|g| blocks[alpha].module.iter().map(move |u| (u, g))).collect();
        let prods = par_products(s, &pairs)?;
        let m = blocks[alpha].module.len();
        let mut table = Vec::with_capacity(gs.len());
        for chunk in prods.chunks(m.max(1)) {
            table.push(chunk.iter().map(|v| blocks[beta].coords(v)).collect::<Result<Vec<_>>>()?);
        }
        rmul.insert((alpha, beta), table);
    }

    // Greedy module generators: basis vectors of S ε_α not yet reached.
    let mut reached: Vec<Lattice> = blocks.iter().map(|b| Lattice::new(b.module.len())).collect();
    let mut generators: Vec<(usize, usize)> = Vec::new();
    for alpha in 0..blocks.len() {
        for u in 0..blocks[alpha].module.len() {
            if reached[alpha].contains(&vec![(u, Scalar::one())]) {
                continue;
            }
            generators.push((alpha, u));
            for (&(a, beta), table) in rmul.range((alpha, 0)..(alpha + 1, 0)) {
                debug_assert_eq!(a, alpha);
                for per_g in table {
                    reached[beta].insert(per_g[u].clone());
                }
            }
        }
    }
    for (b, l) in reached.iter().enumerate() {
        if !l.is_full() {
            return Err(Error::AxiomFailure(format!("weight block {b} is not generated by the chosen elements")));
        }
    }
    let mut offsets = Vec::with_capacity(generators.len());
    let mut unknowns = 0;
    for &(alpha, _) in &generators {
        offsets.push(unknowns);
        unknowns += blocks[alpha].module.len();
    }

    // Relations among the products x_i g landing in each block, turned into
    // linear conditions on the generator values.
    let mut constraints = RowEchelon::new(unknowns);
    for beta in 0..blocks.len() {
        let m = blocks[beta].module.len();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (i, &(alpha, _)) in generators.iter().enumerate() {
            if let Some(table) = rmul.get(&(alpha, beta)) {
                pairs.extend((0..table.len()).map(|j| (i, j)));
            }
        }
        let mut ech = RowEchelon::new(m + pairs.len());
        let mut relations: Vec<SparseVec> = Vec::new();
        for (p, &(i, j)) in pairs.iter().enumerate() {
            let (alpha, u) = generators[i];
            let mut row = rmul[&(alpha, beta)][j][u].clone();
            row.push((m + p, Scalar::one()));
            let res = ech.reduce(row);
            match res.first() {
                Some((c, _)) if *c >= m => relations.push(res.into_iter().map(|(c, x)| (c - m, x)).collect()),
                Some(_) => {
                    ech.insert(res);
                }
                None => {}
            }
        }
        let rows: Vec<Vec<SparseVec>> = relations
            .par_iter()
            .map(|rel| {
                let mut eqs: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
                for (p, c) in rel {
                    let (i, j) = pairs[*p];
                    let alpha = generators[i].0;
                    for (b, img) in rmul[&(alpha, beta)][j].iter().enumerate() {
                        for (o, x) in img {
                            *eqs.entry(*o).or_default().entry(offsets[i] + b).or_insert_with(Scalar::zero) += c * x;
                        }
                    }
                }
                eqs.into_values().map(|r| r.into_iter().filter(|(_, x)| !x.is_zero()).collect::<SparseVec>()).filter(|r| !r.is_empty()).collect()
            })
            .collect();
        for r in rows.into_iter().flatten() {
            constraints.insert(r);
        }
    }
    let kernel: Vec<SparseVec> = kernel_from_echelon(&constraints).iter().map(|v| sparse_from_dense(v)).collect();
    let lattice = Lattice::from_vectors(unknowns, kernel);
    let end_basis = lattice.basis();
    let generators = generators.into_iter().map(|(alpha, u)| (alpha, blocks[alpha].module[u].clone())).collect();
    Ok(HomLattice { idempotent: e.clone(), blocks, ese, generators, offsets, unknowns, lattice, end_basis })
}

/// Rows: `λ(b)` for each basis element `b` of `S`, in `end_basis` coordinates.
pub fn lambda_matrix(s: &dyn StructureConstants, hl: &HomLattice) -> Result<IntMatrix> {
    let rows: Vec<Result<SparseVec>> = (0..s.dim())
        .into_par_iter()
        .map(|i| {
            let f = hl.left_multiplication(s, &vec![(i, Scalar::one())])?;
            let c = hl.end_coordinates(&f).ok_or_else(|| Error::AxiomFailure(format!("left multiplication by basis element {i} is not in the endomorphism lattice")))?;
            Ok(sparse_from_dense(&c))
        })
        .collect();
    Ok(IntMatrix::from_rows(hl.rank(), rows.into_iter().collect::<Result<_>>()?))
}

/// Verdicts for an idempotent truncation.
#[derive(Clone, Debug, Serialize)]
pub struct DcpReport {
    pub algebra: String,
    /// Lattice on which soundness is judged (`xi`, `eta` or `basis`).
    pub lattice: String,
    pub dim_s: usize,
    pub dim_se: usize,
    pub dim_ese: usize,
    pub rank_q: usize,
    pub dim_end_q: usize,
    /// Nontrivial elementary divisors of `λ(S)` inside the endomorphism lattice.
    pub divisors: Vec<String>,
    pub dcp_over_fractions: bool,
    pub sound: bool,
    pub dcp: bool,
}

impl DcpReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Rank of `λ` over ℚ, the elementary divisors of its image in the
/// endomorphism lattice, and the three verdicts. `dcp` is decided directly
/// (λ injective and onto the lattice) and checked against the conjunction of
/// the other two.
pub fn dcp_verdict(s: &dyn StructureConstants, e: &SparseVec, family: &[SparseVec], lattice: &str) -> Result<DcpReport> {
    let hl = hom_lattice(s, e, family)?;
    let lam = lambda_matrix(s, &hl)?;
    let snf = smith_normal_form(&lam);
    let rank_q = snf.rank;
    let dim_end_q = hl.rank();
    let dcp_over_fractions = rank_q == s.dim() && rank_q == dim_end_q;
    let sound = snf.is_unimodular_image();
    let image = Lattice::from_vectors(dim_end_q, lam.rows().iter().cloned());
    let dcp = rank_q == s.dim() && image.is_full();
    if dcp != (dcp_over_fractions && sound) {
        return Err(Error::AxiomFailure("double centralizer verdict disagrees with its characterization".into()));
    }
    Ok(DcpReport {
        algebra: s.describe(),
        lattice: lattice.to_string(),
        dim_s: s.dim(),
        dim_se: hl.se_dim(),
        dim_ese: hl.ese_dim(),
        rank_q,
        dim_end_q,
        divisors: snf.nontrivial_divisors().iter().map(ToString::to_string).collect(),
        dcp_over_fractions,
        sound,
        dcp,
    })
}

/// The idempotent `ξ^e` of a Schur lattice and its split along the
/// multicomposition idempotents `e_𝛌` of an orthogonal family summing to `e`.
pub fn schur_idempotents(sl: &SchurLattice, idems: &[AlgebraElement]) -> Result<(SparseVec, Vec<SparseVec>)> {
    let alg = sl.algebra();
    let mut total = AlgebraElement::zero();
    for x in idems {
        total = total.add(x);
    }
    let e = sl.coordinates(&xi_f(alg, &total, sl.degree())?)?;
    let mut family = Vec::new();
    for lam in multicompositions(idems.len(), alg.n(), sl.degree()) {
        let v = sl.coordinates(&e_multicomposition(alg, idems, &lam)?)?;
        if !v.is_empty() {
            family.push(v);
        }
    }
    Ok((e, family))
}

/// [`dcp_verdict`] for `ξ^e` in `S^A(n,d)` (`Basis::Xi`) or `T^A_𝔞(n,d)`
/// (`Basis::Eta`), with `e` the sum of the orthogonal idempotents `idems`.
pub fn schur_dcp_verdict(alg: &SchurAlgebra, d: usize, tag: Basis, idems: &[AlgebraElement]) -> Result<DcpReport> {
    let sl = SchurLattice::new(alg, d, tag);
    let (e, family) = schur_idempotents(&sl, idems)?;
    dcp_verdict(&sl, &e, &family, tag.name())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::{make_extended_zigzag, make_matrix_diagonal_pair};

    fn idems(p: &SuperalgebraPresentation, labels: &[&str]) -> Vec<AlgebraElement> {
        labels.iter().map(|l| p.basis_element(p.require_index(l).unwrap())).collect()
    }

    #[test]
    fn zigzag_truncation_of_the_algebra_itself() {
        let p = make_extended_zigzag(1).unwrap();
        let e = algebra_vector(&idems(&p, &["e0"])[0]);
        let hl = hom_lattice(&p, &e, &[]).unwrap();
        assert_eq!(hl.rank(), 5);
        let rep = dcp_verdict(&p, &e, &[], "basis").unwrap();
        assert!(rep.dcp && rep.sound && rep.dcp_over_fractions);
    }

    #[test]
    fn zigzag_two_truncation() {
        let p = make_extended_zigzag(2).unwrap();
        let fam: Vec<SparseVec> = idems(&p, &["e0", "e1"]).iter().map(algebra_vector).collect();
        let e = lin_comb(&Scalar::one(), &fam[0], &Scalar::one(), &fam[1]);
        let rep = dcp_verdict(&p, &e, &fam, "basis").unwrap();
        assert_eq!(rep.dim_end_q, p.dim());
        assert!(rep.dcp);
    }

    #[test]
    fn unit_gives_the_algebra() {
        let p = make_extended_zigzag(1).unwrap();
        let e = algebra_vector(&p.unit_element().unwrap());
        let rep = dcp_verdict(&p, &e, &[], "basis").unwrap();
        assert_eq!(rep.dim_end_q, p.dim());
        assert!(rep.dcp);
    }

    #[test]
    fn non_idempotent_is_rejected() {
        let p = make_extended_zigzag(1).unwrap();
        let c = algebra_vector(&p.basis_element(p.require_index("c0").unwrap()));
        assert!(hom_lattice(&p, &c, &[]).is_err());
    }

    #[test]
    fn endomorphisms_commute_with_right_multiplication() {
        let p = make_extended_zigzag(1).unwrap();
        let alg = SchurAlgebra::new(p.clone(), 2);
        let sl = SchurLattice::new(&alg, 1, Basis::Eta);
        let (e, fam) = schur_idempotents(&sl, &idems(&p, &["e0"])).unwrap();
        let hl = hom_lattice(&sl, &e, &fam).unwrap();
        let se = hl.se_basis();
        let shifts: Vec<usize> = hl.blocks.iter().scan(0, |acc, b| {
            let s = *acc;
            *acc += b.module.len();
            Some(s)
        }).collect();
        assert!(hl.rank() > 0);
        for f in &hl.end_basis {
            let mat = hl.endomorphism_matrix(&sl, f).unwrap();
            let image = |k: usize| -> SparseVec {
                let mut v = Vec::new();
                for (j, c) in mat.row(k) {
                    v = lin_comb(&Scalar::one(), &v, c, &se[*j]);
                }
                v
            };
            for (&(alpha, beta), gs) in &hl.ese {
                for g in gs {
                    for (k, u) in hl.blocks[alpha].module.iter().enumerate() {
                        let ug = hl.blocks[beta].coords(&mul_vec(&sl, u, g).unwrap()).unwrap();
                        let mut lhs = Vec::new();
                        for (j, c) in &ug {
                            lhs = lin_comb(&Scalar::one(), &lhs, c, &image(shifts[beta] + j));
                        }
                        let rhs = mul_vec(&sl, &image(shifts[alpha] + k), g).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_of_unit_is_identity() {
        let p = make_extended_zigzag(1).unwrap();
        let alg = SchurAlgebra::new(p.clone(), 2);
        let sl = SchurLattice::new(&alg, 1, Basis::Eta);
        let (e, fam) = schur_idempotents(&sl, &idems(&p, &["e0"])).unwrap();
        let hl = hom_lattice(&sl, &e, &fam).unwrap();
        let one = sl.coordinates(&crate::schur::identity(&alg, 1).unwrap()).unwrap();
        let f = hl.left_multiplication(&sl, &one).unwrap();
        let mat = hl.endomorphism_matrix(&sl, &f).unwrap();
        assert_eq!(mat, IntMatrix::identity(hl.se_dim()));
    }

    #[test]
    fn counterexample_is_not_sound() {
        let p = make_matrix_diagonal_pair(2).unwrap();
        // n < d: λ is not even injective, and a divisor 4 appears
        let small = schur_dcp_verdict(&SchurAlgebra::new(p.clone(), 1), 2, Basis::Eta, &idems(&p, &["E11"])).unwrap();
        assert!(!small.dcp_over_fractions && !small.sound);
        assert_eq!(small.divisors, vec!["2", "2", "4"]);
        let alg = SchurAlgebra::new(p.clone(), 2);
        let rep = schur_dcp_verdict(&alg, 2, Basis::Eta, &idems(&p, &["E11"])).unwrap();
        assert!(rep.dcp_over_fractions, "{rep:?}");
        assert!(!rep.sound && !rep.dcp);
        assert!(rep.divisors.iter().all(|d| d == "2"), "{:?}", rep.divisors);
    }

    #[test]
    fn schur_zigzag_degree_two() {
        let p = make_extended_zigzag(1).unwrap();
        let alg = SchurAlgebra::new(p.clone(), 2);
        let rep = schur_dcp_verdict(&alg, 2, Basis::Eta, &idems(&p, &["e0"])).unwrap();
        assert_eq!((rep.dim_s, rep.dim_se), (202, 74));
        assert!(rep.dcp, "{rep:?}");
        let rep = schur_dcp_verdict(&alg, 2, Basis::Xi, &idems(&p, &["e0"])).unwrap();
        assert!(rep.dcp_over_fractions, "{rep:?}");
    }
}
