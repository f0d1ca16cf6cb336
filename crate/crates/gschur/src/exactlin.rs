//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt`. Sparse vectors are sorted
//! `(index, value)` lists with no stored zeros. The routines are written for
//! matrices whose entries are mostly small, which is the regime produced by
//! structure-constant tables, so elimination prefers unit pivots first.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer scalar.
pub type Scalar = BigInt;
/// Reduced fraction of scalars with positive denominator.
pub type RationalScalar = BigRational;
/// Sparse vector: strictly increasing indices, no zero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `a*x + b*y` for sparse vectors.
pub fn lin_comb(a: &Scalar, x: &[(usize, Scalar)], b: &Scalar, y: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            let v = a * &x[i].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
        } else if take_y {
            let v = b * &y[j].1;
            if !v.is_zero() {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = a * &x[i].1 + b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Gcd of all entries (zero for the empty vector).
pub fn content(v: &[(usize, Scalar)]) -> Scalar {
    let mut g = Scalar::zero();
    for (_, x) in v {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive(v: &mut SparseVec) {
    let g = content(v);
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some((_, lead)) = v.first() {
        if lead.is_negative() {
            for (_, x) in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

fn get(v: &[(usize, Scalar)], idx: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &v[k].1)
}

/// Converts a dense vector to sparse form.
pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Converts a sparse vector to dense form of length `n`.
pub fn dense_from_sparse(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Sparse integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].push((i, Scalar::one()));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged dense matrix");
            m.rows[i] = sparse_from_dense(r);
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect();
        Self::from_dense(&big)
    }

    /// Builds a matrix from sparse rows. Entries are sorted and zeros dropped.
    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        let rows: Vec<SparseVec> = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                let mut merged: SparseVec = Vec::with_capacity(r.len());
                for (c, x) in r {
                    assert!(c < ncols, "column {c} out of range {ncols}");
                    match merged.last_mut() {
                        Some((lc, lx)) if *lc == c => *lx += x,
                        _ => merged.push((c, x)),
                    }
                }
                merged.retain(|e| !e.1.is_zero());
                merged
            })
            .collect();
        IntMatrix { nrows: rows.len(), ncols, rows }
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col {
                rows[*i].push((j, x.clone()));
            }
        }
        Self::from_rows(cols.len(), rows)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        get(&self.rows[i], j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert!(i < self.nrows && j < self.ncols);
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                if x.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = x;
                }
            }
            Err(k) => {
                if !x.is_zero() {
                    row.insert(k, (j, x));
                }
            }
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| dense_from_sparse(r, self.ncols)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                rows[*j].push((i, x.clone()));
            }
        }
        IntMatrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols);
        self.rows.iter().map(|r| r.iter().map(|(j, x)| x * &v[*j]).sum()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, x) in r {
                    for (j, y) in &other.rows[*k] {
                        *acc.entry(*j).or_default() += x * y;
                    }
                }
                acc.into_iter().filter(|e| !e.1.is_zero()).collect()
            })
            .collect();
        IntMatrix { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Plain-text rendering: one row per line, entries separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.nrows, self.ncols);
        for r in self.to_dense() {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Result of a Smith normal form computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero elementary divisors, positive, each dividing the next.
    pub divisors: Vec<Scalar>,
    pub rank: usize,
}

impl SmithForm {
    /// True when every elementary divisor is 1.
    pub fn is_unimodular_image(&self) -> bool {
        self.divisors.iter().all(One::is_one)
    }

    /// Product of the divisors (the index of the image in its saturation).
    pub fn torsion_order(&self) -> Scalar {
        self.divisors.iter().product()
    }

    pub fn nontrivial_divisors(&self) -> Vec<Scalar> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form: nonzero elementary divisors and rank.
///
/// Unit pivots are eliminated on the sparse representation first; whatever
/// remains is handed to the dense algorithm.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (units, rest) = eliminate_unit_pivots(m);
    let mut divisors = vec![Scalar::one(); units];
    divisors.extend(dense_snf(rest, false).divisors);
    sort_chain(&mut divisors);
    SmithForm { rank: divisors.len(), divisors }
}

/// Dense Smith normal form with unimodular transforms `u * m * v = diag`.
#[derive(Clone, Debug)]
pub struct SmithTransforms {
    pub form: SmithForm,
    pub u: Vec<Vec<Scalar>>,
    pub v: Vec<Vec<Scalar>>,
    pub diagonal: Vec<Vec<Scalar>>,
}

/// Smith normal form together with the transform matrices (dense; intended
/// for small matrices).
pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithTransforms {
    let res = dense_snf(m.to_dense(), true);
    let (u, v) = res.transforms.expect("transforms requested");
    SmithTransforms { form: SmithForm { rank: res.divisors.len(), divisors: res.divisors }, u, v, diagonal: res.matrix }
}

fn sort_chain(d: &mut [Scalar]) {
    // The dense routine already produces a chain; merging with leading units keeps it.
    d.sort();
}

/// Removes unit pivots; returns their number and the remaining dense block.
fn eliminate_unit_pivots(m: &IntMatrix) -> (usize, Vec<Vec<Scalar>>) {
    let mut rows: Vec<SparseVec> = m.rows.clone();
    let mut col_rows: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_rows.entry(*j).or_default().insert(i);
        }
    }
    let mut alive: BTreeSet<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let mut units = 0usize;
    loop {
        let mut progress = false;
        let order: Vec<usize> = {
            let mut v: Vec<usize> = alive.iter().copied().collect();
            v.sort_by_key(|&i| rows[i].len());
            v
        };
        for pr in order {
            if !alive.contains(&pr) {
                continue;
            }
            let Some(pc) = rows[pr]
                .iter()
                .filter(|(_, x)| x.abs().is_one())
                .map(|(j, _)| *j)
                .min_by_key(|j| col_rows.get(j).map_or(0, BTreeSet::len))
            else {
                continue;
            };
            let prow = std::mem::take(&mut rows[pr]);
            alive.remove(&pr);
            for (j, _) in &prow {
                if let Some(s) = col_rows.get_mut(j) {
                    s.remove(&pr);
                }
            }
            let pval = get(&prow, pc).cloned().expect("pivot present");
            let targets: Vec<usize> = col_rows.get(&pc).map(|s| s.iter().copied().collect()).unwrap_or_default();
            for r2 in targets {
                let f = get(&rows[r2], pc).cloned().expect("indexed entry");
                let factor = -(&f * &pval); // pval = ±1 so pval⁻¹ = pval
                let old = std::mem::take(&mut rows[r2]);
                let new = lin_comb(&Scalar::one(), &old, &factor, &prow);
                for (j, _) in &old {
                    if let Some(s) = col_rows.get_mut(j) {
                        s.remove(&r2);
                    }
                }
                for (j, _) in &new {
                    col_rows.entry(*j).or_default().insert(r2);
                }
                if new.is_empty() {
                    alive.remove(&r2);
                }
                rows[r2] = new;
            }
            col_rows.remove(&pc);
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = alive.into_iter().filter(|&i| !rows[i].is_empty()).collect();
    let cols: BTreeSet<usize> = live_rows.iter().flat_map(|&i| rows[i].iter().map(|e| e.0)).collect();
    let col_pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let dense = live_rows
        .iter()
        .map(|&i| {
            let mut r = vec![Scalar::zero(); cols.len()];
            for (j, x) in &rows[i] {
                r[col_pos[j]] = x.clone();
            }
            r
        })
        .collect();
    (units, dense)
}

struct DenseSnf {
    divisors: Vec<Scalar>,
    matrix: Vec<Vec<Scalar>>,
    transforms: Option<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)>,
}

fn identity_dense(n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

fn dense_snf(mut a: Vec<Vec<Scalar>>, track: bool) -> DenseSnf {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut u = if track { identity_dense(m) } else { Vec::new() };
    let mut v = if track { identity_dense(n) } else { Vec::new() };
    // Row op: row_i += f * row_k (applied to u as well).
    let row_add = |a: &mut Vec<Vec<Scalar>>, u: &mut Vec<Vec<Scalar>>, i: usize, k: usize, f: &Scalar| {
        if f.is_zero() {
            return;
        }
        let rk = a[k].clone();
        for (x, y) in a[i].iter_mut().zip(rk.iter()) {
            *x += f * y;
        }
        if track {
            let uk = u[k].clone();
            for (x, y) in u[i].iter_mut().zip(uk.iter()) {
                *x += f * y;
            }
        }
    };
    let col_add = |a: &mut Vec<Vec<Scalar>>, v: &mut Vec<Vec<Scalar>>, j: usize, k: usize, f: &Scalar| {
        if f.is_zero() {
            return;
        }
        for row in a.iter_mut() {
            let t = f * &row[k];
            row[j] += t;
        }
        if track {
            for row in v.iter_mut() {
                let t = f * &row[k];
                row[j] += t;
            }
        }
    };
    let mut t = 0usize;
    while t < m.min(n) {
        // pick smallest nonzero in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        if track {
            u.swap(t, bi);
        }
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        if track {
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
        }
        loop {
            let mut dirty = false;
            for i in (t + 1)..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_add(&mut a, &mut u, i, t, &-q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    if track {
                        u.swap(t, i);
                    }
                    dirty = true;
                }
            }
            for j in (t + 1)..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_add(&mut a, &mut v, j, t, &-q);
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    if track {
                        for row in v.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block
            let p = a[t][t].clone();
            let mut fix = None;
            'outer: for i in (t + 1)..m {
                for j in (t + 1)..n {
                    if !a[i][j].is_multiple_of(&p) {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => row_add(&mut a, &mut u, t, i, &Scalar::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            if track {
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        t += 1;
    }
    let divisors: Vec<Scalar> = (0..t).map(|i| a[i][i].clone()).collect();
    DenseSnf { divisors, matrix: a, transforms: if track { Some((u, v)) } else { None } }
}

/// Incremental fraction-free row echelon form over ℚ (rows kept primitive).
#[derive(Clone, Debug, Default)]
pub struct RowEchelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseVec>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `v` against the current pivots; returns the (primitive) residue.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut start = 0usize;
        loop {
            let Some(pos) = v.iter().position(|e| e.0 >= start) else { return v };
            let (c, x) = v[pos].clone();
            if let Some(p) = self.pivots.get(&c) {
                let a = &p[0].1;
                let g = a.gcd(&x);
                v = lin_comb(&(a / &g), &v, &-(&x / &g), p);
                make_primitive(&mut v);
            } else {
                start = c + 1;
            }
        }
    }

    /// Inserts `v`; returns true when it was independent of the current rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce_leading(v);
        if v.is_empty() {
            return false;
        }
        make_primitive(&mut v);
        self.pivots.insert(v[0].0, v);
        true
    }

    fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((c, x)) = v.first().cloned() {
            match self.pivots.get(&c) {
                Some(p) => {
                    let a = &p[0].1;
                    let g = a.gcd(&x);
                    v = lin_comb(&(a / &g), &v, &-(&x / &g), p);
                    make_primitive(&mut v);
                }
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Fully reduced rows (zero at every other pivot column), primitive.
    pub fn reduced_rows(&self) -> Vec<SparseVec> {
        let cols: Vec<usize> = self.pivot_columns();
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &c in cols.iter().rev() {
            let mut row = self.pivots[&c].clone();
            loop {
                let hit = row.iter().skip(1).find(|(j, _)| done.contains_key(j)).cloned();
                let Some((j, x)) = hit else { break };
                let q = &done[&j];
                let a = &q[0].1;
                let g = a.gcd(&x);
                row = lin_comb(&(a / &g), &row, &-(&x / &g), q);
                make_primitive(&mut row);
            }
            done.insert(c, row);
        }
        done.into_values().collect()
    }
}

/// Rank over ℚ by fraction-free elimination.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut e = RowEchelon::new(m.ncols);
    for r in &m.rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Saturated lattice basis of the integer kernel of `m`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<Scalar>> {
    let mut e = RowEchelon::new(m.ncols);
    for r in &m.rows {
        e.insert(r.clone());
    }
    kernel_from_echelon(&e)
}

/// Saturated integer kernel basis of the row space held in an echelon form.
pub fn kernel_from_echelon(e: &RowEchelon) -> Vec<Vec<Scalar>> {
    let n = e.ncols;
    let rows = e.reduced_rows();
    let pivot_set: BTreeSet<usize> = rows.iter().map(|r| r[0].0).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivot_set.contains(c)).collect();
    let free_pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    // Congruence constraints come only from rows whose leading entry is not a unit.
    let bad: Vec<&SparseVec> = rows.iter().filter(|r| !r[0].1.abs().is_one()).collect();
    let ys: Vec<Vec<Scalar>> = if bad.is_empty() {
        (0..free.len())
            .map(|k| (0..free.len()).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect())
            .collect()
    } else {
        let nf = free.len();
        let nb = bad.len();
        let mut a = vec![vec![Scalar::zero(); nf + nb]; nb];
        for (i, r) in bad.iter().enumerate() {
            for (c, x) in r.iter().skip(1) {
                a[i][free_pos[c]] = x.clone();
            }
            a[i][nf + i] = r[0].1.clone();
        }
        dense_integer_kernel(&a, nf + nb).into_iter().map(|v| v[..nf].to_vec()).collect()
    };
    ys.into_iter()
        .map(|y| {
            let mut v = vec![Scalar::zero(); n];
            for (k, &c) in free.iter().enumerate() {
                v[c] = y[k].clone();
            }
            for r in &rows {
                let (p, a) = &r[0];
                let s: Scalar = r.iter().skip(1).map(|(c, x)| x * &y[free_pos[c]]).sum();
                debug_assert!(s.is_multiple_of(a));
                v[*p] = -(s / a);
            }
            v
        })
        .collect()
}

/// Saturated integer kernel of a small dense matrix via unimodular column
/// operations.
pub fn dense_integer_kernel(a: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut a: Vec<Vec<Scalar>> = a.to_vec();
    let mut v = identity_dense(ncols);
    let mut k = 0usize;
    for i in 0..a.len() {
        loop {
            let nz: Vec<usize> = (k..ncols).filter(|&j| !a[i][j].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let j0 = *nz.iter().min_by_key(|&&j| a[i][j].abs()).expect("nonempty");
            swap_cols(&mut a, &mut v, k, j0);
            if nz.len() == 1 {
                k += 1;
                break;
            }
            for j in (k + 1)..ncols {
                if a[i][j].is_zero() {
                    continue;
                }
                let q = a[i][j].div_floor(&a[i][k]);
                for row in a.iter_mut() {
                    let t = &q * &row[k];
                    row[j] -= t;
                }
                for row in v.iter_mut() {
                    let t = &q * &row[k];
                    row[j] -= t;
                }
            }
        }
        if k >= ncols {
            break;
        }
    }
    (k..ncols).map(|j| v.iter().map(|row| row[j].clone()).collect()).collect()
}

fn swap_cols(a: &mut [Vec<Scalar>], v: &mut [Vec<Scalar>], x: usize, y: usize) {
    if x == y {
        return;
    }
    for row in a.iter_mut() {
        row.swap(x, y);
    }
    for row in v.iter_mut() {
        row.swap(x, y);
    }
}

/// A sublattice of ℤ^n held in echelon form (unimodular row operations only).
#[derive(Clone, Debug, Default)]
pub struct Lattice {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice { dim, rows: BTreeMap::new() }
    }

    pub fn from_vectors(dim: usize, vs: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut l = Lattice::new(dim);
        for v in vs {
            l.insert(v);
        }
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the generating set; returns true if the lattice grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        let mut grew = false;
        while let Some((c, x)) = v.first().cloned() {
            match self.rows.remove(&c) {
                None => {
                    if x.is_negative() {
                        for e in v.iter_mut() {
                            e.1 = -&e.1;
                        }
                    }
                    self.rows.insert(c, v);
                    return true;
                }
                Some(p) => {
                    let a = p[0].1.clone();
                    if x.is_multiple_of(&a) {
                        v = lin_comb(&Scalar::one(), &v, &-(&x / &a), &p);
                        self.rows.insert(c, p);
                        continue;
                    }
                    let eg = a.extended_gcd(&x);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let mut newp = lin_comb(&s, &p, &t, &v);
                    let rest = lin_comb(&(&x / &g), &p, &-(&a / &g), &v);
                    if newp[0].1.is_negative() {
                        for e in newp.iter_mut() {
                            e.1 = -&e.1;
                        }
                    }
                    self.rows.insert(c, newp);
                    grew = true;
                    v = rest;
                }
            }
        }
        grew
    }

    /// Coordinates of `v` in [`Lattice::basis`], if `v` lies in the lattice.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let keys: Vec<usize> = self.rows.keys().copied().collect();
        let mut coords = vec![Scalar::zero(); keys.len()];
        let mut v = v.clone();
        for (k, c) in keys.iter().enumerate() {
            let Some((lc, x)) = v.first().cloned() else { break };
            if lc < *c {
                return None;
            }
            if lc > *c {
                continue;
            }
            let p = &self.rows[c];
            if !x.is_multiple_of(&p[0].1) {
                return None;
            }
            let q = &x / &p[0].1;
            v = lin_comb(&Scalar::one(), &v, &-&q, p);
            coords[k] = q;
        }
        if v.is_empty() {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.values().cloned().collect()
    }

    /// Elementary divisors of the inclusion into ℤ^dim.
    pub fn smith(&self) -> SmithForm {
        smith_normal_form(&IntMatrix::from_rows(self.dim, self.basis()))
    }

    /// True when the lattice is all of ℤ^dim.
    pub fn is_full(&self) -> bool {
        self.rank() == self.dim && self.rows.values().all(|r| r[0].1.is_one())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.values().all(|v| self.contains(v))
    }
}

/// Determinant by cofactor expansion (small matrices only).
pub fn cofactor_det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Scalar::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Determinant of a square matrix by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> Scalar {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    let mut a = m.to_dense();
    let mut sign = Scalar::one();
    let mut prev = Scalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return Scalar::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = Scalar::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        sign
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// Rational solution `x` of `a x = b` when it exists and is unique on the
/// column space (least-index pivots); `None` if inconsistent.
pub fn solve_rational(cols: &[SparseVec], nrows: usize, b: &SparseVec) -> Option<Vec<RationalScalar>> {
    let m = IntMatrix::from_columns(nrows, cols);
    let k = cols.len();
    // augmented rows [A | b]
    let rows: Vec<SparseVec> = (0..nrows)
        .map(|i| {
            let mut r = m.rows[i].clone();
            if let Some(x) = get(b, i) {
                r.push((k, x.clone()));
            }
            r
        })
        .collect();
    let mut e = RowEchelon::new(k + 1);
    for r in rows {
        e.insert(r);
    }
    if e.pivots.contains_key(&k) {
        return None;
    }
    let mut x = vec![RationalScalar::zero(); k];
    for r in e.reduced_rows() {
        let (p, a) = &r[0];
        let rhs = get(&r, k).cloned().unwrap_or_default();
        x[*p] = RationalScalar::new(rhs, a.clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_matches_cofactors() {
        let rows = vec![vec![2, -1, 0, 3], vec![1, 4, 2, 0], vec![0, 0, 5, 1], vec![3, 1, 1, 1]];
        let m = IntMatrix::from_i64(&rows);
        assert_eq!(determinant(&m), cofactor_det(&m.to_dense()));
        let swap = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&swap), Scalar::from(-1));
        assert_eq!(determinant(&IntMatrix::from_i64(&[vec![1, 2], vec![2, 4]])), Scalar::zero());
    }
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from(x)).collect()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, density: f64) -> IntMatrix {
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| if rng.gen_bool(density) { rng.gen_range(-4..=4) } else { 0 }).collect())
            .collect();
        IntMatrix::from_i64(&rows)
    }

    #[test]
    fn snf_identity_and_diagonal() {
        let f = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(f.divisors, big(&[1, 1, 1]));
        assert_eq!(f.rank, 3);
        let f = smith_normal_form(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(f.divisors, big(&[2, 4]));
        let f = smith_normal_form(&IntMatrix::from_i64(&[vec![4, 0], vec![0, 6]]));
        assert_eq!(f.divisors, big(&[2, 12]));
    }

    #[test]
    fn snf_zero_matrix() {
        let f = smith_normal_form(&IntMatrix::zeros(3, 4));
        assert_eq!(f.rank, 0);
        assert_eq!(rational_rank(&IntMatrix::zeros(3, 4)), 0);
    }

    #[test]
    fn snf_chain_and_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..=5);
            let m = random_matrix(&mut rng, n, n, 0.7);
            let f = smith_normal_form(&m);
            for w in f.divisors.windows(2) {
                assert!(w[1].is_multiple_of(&w[0]));
            }
            let det = cofactor_det(&m.to_dense());
            if f.rank == n {
                assert_eq!(det.abs(), f.torsion_order());
            } else {
                assert!(det.is_zero());
            }
        }
    }

    #[test]
    fn snf_transforms_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 4, 5, 0.6);
            let t = smith_normal_form_with_transforms(&m);
            let u = IntMatrix::from_dense(&t.u);
            let v = IntMatrix::from_dense(&t.v);
            let d = u.mul(&m).mul(&v);
            assert_eq!(d.to_dense(), t.diagonal);
            for i in 0..d.nrows() {
                for j in 0..d.ncols() {
                    if i != j {
                        assert!(d.get(i, j).is_zero());
                    }
                }
            }
            assert!(cofactor_det(&t.u).abs().is_one());
            assert!(cofactor_det(&t.v).abs().is_one());
            assert_eq!(t.form, smith_normal_form(&m));
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(integer_kernel(&IntMatrix::from_i64(&[vec![1, -1]])), vec![big(&[1, 1])]);
        assert_eq!(integer_kernel(&IntMatrix::from_i64(&[vec![2, -2]])), vec![big(&[1, 1])]);
        // x + 2y ≡ 0 mod 3 style saturation
        let k = integer_kernel(&IntMatrix::from_i64(&[vec![3, 1, 2]]));
        assert_eq!(k.len(), 2);
        let l = Lattice::from_vectors(3, k.iter().map(|v| sparse_from_dense(v)));
        assert!(l.contains(&sparse_from_dense(&big(&[1, -1, -1]))));
        assert!(l.contains(&sparse_from_dense(&big(&[0, 2, -1]))));
    }

    #[test]
    fn kernel_dimension_and_saturation_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 6, 9, 0.5);
            let k = integer_kernel(&m);
            assert_eq!(k.len(), 9 - rational_rank(&m));
            for v in &k {
                assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            // saturation: the kernel basis spans a primitive sublattice
            let km = IntMatrix::from_dense(&k);
            if !k.is_empty() {
                assert!(smith_normal_form(&km).is_unimodular_image());
            }
        }
    }

    #[test]
    fn rank_agrees_with_snf() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let r = rng.gen_range(1..8);
            let c = rng.gen_range(1..8);
            let m = random_matrix(&mut rng, r, c, 0.3);
            assert_eq!(rational_rank(&m), smith_normal_form(&m).rank);
        }
    }

    #[test]
    fn lattice_membership_and_index() {
        let l = Lattice::from_vectors(2, vec![sparse_from_dense(&big(&[2, 0])), sparse_from_dense(&big(&[0, 3]))]);
        assert!(!l.is_full());
        assert_eq!(l.smith().divisors, big(&[1, 6]));
        assert!(l.contains(&sparse_from_dense(&big(&[4, 9]))));
        assert!(!l.contains(&sparse_from_dense(&big(&[1, 0]))));
        let mut l2 = l.clone();
        l2.insert(sparse_from_dense(&big(&[3, 1])));
        assert!(l2.is_full());
        let c = l.coordinates(&sparse_from_dense(&big(&[4, 9]))).unwrap();
        assert_eq!(c, big(&[2, 3]));
    }

    #[test]
    fn solve_rational_basic() {
        let cols = vec![sparse_from_dense(&big(&[2, 0])), sparse_from_dense(&big(&[0, 3]))];
        let x = solve_rational(&cols, 2, &sparse_from_dense(&big(&[1, 1]))).unwrap();
        assert_eq!(x[0], RationalScalar::new(1.into(), 2.into()));
        assert_eq!(x[1], RationalScalar::new(1.into(), 3.into()));
    }
}
