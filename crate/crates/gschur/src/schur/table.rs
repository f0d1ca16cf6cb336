//! Plain-text dump of a full structure-constant table and its reload.
//!
//! Format: a header line `table <basis> n=<n> d=<d> size=<m>`, then one
//! `basis <i> <triple>` line per basis element, then one `<i> <j> <k> <coeff>`
//! line per nonzero structure constant. Lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::{structure_table, Basis, SchurAlgebra, SchurElement, StructureEntry};
use crate::combinatorics::CanonicalTriple;
use crate::error::{Error, Result};
use crate::exactlin::Scalar;

/// Structure constants of one degree in one basis, with basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub tag: Basis,
    pub n: usize,
    pub d: usize,
    pub basis: Vec<String>,
    pub entries: Vec<StructureEntry>,
}

impl StructureTable {
    pub fn compute(alg: &SchurAlgebra, d: usize, tag: Basis) -> Result<Self> {
        let (basis, entries) = structure_table(alg, d, tag)?;
        let p = alg.presentation();
        Ok(StructureTable { tag, n: alg.n(), d, basis: basis.iter().map(|t| t.to_text(p)).collect(), entries })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "table {} n={} d={} size={}", self.tag.name(), self.n, self.d, self.basis.len());
        for (i, b) in self.basis.iter().enumerate() {
            let _ = writeln!(out, "basis {i} {b}");
        }
        for e in &self.entries {
            let _ = writeln!(out, "{} {} {} {}", e.i, e.j, e.k, e.coeff);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty structure table".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "table" {
            return Err(Error::Parse(format!("line 1: bad header {header:?}")));
        }
        let tag = match fields[1] {
            "xi" => Basis::Xi,
            "eta" => Basis::Eta,
            other => return Err(Error::Parse(format!("line 1: unknown basis {other:?}"))),
        };
        let field = |s: &str, key: &str| -> Result<usize> {
            s.strip_prefix(key)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("line 1: expected {key}<number>, found {s:?}")))
        };
        let (n, d, size) = (field(fields[2], "n=")?, field(fields[3], "d=")?, field(fields[4], "size=")?);
        let mut basis = Vec::with_capacity(size);
        let mut entries = Vec::new();
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: malformed entry {line:?}", ln + 1));
            if parts.first() == Some(&"basis") {
                if parts.len() != 3 || parts[1].parse::<usize>().ok() != Some(basis.len()) {
                    return Err(bad());
                }
                basis.push(parts[2].to_string());
                continue;
            }
            if parts.len() != 4 {
                return Err(bad());
            }
            let idx = |s: &str| -> Result<usize> {
                let v: usize = s.parse().map_err(|_| bad())?;
                if v >= size {
                    return Err(Error::Parse(format!("line {}: index {v} out of range", ln + 1)));
                }
                Ok(v)
            };
            let coeff: Scalar = parts[3].parse().map_err(|_| bad())?;
            entries.push(StructureEntry { i: idx(parts[0])?, j: idx(parts[1])?, k: idx(parts[2])?, coeff });
        }
        if basis.len() != size {
            return Err(Error::Parse(format!("expected {size} basis lines, found {}", basis.len())));
        }
        Ok(StructureTable { tag, n, d, basis, entries })
    }

    /// Basis triples parsed against an algebra.
    pub fn basis_triples(&self, alg: &SchurAlgebra) -> Result<Vec<CanonicalTriple>> {
        self.basis
            .iter()
            .map(|b| match CanonicalTriple::parse(b, alg.presentation(), alg.n())? {
                (Some(t), 1) => Ok(t),
                _ => Err(Error::Parse(format!("{b:?} is not a canonical triple"))),
            })
            .collect()
    }

    /// Products of all basis pairs rebuilt from the table.
    pub fn products(&self, alg: &SchurAlgebra) -> Result<Vec<Vec<SchurElement>>> {
        let basis = self.basis_triples(alg)?;
        let m = basis.len();
        let mut out = vec![vec![alg.zero(self.d, self.tag); m]; m];
        for e in &self.entries {
            out[e.i][e.j].add_term(basis[e.k].clone(), e.coeff.clone());
        }
        Ok(out)
    }

    /// Number of basis pairs whose product rebuilt from the table differs
    /// from the product computed directly.
    pub fn mismatches(&self, alg: &SchurAlgebra) -> Result<usize> {
        let basis = self.basis_triples(alg)?;
        let prods = self.products(alg)?;
        let mut bad = 0;
        for (i, x) in basis.iter().enumerate() {
            let ex = alg.basis_element(x, self.tag);
            for (j, y) in basis.iter().enumerate() {
                let direct = ex.mul(&alg.basis_element(y, self.tag))?.in_basis(self.tag)?;
                if direct != prods[i][j] {
                    bad += 1;
                }
            }
        }
        Ok(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::make_extended_zigzag;

    #[test]
    fn dump_and_reload_reproduce_products() {
        let alg = SchurAlgebra::new(make_extended_zigzag(1).unwrap(), 2);
        for tag in [Basis::Xi, Basis::Eta] {
            let t = StructureTable::compute(&alg, 2, tag).unwrap();
            let back = StructureTable::from_text(&t.to_text()).unwrap();
            assert_eq!(back, t);
            assert_eq!(back.mismatches(&alg).unwrap(), 0);
        }
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(StructureTable::from_text("").is_err());
        assert!(StructureTable::from_text("table eta n=1 d=1 size=1\nbasis 0 e0|1|1\n0 0 5 1\n").is_err());
        assert!(StructureTable::from_text("table foo n=1 d=1 size=0\n").is_err());
        assert!(StructureTable::from_text("table eta n=1 d=1 size=2\nbasis 0 e0|1|1\n").is_err());
    }
}
