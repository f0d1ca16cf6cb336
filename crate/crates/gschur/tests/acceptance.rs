//! Acceptance criteria 1-10. Each criterion prints one PASS/FAIL line; the
//! process exits nonzero if any criterion fails. All comparisons are exact.

use std::process::ExitCode;
use std::time::Instant;

use gschur::bialgebra::{check_bialgebra_identity, coproduct, generation_closure, random_quadruple, seeded_rng};
use gschur::dcp::schur_dcp_verdict;
use gschur::forms::gram_t_t;
use gschur::schur::{multiply_oracle, Basis, SchurAlgebra, StructureTable};
use gschur::superalgebra::{make_extended_zigzag, make_matrix_diagonal_pair, make_matrix_superalgebra, make_trivial_extension, make_zigzag, SuperalgebraPresentation};
use gschur::verify::signs::{bracket_under_permutation, composable_brackets_under_transposition, stabilizer_orders};
use gschur::verify::zigzag::{self, ZigzagLetters};
use gschur::verify::{counterexample_fixture, rescaling_witness};
use gschur::{Result, Scalar};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

type Criterion = (&'static str, fn() -> Result<Verdict>);

const SIZES: [(usize, usize); 3] = [(1, 1), (2, 1), (2, 2)];

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict { ok, detail: detail.into() })
}

/// Extended zigzag for both lengths at every size, and `M_{1|1}` at (2,2).
fn product_instances() -> Result<Vec<(SchurAlgebra, usize)>> {
    let mut out = Vec::new();
    for ell in [1, 2] {
        for (n, d) in SIZES {
            out.push((SchurAlgebra::new(make_extended_zigzag(ell)?, n), d));
        }
    }
    out.push((SchurAlgebra::new(make_matrix_superalgebra(1, 1)?, 2), 2));
    Ok(out)
}

fn label(alg: &SchurAlgebra, d: usize) -> String {
    format!("{} n={} d={d}", alg.presentation().name(), alg.n())
}

fn criterion_1() -> Result<Verdict> {
    let mut pairs = 0;
    for (alg, d) in product_instances()? {
        let basis = alg.basis(d);
        let bad = basis.par_iter().map(|x| -> Result<usize> {
            let ex = alg.basis_element(x, Basis::Eta);
            let mut bad = 0;
            for y in &basis {
                let ey = alg.basis_element(y, Basis::Eta);
                if ex.mul(&ey)?.to_eta()? != multiply_oracle(&ex, &ey)?.to_eta()? {
                    bad += 1;
                }
            }
            Ok(bad)
        });
        let bad: usize = bad.collect::<Result<Vec<_>>>()?.into_iter().sum();
        pairs += basis.len().pow(2);
        if bad > 0 {
            return verdict(false, format!("{bad} disagreeing pairs at {}", label(&alg, d)));
        }
    }
    verdict(true, format!("{pairs} basis pairs, closed form equals tensor model"))
}

fn criterion_2() -> Result<Verdict> {
    let mut pairs = 0;
    for (alg, d) in product_instances()? {
        let basis = alg.basis(d);
        let bad = basis
            .par_iter()
            .map(|x| -> Result<usize> {
                let ex = alg.basis_element(x, Basis::Eta).to_xi();
                let mut bad = 0;
                for y in &basis {
                    if !ex.mul(&alg.basis_element(y, Basis::Eta).to_xi())?.is_eta_integral() {
                        bad += 1;
                    }
                }
                Ok(bad)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum::<usize>();
        pairs += basis.len().pow(2);
        if bad > 0 {
            return verdict(false, format!("{bad} non-integral products at {}", label(&alg, d)));
        }
    }
    let alg = SchurAlgebra::new(make_extended_zigzag(1)?, 2);
    match rescaling_witness(&alg, 2) {
        Some(w) => verdict(true, format!("{pairs} products integral; witness: {w}")),
        None => verdict(false, "no sector-c rescaling witness"),
    }
}

fn criterion_3() -> Result<Verdict> {
    let (alg, idems) = counterexample_fixture()?;
    let x = alg.parse_triple("E12,E12|1,1|1,1", Basis::Eta)?;
    let mut coeffs = Vec::new();
    for cols in ["1,1", "1,2", "2,2"] {
        let y = alg.parse_triple(&format!("E21,E21|1,1|{cols}"), Basis::Eta)?;
        let target = alg.parse_triple(&format!("E11,E11|1,1|{cols}"), Basis::Eta)?;
        let fast = x.mul(&y)?.to_eta()?;
        let slow = multiply_oracle(&x, &y)?.to_eta()?;
        if fast != slow {
            return verdict(false, format!("fast and tensor products differ at columns {cols}"));
        }
        let (t, _) = target.terms().next().expect("nonzero target");
        if fast.len() != 1 {
            return verdict(false, format!("product at columns {cols} is not a multiple of one basis element"));
        }
        coeffs.push(fast.coeff(t));
    }
    let expected = [Scalar::from(4), Scalar::from(2), Scalar::from(4)];
    let r = schur_dcp_verdict(&alg, 2, Basis::Eta, &idems)?;
    let divisors_two = !r.divisors.is_empty() && r.divisors.iter().all(|d| d == "2");
    let ok = coeffs == expected && r.dcp_over_fractions && !r.sound && !r.dcp && divisors_two;
    verdict(
        ok,
        format!(
            "coefficients {} (equal columns) and {} (distinct columns); over fractions {}, sound {}, divisors {:?}",
            coeffs[0], coeffs[1], r.dcp_over_fractions, r.sound, r.divisors
        ),
    )
}

fn criterion_4() -> Result<Verdict> {
    let alg = SchurAlgebra::new(make_extended_zigzag(1)?, 2);
    let mut elements = 0;
    for k in 0..=2 {
        for t in alg.basis(k) {
            let c = coproduct(&alg.basis_element(&t, Basis::Eta))?;
            elements += 1;
            if c.coproduct_at(0)? != c.coproduct_at(1)? {
                return verdict(false, format!("coassociativity fails at {}", t.to_text(alg.presentation())));
            }
        }
    }
    let mut quads = 0;
    for d in 1..=2 {
        let mut rng = seeded_rng(2024 + d as u64);
        for _ in 0..50 {
            let [x, y, z, u] = random_quadruple(&alg, d, 2, &mut rng);
            quads += 1;
            if !check_bialgebra_identity(&x, &y, &z, &u)? {
                return verdict(false, format!("compatibility fails at {}, {}, {}, {}", x.to_text(), y.to_text(), z.to_text(), u.to_text()));
            }
        }
    }
    verdict(true, format!("coassociative on {elements} basis elements; compatibility on {quads} quadruples"))
}

fn criterion_5() -> Result<Verdict> {
    let alg = SchurAlgebra::new(make_extended_zigzag(1)?, 2);
    let r = generation_closure(&alg, 2)?;
    verdict(
        r.full && r.elementary_divisors.is_empty() && r.rank == r.dimension,
        format!("rank {} of {} from {} generators, divisors {:?}", r.rank, r.dimension, r.generators, r.elementary_divisors),
    )
}

fn criterion_6() -> Result<Verdict> {
    let mut sizes = Vec::new();
    for ell in [1, 2] {
        for (n, d) in SIZES {
            let alg = SchurAlgebra::new(make_zigzag(ell)?, n);
            let g = gram_t_t(&alg, d)?;
            let m = g.gram.matrix.to_dense();
            let signed_perm = (0..m.len()).all(|i| {
                let row: Vec<&Scalar> = m[i].iter().filter(|x| !x.is_zero()).collect();
                let col: Vec<&Scalar> = m.iter().map(|r| &r[i]).filter(|x| !x.is_zero()).collect();
                row.len() == 1 && col.len() == 1 && row[0].abs() == Scalar::from(1)
            });
            let det = gschur::exactlin::determinant(&g.gram.matrix);
            if !(signed_perm && g.unimodular && g.dual_pattern.is_ok() && det.abs() == Scalar::from(1)) {
                return verdict(false, format!("{}: det {det}, dual pattern {:?}", label(&alg, d), g.dual_pattern));
            }
            sizes.push(m.len());
        }
    }
    verdict(true, format!("signed permutation matrices with |det| = 1, sizes {sizes:?}"))
}

fn criterion_7() -> Result<Verdict> {
    let mut parts = Vec::new();
    let mut ok = true;
    for ell in [1, 2] {
        let p = make_extended_zigzag(ell)?;
        let z = ZigzagLetters::detect(&p).expect("extended zigzag letters");
        let lower: Vec<_> = z.lower.iter().map(|&i| p.basis_element(i)).collect();
        let alg = SchurAlgebra::new(p, 2);
        let t = schur_dcp_verdict(&alg, 2, Basis::Eta, &lower)?;
        let s = schur_dcp_verdict(&alg, 2, Basis::Xi, &lower)?;
        ok &= t.dcp_over_fractions && t.sound && t.dcp && s.dcp_over_fractions;
        parts.push(format!("l={ell}: T dcp {} sound {} over fractions {}, S over fractions {}", t.dcp, t.sound, t.dcp_over_fractions, s.dcp_over_fractions));
    }
    verdict(ok, parts.join("; "))
}

fn criterion_8() -> Result<Verdict> {
    let p = make_extended_zigzag(1)?;
    let z = ZigzagLetters::detect(&p).expect("extended zigzag letters");
    let alg = SchurAlgebra::new(p, 2);
    let d = 2;
    let simple = [
        zigzag::arrow_pairs_distinct_words(&alg, &z, d),
        zigzag::vertex_arrow_distinct_words(&alg, &z, d),
        zigzag::arrow_pairs_leading_word(&alg, &z, d),
        zigzag::vertex_arrow_leading_word(&alg, &z, d),
    ];
    if let Some(t) = simple.iter().find(|t| !t.passed() || t.instances == 0) {
        return verdict(false, format!("identity fails: {:?}", t.first_failure));
    }
    let stars = [zigzag::arrow_vertex_star_times_arrows(&alg, &z, d)?, zigzag::separated_basis_times_arrows(&alg, &z, d)?];
    if let Some(t) = stars.iter().find(|t| !t.passed() || t.dependent_elsewhere > 0 || t.independence_required == 0) {
        return verdict(false, format!("star identity: {:?} {:?} {:?}", t.identity.first_failure, t.first_dependent, t.first_dependent_elsewhere));
    }
    let counts: Vec<usize> = simple.iter().map(|t| t.instances).chain(stars.iter().map(|t| t.identity.instances)).collect();
    verdict(
        true,
        format!("instances {counts:?} exact; {} and {} term lists independent by rank", stars[0].independence_required, stars[1].independence_required),
    )
}

fn criterion_9() -> Result<Verdict> {
    let p = make_extended_zigzag(2)?;
    let a = bracket_under_permutation(&p, 3, 200, 11);
    let b = composable_brackets_under_transposition(&p, 3, 200, 11);
    let c = stabilizer_orders(&make_extended_zigzag(1)?, 2, 4);
    let ok = a.passed() && b.passed() && c.passed() && a.instances >= 200 && b.instances >= 200;
    verdict(
        ok,
        format!(
            "permutation identity {}/{}, transposition identity {}/{}, stabilizer orders {}/{}",
            a.instances - a.failures,
            a.instances,
            b.instances - b.failures,
            b.instances,
            c.instances - c.failures,
            c.instances
        ),
    )
}

fn criterion_10() -> Result<Verdict> {
    let presentations: Vec<SuperalgebraPresentation> = vec![
        make_extended_zigzag(1)?,
        make_extended_zigzag(2)?,
        make_zigzag(2)?,
        make_matrix_superalgebra(1, 1)?,
        make_matrix_diagonal_pair(2)?,
        make_trivial_extension(&make_zigzag(1)?)?,
    ];
    for p in &presentations {
        let json = p.to_json()?;
        let back = SuperalgebraPresentation::from_json(&json)?;
        if &back != p || back.to_json()? != json {
            return verdict(false, format!("spec round trip changes {}", p.name()));
        }
    }
    let mut tables = 0;
    for (alg, d) in product_instances()? {
        for tag in [Basis::Eta, Basis::Xi] {
            let t = StructureTable::compute(&alg, d, tag)?;
            let text = t.to_text();
            let back = StructureTable::from_text(&text)?;
            if back != t || back.to_text() != text || back.mismatches(&alg)? != 0 {
                return verdict(false, format!("table round trip fails at {} ({})", label(&alg, d), tag.name()));
            }
            tables += 1;
        }
    }
    verdict(true, format!("{} spec files and {tables} structure tables reproduced exactly", presentations.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", criterion_1),
        ("integrality", criterion_2),
        ("counterexample", criterion_3),
        ("superbialgebra", criterion_4),
        ("generation", criterion_5),
        ("symmetricity", criterion_6),
        ("double centralizer", criterion_7),
        ("zigzag identities", criterion_8),
        ("sign layer", criterion_9),
        ("serialization", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f().unwrap_or_else(|e| Verdict { ok: false, detail: format!("error: {e}") });
        failed += usize::from(!v.ok);
        println!("criterion {:>2} {} {name}: {} ({:.1}s)", i + 1, if v.ok { "PASS" } else { "FAIL" }, v.detail, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
