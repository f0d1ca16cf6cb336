//! Verification suites: named checks over one algebra, collected into a
//! deterministic report.

pub mod signs;
pub mod zigzag;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bialgebra::{check_bialgebra_identity, coproduct, counit, generation_closure, random_quadruple, seeded_rng, SplitElement};
use crate::combinatorics::{c_factorial, factorial, CanonicalTriple};
use crate::dcp::{algebra_vector, dcp_verdict, schur_dcp_verdict, DcpReport};
use crate::error::{Error, Result};
use crate::exactlin::{RationalScalar, Scalar};
use crate::forms::{check_aa_symmetrizing, gram_t_t, symmetrizing_obstruction, t_m, t_s, t_t, CentralForm};
use crate::schur::{multiply_oracle, star_oracle, to_tensor, xi_product_basis, Basis, SchurAlgebra, StructureTable};
use crate::superalgebra::{make_matrix_diagonal_pair, make_zigzag, validate, AlgebraElement, Sector, SuperalgebraPresentation};

use self::zigzag::{IdentityTally, StarTally, ZigzagLetters};

/// Verdict of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// A negative result that the fixture is meant to exhibit.
    ExpectedPass,
    Fail,
    /// The check does not apply to this algebra or these sizes.
    Skipped,
}

impl Status {
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::ExpectedPass => "EXPECTED-PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

/// One line of a report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    /// The property checked, in words.
    pub property: String,
    /// Algebra and sizes the check ran on.
    pub instance: String,
    /// How instances were chosen: exhaustive bounds or sample count and seed.
    pub bounds: String,
    pub cases: usize,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

/// Report of a verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub suites: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("algebra {} n={} d={} seed={}\n", self.algebra, self.n, self.d, self.seed);
        for c in &self.checks {
            let time = c.wall_ms.map(|t| format!(" [{t} ms]")).unwrap_or_default();
            out.push_str(&format!("{:<13} {}/{} ({}; {} cases){}: {}\n", c.status.label(), c.suite, c.name, c.instance, c.cases, time, c.detail));
        }
        out.push_str(if self.passed { "overall: PASS\n" } else { "overall: FAIL\n" });
        out
    }
}

/// Suites selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Presentation,
    ProductOracle,
    Integrality,
    Bialgebra,
    Signs,
    ZigzagIdentities,
    Forms,
    Dcp,
    Generation,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Presentation,
        Suite::ProductOracle,
        Suite::Integrality,
        Suite::Bialgebra,
        Suite::Signs,
        Suite::ZigzagIdentities,
        Suite::Forms,
        Suite::Dcp,
        Suite::Generation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Presentation => "presentation",
            Suite::ProductOracle => "product-oracle",
            Suite::Integrality => "integrality",
            Suite::Bialgebra => "bialgebra",
            Suite::Signs => "signs",
            Suite::ZigzagIdentities => "zigzag-identities",
            Suite::Forms => "forms",
            Suite::Dcp => "dcp",
            Suite::Generation => "generation",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        if self == Suite::All {
            Suite::ALL.to_vec()
        } else {
            vec![self]
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Inputs of a verification run.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub presentation: SuperalgebraPresentation,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    /// Samples per seeded sign identity.
    pub sign_samples: usize,
    /// Random quadruples for the product/star compatibility.
    pub quadruples: usize,
    /// Record wall times (makes reports run-dependent).
    pub timings: bool,
}

impl VerifyConfig {
    pub fn new(presentation: SuperalgebraPresentation, n: usize, d: usize) -> Self {
        VerifyConfig { presentation, n, d, seed: 0, sign_samples: 200, quadruples: 50, timings: false }
    }

    fn algebra(&self) -> SchurAlgebra {
        SchurAlgebra::new(self.presentation.clone(), self.n)
    }

    fn instance(&self) -> String {
        format!("{} n={} d={}", self.presentation.name(), self.n, self.d)
    }
}

/// Result of a check body.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub cases: usize,
    pub detail: String,
}

impl Outcome {
    fn verdict(ok: bool, cases: usize, detail: impl Into<String>) -> Self {
        Outcome { status: if ok { Status::Pass } else { Status::Fail }, cases, detail: detail.into() }
    }

    fn skipped(detail: impl Into<String>) -> Self {
        Outcome { status: Status::Skipped, cases: 0, detail: detail.into() }
    }
}

type Body = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

struct Check {
    suite: Suite,
    name: &'static str,
    property: &'static str,
    instance: String,
    bounds: String,
    body: Body,
}

fn check(suite: Suite, name: &'static str, property: &'static str, instance: String, bounds: impl Into<String>, body: Body) -> Check {
    Check { suite, name, property, instance, bounds: bounds.into(), body }
}

fn run_check(c: &Check, timings: bool) -> CheckRecord {
    let start = Instant::now();
    let out = match (c.body)() {
        Ok(o) => o,
        Err(Error::Unsupported(msg)) => Outcome::skipped(msg),
        Err(e) => Outcome::verdict(false, 0, format!("error: {e}")),
    };
    CheckRecord {
        suite: c.suite.name().into(),
        name: c.name.into(),
        property: c.property.into(),
        instance: c.instance.clone(),
        bounds: c.bounds.clone(),
        cases: out.cases,
        status: out.status,
        detail: out.detail,
        wall_ms: timings.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs a suite (or all suites). Checks run concurrently; the report lists
/// them in a fixed order.
pub fn run(cfg: &VerifyConfig, suite: Suite) -> VerifyReport {
    let suites = suite.expand();
    let checks: Vec<Check> = suites.iter().flat_map(|&s| checks_for(cfg, s)).collect();
    let records: Vec<CheckRecord> = checks.par_iter().map(|c| run_check(c, cfg.timings)).collect();
    let passed = records.iter().all(|r| !r.status.is_failure());
    VerifyReport {
        algebra: cfg.presentation.name().into(),
        n: cfg.n,
        d: cfg.d,
        seed: cfg.seed,
        suites: suites.iter().map(|s| s.name().to_string()).collect(),
        checks: records,
        passed,
    }
}

fn checks_for(cfg: &VerifyConfig, suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Presentation => presentation_checks(cfg),
        Suite::ProductOracle => product_checks(cfg),
        Suite::Integrality => integrality_checks(cfg),
        Suite::Bialgebra => bialgebra_checks(cfg),
        Suite::Signs => sign_checks(cfg),
        Suite::ZigzagIdentities => zigzag_checks(cfg),
        Suite::Forms => form_checks(cfg),
        Suite::Dcp => dcp_checks(cfg),
        Suite::Generation => generation_checks(cfg),
        Suite::All => Suite::ALL.iter().flat_map(|&s| checks_for(cfg, s)).collect(),
    }
}

fn exhaustive(what: &str) -> String {
    format!("exhaustive: {what}")
}

fn presentation_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let s = Suite::Presentation;
    let p = cfg.presentation.clone();
    let p2 = p.clone();
    let alg = cfg.algebra();
    let d = cfg.d;
    vec![
        check(
            s,
            "axioms",
            "structure constants define an associative superalgebra with a good pair of sectors",
            p.name().into(),
            exhaustive("all basis triples"),
            Box::new(move || {
                let r = validate(&p);
                let detail = if r.is_valid() { "valid".to_string() } else { r.to_string() };
                Ok(Outcome::verdict(r.is_valid(), p.dim().pow(3), detail))
            }),
        ),
        check(
            s,
            "spec-round-trip",
            "writing the spec file and reading it back gives the same presentation",
            p2.name().into(),
            exhaustive("one round trip"),
            Box::new(move || {
                let text = p2.to_json()?;
                let back = SuperalgebraPresentation::from_json(&text)?;
                let ok = back == p2 && back.to_json()? == text;
                Ok(Outcome::verdict(ok, 1, if ok { "identical" } else { "presentation changed" }))
            }),
        ),
        check(
            s,
            "structure-table-round-trip",
            "dumping the structure constants of both bases and reloading them reproduces every product",
            cfg.instance(),
            exhaustive("all basis pairs, xi and eta"),
            Box::new(move || {
                let mut cases = 0;
                for tag in [Basis::Xi, Basis::Eta] {
                    let t = StructureTable::compute(&alg, d, tag)?;
                    let back = StructureTable::from_text(&t.to_text())?;
                    let bad = back.mismatches(&alg)?;
                    if back != t || bad > 0 {
                        return Ok(Outcome::verdict(false, cases, format!("{} table: {bad} products differ after reload", tag.name())));
                    }
                    cases += t.basis.len().pow(2);
                }
                Ok(Outcome::verdict(true, cases, "all products reproduced"))
            }),
        ),
    ]
}

fn all_pairs_agree(alg: &SchurAlgebra, d: usize, tag: Basis) -> Result<(usize, Option<String>)> {
    let basis = alg.basis(d);
    let firsts: Vec<Result<Option<String>>> = basis
        .par_iter()
        .map(|x| {
            let ex = alg.basis_element(x, tag);
            for y in &basis {
                let ey = alg.basis_element(y, tag);
                if ex.mul(&ey)? != multiply_oracle(&ex, &ey)? {
                    return Ok(Some(format!("{} * {}", ex.to_text(), ey.to_text())));
                }
            }
            Ok(None)
        })
        .collect();
    let mut first = None;
    for f in firsts {
        if let (None, Some(m)) = (&first, f?) {
            first = Some(m);
        }
    }
    Ok((basis.len().pow(2), first))
}

fn product_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let s = Suite::ProductOracle;
    let d = cfg.d;
    let mk = |tag: Basis, name: &'static str, property: &'static str| {
        let alg = cfg.algebra();
        check(
            s,
            name,
            property,
            cfg.instance(),
            exhaustive("all basis pairs"),
            Box::new(move || {
                let (cases, first) = all_pairs_agree(&alg, d, tag)?;
                Ok(match first {
                    None => Outcome::verdict(true, cases, "all products agree"),
                    Some(m) => Outcome::verdict(false, cases, format!("first disagreement: {m}")),
                })
            }),
        )
    };
    let alg = cfg.algebra();
    vec![
        mk(Basis::Eta, "fast-equals-tensor-eta", "closed-form products of rescaled basis elements equal products in the tensor model"),
        mk(Basis::Xi, "fast-equals-tensor-xi", "closed-form products of orbit-sum basis elements equal products in the tensor model"),
        check(
            s,
            "star-equals-shuffle",
            "closed-form star products equal symmetrized concatenation in the tensor model",
            cfg.instance(),
            exhaustive("all basis pairs of degrees (k, d-k)"),
            Box::new(move || {
                let mut cases = 0;
                for k in 0..=d {
                    for x in alg.basis(k) {
                        let ex = alg.basis_element(&x, Basis::Eta);
                        for y in alg.basis(d - k) {
                            let ey = alg.basis_element(&y, Basis::Eta);
                            cases += 1;
                            if ex.star(&ey)? != star_oracle(&ex, &ey)? {
                                return Ok(Outcome::verdict(false, cases, format!("{} * {}", ex.to_text(), ey.to_text())));
                            }
                        }
                    }
                }
                Ok(Outcome::verdict(true, cases, "all star products agree"))
            }),
        ),
    ]
}

/// A pair of orbit-sum basis elements, one involving sector c, whose product
/// has a coefficient not divisible by the sector-c factorial weight of its
/// triple.
pub fn rescaling_witness(alg: &SchurAlgebra, d: usize) -> Option<String> {
    let p = alg.presentation();
    let basis = alg.basis(d);
    let has_c = |t: &CanonicalTriple| t.letters().iter().any(|l| p.sector(l.basis()) == Sector::C);
    for x in basis.iter().filter(|t| has_c(t)) {
        for y in &basis {
            for (w, c) in xi_product_basis(p, x, y) {
                let k = c_factorial(&w, p);
                if !k.is_one() && !(&c % &k).is_zero() {
                    return Some(format!(
                        "xi({}) * xi({}) has coefficient {c} at ({}), whose weight is {k}; the product lies outside the rescaled lattice",
                        x.to_text(p),
                        y.to_text(p),
                        w.to_text(p)
                    ));
                }
            }
        }
    }
    None
}

fn integrality_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let s = Suite::Integrality;
    let d = cfg.d;
    let alg = cfg.algebra();
    let alg2 = cfg.algebra();
    vec![
        check(
            s,
            "eta-products-integral",
            "products of rescaled basis elements have integer coordinates in the rescaled basis",
            cfg.instance(),
            exhaustive("all basis pairs"),
            Box::new(move || {
                let basis = alg.basis(d);
                let bad: Vec<Option<String>> = basis
                    .par_iter()
                    .map(|x| {
                        let ex = alg.basis_element(x, Basis::Eta).to_xi();
                        basis.iter().find_map(|y| {
                            let ey = alg.basis_element(y, Basis::Eta).to_xi();
                            match ex.mul(&ey) {
                                Ok(prod) if prod.is_eta_integral() => None,
                                Ok(prod) => Some(format!("{} * {} = {}", ex.to_text(), ey.to_text(), prod.to_text())),
                                Err(e) => Some(e.to_string()),
                            }
                        })
                    })
                    .collect();
                let first = bad.into_iter().flatten().next();
                let cases = basis.len().pow(2);
                Ok(match first {
                    None => Outcome::verdict(true, cases, "all integral"),
                    Some(m) => Outcome::verdict(false, cases, m),
                })
            }),
        ),
        check(
            s,
            "c-sector-rescaling-witness",
            "some product of orbit-sum basis elements involving sector c leaves the rescaled lattice, so the rescaled lattice is proper",
            cfg.instance(),
            exhaustive("all basis pairs until a witness"),
            Box::new(move || {
                if alg2.presentation().sector_indices(Sector::C).is_empty() {
                    return Ok(Outcome::skipped("sector c is empty; both lattices coincide"));
                }
                Ok(match rescaling_witness(&alg2, d) {
                    Some(w) => Outcome::verdict(true, 1, w),
                    None if d < 2 => Outcome::skipped("all weights are 1 below degree 2"),
                    None => Outcome::verdict(false, 0, "no witness found"),
                })
            }),
        ),
    ]
}

fn bialgebra_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let s = Suite::Bialgebra;
    let d = cfg.d;
    let (alg, alg2, alg3) = (cfg.algebra(), cfg.algebra(), cfg.algebra());
    let (seed, count) = (cfg.seed, cfg.quadruples);
    vec![
        check(
            s,
            "coassociativity",
            "splitting the first or the second tensor factor of the coproduct gives the same triple coproduct",
            cfg.instance(),
            exhaustive("all rescaled basis elements of degree <= d"),
            Box::new(move || {
                let mut cases = 0;
                for k in 0..=d {
                    for t in alg.basis(k) {
                        let x = alg.basis_element(&t, Basis::Eta);
                        let c = coproduct(&x)?;
                        cases += 1;
                        if c.coproduct_at(0)? != c.coproduct_at(1)? {
                            return Ok(Outcome::verdict(false, cases, format!("fails at {}", x.to_text())));
                        }
                    }
                }
                Ok(Outcome::verdict(true, cases, "coassociative"))
            }),
        ),
        check(
            s,
            "counit",
            "applying the counit to either factor of the coproduct returns the element",
            cfg.instance(),
            exhaustive("all rescaled basis elements of degree <= d"),
            Box::new(move || {
                let mut cases = 0;
                for k in 0..=d {
                    for t in alg2.basis(k) {
                        let x = alg2.basis_element(&t, Basis::Eta);
                        let c = coproduct(&x)?;
                        cases += 1;
                        for side in 0..2 {
                            if counit_contract(&alg2, &c, side, k)? != x {
                                return Ok(Outcome::verdict(false, cases, format!("fails at {}", x.to_text())));
                            }
                        }
                    }
                }
                Ok(Outcome::verdict(true, cases, "counital"))
            }),
        ),
        check(
            s,
            "product-star-compatibility",
            "the product of two star products expands through coproducts with the super sign rule",
            cfg.instance(),
            format!("sampled: {count} random quadruples of total degree d, seed {seed}"),
            Box::new(move || {
                let mut rng = seeded_rng(seed);
                for i in 0..count {
                    let [x, y, z, u] = random_quadruple(&alg3, d, 2, &mut rng);
                    if !check_bialgebra_identity(&x, &y, &z, &u)? {
                        return Ok(Outcome::verdict(false, i + 1, format!("fails at sample {i}: {}, {}, {}, {}", x.to_text(), y.to_text(), z.to_text(), u.to_text())));
                    }
                }
                Ok(Outcome::verdict(true, count, "identity holds on all samples"))
            }),
        ),
    ]
}

/// `(ε ⊗ 1)∇x` (side 0) or `(1 ⊗ ε)∇x` (side 1).
fn counit_contract(alg: &SchurAlgebra, c: &SplitElement, side: usize, k: usize) -> Result<crate::schur::SchurElement> {
    let mut out = alg.zero(k, c.tag());
    for (key, coef) in c.terms() {
        let (unit_part, rest) = if side == 0 { (&key[0], &key[1]) } else { (&key[1], &key[0]) };
        if unit_part.degree() == 0 {
            let mut z = alg.zero(0, c.tag());
            z.add_term(unit_part.clone(), Scalar::one());
            let eps = counit(&z);
            out.add_term(rest.clone(), coef * eps);
        }
    }
    Ok(out)
}

fn sign_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let s = Suite::Signs;
    let (p1, p2, p3) = (cfg.presentation.clone(), cfg.presentation.clone(), cfg.presentation.clone());
    let (n, samples, seed) = (cfg.n.max(2), cfg.sign_samples, cfg.seed);
    let tally = |t: signs::SignTally| Outcome::verdict(t.passed(), t.instances, t.first_failure.unwrap_or_else(|| format!("{} of {} hold", t.instances, t.instances)));
    vec![
        check(
            s,
            "bracket-under-permutation",
            "the odd-inversion counts of a word and of its permutation differ by the odd pairs the permutation reorders",
            format!("{} n={n}", p1.name()),
            format!("sampled: {samples} admissible words of length 1..6, seed {seed}"),
            Box::new(move || Ok(tally(signs::bracket_under_permutation(&p1, n, samples, seed)))),
        ),
        check(
            s,
            "composable-brackets-under-transposition",
            "for composable triples the combined sign is invariant under a simple transposition at a position where parities agree",
            format!("{} n={n}", p2.name()),
            format!("sampled: {samples} admissible pairs of length 2..6, seed {seed}"),
            Box::new(move || Ok(tally(signs::composable_brackets_under_transposition(&p2, n, samples, seed)))),
        ),
        check(
            s,
            "stabilizer-order-equals-weight",
            "the stabilizer of a triple in the symmetric group has order equal to its factorial weight",
            format!("{} n<=2 d<=4", p3.name()),
            exhaustive("all canonical triples with n <= 2, d <= 4"),
            Box::new(move || Ok(tally(signs::stabilizer_orders(&p3, 2, 4)))),
        ),
    ]
}

fn identity_outcome(t: IdentityTally) -> Outcome {
    if t.instances == 0 {
        return Outcome::skipped("no instances at these sizes");
    }
    let detail = match &t.first_failure {
        Some(f) => f.clone(),
        None => format!("{} instances, all exact", t.instances),
    };
    Outcome::verdict(t.passed(), t.instances, detail)
}

fn zigzag_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let s = Suite::ZigzagIdentities;
    let Some(z) = ZigzagLetters::detect(&cfg.presentation) else {
        return vec![check(
            s,
            "zigzag-letters",
            "the algebra is an extended zigzag algebra",
            cfg.presentation.name().into(),
            "n/a",
            Box::new(|| Ok(Outcome::skipped("not an extended zigzag algebra"))),
        )];
    };
    let z = Arc::new(z);
    let d = cfg.d;
    let inst = cfg.instance();
    let simple = |name: &'static str, property: &'static str, f: fn(&SchurAlgebra, &ZigzagLetters, usize) -> IdentityTally| {
        let (alg, z) = (cfg.algebra(), z.clone());
        check(s, name, property, inst.clone(), exhaustive("all admissible index words"), Box::new(move || Ok(identity_outcome(f(&alg, &z, d)))))
    };
    let mut out = vec![
        simple(
            "arrow-pairs-distinct-words",
            "a power of the up arrow times a power of the down arrow through a constant middle word is the signed sum over all reorderings of the cycle power, times the sign of reordering the odd letters",
            zigzag::arrow_pairs_distinct_words,
        ),
        simple(
            "vertex-arrow-distinct-words",
            "a power of the top vertex times a power of the down arrow through a constant middle word is the sum over distinct rearrangements of the row word",
            zigzag::vertex_arrow_distinct_words,
        ),
        simple(
            "arrow-pairs-leading-word",
            "through a leading middle word, the up-down arrow product is the signed sum over the Young subgroup of cycle powers, times the sign of reordering the odd letters",
            zigzag::arrow_pairs_leading_word,
        ),
        simple(
            "vertex-arrow-leading-word",
            "through a leading middle word, the vertex-arrow product is the sum over distinct rearrangements of the row word by the Young subgroup",
            zigzag::vertex_arrow_leading_word,
        ),
    ];
    type StarFn = fn(&SchurAlgebra, &ZigzagLetters, usize) -> Result<StarTally>;
    let star = |names: [&'static str; 2], props: [&'static str; 2], f: StarFn| -> Vec<Check> {
        let cell: Arc<OnceLock<std::result::Result<StarTally, String>>> = Arc::new(OnceLock::new());
        let (alg, z) = (cfg.algebra(), z.clone());
        let get = move || cell.get_or_init(|| f(&alg, &z, d).map_err(|e| e.to_string())).clone().map_err(Error::AxiomFailure);
        let get2 = get.clone();
        vec![
            check(
                s,
                names[0],
                props[0],
                inst.clone(),
                exhaustive("all admissible index data"),
                Box::new(move || {
                    let t = get()?;
                    let instances = t.identity.instances;
                    let mut o = identity_outcome(t.identity);
                    if o.status == Status::Pass {
                        o.detail = format!("{instances} instances; left side is a signed sum of the listed terms");
                    }
                    Ok(o)
                }),
            ),
            check(
                s,
                names[1],
                props[1],
                inst.clone(),
                exhaustive("all admissible index data meeting the hypotheses"),
                Box::new(move || {
                    let t = get2()?;
                    if t.independence_required == 0 {
                        return Ok(Outcome::skipped(format!(
                            "no instance meets the hypotheses; {} dependent lists outside them{}",
                            t.dependent_elsewhere,
                            t.first_dependent_elsewhere.as_ref().map(|x| format!("; first: {x}")).unwrap_or_default()
                        )));
                    }
                    Ok(Outcome::verdict(
                        t.independence_failures == 0,
                        t.independence_required,
                        format!(
                            "{} of {} term lists have full rank; {} dependent lists outside the hypotheses{}{}",
                            t.independence_required - t.independence_failures,
                            t.independence_required,
                            t.dependent_elsewhere,
                            t.first_dependent.as_ref().map(|x| format!("; first dependent: {x}")).unwrap_or_default(),
                            t.first_dependent_elsewhere.as_ref().map(|x| format!("; first dependent outside: {x}")).unwrap_or_default()
                        ),
                    ))
                }),
            ),
        ]
    };
    out.extend(star(
        ["arrow-vertex-star-times-arrows", "arrow-vertex-star-terms-independent"],
        [
            "a star product of an up-arrow power and a top-vertex power times a down-arrow power is a signed sum over splittings and reorderings",
            "the terms of that signed sum are linearly independent when the column word is repetition-free",
        ],
        zigzag::arrow_vertex_star_times_arrows,
    ));
    out.extend(star(
        ["separated-basis-times-arrows", "separated-basis-terms-independent"],
        [
            "a star-separated basis element times a down-arrow power starred with the truncation idempotent is a signed sum of star-separated terms",
            "those terms are linearly independent when the column word is repetition-free and avoids the other column blocks",
        ],
        zigzag::separated_basis_times_arrows,
    ));
    out
}

fn gram_outcome(alg: &SchurAlgebra, d: usize) -> Result<Outcome> {
    let g = gram_t_t(alg, d)?;
    let size = g.gram.labels.len();
    let ok = g.unimodular && g.symmetric && g.dual_pattern.is_ok();
    let detail = match &g.dual_pattern {
        Err(e) => format!("dual pattern fails: {e}"),
        Ok(()) => format!(
            "{size}x{size} signed permutation matrix, |det| = {}, symmetric = {}",
            if g.unimodular { "1".to_string() } else { format!("divisors {:?}", g.smith.nontrivial_divisors()) },
            g.symmetric
        ),
    };
    Ok(Outcome::verdict(ok, size * size, detail))
}

fn form_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let s = Suite::Forms;
    let p = cfg.presentation.clone();
    let d = cfg.d;
    let mut out = Vec::new();
    if p.form().is_some() {
        let (p1, alg, alg2) = (p.clone(), cfg.algebra(), cfg.algebra());
        out.push(check(
            s,
            "form-is-symmetrizing",
            "the attached form is central, vanishes on sector a squared, pairs sector a perfectly with sector c and is symmetrizing",
            p.name().into(),
            exhaustive("all basis pairs"),
            Box::new(move || {
                let t = CentralForm::from_presentation(&p1)?;
                let r = check_aa_symmetrizing(&p1, &t)?;
                Ok(Outcome::verdict(r.symmetrizing, p1.dim().pow(2), r.witness.unwrap_or_else(|| "symmetrizing; dual basis is a signed permutation".into())))
            }),
        ));
        out.push(check(
            s,
            "gram-signed-permutation",
            "the Gram matrix of the induced form on the rescaled basis is a symmetric signed permutation matrix matching the dual reindexing",
            cfg.instance(),
            exhaustive("all basis pairs"),
            Box::new(move || gram_outcome(&alg, d)),
        ));
        out.push(check(
            s,
            "form-scalings",
            "on every rescaled basis element the orbit-basis form is d! times the rescaled form and agrees with the tensor form",
            cfg.instance(),
            exhaustive("all rescaled basis elements"),
            Box::new(move || {
                let t = CentralForm::from_presentation(alg2.presentation())?;
                let f = RationalScalar::from_integer(factorial(d));
                let basis = alg2.basis(d);
                for tr in &basis {
                    let x = alg2.basis_element(tr, Basis::Eta);
                    let ts = t_s(&t, &x);
                    let tt = RationalScalar::from_integer(t_t(&t, &x)?);
                    let tm = RationalScalar::from_integer(t_m(&t, &to_tensor(&x)));
                    if ts != &f * &tt || ts != tm {
                        return Ok(Outcome::verdict(false, basis.len(), format!("fails at {}", x.to_text())));
                    }
                }
                Ok(Outcome::verdict(true, basis.len(), "all scalings hold"))
            }),
        ));
    } else {
        let p1 = p.clone();
        out.push(check(
            s,
            "symmetrizing-obstruction",
            "without an attached form, sector sizes rule out any form pairing sector a perfectly with sector c",
            p.name().into(),
            exhaustive("sector ranks"),
            Box::new(move || {
                Ok(match symmetrizing_obstruction(&p1) {
                    Some(w) => Outcome::verdict(true, 1, w),
                    None => Outcome::skipped("no form attached and no rank obstruction"),
                })
            }),
        ));
    }
    if p.form().is_none() {
        if let Some(z) = ZigzagLetters::detect(&p) {
            let n = cfg.n;
            out.push(check(
                s,
                "truncation-gram-signed-permutation",
                "on the truncation carrying the standard form, the Gram matrix on the rescaled basis is a symmetric signed permutation matrix",
                format!("zigzag:{} n={n} d={d}", z.ell),
                exhaustive("all basis pairs"),
                Box::new(move || gram_outcome(&SchurAlgebra::new(make_zigzag(z.ell)?, n), d)),
            ));
        }
    }
    out
}

fn dcp_outcome(r: &DcpReport) -> String {
    format!(
        "rank {} of {}, End rank {}, divisors {:?}, over fractions {}, sound {}, dcp {}",
        r.rank_q, r.dim_s, r.dim_end_q, r.divisors, r.dcp_over_fractions, r.sound, r.dcp
    )
}

/// Counterexample fixture: the purely even 2x2 matrices with the diagonal
/// as sector a, truncated by `E11`, in degree 2 with two rows.
pub fn counterexample_fixture() -> Result<(SchurAlgebra, Vec<AlgebraElement>)> {
    let p = make_matrix_diagonal_pair(2)?;
    let e11 = p.basis_element(p.require_index("E11")?);
    Ok((SchurAlgebra::new(p, 2), vec![e11]))
}

/// Coefficients of `η[E11,E11; 11, ss']` in `η[E12,E12; 11, 11] · η[E21,E21; 11, ss']`
/// for `s = s'` and `s ≠ s'`.
pub fn counterexample_coefficients() -> Result<(Scalar, Scalar)> {
    let (alg, _) = counterexample_fixture()?;
    let x = alg.parse_triple("E12,E12|1,1|1,1", Basis::Eta)?;
    let coeff = |cols: &str| -> Result<Scalar> {
        let y = alg.parse_triple(&format!("E21,E21|1,1|{cols}"), Basis::Eta)?;
        let target = alg.parse_triple(&format!("E11,E11|1,1|{cols}"), Basis::Eta)?;
        let prod = multiply_oracle(&x, &y)?.to_eta()?;
        let (t, _) = target.terms().next().ok_or_else(|| Error::InvalidTriple("empty target".into()))?;
        Ok(prod.coeff(t))
    };
    Ok((coeff("1,1")?, coeff("1,2")?))
}

fn dcp_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let s = Suite::Dcp;
    let p = cfg.presentation.clone();
    let d = cfg.d;
    if let Some(z) = ZigzagLetters::detect(&p) {
        let lower: Vec<AlgebraElement> = z.lower.iter().map(|&i| p.basis_element(i)).collect();
        let (p1, l0, l1, l2) = (p.clone(), lower.clone(), lower.clone(), lower);
        let (alg, alg2) = (cfg.algebra(), cfg.algebra());
        return vec![
            check(
                s,
                "algebra-truncation",
                "left multiplication identifies the algebra with the endomorphisms of its truncated projective",
                p.name().into(),
                exhaustive("full endomorphism lattice"),
                Box::new(move || {
                    let e = l0.iter().fold(AlgebraElement::zero(), |a, x| a.add(x));
                    let fam: Vec<_> = l0.iter().map(algebra_vector).collect();
                    let r = dcp_verdict(&p1, &algebra_vector(&e), &fam, "basis")?;
                    Ok(Outcome::verdict(r.dcp, r.dim_s, dcp_outcome(&r)))
                }),
            ),
            check(
                s,
                "integral-schur-truncation",
                "the diagonal power of the truncation idempotent is a double centralizer idempotent of the rescaled lattice",
                cfg.instance(),
                exhaustive("full endomorphism lattice"),
                Box::new(move || {
                    let r = schur_dcp_verdict(&alg, d, Basis::Eta, &l1)?;
                    if d > alg.n() {
                        return Ok(Outcome::skipped(format!("needs d <= n; computed {}", dcp_outcome(&r))));
                    }
                    Ok(Outcome::verdict(r.dcp && r.sound && r.dcp_over_fractions, r.dim_s, dcp_outcome(&r)))
                }),
            ),
            check(
                s,
                "rational-schur-truncation",
                "the same idempotent is a double centralizer idempotent of the full Schur algebra over the rationals",
                cfg.instance(),
                exhaustive("full endomorphism lattice"),
                Box::new(move || {
                    let r = schur_dcp_verdict(&alg2, d, Basis::Xi, &l2)?;
                    if d > alg2.n() {
                        return Ok(Outcome::skipped(format!("needs d <= n; computed {}", dcp_outcome(&r))));
                    }
                    Ok(Outcome::verdict(r.dcp_over_fractions, r.dim_s, dcp_outcome(&r)))
                }),
            ),
        ];
    }
    let name = p.name();
    if name == "matrix:1,1" || name == "mdiag:2" {
        let inst = "mdiag:2 e=E11 n=2 d=2".to_string();
        return vec![
            check(
                s,
                "counterexample-coefficients",
                "in the even 2x2 matrices, a product of squared off-diagonal units has coefficient 4 on a repeated column word and 2 otherwise",
                inst.clone(),
                exhaustive("both column patterns"),
                Box::new(|| {
                    let (same, diff) = counterexample_coefficients()?;
                    let ok = same == Scalar::from(4) && diff == Scalar::from(2);
                    Ok(Outcome::verdict(ok, 2, format!("coefficients {same} and {diff}")))
                }),
            ),
            check(
                s,
                "counterexample-not-sound",
                "truncating by a diagonal unit is a double centralizer over the rationals but not sound over the integers",
                inst,
                exhaustive("full endomorphism lattice"),
                Box::new(|| {
                    let (alg, idems) = counterexample_fixture()?;
                    let r = schur_dcp_verdict(&alg, 2, Basis::Eta, &idems)?;
                    let expected = r.dcp_over_fractions && !r.sound && !r.dcp && !r.divisors.is_empty() && r.divisors.iter().all(|x| x == "2");
                    Ok(Outcome {
                        status: if expected { Status::ExpectedPass } else { Status::Fail },
                        cases: r.dim_s,
                        detail: format!("sound=false expected; {}", dcp_outcome(&r)),
                    })
                }),
            ),
        ];
    }
    vec![check(
        s,
        "dcp-fixture",
        "a double centralizer fixture exists for this algebra",
        p.name().into(),
        "n/a",
        Box::new(|| Ok(Outcome::skipped("no truncation idempotent is known for this algebra"))),
    )]
}

fn generation_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let alg = cfg.algebra();
    let d = cfg.d;
    vec![check(
        Suite::Generation,
        "closure-reaches-full-lattice",
        "the span of sector-a elements and unit-starred degree-one elements, closed under right multiplication, is the whole rescaled lattice",
        cfg.instance(),
        exhaustive("closure to a fixed point"),
        Box::new(move || {
            let r = generation_closure(&alg, d)?;
            Ok(Outcome::verdict(
                r.full,
                r.generators,
                format!("rank {} of {}, {} generators, {} rounds, divisors {:?}", r.rank, r.dimension, r.generators, r.rounds, r.elementary_divisors),
            ))
        }),
    )]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::{make_extended_zigzag, make_matrix_superalgebra};

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let cfg = VerifyConfig::new(make_extended_zigzag(1).unwrap(), 1, 2);
        let a = run(&cfg, Suite::All);
        assert!(a.passed, "{}", a.to_text());
        let b = run(&cfg, Suite::All);
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn counterexample_is_expected() {
        let cfg = VerifyConfig::new(make_matrix_superalgebra(1, 1).unwrap(), 1, 2);
        let r = run(&cfg, Suite::Dcp);
        assert!(r.passed);
        assert!(r.checks.iter().any(|c| c.status == Status::ExpectedPass));
    }

    #[test]
    fn rescaling_witness_found_in_degree_two() {
        let alg = SchurAlgebra::new(make_extended_zigzag(1).unwrap(), 2);
        assert!(rescaling_witness(&alg, 2).is_some());
        assert!(rescaling_witness(&alg, 1).is_none());
    }
}
