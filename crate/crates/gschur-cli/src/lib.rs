//! Argument handling and command implementations for the `gschur` binary.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gschur::dcp::{algebra_vector, dcp_verdict, schur_dcp_verdict, DcpReport};
use gschur::exactlin::determinant;
use gschur::forms::gram_t_t;
use gschur::schur::{multiply_oracle, Basis, SchurAlgebra, StructureTable};
use gschur::superalgebra::{
    direct_sum, make_extended_zigzag, make_ground_ring, make_matrix_diagonal_pair, make_matrix_superalgebra, make_trivial_extension,
    make_zigzag, AlgebraElement, SuperalgebraPresentation,
};
use gschur::verify::zigzag::ZigzagLetters;
use gschur::verify::{run, Suite, VerifyConfig};
use gschur::Error;

/// Largest accepted builtin parameter (zigzag length, matrix size).
pub const MAX_BUILTIN: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "gschur", version, about = "Exact computations in generalized Schur superalgebras")]
pub struct Cli {
    /// Builtin algebra name or path to a JSON spec file.
    #[arg(long, global = true, default_value = "ext-zigzag:1")]
    pub algebra: String,
    /// Matrix size n.
    #[arg(short = 'n', global = true, default_value_t = 1)]
    pub n: usize,
    /// Degree d.
    #[arg(short = 'd', global = true, default_value_t = 1)]
    pub d: usize,
    /// Also compute products in the tensor model and compare.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format (default: json for verify and dcp, text otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Eta,
    Xi,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Eta => Basis::Eta,
            BasisArg::Xi => Basis::Xi,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeArg {
    /// The rescaled lattice T(n,d).
    Eta,
    /// The full Schur algebra S(n,d).
    Xi,
    /// The algebra itself.
    Algebra,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiply two elements given in triple text form.
    Mult {
        x: String,
        y: String,
        #[arg(long, value_enum, default_value = "eta")]
        basis: BasisArg,
    },
    /// Run a verification suite.
    Verify {
        /// presentation, product-oracle, integrality, bialgebra, signs,
        /// zigzag-identities, forms, dcp, generation or all.
        suite: String,
        /// Record wall times in the report.
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = 200)]
        sign_samples: usize,
        #[arg(long, default_value_t = 50)]
        quadruples: usize,
    },
    /// Gram matrix of the induced form on the rescaled basis.
    Gram,
    /// Double centralizer verdict for an idempotent truncation.
    Dcp {
        /// Comma-separated labels of orthogonal idempotents summing to e.
        #[arg(long)]
        idempotents: Option<String>,
        #[arg(long, value_enum, default_value = "eta")]
        lattice: LatticeArg,
    },
    /// Dump the full structure-constant table.
    Dump {
        #[arg(long, value_enum, default_value = "eta")]
        basis: BasisArg,
    },
    /// Reload a dumped table and compare every product with a direct computation.
    Reload { file: PathBuf },
    /// Print the algebra as a JSON spec file.
    Spec,
}

/// What a command produced.
#[derive(Debug, Default)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput { code: 0, stdout, stderr: String::new() }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        CliOutput { code, stdout, stderr: String::new() }
    }

    fn error(code: i32, msg: String) -> Self {
        CliOutput { code, stdout: String::new(), stderr: msg }
    }
}

/// Exit code for a library error: 2 for input problems, 1 otherwise.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidTriple(_) | Error::InvalidPresentation(_) | Error::AmbientMismatch(_) | Error::Unsupported(_) | Error::Json(_) => 2,
        Error::AxiomFailure(_) | Error::NotIntegral(_) => 1,
    }
}

fn param(s: &str, what: &str) -> gschur::Result<usize> {
    let v: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad {what} {s:?}")))?;
    if v > MAX_BUILTIN {
        return Err(Error::Parse(format!("{what} {v} exceeds {MAX_BUILTIN}")));
    }
    Ok(v)
}

/// Resolves a builtin name (`ext-zigzag:L`, `zigzag:L`, `matrix:P,Q`,
/// `mdiag:M`, `trivext:<inner>`, `sum:<a>+<b>`, `ground`) or a spec file.
pub fn resolve_algebra(src: &str) -> gschur::Result<SuperalgebraPresentation> {
    let src = src.trim();
    if src == "ground" {
        return Ok(make_ground_ring());
    }
    if let Some(rest) = src.strip_prefix("ext-zigzag:") {
        return make_extended_zigzag(param(rest, "zigzag length")?);
    }
    if let Some(rest) = src.strip_prefix("zigzag:") {
        return make_zigzag(param(rest, "zigzag length")?);
    }
    if let Some(rest) = src.strip_prefix("matrix:") {
        let (p, q) = rest.split_once(',').ok_or_else(|| Error::Parse(format!("expected matrix:P,Q, found {src:?}")))?;
        return make_matrix_superalgebra(param(p, "matrix size")?, param(q, "matrix size")?);
    }
    if let Some(rest) = src.strip_prefix("mdiag:") {
        return make_matrix_diagonal_pair(param(rest, "matrix size")?);
    }
    if let Some(rest) = src.strip_prefix("trivext:") {
        return make_trivial_extension(&resolve_algebra(rest)?);
    }
    if let Some(rest) = src.strip_prefix("sum:") {
        let (a, b) = rest.split_once('+').ok_or_else(|| Error::Parse(format!("expected sum:A+B, found {src:?}")))?;
        return direct_sum(&resolve_algebra(a)?, &resolve_algebra(b)?);
    }
    let text = fs::read_to_string(src).map_err(|e| Error::Parse(format!("{src:?} is neither a builtin algebra nor a readable spec file: {e}")))?;
    SuperalgebraPresentation::from_json(&text)
}

/// Parses arguments and runs the command.
pub fn run_cli<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { CliOutput::ok(text) } else { CliOutput::error(2, text) };
        }
    };
    if let Some(j) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => CliOutput::error(error_code(&e), format!("error: {e}\n")),
    };
    match (&cli.out, out.code) {
        (Some(path), _) if !out.stdout.is_empty() => match fs::write(path, &out.stdout) {
            Ok(()) => CliOutput { stdout: String::new(), stderr: format!("{}wrote {}\n", out.stderr, path.display()), ..out },
            Err(e) => CliOutput::error(2, format!("error: cannot write {}: {e}\n", path.display())),
        },
        _ => out,
    }
}

fn json<T: Serialize>(x: &T) -> gschur::Result<String> {
    Ok(serde_json::to_string_pretty(x)? + "\n")
}

fn execute(cli: &Cli) -> gschur::Result<CliOutput> {
    if cli.n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    let p = resolve_algebra(&cli.algebra)?;
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Mult { x, y, basis } => mult(cli, p, x, y, (*basis).into(), fmt(Format::Text)),
        Command::Verify { suite, timings, sign_samples, quadruples } => {
            let suite: Suite = suite.parse()?;
            let cfg = VerifyConfig { seed: cli.seed, sign_samples: *sign_samples, quadruples: *quadruples, timings: *timings, ..VerifyConfig::new(p, cli.n, cli.d) };
            let report = run(&cfg, suite);
            let text = match fmt(Format::Json) {
                Format::Json => report.to_json()? + "\n",
                Format::Text => report.to_text(),
            };
            Ok(CliOutput::with_code(if report.passed { 0 } else { 1 }, text))
        }
        Command::Gram => gram(cli, p, fmt(Format::Text)),
        Command::Dcp { idempotents, lattice } => dcp(cli, p, idempotents.as_deref(), *lattice, fmt(Format::Json)),
        Command::Dump { basis } => {
            let alg = SchurAlgebra::new(p, cli.n);
            Ok(CliOutput::ok(StructureTable::compute(&alg, cli.d, (*basis).into())?.to_text()))
        }
        Command::Reload { file } => {
            let text = fs::read_to_string(file).map_err(|e| Error::Parse(format!("cannot read {}: {e}", file.display())))?;
            let table = StructureTable::from_text(&text)?;
            let alg = SchurAlgebra::new(p, table.n);
            let bad = table.mismatches(&alg)?;
            let msg = format!(
                "reloaded {} entries over {} basis elements ({} basis, n={}, d={}); mismatching products: {bad}\n",
                table.entries.len(),
                table.basis.len(),
                table.tag.name(),
                table.n,
                table.d
            );
            Ok(CliOutput::with_code(if bad == 0 { 0 } else { 1 }, msg))
        }
        Command::Spec => Ok(CliOutput::ok(p.to_json()? + "\n")),
    }
}

#[derive(Serialize)]
struct MultOutput {
    product: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

fn mult(cli: &Cli, p: SuperalgebraPresentation, x: &str, y: &str, tag: Basis, fmt: Format) -> gschur::Result<CliOutput> {
    let alg = SchurAlgebra::new(p, cli.n);
    let ex = alg.parse_element(x, tag)?;
    let ey = alg.parse_element(y, tag)?;
    let prod = ex.mul(&ey)?;
    let oracle = if cli.oracle { Some(multiply_oracle(&ex, &ey)?) } else { None };
    let agree = oracle.as_ref().map(|o| *o == prod);
    let out = MultOutput { product: prod.to_text(), oracle: oracle.map(|o| o.to_text()), agree };
    let text = match fmt {
        Format::Json => json(&out)?,
        Format::Text => {
            let mut s = format!("{}\n", out.product);
            if let (Some(o), Some(a)) = (&out.oracle, out.agree) {
                s.push_str(&format!("oracle: {o}\nagree: {a}\n"));
            }
            s
        }
    };
    Ok(CliOutput::with_code(if agree == Some(false) { 1 } else { 0 }, text))
}

#[derive(Serialize)]
struct GramOutput {
    size: usize,
    labels: Vec<String>,
    matrix: Vec<Vec<String>>,
    determinant: String,
    unimodular: bool,
    symmetric: bool,
    dual_pattern: Option<String>,
}

fn gram(cli: &Cli, p: SuperalgebraPresentation, fmt: Format) -> gschur::Result<CliOutput> {
    let alg = SchurAlgebra::new(p, cli.n);
    let g = gram_t_t(&alg, cli.d)?;
    let det = determinant(&g.gram.matrix);
    let pr = alg.presentation();
    let out = GramOutput {
        size: g.gram.labels.len(),
        labels: g.gram.labels.iter().map(|t| t.to_text(pr)).collect(),
        matrix: g.gram.matrix.to_dense().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        determinant: det.to_string(),
        unimodular: g.unimodular,
        symmetric: g.symmetric,
        dual_pattern: g.dual_pattern.err(),
    };
    let text = match fmt {
        Format::Json => json(&out)?,
        Format::Text => {
            let mut s = String::new();
            for (i, l) in out.labels.iter().enumerate() {
                s.push_str(&format!("{i} {l}\n"));
            }
            s.push_str(&g.gram.to_text());
            s.push_str(&format!("det = {}\n", out.determinant));
            s
        }
    };
    let ok = out.unimodular && out.symmetric && out.dual_pattern.is_none();
    Ok(CliOutput::with_code(if ok { 0 } else { 1 }, text))
}

fn default_idempotents(p: &SuperalgebraPresentation) -> gschur::Result<Vec<usize>> {
    if let Some(z) = ZigzagLetters::detect(p) {
        return Ok(z.lower);
    }
    if let Some(i) = p.index_of("E11") {
        return Ok(vec![i]);
    }
    Err(Error::Parse(format!("no default idempotent for {}; pass --idempotents", p.name())))
}

fn dcp(cli: &Cli, p: SuperalgebraPresentation, labels: Option<&str>, lattice: LatticeArg, fmt: Format) -> gschur::Result<CliOutput> {
    let idx: Vec<usize> = match labels {
        Some(l) => l.split(',').map(|x| p.require_index(x.trim())).collect::<gschur::Result<_>>()?,
        None => default_idempotents(&p)?,
    };
    let idems: Vec<AlgebraElement> = idx.iter().map(|&i| p.basis_element(i)).collect();
    let report: DcpReport = match lattice {
        LatticeArg::Algebra => {
            let e = idems.iter().fold(AlgebraElement::zero(), |a, x| a.add(x));
            let family: Vec<_> = idems.iter().map(algebra_vector).collect();
            dcp_verdict(&p, &algebra_vector(&e), &family, "basis")?
        }
        LatticeArg::Eta | LatticeArg::Xi => {
            let tag = if lattice == LatticeArg::Eta { Basis::Eta } else { Basis::Xi };
            schur_dcp_verdict(&SchurAlgebra::new(p, cli.n), cli.d, tag, &idems)?
        }
    };
    let text = match fmt {
        Format::Json => report.to_json()? + "\n",
        Format::Text => format!(
            "algebra {}\nlattice {}\ndim S {}\ndim Se {}\ndim eSe {}\nrank over Q {}\nrank of End {}\ndivisors {:?}\ndcp over fractions {}\nsound {}\ndcp {}\n",
            report.algebra,
            report.lattice,
            report.dim_s,
            report.dim_se,
            report.dim_ese,
            report.rank_q,
            report.dim_end_q,
            report.divisors,
            report.dcp_over_fractions,
            report.sound,
            report.dcp
        ),
    };
    Ok(CliOutput::ok(text))
}
