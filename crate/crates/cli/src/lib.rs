//! Command-line front end for `ch-eigen`: JSON ingestion, reports, oracle
//! cross-checks, corpus generation and benchmarking.

pub mod bench;
pub mod document;

use std::any::Any;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use ch_eigen::oracle::{eigensolve_reference, generate_matrix, spans_equal};
use ch_eigen::{
    analyze, char_poly, eigenvalues_exact, verify_structure, DynMatrix, EigenError, EigenStructure,
    ExactMatrix, ExactVector, Field, SmallMatrix, SpectralClass, TolerancePolicy,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::bench::{run_bench, BenchConfig};
use crate::document::{parse_jordan_spec, parse_matrix, MatrixDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ch-eigen",
    version,
    about = "Eigenstructure of 2x2 and 3x3 matrices by column extraction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues, eigenvectors and Jordan chains with the extraction trace.
    Analyze(AnalyzeArgs),
    /// Characteristic polynomial.
    Charpoly(InputArgs),
    /// Cross-check the extraction against the elimination oracle.
    Verify(AnalyzeArgs),
    /// Generate matrices similar to a given Jordan form.
    Gen(GenArgs),
    /// Time column extraction against the oracle.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Matrix document path, or `-` for stdin.
    #[arg(long, value_name = "PATH|-")]
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Arithmetic mode; inferred from the input when omitted.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Float-mode zero threshold.
    #[arg(long, env = "CH_EIGEN_TOLERANCE", default_value_t = 1e-9)]
    tolerance: f64,
    /// Float root clustering radius.
    #[arg(long, default_value_t = 1e-6)]
    cluster_eps: f64,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// JordanSpec document, inline JSON or `@PATH`.
    #[arg(long)]
    spec: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Matrices per class.
    #[arg(long, default_value_t = 10_000)]
    count: usize,
    /// Comma-separated class labels, e.g. `distinct2,triple-2`; all by default.
    #[arg(long)]
    classes: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }
}

impl From<EigenError> for Failure {
    fn from(e: EigenError) -> Self {
        let code = match e {
            EigenError::ModeMismatch
            | EigenError::DimensionMismatch { .. }
            | EigenError::UnsupportedDimension(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Self {
            code,
            message: format!("{}: {e}", error_kind(&e)),
        }
    }
}

fn error_kind(e: &EigenError) -> &'static str {
    match e {
        EigenError::ModeMismatch => "ModeMismatch",
        EigenError::DimensionMismatch { .. } => "DimensionMismatch",
        EigenError::UnsupportedDimension(_) => "UnsupportedDimension",
        EigenError::ZeroVector => "ZeroVector",
        EigenError::IrrationalSpectrum => "IrrationalSpectrum",
        EigenError::ComplexSpectrum => "ComplexSpectrum",
        EigenError::InconsistentSpectrum { .. } => "InconsistentSpectrum",
        EigenError::ClassMismatch { .. } => "ClassMismatch",
        EigenError::NotNilpotent(_) => "NotNilpotent",
        EigenError::ZeroMatrix => "ZeroMatrix",
        EigenError::NoNonzeroColumn(_) => "NoNonzeroColumn",
    }
}

impl From<document::DocumentError> for Failure {
    fn from(e: document::DocumentError) -> Self {
        let kind = match e {
            document::DocumentError::Parse { .. } => "ParseError",
            document::DocumentError::Validation { .. } => "ValidationError",
        };
        Self::usage(format!("{kind}: {e}"))
    }
}

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(&args, false),
        Command::Verify(args) => cmd_analyze(&args, true),
        Command::Charpoly(args) => cmd_charpoly(&args),
        Command::Gen(args) => cmd_gen(&args),
        Command::Bench(args) => cmd_bench(&args),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn read_input(args: &InputArgs) -> Result<MatrixDocument, Failure> {
    let mut bytes = Vec::new();
    if args.input == "-" {
        std::io::stdin()
            .read_to_end(&mut bytes)
            .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
    } else {
        let path = PathBuf::from(&args.input);
        bytes = std::fs::read(&path)
            .map_err(|e| Failure::usage(format!("reading {}: {e}", path.display())))?;
    }
    let mut doc = parse_matrix(&bytes)?;
    match (args.mode, &doc.matrix) {
        (Some(ModeArg::Float), DynMatrix::Exact(_)) => {
            doc.matrix = DynMatrix::Float(doc.matrix.to_float());
        }
        (Some(ModeArg::Exact), DynMatrix::Float(_)) => {
            doc.matrix = DynMatrix::Exact(doc.matrix.to_exact()?);
        }
        _ => {}
    }
    Ok(doc)
}

fn render(format: Format, value: Value, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

fn text_report<T: Field>(
    doc: &MatrixDocument,
    es: &EigenStructure<T>,
    report: &ch_eigen::VerificationReport,
) -> String {
    let mut s = String::new();
    if let Some(name) = &doc.name {
        s.push_str(&format!("# {name}\n"));
    }
    for line in es.trace.entries() {
        s.push_str(line);
        s.push('\n');
    }
    for r in &es.eigenspaces {
        s.push_str(&format!(
            "λ = {} (algebraic {}, geometric {})\n",
            r.eigenvalue, r.algebraic, r.geometric
        ));
        for v in &r.basis {
            s.push_str(&format!("  eigenvector {v}\n"));
        }
        for c in &r.chains {
            let links: Vec<String> = c.vectors.iter().map(ToString::to_string).collect();
            s.push_str(&format!("  chain {}\n", links.join(" <- ")));
        }
    }
    s.push_str(&format!(
        "verification: {}\n",
        if report.passed() { "passed" } else { "FAILED" }
    ));
    for c in report.failures() {
        s.push_str(&format!(
            "  failed: {} (residual {:e})\n",
            c.name, c.residual
        ));
    }
    s
}

fn policy(args: &AnalyzeArgs) -> Result<TolerancePolicy, Failure> {
    if !(args.tolerance.is_finite() && args.tolerance >= 0.0) {
        return Err(Failure::usage("--tolerance must be a non-negative number"));
    }
    if !(args.cluster_eps.is_finite() && args.cluster_eps >= 0.0) {
        return Err(Failure::usage(
            "--cluster-eps must be a non-negative number",
        ));
    }
    Ok(TolerancePolicy::new(args.tolerance, true).with_cluster_eps(args.cluster_eps))
}

fn cmd_analyze(args: &AnalyzeArgs, cross_check: bool) -> Result<String, Failure> {
    let doc = read_input(&args.input)?;
    let tol = policy(args)?;
    match &doc.matrix {
        DynMatrix::Exact(a) => analyze_typed(&doc, a, &tol, args.input.format, cross_check),
        DynMatrix::Float(a) => analyze_typed(&doc, a, &tol, args.input.format, cross_check),
    }
}

fn analyze_typed<T: Field>(
    doc: &MatrixDocument,
    a: &SmallMatrix<T>,
    tol: &TolerancePolicy,
    format: Format,
    cross_check: bool,
) -> Result<String, Failure> {
    let es = analyze(a, tol)?;
    let report = verify_structure(a, &es, tol);
    if !cross_check {
        let value = document::result_json(doc, &es, &report, tol);
        return Ok(render(format, value, || text_report(doc, &es, &report)));
    }
    let mut checks: Vec<(String, bool)> = report
        .checks
        .iter()
        .map(|c| (c.name.clone(), c.passed))
        .collect();
    checks.extend(oracle_checks(doc, &es, tol)?);
    let passed = checks.iter().all(|c| c.1);
    let value = json!({
        "class": es.class.to_string(),
        "passed": passed,
        "checks": checks.iter().map(|(n, p)| json!({"name": n, "passed": p})).collect::<Vec<_>>(),
    });
    let text = render(format, value, || {
        let mut s = String::new();
        for (name, ok) in &checks {
            s.push_str(&format!("{} {name}\n", if *ok { "ok  " } else { "FAIL" }));
        }
        s.push_str(if passed {
            "all checks passed\n"
        } else {
            "some checks failed\n"
        });
        s
    });
    if passed {
        Ok(text)
    } else {
        Err(Failure::domain(format!("verification failed\n{text}")))
    }
}

/// Oracle comparison: exact inputs are compared span by span; float runs are
/// compared against the oracle on the exact form of the input when that
/// matrix has a rational spectrum.
fn oracle_checks<T: Field>(
    doc: &MatrixDocument,
    es: &EigenStructure<T>,
    tol: &TolerancePolicy,
) -> Result<Vec<(String, bool)>, Failure> {
    let exact: ExactMatrix = doc.matrix.to_exact()?;
    let Ok(spectrum) = eigenvalues_exact(&char_poly(&exact)) else {
        return Ok(vec![(
            "oracle skipped: spectrum of exact input is not rational".into(),
            true,
        )]);
    };
    let oracle = eigensolve_reference(&exact, &spectrum)?;
    let mut checks = vec![(
        format!("class agrees with oracle ({})", oracle.class),
        oracle.class == es.class,
    )];
    for o in &oracle.eigenspaces {
        let label = format!("eigenspace for λ = {} matches oracle", o.eigenvalue);
        let found = es.eigenspaces.iter().find(|r| {
            let d = r.eigenvalue.to_f64().unwrap_or(f64::NAN)
                - ToPrimitive::to_f64(&o.eigenvalue).unwrap_or(f64::NAN);
            if T::EXACT {
                d == 0.0
            } else {
                d.abs()
                    <= tol.cluster_eps.max(tol.zero_threshold) * o.eigenvalue.magnitude().max(1.0)
            }
        });
        let ok = match found {
            None => false,
            Some(r) if T::EXACT => {
                let basis: Vec<ExactVector> = r
                    .basis
                    .iter()
                    .filter_map(|v| (v as &dyn Any).downcast_ref::<ExactVector>().cloned())
                    .collect();
                r.algebraic == o.algebraic && spans_equal(&basis, &o.basis)?
            }
            Some(r) => r.algebraic == o.algebraic && r.geometric == o.geometric,
        };
        checks.push((label, ok));
    }
    Ok(checks)
}

fn cmd_charpoly(args: &InputArgs) -> Result<String, Failure> {
    let doc = read_input(args)?;
    match &doc.matrix {
        DynMatrix::Exact(a) => Ok(charpoly_typed(a, args.format)),
        DynMatrix::Float(a) => Ok(charpoly_typed(a, args.format)),
    }
}

fn charpoly_typed<T: Field>(a: &SmallMatrix<T>, format: Format) -> String {
    let p = char_poly(a);
    render(format, document::poly_json(&p), || format!("{p}\n"))
}

fn cmd_gen(args: &GenArgs) -> Result<String, Failure> {
    let text = match args.spec.strip_prefix('@') {
        Some(path) => {
            std::fs::read(path).map_err(|e| Failure::usage(format!("reading {path}: {e}")))?
        }
        None => args.spec.clone().into_bytes(),
    };
    let spec = parse_jordan_spec(&text)?;
    let docs: Vec<MatrixDocument> = (0..args.count as u64)
        .map(|i| {
            let seed = args.seed.wrapping_add(i);
            let m = generate_matrix(&spec, seed);
            MatrixDocument::from_matrix(
                DynMatrix::Exact(m),
                Some(format!("{} seed {seed}", spec.expected_class())),
            )
        })
        .collect();
    let mut out = String::new();
    for doc in docs {
        match args.format {
            Format::Json => out.push_str(&doc.to_canonical_string()),
            Format::Text => {
                let DynMatrix::Exact(m) = &doc.matrix else {
                    unreachable!()
                };
                out.push_str(&format!("{}: {m}", doc.name.as_deref().unwrap_or_default()));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

fn parse_classes(list: &str) -> Result<Vec<SpectralClass>, Failure> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(SpectralClass::ALL.to_vec());
    }
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<SpectralClass>()
                .map_err(|e| Failure::usage(e.to_string()))
        })
        .collect()
}

fn cmd_bench(args: &BenchArgs) -> Result<String, Failure> {
    let classes = match &args.classes {
        Some(list) => parse_classes(list)?,
        None => SpectralClass::ALL.to_vec(),
    };
    if classes.is_empty() {
        return Err(Failure::usage("--classes selects no class"));
    }
    let report = run_bench(&BenchConfig {
        count: args.count,
        classes,
        seed: args.seed,
    });
    let text = render(args.format, report.to_json(), || report.to_text());
    if report.gate_passed() {
        Ok(text)
    } else {
        Err(Failure::domain(format!("correctness gate failed\n{text}")))
    }
}
