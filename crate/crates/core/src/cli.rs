//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 infeasible (or a
//! rejected witness), 3 rejected by the even-vertex screen.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::basis::MonomialBasis;
use crate::error::{Error, Result};
use crate::gram::GramMatrix;
use crate::newton::{even_vertex_screen, polytope_summary, ScreenResult};
use crate::pipeline::{check_witness, initial_basis, reduce, reduce_report, run_bench, simplify_report, BenchParams};
use crate::poly::{parse_polynomial, parse_rational, Polynomial};
use crate::sdp_io::{
    export_report_json, export_sdpa_sparse, input_digest, parse_program_json, to_primal_form, InitKind, Method,
    ReductionReport,
};
use crate::simplify::{build_program_system, simplify_program};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_NOT_SOS: i32 = 3;

/// Environment variable naming the directory for reports when `--report`
/// is not given.
pub const OUT_DIR_ENV: &str = "SOS_PRUNE_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "sos-prune", version, about = "Prune monomial bases of sum-of-squares problems")]
pub struct Cli {
    /// Print progress to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce the monomial basis of one polynomial.
    Reduce(ReduceArgs),
    /// Simplify an SOS program given as JSON.
    Simplify(SimplifyArgs),
    /// Necessary condition: degree and hull vertices must be even.
    Screen(InputArgs),
    /// Newton polytope data (generators, vertices, bases) as JSON.
    Hull(HullArgs),
    /// Check a Gram witness `{"basis": [...], "gram": [[...]]}` for a polynomial.
    Verify(VerifyArgs),
    /// Compare both reducers on a seeded random corpus.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// `.poly` file, or `-` for stdin.
    pub input: PathBuf,
    /// Number of variables; defaults to the largest index used.
    #[arg(long)]
    pub nvars: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Newton,
    Zda,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Newton => Method::Newton,
            MethodArg::Zda => Method::Zda,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    Full,
    Heuristic,
}

impl From<InitArg> for InitKind {
    fn from(m: InitArg) -> Self {
        match m {
            InitArg::Full => InitKind::Full,
            InitArg::Heuristic => InitKind::Heuristic,
        }
    }
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "both")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "heuristic")]
    pub init: InitArg,
    /// Report path; defaults to `$SOS_PRUNE_OUT_DIR/<stem>.report.json`, else stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Also write the reduced problem in SDPA sparse format.
    #[arg(long)]
    pub sdpa: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimplifyArgs {
    /// Program JSON file, or `-` for stdin.
    pub input: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub sdpa: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HullArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "heuristic")]
    pub init: InitArg,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Witness JSON file.
    #[arg(long)]
    pub witness: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 6)]
    pub deg: u32,
    #[arg(long, default_value_t = 10)]
    pub terms: usize,
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; defaults to `$SOS_PRUNE_OUT_DIR/bench.json`, else stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    verbose: u8,
}

impl Ctx<'_> {
    fn note(&mut self, msg: impl AsRef<str>) {
        if self.verbose > 0 {
            let _ = writeln!(self.err, "{}", msg.as_ref());
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx {
        out,
        err,
        verbose: cli.verbose,
    };
    let res = match cli.command {
        Command::Reduce(a) => cmd_reduce(&mut ctx, a),
        Command::Simplify(a) => cmd_simplify(&mut ctx, a),
        Command::Screen(a) => cmd_screen(&mut ctx, a),
        Command::Hull(a) => cmd_hull(&mut ctx, a),
        Command::Verify(a) => cmd_verify(&mut ctx, a),
        Command::Bench(a) => cmd_bench(&mut ctx, a),
    };
    match res {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn read_input(path: &Path) -> std::result::Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn read_polynomial(a: &InputArgs) -> std::result::Result<(String, Polynomial), Failure> {
    let text = read_input(&a.input)?;
    let p = parse_polynomial(&text, a.nvars).map_err(|e| Failure::Usage(format!("{}: {e}", a.input.display())))?;
    Ok((text, p))
}

/// Writes through a temporary file in the target directory, so a failed
/// run never leaves a partial file behind.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn default_path(explicit: Option<PathBuf>, file_name: impl FnOnce() -> String) -> Option<PathBuf> {
    explicit.or_else(|| {
        std::env::var_os(OUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(file_name()))
    })
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .filter(|s| !s.is_empty() && *s != "-")
        .unwrap_or("stdin")
        .to_string()
}

fn emit(ctx: &mut Ctx<'_>, path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => {
            write_atomic(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            ctx.note(format!("wrote {}", p.display()));
        }
        None => ctx.out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn status_code(report: &ReductionReport) -> i32 {
    if report.status.is_infeasible() {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    }
}

fn cmd_reduce(ctx: &mut Ctx<'_>, a: ReduceArgs) -> std::result::Result<i32, Failure> {
    let (text, p) = read_polynomial(&a.input)?;
    let (method, init) = (Method::from(a.method), InitKind::from(a.init));
    let t = Instant::now();
    let out = reduce(&p, method, init)?;
    let wall = t.elapsed().as_micros() as u64;
    let report = reduce_report(input_digest(&text), method, init, &out, wall);
    ctx.note(format!(
        "{} -> {} monomials, {} sweeps",
        report.initial_size, report.final_size, report.sweeps
    ));

    // build everything before touching the filesystem
    let sdpa = match &a.sdpa {
        Some(_) if !report.status.is_infeasible() => Some(export_sdpa_sparse(&to_primal_form(&out.system, &[])?)),
        _ => None,
    };
    let report_path = default_path(a.report, || format!("{}.report.json", stem(&a.input.input)));
    emit(ctx, report_path.as_deref(), &export_report_json(&report))?;
    if let (Some(path), Some(text)) = (&a.sdpa, &sdpa) {
        emit(ctx, Some(path), text)?;
    }
    if let Some(msg) = report_message(&report) {
        let _ = writeln!(ctx.err, "infeasible: {msg}");
    }
    Ok(status_code(&report))
}

fn report_message(report: &ReductionReport) -> Option<&str> {
    match &report.status {
        crate::sdp_io::ReportStatus::Infeasible { message, .. } => Some(message),
        _ => None,
    }
}

fn cmd_simplify(ctx: &mut Ctx<'_>, a: SimplifyArgs) -> std::result::Result<i32, Failure> {
    let text = read_input(&a.input)?;
    let prog = parse_program_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", a.input.display())))?;
    let t = Instant::now();
    let rep = simplify_program(build_program_system(&prog, None)?);
    let wall = t.elapsed().as_micros() as u64;
    let report = simplify_report(input_digest(&text), &rep, wall);
    ctx.note(format!(
        "{} iterations, zeroed decision variables {:?}",
        rep.iterations, rep.zeroed
    ));

    let sdpa = match &a.sdpa {
        Some(_) if rep.is_simplified() => Some(export_sdpa_sparse(&to_primal_form(&rep.system, prog.cost())?)),
        _ => None,
    };
    let report_path = default_path(a.report, || format!("{}.report.json", stem(&a.input)));
    emit(ctx, report_path.as_deref(), &export_report_json(&report))?;
    if let (Some(path), Some(text)) = (&a.sdpa, &sdpa) {
        emit(ctx, Some(path), text)?;
    }
    if let Some(msg) = report_message(&report) {
        let _ = writeln!(ctx.err, "infeasible: {msg}");
    }
    Ok(status_code(&report))
}

fn cmd_screen(ctx: &mut Ctx<'_>, a: InputArgs) -> std::result::Result<i32, Failure> {
    let (_, p) = read_polynomial(&a)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial.into());
    }
    let r = even_vertex_screen(&p)?;
    writeln!(ctx.out, "{r}")?;
    Ok(match r {
        ScreenResult::Pass => EXIT_OK,
        ScreenResult::NotSos(_) => EXIT_NOT_SOS,
    })
}

fn cmd_hull(ctx: &mut Ctx<'_>, a: HullArgs) -> std::result::Result<i32, Failure> {
    let (_, p) = read_polynomial(&a.input)?;
    let m0 = initial_basis(&p, a.init.into())?;
    let summary = polytope_summary(&p, &m0)?;
    let mut text = serde_json::to_string_pretty(&serde_json::to_value(&summary).expect("summary serializes"))
        .expect("value serializes");
    text.push('\n');
    emit(ctx, a.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

#[derive(Deserialize)]
struct WitnessDoc {
    basis: Vec<String>,
    gram: Vec<Vec<serde_json::Value>>,
}

fn cmd_verify(ctx: &mut Ctx<'_>, a: VerifyArgs) -> std::result::Result<i32, Failure> {
    let (_, p) = read_polynomial(&a.input)?;
    let text = read_input(&a.witness)?;
    let doc: WitnessDoc = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", a.witness.display())))?;
    let basis = MonomialBasis::parse(&doc.basis.join(","), p.nvars())?;
    if basis.len() != doc.basis.len() {
        return Err(Failure::Usage("witness basis has repeated monomials".into()));
    }
    // rows follow the order given in the file; the basis type sorts
    let order: Vec<usize> = doc
        .basis
        .iter()
        .map(|s| basis.position(&crate::poly::parse_monomial(s, p.nvars())?).ok_or(Error::EmptyList))
        .collect::<Result<_>>()?;
    if doc.gram.len() != order.len() {
        return Err(Error::DimensionMismatch {
            expected: order.len(),
            got: doc.gram.len(),
        }
        .into());
    }
    let mut rows = vec![Vec::new(); order.len()];
    for (r, row) in doc.gram.iter().enumerate() {
        if row.len() != order.len() {
            return Err(Error::DimensionMismatch {
                expected: order.len(),
                got: row.len(),
            }
            .into());
        }
        let mut vals = vec![Default::default(); order.len()];
        for (c, v) in row.iter().enumerate() {
            let s = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                _ => return Err(Error::schema(format!("gram[{r}][{c}]"), "expected a rational").into()),
            };
            vals[order[c]] = parse_rational(&s).map_err(|e| Error::schema(format!("gram[{r}][{c}]"), e.to_string()))?;
        }
        rows[order[r]] = vals;
    }
    let q = GramMatrix::from_rows(rows)?;
    let check = check_witness(&p, &basis, &q)?;
    writeln!(ctx.out, "reproduces: {}\npsd: {}", check.reproduces, check.psd)?;
    Ok(if check.is_certificate() { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn cmd_bench(ctx: &mut Ctx<'_>, a: BenchArgs) -> std::result::Result<i32, Failure> {
    let report = run_bench(BenchParams {
        nvars: a.n,
        degree: a.deg,
        terms: a.terms,
        count: a.count,
        seed: a.seed,
    })?;
    ctx.note(format!(
        "{} instances, {} containment violations",
        report.rows.len(),
        report.containment_violations
    ));
    let mut text = serde_json::to_string_pretty(&serde_json::to_value(&report).expect("bench serializes"))
        .expect("value serializes");
    text.push('\n');
    let path = default_path(a.output, || "bench.json".into());
    emit(ctx, path.as_deref(), &text)?;
    Ok(EXIT_OK)
}
