//! Command-line front end. [`run`] parses arguments, dispatches to a
//! subcommand and maps the outcome to an exit code.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, DEFAULT_PROXY_PRIMES};
use crate::invariants::{
    combinations, delta_annihilates_vinegar, delta_relation, hfq_decomposition_check, inequality_chain,
    invariant_report, mixed_decomposition, ov_decomposition, tr_v2_check, InvariantReport,
};
use crate::macaulay::{build_macaulay_budgeted, empirical_hilbert_with, solving_basis, Backend, MacaulayMode};
use crate::polyring::default_names;
use crate::reproduce::{self, ClaimRow};
use crate::series::{
    bracket, expand, predict_dreg_bound, predict_ov_hfg, predict_ov_semiregular, predict_semiregular,
    TruncatedSeries,
};
use crate::sysgen::{gen_full, gen_mixed, gen_ov, PolySystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IDENTITY: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable overriding the default seed of `gen`.
pub const SEED_ENV: &str = "OVALG_SEED";

#[derive(Debug, Parser)]
#[command(name = "ovalg", version, about = "Hilbert series and regularity invariants of OV and mixed quadratic systems")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for independent computations.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Largest Macaulay matrix (rows x columns) that may be built.
    #[arg(long, global = true, default_value_t = crate::macaulay::DEFAULT_BUDGET)]
    pub max_entries: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded random system.
    Gen(GenArgs),
    /// Compute the invariant report of a system and verify identities.
    #[command(alias = "invariants")]
    Analyze(AnalyzeArgs),
    /// Empirical Hilbert series from Macaulay-matrix ranks.
    Hilbert(HilbertArgs),
    /// Closed-form Hilbert-series predictions.
    Predict(PredictArgs),
    /// Build a Macaulay matrix, report its rank and optionally dump it.
    Macaulay(MacaulayArgs),
    /// Least degree at which the reduced Macaulay matrix is a Gröbner basis.
    SolveDegree(SolveArgs),
    /// Re-run every documented claim and print a pass/fail table.
    ReproducePaper(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Field characteristic (a prime below 2^31).
    #[arg(long)]
    pub q: Option<u32>,
    /// Treat GF(q) as a stand-in for characteristic zero (q >= 2^20).
    #[arg(long)]
    pub char0_proxy: bool,
    /// Work modulo the field equations x^q = x (x^q = 0 for homogeneous systems).
    #[arg(long)]
    pub field_equations: bool,
}

impl FieldArgs {
    pub fn field(&self) -> Result<FieldSpec> {
        match (self.q, self.char0_proxy) {
            (_, true) if self.field_equations => Err(Error::BadParameters(
                "field equations are never imposed in char-0 proxy mode".into(),
            )),
            (q, true) => FieldSpec::char0_proxy(q.unwrap_or(DEFAULT_PROXY_PRIMES[0])),
            (Some(q), false) => FieldSpec::new(q, self.field_equations),
            (None, false) if self.field_equations => {
                Err(Error::BadParameters("--field-equations needs --q".into()))
            }
            (None, false) => Ok(FieldSpec::default_proxy()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Ov,
    Mixed,
    Full,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: usize,
    /// Number of vinegar variables (ov, mixed).
    #[arg(long)]
    pub v: Option<usize>,
    /// Number of polynomials (ov, full; for mixed it must equal e + u).
    #[arg(long)]
    pub m: Option<usize>,
    /// OV polynomials of a mixed system.
    #[arg(long)]
    pub e: Option<usize>,
    /// Fully quadratic polynomials of a mixed system.
    #[arg(long)]
    pub u: Option<usize>,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub homogeneous: bool,
    /// Seed of the coefficient stream; defaults to $OVALG_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Destination file; the system goes to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Ov,
    Mixed,
    Hfq,
    Chain,
    Trv2,
    Delta,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Truncation degree of every series.
    #[arg(long, default_value_t = 8)]
    pub max_degree: usize,
    /// Largest degree searched for first-fall and solving degrees.
    #[arg(long)]
    pub search_degree: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Identities to verify; any failure gives exit code 2.
    #[arg(long, value_enum)]
    pub check: Vec<Check>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Auto,
    Macaulay,
    Groebner,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Auto => Backend::Auto,
            BackendArg::Macaulay => Backend::Macaulay,
            BackendArg::Groebner => Backend::Groebner,
        }
    }
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub max_degree: usize,
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    pub backend: BackendArg,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Vinegar variables; adds the OV predictions.
    #[arg(long)]
    pub v: Option<usize>,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 8)]
    pub max_degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Hom,
    Aff,
}

#[derive(Debug, Args)]
pub struct MacaulayArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Hom)]
    pub mode: ModeArg,
    /// Write the labelled matrix as CSV.
    #[arg(long)]
    pub dump_matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub max_degree: usize,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Restrict to row groups whose id starts with this prefix (repeatable).
    #[arg(long)]
    pub only: Vec<String>,
    /// List the row groups and exit.
    #[arg(long)]
    pub list: bool,
}

/// Result of one `--check`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub holds: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeOutput {
    #[serde(flatten)]
    pub report: InvariantReport,
    pub checks: Vec<CheckOutcome>,
}

impl AnalyzeOutput {
    pub fn all_verified(&self) -> bool {
        self.report.decomposition_verified != Some(false) && self.checks.iter().all(|c| c.holds)
    }
}

/// Parse `args` (program name first), run, write to `out`, return the exit code.
pub fn run<I, T, W>(args: I, out: &mut W, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn dispatch<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, cli.format, out),
        Command::Analyze(a) => cmd_analyze(a, cli, out),
        Command::Hilbert(a) => cmd_hilbert(a, cli, out),
        Command::Predict(a) => cmd_predict(a, cli.format, out),
        Command::Macaulay(a) => cmd_macaulay(a, cli, out),
        Command::SolveDegree(a) => cmd_solve(a, cli.format, out),
        Command::ReproducePaper(a) => cmd_reproduce(a, cli, out),
    }
}

fn default_seed() -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::BadParameters(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(0),
    }
}

fn need(x: Option<usize>, flag: &str) -> Result<usize> {
    x.ok_or_else(|| Error::BadParameters(format!("--{flag} is required for this kind")))
}

pub fn cmd_gen<W: Write>(a: &GenArgs, format: Format, out: &mut W) -> Result<i32> {
    let field = a.field.field()?;
    let seed = match a.seed {
        Some(s) => s,
        None => default_seed()?,
    };
    let s = match a.kind {
        GenKind::Ov => gen_ov(a.n, need(a.v, "v")?, need(a.m, "m")?, field, a.homogeneous, seed)?,
        GenKind::Full => gen_full(a.n, need(a.m, "m")?, field, a.homogeneous, seed)?,
        GenKind::Mixed => {
            let (e, u) = (need(a.e, "e")?, need(a.u, "u")?);
            if a.m.is_some_and(|m| m != e + u) {
                return Err(Error::BadParameters("mixed systems need m = e + u".into()));
            }
            gen_mixed(a.n, need(a.v, "v")?, e, u, field, a.homogeneous, seed)?
        }
    };
    let body = match format {
        Format::Json => s.to_json()?,
        _ => s.to_text(),
    };
    match &a.out {
        Some(path) => {
            std::fs::write(path, &body)?;
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({ "path": path, "summary": s.summary(), "seed": seed })
                )?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["path", "summary", "seed"]).map_err(csv_err)?;
                    w.write_record([path.display().to_string(), s.summary(), seed.to_string()])
                        .map_err(csv_err)?;
                    w.flush()?;
                }
                Format::Text => writeln!(out, "{}: {}", path.display(), s.summary())?,
            }
        }
        None => write!(out, "{body}")?,
    }
    Ok(EXIT_OK)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn series_json(s: &TruncatedSeries) -> Value {
    serde_json::to_value(s).expect("series serialize")
}

fn read_system(path: &Path) -> Result<PolySystem> {
    PolySystem::read_file(path)
}

fn run_check(s: &PolySystem, check: Check, dmax: usize, d_max: usize) -> Result<CheckOutcome> {
    let (holds, detail) = match check {
        Check::Ov => {
            let dec = ov_decomposition(s, dmax)?;
            (dec.holds(), serde_json::to_value(&dec)?)
        }
        Check::Mixed => {
            let dec = mixed_decomposition(s, dmax)?;
            (dec.holds(), serde_json::to_value(&dec)?)
        }
        Check::Hfq => {
            let r = hfq_decomposition_check(s, dmax)?;
            (r.holds_below_regularity, serde_json::to_value(&r)?)
        }
        Check::Chain => {
            let r = inequality_chain(s, d_max)?;
            (r.holds(), serde_json::to_value(r)?)
        }
        Check::Trv2 => {
            let r = tr_v2_check(s, dmax)?;
            (r.holds, serde_json::to_value(&r)?)
        }
        Check::Delta => {
            let v = s
                .kind()
                .vinegar()
                .ok_or_else(|| Error::NotOv("the delta relation needs an OV system".into()))?;
            let names = default_names(s.n());
            let mut regular = Vec::new();
            let mut singular = Vec::new();
            let mut failing = Vec::new();
            for subset in combinations(s.m(), v) {
                match delta_relation(s, &subset) {
                    Ok(rel) => {
                        if !delta_annihilates_vinegar(s, &rel)? {
                            failing.push(subset.clone());
                        }
                        regular.push(json!({ "subset": subset, "delta": rel.delta.display_with(&names) }));
                    }
                    Err(Error::SingularSubset(sub)) => singular.push(sub),
                    Err(e) => return Err(e),
                }
            }
            (
                failing.is_empty(),
                json!({ "regular": regular, "singular": singular, "failing": failing }),
            )
        }
    };
    let name = check.to_possible_value().expect("named").get_name().to_string();
    Ok(CheckOutcome { check: name, holds, detail })
}

pub fn analyze(s: &PolySystem, dmax: usize, d_max: usize, checks: &[Check]) -> Result<AnalyzeOutput> {
    let report = invariant_report(s, dmax, d_max)?;
    let checks = checks
        .iter()
        .map(|&c| run_check(s, c, dmax, d_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalyzeOutput { report, checks })
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn cmd_analyze<W: Write>(a: &AnalyzeArgs, cli: &Cli, out: &mut W) -> Result<i32> {
    let s = read_system(&a.input)?;
    let d_max = a.search_degree.unwrap_or(a.max_degree);
    let result = analyze(&s, a.max_degree, d_max, &a.check)?;
    let text = serde_json::to_string_pretty(&result)?;
    if let Some(path) = &a.report {
        std::fs::write(path, format!("{text}\n"))?;
    }
    let r = &result.report;
    match cli.format {
        Format::Json => writeln!(out, "{text}")?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["degree", "empirical", "predicted", "vinegar", "oil"]).map_err(csv_err)?;
            for d in 0..=r.max_degree {
                let cell = |s: &Option<TruncatedSeries>| {
                    s.as_ref().map_or_else(String::new, |s| s.coeffs()[d].to_string())
                };
                w.write_record([
                    d.to_string(),
                    r.empirical.coeffs()[d].to_string(),
                    r.predicted.coeffs()[d].to_string(),
                    cell(&r.h_vinegar),
                    cell(&r.h_oil),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "system      {}", r.summary)?;
            writeln!(out, "empirical   {}", r.empirical)?;
            writeln!(out, "predicted   {}", r.predicted)?;
            if let Some(h) = &r.h_vinegar {
                writeln!(out, "vinegar     {h}")?;
            }
            if let Some(h) = &r.h_oil {
                writeln!(out, "oil         {h}")?;
            }
            writeln!(out, "dim         {}", opt(&r.dim))?;
            writeln!(out, "d_reg       {}", opt(&r.d_reg))?;
            writeln!(out, "i_reg       {}", opt(&r.i_reg))?;
            writeln!(out, "d_fall      {}", opt(&r.d_fall))?;
            writeln!(out, "solv_deg    {}", opt(&r.solv_deg))?;
            writeln!(out, "semiregular {}", r.semiregular_match)?;
            if let Some(ok) = r.decomposition_verified {
                writeln!(out, "splitting   {}", if ok { "verified" } else { "FAILED" })?;
            }
            for c in &result.checks {
                writeln!(out, "check {:<6}{}", c.check, if c.holds { "PASS" } else { "FAIL" })?;
            }
            for note in &r.notes {
                writeln!(out, "note        {note}")?;
            }
        }
    }
    Ok(if result.all_verified() { EXIT_OK } else { EXIT_IDENTITY })
}

fn write_series<W: Write>(out: &mut W, format: Format, name: &str, s: &TruncatedSeries) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", json!({ name: series_json(s) }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["degree", name]).map_err(csv_err)?;
            for (d, c) in s.coeffs().iter().enumerate() {
                w.write_record([d.to_string(), c.to_string()]).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Text => writeln!(out, "{s}")?,
    }
    Ok(())
}

fn cmd_hilbert<W: Write>(a: &HilbertArgs, cli: &Cli, out: &mut W) -> Result<i32> {
    let s = read_system(&a.input)?;
    let h = empirical_hilbert_with(&s, a.max_degree, a.backend.into(), cli.max_entries)?;
    write_series(out, cli.format, "hilbert", &h)?;
    Ok(EXIT_OK)
}

fn cmd_predict<W: Write>(a: &PredictArgs, format: Format, out: &mut W) -> Result<i32> {
    let field = a.field.field()?;
    let d = a.max_degree;
    if a.v.is_some_and(|v| v == 0 || v >= a.n) {
        return Err(Error::BadParameters("need 0 < v < n".into()));
    }
    let raw = expand(&predict_semiregular(a.n, a.m, &field), d)?;
    let mut rows: Vec<(String, Value)> = vec![
        ("semiregular_raw".into(), series_json(&raw)),
        ("semiregular".into(), series_json(&bracket(&raw))),
    ];
    if let Some(v) = a.v {
        let ov = predict_ov_semiregular(a.n, v, a.m, d);
        let hfg = predict_ov_hfg(a.n, v, a.m, d);
        rows.push(("ov".into(), series_json(&ov.series)));
        rows.push(("ov_branch".into(), serde_json::to_value(ov.branch)?));
        rows.push(("vinegar".into(), series_json(&hfg.series)));
        rows.push(("vinegar_window_end".into(), json!(hfg.window_end)));
        if let Ok(b) = predict_dreg_bound(a.n, v, a.m) {
            rows.push(("dreg_bound".into(), json!(b)));
        }
    }
    match format {
        Format::Json => {
            let obj: serde_json::Map<String, Value> = rows.into_iter().collect();
            writeln!(out, "{}", Value::Object(obj))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["name", "value"]).map_err(csv_err)?;
            for (k, v) in &rows {
                w.write_record([k.clone(), v.to_string()]).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for (k, v) in &rows {
                let v = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                writeln!(out, "{k:<20}{v}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_macaulay<W: Write>(a: &MacaulayArgs, cli: &Cli, out: &mut W) -> Result<i32> {
    let s = read_system(&a.input)?;
    let mode = match a.mode {
        ModeArg::Hom => MacaulayMode::Homogeneous,
        ModeArg::Aff => MacaulayMode::Affine,
    };
    let mm = build_macaulay_budgeted(&s, a.degree, mode, cli.max_entries)?;
    if let Some(path) = &a.dump_matrix {
        mm.write_csv(std::fs::File::create(path)?)?;
    }
    let (rows, cols, rank) = (mm.rows.len(), mm.columns.len(), mm.rank());
    match cli.format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "degree": a.degree, "rows": rows, "cols": cols, "rank": rank, "kernel": rows - rank })
        )?,
        Format::Csv if a.dump_matrix.is_none() => mm.write_csv(&mut *out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["degree", "rows", "cols", "rank", "kernel"]).map_err(csv_err)?;
            w.write_record([a.degree, rows, cols, rank, rows - rank].map(|x| x.to_string()))
                .map_err(csv_err)?;
            w.flush()?;
        }
        Format::Text => writeln!(
            out,
            "degree {} matrix {rows}x{cols} rank {rank} kernel {}",
            a.degree,
            rows - rank
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_solve<W: Write>(a: &SolveArgs, format: Format, out: &mut W) -> Result<i32> {
    let s = read_system(&a.input)?;
    let (d, basis) = solving_basis(&s, a.max_degree)?;
    let names = default_names(s.n());
    let basis: Vec<String> = basis.iter().map(|f| f.display_with(&names)).collect();
    match format {
        Format::Json => writeln!(out, "{}", json!({ "solving_degree": d, "basis": basis }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["solving_degree", "basis_element"]).map_err(csv_err)?;
            for f in &basis {
                w.write_record([d.to_string(), f.clone()]).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "solving degree {d}")?;
            for f in &basis {
                writeln!(out, "  {f}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_rows<W: Write>(out: &mut W, format: Format, rows: &[ClaimRow]) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(rows)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in rows {
                w.serialize(r).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Text => {
            let width = rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
            for r in rows {
                writeln!(
                    out,
                    "{:<4} {:<width$}  {}  expected {}  computed {}",
                    r.verdict, r.id, r.claim, r.expected, r.computed
                )?;
            }
            let passed = rows.iter().filter(|r| r.passed()).count();
            writeln!(out, "{passed}/{} rows pass", rows.len())?;
        }
    }
    Ok(())
}

fn cmd_reproduce<W: Write>(a: &ReproduceArgs, cli: &Cli, out: &mut W) -> Result<i32> {
    if a.list {
        for id in reproduce::group_ids() {
            writeln!(out, "{id}")?;
        }
        return Ok(EXIT_OK);
    }
    let jobs = usize::try_from(cli.jobs).map_err(|_| Error::BadParameters("--jobs too large".into()))?;
    let rows = reproduce::run(jobs, &a.only)?;
    write_rows(out, cli.format, &rows)?;
    Ok(if rows.iter().all(ClaimRow::passed) { EXIT_OK } else { EXIT_IDENTITY })
}
