use clap::{Args, Parser, Subcommand, ValueEnum};
use mtvlab_core::expansion::expand_a;
use mtvlab_core::finite_sums::{finite_sum, FiniteSumKind};
use mtvlab_core::identities::{
    list_checks, run_suite, CheckResult, Status, SuiteConfig, SuiteFilter, SuiteReport,
};
use mtvlab_core::quadrature::{a_m_quad, fm_eval, psi_m, transform, QuadConfig, TransformKind};
use mtvlab_core::series::{a_m_series, convoluted_t, level_value, t_m_function};
use mtvlab_core::{Approx, EvalConfig, Index};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Core(#[from] mtvlab_core::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug)]
#[command(name = "mtvlab", version, about = "Multiple zeta and T-values, their transforms and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single quantity.
    Eval(EvalArgs),
    /// Run the identity suite and write a report.
    Verify(VerifyArgs),
    /// Tabulate values over all admissible indices up to a weight.
    Table(TableArgs),
    /// List the registered identity checks.
    List(ListArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Func {
    /// A^(m)(k; z) by series (m defaults to 2)
    #[value(name = "A", alias = "a")]
    A,
    /// Li_k(z) = A^(1)(k; z)
    Li,
    /// A^(m)(k; z) by quadrature
    AQuad,
    /// T(k)
    Mtv,
    /// zeta(k)
    Mzv,
    /// T^(m)(k)
    Level,
    /// T^(m)(k_1..k_{r-1}, s) at real s
    TFunction,
    Xi,
    Eta,
    Psi,
    /// psi^(m)(k; p)
    PsiM,
    /// symbolic expansion of A(k; (1-z)/(1+z))
    Expand,
    /// exact finite sum of the given kind up to n
    FiniteSum,
    /// convoluted T-value T(k ⊛ l)
    Convoluted,
    /// f_m(z)
    Fm,
}

#[derive(Args, Debug, Clone)]
struct Knobs {
    /// Truncation point of the series before the tail correction.
    #[arg(long, default_value_t = 1_000_000)]
    trunc_n: u64,
    /// Tail correction order (0 disables the tail).
    #[arg(long, default_value_t = 2)]
    tail_order: u8,
    /// Absolute tolerance for series (eval) or base tolerance override (verify).
    #[arg(long)]
    tol: Option<f64>,
    /// Absolute tolerance of the quadrature routines.
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
}

impl Knobs {
    fn eval_config(&self, series_tol: bool) -> Result<EvalConfig, CliError> {
        let mut cfg = EvalConfig {
            trunc_n: self.trunc_n,
            tail_order: self.tail_order,
            ..EvalConfig::default()
        };
        if series_tol {
            if let Some(t) = self.tol {
                cfg.target_abs_tol = t;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn quad_config(&self) -> Result<QuadConfig, CliError> {
        let cfg = QuadConfig {
            abs_tol: self.quad_tol,
            ..QuadConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum)]
    func: Func,
    /// Index as "k1,k2,...,kr"; "-" is the empty index.
    #[arg(long, allow_hyphen_values = true)]
    index: Option<Index>,
    /// Second index (convoluted T-values).
    #[arg(long, allow_hyphen_values = true)]
    index2: Option<Index>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    p: Option<u32>,
    /// Level.
    #[arg(long)]
    m: Option<u32>,
    /// Upper bound of a finite sum.
    #[arg(long)]
    n: Option<u64>,
    /// Finite sum kind: zeta, zeta-star, t or s.
    #[arg(long)]
    kind: Option<FiniteSumKind>,
    #[command(flatten)]
    knobs: Knobs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Only run checks whose id starts with this prefix.
    #[arg(long)]
    prefix: Option<String>,
    /// Only run grid points whose weight is at most this.
    #[arg(long)]
    max_weight: Option<u32>,
    /// Number of worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    knobs: Knobs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Zero the timings and suppress the metadata line.
    #[arg(long)]
    no_meta: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// mtv, mzv or level.
    #[arg(long, value_enum, default_value_t = Func::Mtv)]
    func: Func,
    #[arg(long)]
    max_weight: u32,
    #[arg(long)]
    m: Option<u32>,
    #[command(flatten)]
    knobs: Knobs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ListArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Shortest decimal with 15 significant digits.
fn sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn fmt15(x: f64) -> String {
    format!("{x:.14e}")
}

fn round_approx(a: Approx) -> Approx {
    Approx {
        value: sig15(a.value),
        err_bound: sig15(a.err_bound),
        ..a
    }
}

fn sink(output: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match output {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this function")))
}

fn need_index(v: &Option<Index>, flag: &str) -> Result<Index, CliError> {
    v.clone()
        .ok_or_else(|| CliError::Usage(format!("--{flag} is required for this function")))
}

fn write_approx(out: &mut dyn Write, a: &Approx, format: Format) -> Result<(), CliError> {
    let a = round_approx(*a);
    match format {
        Format::Text => writeln!(
            out,
            "value {}\nerr_bound {}\nroute {}\nterms {}",
            fmt15(a.value),
            fmt15(a.err_bound),
            a.route,
            a.terms_used
        )?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&a)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["value", "err_bound", "route", "terms"])?;
            w.write_record([
                fmt15(a.value),
                fmt15(a.err_bound),
                a.route.to_string(),
                a.terms_used.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, CliError> {
    let mut out = sink(&args.output)?;
    let ecfg = args.knobs.eval_config(true)?;
    let qcfg = args.knobs.quad_config()?;
    let transform_of = |kind| -> Result<Approx, CliError> {
        let k = need_index(&args.index, "index")?;
        let s = need(args.s.or(args.p.map(f64::from)), "s")?;
        Ok(transform(kind, &k, s, &qcfg)?)
    };
    let value = match args.func {
        Func::A | Func::Li => {
            let m = if args.func == Func::Li { 1 } else { args.m.unwrap_or(2) };
            a_m_series(m, &need_index(&args.index, "index")?, need(args.z, "z")?, &ecfg)?
        }
        Func::AQuad => a_m_quad(
            args.m.unwrap_or(2),
            &need_index(&args.index, "index")?,
            need(args.z, "z")?,
            &qcfg,
        )?,
        Func::Mtv => level_value(2, &need_index(&args.index, "index")?, &ecfg)?,
        Func::Mzv => level_value(1, &need_index(&args.index, "index")?, &ecfg)?,
        Func::Level => level_value(need(args.m, "m")?, &need_index(&args.index, "index")?, &ecfg)?,
        Func::TFunction => t_m_function(
            args.m.unwrap_or(2),
            &args.index.clone().unwrap_or_else(Index::empty),
            need(args.s, "s")?,
            &ecfg,
        )?,
        Func::Xi => transform_of(TransformKind::Xi)?,
        Func::Eta => transform_of(TransformKind::Eta)?,
        Func::Psi => transform_of(TransformKind::Psi)?,
        Func::PsiM => psi_m(
            need(args.m, "m")?,
            &need_index(&args.index, "index")?,
            need(args.p, "p")?,
            &qcfg,
        )?,
        Func::Convoluted => convoluted_t(
            &need_index(&args.index, "index")?,
            &need_index(&args.index2, "index2")?,
            &ecfg,
        )?,
        Func::Fm => {
            let v = fm_eval(need(args.m, "m")?, need(args.z, "z")?)?;
            Approx::exact(v, mtvlab_core::Route::Series)
        }
        Func::Expand => {
            let e = expand_a(&need_index(&args.index, "index")?);
            match args.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&*e)?)?,
                _ => writeln!(out, "{e}")?,
            }
            return Ok(ExitCode::SUCCESS);
        }
        Func::FiniteSum => {
            let kind = need(args.kind, "kind")?;
            let q = finite_sum(kind, &need_index(&args.index, "index")?, need(args.n, "n")?);
            writeln!(out, "{q}")?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    write_approx(&mut *out, &value, args.format)?;
    Ok(ExitCode::SUCCESS)
}

fn rounded_result(r: &CheckResult) -> CheckResult {
    CheckResult {
        lhs: round_approx(r.lhs),
        rhs: round_approx(r.rhs),
        residual: sig15(r.residual),
        tol: sig15(r.tol),
        ..r.clone()
    }
}

fn status_word(s: &Status) -> String {
    match s {
        Status::Pass => "pass".into(),
        Status::Fail => "fail".into(),
        Status::Skipped(reason) => format!("skipped: {reason}"),
    }
}

fn write_report(out: &mut dyn Write, report: &SuiteReport, format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let rounded = SuiteReport {
                results: report.results.iter().map(rounded_result).collect(),
                summary: report.summary.clone(),
                discrepancies: report
                    .discrepancies
                    .iter()
                    .cloned()
                    .map(|mut d| {
                        d.residual = sig15(d.residual);
                        d
                    })
                    .collect(),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&rounded)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["id", "params", "lhs", "rhs", "residual", "tol", "pass", "runtime_ms", "status"])?;
            for r in &report.results {
                w.write_record([
                    r.id.clone(),
                    r.params.to_string(),
                    fmt15(r.lhs.value),
                    fmt15(r.rhs.value),
                    fmt15(r.residual),
                    fmt15(r.tol),
                    r.pass.to_string(),
                    r.runtime_ms.to_string(),
                    status_word(&r.status),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in &report.results {
                let tag = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped(_) => "SKIP",
                };
                write!(
                    out,
                    "{tag} {:<8} {:<32} residual {} tol {} ({} ms)",
                    r.id,
                    r.params.to_string(),
                    fmt15(r.residual),
                    fmt15(r.tol),
                    r.runtime_ms
                )?;
                if let Some(note) = &r.note {
                    write!(out, " [{note}]")?;
                }
                if let Status::Skipped(reason) = &r.status {
                    write!(out, " [{reason}]")?;
                }
                writeln!(out)?;
            }
            let s = &report.summary;
            writeln!(
                out,
                "total {} passed {} failed {} skipped {}",
                s.total, s.passed, s.failed, s.skipped
            )?;
            if !report.discrepancies.is_empty() {
                writeln!(out, "discrepancies:")?;
                for d in &report.discrepancies {
                    writeln!(out, "  {} {} [{}] residual {}", d.id, d.params, d.reading, fmt15(d.residual))?;
                }
            }
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let start = Instant::now();
    let cfg = SuiteConfig {
        eval: args.knobs.eval_config(false)?,
        quad: args.knobs.quad_config()?,
        tol: args.knobs.tol,
        no_meta: args.no_meta,
    };
    if let Some(t) = cfg.tol {
        if t.is_nan() || t < 0.0 {
            return Err(CliError::Usage(format!("--tol must be non-negative, got {t}")));
        }
    }
    let filter = SuiteFilter {
        prefix: args.prefix.clone(),
        max_weight: args.max_weight,
        jobs: Some(args.jobs),
    };
    let report = run_suite(&filter, &cfg)?;
    if report.summary.total == 0 {
        return Err(CliError::Usage("no checks match the filter".into()));
    }
    let mut out = sink(&args.output)?;
    write_report(&mut *out, &report, args.format)?;
    out.flush()?;
    if !args.no_meta {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        eprintln!(
            "# mtvlab {} verify unix_time={} elapsed_ms={} jobs={}",
            env!("CARGO_PKG_VERSION"),
            now,
            start.elapsed().as_millis(),
            args.jobs
        );
    }
    Ok(if report.summary.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, CliError> {
    let cfg = args.knobs.eval_config(true)?;
    let m = match args.func {
        Func::Mtv => 2,
        Func::Mzv => 1,
        Func::Level => need(args.m, "m")?,
        _ => return Err(CliError::Usage("table supports --func mtv, mzv or level".into())),
    };
    let mut out = sink(&args.output)?;
    let indices = mtvlab_core::index::admissible_indices(args.max_weight);
    let mut rows = Vec::with_capacity(indices.len());
    for k in &indices {
        rows.push((k, round_approx(level_value(m, k, &cfg)?)));
    }
    match args.format {
        Format::Text => {
            for (k, a) in rows {
                writeln!(out, "{:<16} {} {}", k.to_string(), fmt15(a.value), fmt15(a.err_bound))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["index", "weight", "value", "err_bound"])?;
            for (k, a) in rows {
                w.write_record([k.to_string(), k.weight().to_string(), fmt15(a.value), fmt15(a.err_bound)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let json: Vec<serde_json::Value> = rows
                .into_iter()
                .map(|(k, a)| serde_json::json!({ "index": k.to_string(), "weight": k.weight(), "value": a.value, "err_bound": a.err_bound }))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_list(args: ListArgs) -> Result<ExitCode, CliError> {
    let mut out = sink(&args.output)?;
    let specs = list_checks();
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&specs)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["id", "paper_anchor", "base_tol", "params", "description"])?;
            for s in specs {
                let params: Vec<String> = s.params.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                w.write_record([
                    s.id.to_string(),
                    s.paper_anchor.to_string(),
                    s.base_tol.to_string(),
                    params.join("; "),
                    s.description.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for s in specs {
                writeln!(out, "{:<8} {:<32} {}", s.id, s.paper_anchor, s.description)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a),
        Command::List(a) => cmd_list(a),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
