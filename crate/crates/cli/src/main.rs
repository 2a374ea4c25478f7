//! `rotinv`: print invariants and coefficient tables, evaluate invariants
//! at vectors, run the verification suites and manage the coefficient
//! cache.
//!
//! Exit codes: 0 success, 1 verification failure or i/o error, 2 domain
//! or usage error, 3 degenerate geometry, 4 corrupt cache, 64 bad flags.

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use num_traits::ToPrimitive;

use rotinv::coeffs::cache::CoeffCache;
use rotinv::exactnum::parse_rational;
use rotinv::invariant::build_invariant_with;
use rotinv::oracle::{appendix_eval_with_tol, config_from_vectors_with_tol, DEFAULT_COLLINEAR_TOL};
use rotinv::verify::{self, Status, Suite};
use rotinv::{
    evaluate, evaluate_float, render, table_closed, CoeffQuery, CoeffTable, Error, Format,
    InvariantPoly, InvariantSpec, Kind, Rational,
};

const CACHE_ENV: &str = "ROTINV_CACHE";

#[derive(Parser, Debug)]
#[command(name = "rotinv", version, about = "Rotational invariants of three vectors")]
struct Cli {
    /// Coefficient cache file [default: $ROTINV_CACHE]
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the invariant I(j,k,l) as a polynomial in scalar products
    Table {
        j: u32,
        k: u32,
        l: u32,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Print the coefficient table for (j,k,n)
    Coeffs {
        j: u32,
        k: u32,
        n: u32,
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Evaluate I(j,k,l) at three vectors given as x,y,z with rational parts
    Eval {
        j: u32,
        k: u32,
        l: u32,
        #[arg(allow_hyphen_values = true)]
        r1: String,
        #[arg(allow_hyphen_values = true)]
        r2: String,
        #[arg(allow_hyphen_values = true)]
        r3: String,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Collinearity tolerance for appendix mode
        #[arg(long, default_value_t = DEFAULT_COLLINEAR_TOL)]
        tol: f64,
    },
    /// Run verification suites and print a JSON report
    Verify {
        #[arg(long, default_value_t = 7)]
        max_l: u32,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Worker threads [default: available cores]
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Build or inspect the coefficient cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Compute all tables with j <= k <= max-l and write them
    Build {
        #[arg(long, default_value_t = 6)]
        max_l: u32,
    },
    /// Validate the cache and print its manifest
    Inspect {
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OutFormat {
    Text,
    Latex,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TableFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Even,
    Odd,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Exact,
    Float,
    Appendix,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    All,
    Laplace,
    Oracle,
    Recursion,
    Golden,
    Symmetry,
}

/// A failed command: exit status and message.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Triangle { .. }
            | Error::QueryDomain { .. }
            | Error::Projection { .. }
            | Error::TooLarge(_)
            | Error::Parse(_)
            | Error::UnknownFormat(_) => 2,
            Error::Degenerate(_) => 3,
            Error::CorruptCache { .. } => 4,
            _ => 1,
        };
        Failure::new(code, e)
    }
}

type CmdResult = Result<String, Failure>;

fn cache_path(cli: &Option<PathBuf>) -> Option<PathBuf> {
    cli.clone()
        .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

/// Loads the cache if one is configured and present on disk.
fn load_cache(path: &Option<PathBuf>) -> Result<Option<CoeffCache>, Failure> {
    match path {
        Some(p) if p.exists() => Ok(Some(CoeffCache::load(p)?)),
        _ => Ok(None),
    }
}

fn invariant(j: u32, k: u32, l: u32, cache: Option<&CoeffCache>) -> Result<InvariantPoly, Failure> {
    let inv = build_invariant_with(j, k, l, |kind, q| {
        Ok(match cache {
            Some(c) => c.get_or_compute(kind, q),
            None => table_closed(q, kind),
        })
    })?;
    Ok(inv)
}

fn cmd_table(j: u32, k: u32, l: u32, format: OutFormat, cache: Option<&CoeffCache>) -> CmdResult {
    let inv = invariant(j, k, l, cache)?;
    let format = match format {
        OutFormat::Text => Format::Text,
        OutFormat::Latex => Format::Latex,
        OutFormat::Json => Format::Json,
    };
    Ok(render(&inv, format))
}

#[derive(Serialize)]
struct EntryDoc {
    a: u32,
    b: u32,
    c: u32,
    value: String,
}

#[derive(Serialize)]
struct TableDoc {
    kind: &'static str,
    j: u32,
    k: u32,
    n: u32,
    lambda: u32,
    normalizer_name: &'static str,
    normalizer: String,
    entries: Vec<EntryDoc>,
}

fn table_document(t: &CoeffTable) -> TableDoc {
    let q = t.query;
    TableDoc {
        kind: t.kind.name(),
        j: q.j,
        k: q.k,
        n: q.n,
        lambda: t.lambda(),
        normalizer_name: normalizer_name(t.kind),
        normalizer: t.normalizer().to_string(),
        entries: t
            .entries()
            .map(|((a, b, c), v)| EntryDoc {
                a,
                b,
                c,
                value: v.to_string(),
            })
            .collect(),
    }
}

fn normalizer_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Even => "P",
        Kind::Odd => "Q",
    }
}

fn cmd_coeffs(j: u32, k: u32, n: u32, kind: KindArg, format: TableFormat, cache: Option<&CoeffCache>) -> CmdResult {
    let q = CoeffQuery::new(j, k, n)?;
    let kind = match kind {
        KindArg::Even => Kind::Even,
        KindArg::Odd => Kind::Odd,
    };
    let t = match cache {
        Some(c) => c.get_or_compute(kind, q),
        None => table_closed(q, kind),
    };
    match format {
        TableFormat::Json => Ok(pretty(&table_document(&t))),
        TableFormat::Text => {
            let spec = InvariantSpec::from_query(q, kind_parity(kind));
            let mut out = format!(
                "{} coefficients for j={} k={} n={} ({spec})\nlambda = {}\n{} = {}\n",
                kind.name(),
                q.j,
                q.k,
                q.n,
                t.lambda(),
                normalizer_name(kind),
                t.normalizer()
            );
            for ((a, b, c), v) in t.entries() {
                out.push_str(&format!("{a} {b} {c}  {v}\n"));
            }
            Ok(out.trim_end().to_string())
        }
    }
}

fn kind_parity(kind: Kind) -> rotinv::Parity {
    match kind {
        Kind::Even => rotinv::Parity::Even,
        Kind::Odd => rotinv::Parity::Odd,
    }
}

fn parse_vector(s: &str) -> Result<[Rational; 3], Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Failure::new(2, format!("vector {s:?} must have three comma-separated components")));
    }
    Ok([
        parse_rational(parts[0])?,
        parse_rational(parts[1])?,
        parse_rational(parts[2])?,
    ])
}

fn decimal(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn complex_text(re: f64, im: f64) -> String {
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", decimal(re), decimal(im.abs()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    j: u32,
    k: u32,
    l: u32,
    vectors: [&str; 3],
    mode: Mode,
    tol: f64,
    cache: Option<&CoeffCache>,
) -> CmdResult {
    let spec = InvariantSpec::new(j, k, l)?;
    let r = [parse_vector(vectors[0])?, parse_vector(vectors[1])?, parse_vector(vectors[2])?];
    let rf = r.clone().map(|v| v.map(|x| x.to_f64().unwrap_or(f64::NAN)));
    match mode {
        Mode::Exact => Ok(evaluate(&invariant(j, k, l, cache)?, &r).to_string()),
        Mode::Float => {
            let v = evaluate_float(&invariant(j, k, l, cache)?, &rf);
            Ok(complex_text(v.re, v.im))
        }
        Mode::Appendix => {
            let cfg = config_from_vectors_with_tol(&rf, tol)?;
            let v = appendix_eval_with_tol(spec, &cfg, tol)?;
            Ok(complex_text(v.re, v.im))
        }
    }
}

fn cmd_verify(max_l: u32, suite: SuiteArg, threads: Option<usize>) -> CmdResult {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Laplace => Suite::Laplace,
        SuiteArg::Oracle => Suite::Oracle,
        SuiteArg::Recursion => Suite::Recursion,
        SuiteArg::Golden => Suite::Golden,
        SuiteArg::Symmetry => Suite::Symmetry,
    };
    if max_l > rotinv::MAX_L {
        return Err(Error::TooLarge(max_l).into());
    }
    let report = match threads {
        Some(t) => verify::run_with_threads(max_l, suite, t),
        None => verify::run(max_l, suite),
    };
    let t = verify::tally(&report);
    let doc = pretty(&report);
    eprintln!("{} passed, {} failed, {} waived", t.pass, t.fail, t.waived);
    if report.iter().any(|r| r.status == Status::Fail) {
        emit(&doc);
        return Err(Failure::new(1, format!("{} checks failed", t.fail)));
    }
    Ok(doc)
}

fn cmd_cache(action: CacheAction, path: Option<PathBuf>) -> CmdResult {
    let Some(path) = path else {
        return Err(Failure::new(
            64,
            format!("no cache path: pass --cache or set {CACHE_ENV}"),
        ));
    };
    match action {
        CacheAction::Build { max_l } => {
            let cache = CoeffCache::build(max_l)?;
            cache.save(&path)?;
            Ok(format!("wrote {} tables to {}", cache.len(), path.display()))
        }
        CacheAction::Inspect { format } => {
            let cache = CoeffCache::load(&path)?;
            let manifest = cache.manifest();
            match format {
                TableFormat::Json => Ok(pretty(&manifest)),
                TableFormat::Text => {
                    let mut out = String::new();
                    for m in &manifest {
                        out.push_str(&format!(
                            "{} {} {} {}  lambda={} entries={} sha256={}\n",
                            m.kind.name(),
                            m.j,
                            m.k,
                            m.n,
                            m.lambda,
                            m.entries,
                            m.checksum
                        ));
                    }
                    out.push_str(&format!("{} tables", manifest.len()));
                    Ok(out)
                }
            }
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("document serializes")
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn run(cli: Cli) -> CmdResult {
    let path = cache_path(&cli.cache);
    match cli.command {
        Command::Table { j, k, l, format } => {
            let cache = load_cache(&path)?;
            cmd_table(j, k, l, format, cache.as_ref())
        }
        Command::Coeffs { j, k, n, kind, format } => {
            let cache = load_cache(&path)?;
            cmd_coeffs(j, k, n, kind, format, cache.as_ref())
        }
        Command::Eval { j, k, l, r1, r2, r3, mode, tol } => {
            let cache = load_cache(&path)?;
            cmd_eval(j, k, l, [&r1, &r2, &r3], mode, tol, cache.as_ref())
        }
        Command::Verify { max_l, suite, threads } => cmd_verify(max_l, suite, threads),
        Command::Cache { action } => cmd_cache(action, path),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("rotinv: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
