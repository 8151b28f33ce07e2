mod cache;
mod report;
mod runner;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use burchcx::speclang::{self, AnyPlan, ElabOptions};
use burchcx::verify::{run_checks, Selector, VerifyParams};
use burchcx::Deg;
use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use cache::{CacheError, DiskCache};
use report::{Format, Meta, Report, RingEcho, Timing, CacheStats, TOOL};

const CACHE_ENV: &str = "BURCHCX_CACHE_DIR";

#[derive(Parser)]
#[command(name = "burchcx", version, about = "Homological invariants over monomial quotient rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a spec document and write a report.
    Run(RunArgs),
    /// Check the worked examples and inequalities against computed values.
    VerifyPaper(VerifyArgs),
    /// Inspect or clear the on-disk cache.
    Cache(CacheArgs),
}

#[derive(Args)]
struct Output {
    /// Report formats; may be repeated or comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "json")]
    format: Vec<Format>,
    /// Write the report here instead of standard output. With several formats
    /// the extension is replaced per format.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    spec: PathBuf,
    /// Default homological bound for tasks without `n=`.
    #[arg(long)]
    nmax: Option<usize>,
    /// Degree window for tasks without `window=`.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<Deg>,
    #[arg(long)]
    guard: Option<u32>,
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(default_value = "all")]
    selector: Selector,
    /// Embedding dimension; by default every family member is checked.
    #[arg(long)]
    b: Option<usize>,
    #[arg(long, default_value_t = 3)]
    ell: u32,
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, default_value_t = burchcx::resolve::DEFAULT_N_MAX)]
    nmax: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seeded random instances added to the inequality checks.
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CacheArgs {
    #[arg(long, env = CACHE_ENV, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand)]
enum CacheAction {
    List,
    Clear,
    Inspect { key: String },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Compute(#[from] burchcx::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            _ => 1,
        }
    }
}

fn emit(output: &Output, render: impl Fn(Format) -> String) -> Result<(), CliError> {
    let Some(out) = &output.out else {
        for &f in &output.format {
            print!("{}", render(f));
        }
        return Ok(());
    };
    for &f in &output.format {
        let path = if output.format.len() == 1 { out.clone() } else { out.with_extension(f.extension()) };
        fs::write(&path, render(f)).map_err(|source| CliError::Write { path, source })?;
    }
    Ok(())
}

fn location_error(path: &Path, line: usize, column: usize, message: &str) -> CliError {
    CliError::Input(format!("{}:{line}:{column}: {message}", path.display()))
}

fn run(args: RunArgs) -> Result<bool, CliError> {
    let start = Instant::now();
    let src = fs::read_to_string(&args.spec).map_err(|e| CliError::Input(format!("{}: {e}", args.spec.display())))?;
    let doc = speclang::parse(&src).map_err(|e| location_error(&args.spec, e.line, e.column, &e.message))?;
    let defaults = ElabOptions::default();
    let opts = ElabOptions { n_max: args.nmax.unwrap_or(defaults.n_max), window: args.window, guard: args.guard.unwrap_or(defaults.guard) };
    let plan = speclang::elaborate(&doc, &opts).map_err(|e| match e {
        burchcx::Error::Semantic { line, column, message } => location_error(&args.spec, line, column, &message),
        burchcx::Error::Parse(p) => location_error(&args.spec, p.line, p.column, &p.message),
        other => CliError::Input(format!("{}: {other}", args.spec.display())),
    })?;
    for w in plan.warnings() {
        eprintln!("{}:{}:{}: warning: {}", args.spec.display(), w.line, w.column, w.message);
    }

    let cache = args.cache_dir.as_deref().map(DiskCache::open).transpose()?;
    let jobs = args.jobs.unwrap_or_else(rayon::current_num_threads).max(1);
    let results = match &plan {
        AnyPlan::Prime(p) => runner::run_plan(p, cache.as_ref(), jobs),
        AnyPlan::Rational(p) => runner::run_plan(p, cache.as_ref(), jobs),
    };
    let (tasks, timings): (Vec<_>, Vec<_>) = results.into_iter().unzip();

    let spec_name = args.spec.file_name().map_or_else(|| args.spec.display().to_string(), |n| n.to_string_lossy().into_owned());
    let report = Report {
        meta: Meta {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            spec: spec_name,
            spec_sha256: hex::encode(Sha256::digest(src.as_bytes())),
            plan_hash: plan.hash().to_string(),
            options: opts,
            seed: args.seed,
            warnings: plan.warnings().to_vec(),
        },
        ring: RingEcho::from_plan(&plan),
        tasks,
        timing: Timing {
            jobs,
            total_seconds: start.elapsed().as_secs_f64(),
            cache: CacheStats {
                dir: cache.as_ref().map(|c| c.dir().display().to_string()),
                hits: cache.as_ref().map_or(0, DiskCache::hits),
                misses: cache.as_ref().map_or(0, DiskCache::misses),
            },
            tasks: timings,
        },
    };
    for t in report.tasks.iter().filter(|t| t.failed()) {
        eprintln!("{}:{}: task {} failed: {}", args.spec.display(), t.line, t.index, t.error.as_deref().unwrap_or(""));
    }
    emit(&args.output, |f| report.render(f))?;
    Ok(!report.failed())
}

fn verify(args: VerifyArgs) -> Result<bool, CliError> {
    let params = VerifyParams { b: args.b, ell: args.ell, m: args.m, n_max: args.nmax, seed: args.seed, random_instances: args.random };
    let res = run_checks(args.selector, &params)?;
    emit(&args.output, |f| match f {
        Format::Json => report::json(&res),
        Format::Tsv => report::verify_tsv(&res),
        Format::Pretty => report::verify_pretty(&res),
    })?;
    Ok(res.passed())
}

fn cache_admin(args: CacheArgs) -> Result<bool, CliError> {
    let dir = args
        .cache_dir
        .ok_or_else(|| CliError::Input(format!("no cache directory: pass --cache-dir or set {CACHE_ENV}")))?;
    let cache = DiskCache::open(&dir)?;
    match args.action {
        CacheAction::List => {
            println!("key\tkind\tbytes\tdescription");
            for l in cache.list()? {
                println!("{}\t{}\t{}\t{}", l.key, l.kind, l.bytes, l.description);
            }
        }
        CacheAction::Clear => {
            let n = cache.clear()?;
            println!("removed {n} entr{}", if n == 1 { "y" } else { "ies" });
        }
        CacheAction::Inspect { key } => print!("{}", cache.inspect(&key)?),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(a) => run(a),
        Command::VerifyPaper(a) => verify(a),
        Command::Cache(a) => cache_admin(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
