//! Command-line driver: argument handling, the table cache, reports and
//! manifest suites over `repcheck-core`.

pub mod cache;
pub mod commands;
pub mod manifest;
pub mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::Parser;
use repcheck_core::chartab::{DirectTables, MemoTables, ModularCharTable, PrimeChoice, TableSource};
use serde_json::Value;

use crate::cache::DiskCache;
use crate::commands::{evaluate, Command, Params, PrimeArg};
use crate::report::{sidecar_path, write_json_atomic, Sidecar, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] repcheck_core::error::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Exit status: the claim's verdict matched the expectation.
pub const EXIT_OK: u8 = 0;
/// A verdict contradicted the expectation.
pub const EXIT_MISMATCH: u8 = 1;
/// Bad configuration or an infrastructure failure.
pub const EXIT_ERROR: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Jacquet,
    Thmgl,
    Gelfand,
    Geometry,
    Keylemma,
    Dualkey,
    Deligne,
    Nuimage,
    Symgroup,
    Hecke,
    Chartab,
    All,
}

impl Target {
    fn command(self) -> Option<Command> {
        Some(match self {
            Target::Jacquet => Command::Jacquet,
            Target::Thmgl => Command::Thmgl,
            Target::Gelfand => Command::Gelfand,
            Target::Geometry => Command::Geometry,
            Target::Keylemma => Command::Keylemma,
            Target::Dualkey => Command::Dualkey,
            Target::Deligne => Command::Deligne,
            Target::Nuimage => Command::Nuimage,
            Target::Symgroup => Command::Symgroup,
            Target::Hecke => Command::Hecke,
            Target::Chartab => Command::Chartab,
            Target::All => return None,
        })
    }
}

/// Exact checks of multiplicity-one statements over small finite fields.
#[derive(Debug, Parser)]
#[command(name = "repcheck", version)]
pub struct Cli {
    /// Claim to check, or `all` for a manifest suite.
    #[arg(value_enum)]
    pub target: Target,
    /// Field size (2, 3, 4, 5, 7, 8 or 9).
    #[arg(long)]
    pub q: Option<u32>,
    /// Rank, matrix size or first block, depending on the claim.
    #[arg(long)]
    pub n: Option<usize>,
    /// Second block, or the size of the filtered space.
    #[arg(long)]
    pub k: Option<usize>,
    /// Block sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub composition: Option<Vec<usize>>,
    /// Prime for character tables: a value, or `next` for the next admissible one.
    #[arg(long)]
    pub prime: Option<PrimeArg>,
    /// Directory of the character-table cache.
    #[arg(long, env = "REPCHECK_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Report path; a `.meta.json` sidecar is written beside it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Exit 0 when the claim fails, 1 when it passes.
    #[arg(long)]
    pub expect_fail: bool,
    /// Dual orbit lemma over all maps rather than isomorphisms.
    #[arg(long)]
    pub all_maps: bool,
    /// Manifest for `all`: a JSON array of {command, params, expect}.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

/// Shared handle so the memo layer and the stats reader see one cache.
struct SharedDisk(Arc<DiskCache>);

impl TableSource for SharedDisk {
    fn gl_table(&self, n: usize, q: u32, prime: PrimeChoice) -> repcheck_core::error::Result<Arc<ModularCharTable>> {
        self.0.gl_table(n, q, prime)
    }
}

enum Tables {
    Disk(Arc<DiskCache>, MemoTables<SharedDisk>),
    Memory(MemoTables<DirectTables>),
}

impl Tables {
    fn source(&self) -> &dyn TableSource {
        match self {
            Tables::Disk(_, m) => m,
            Tables::Memory(m) => m,
        }
    }

    fn stats(&self) -> Option<cache::CacheStats> {
        match self {
            Tables::Disk(d, _) => Some(d.stats()),
            Tables::Memory(_) => None,
        }
    }
}

fn emit(cli: &Cli, payload: &Value, sidecar: &Sidecar) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            write_json_atomic(path, payload)?;
            write_json_atomic(&sidecar_path(path), sidecar)?;
        }
        None => {
            let mut text = serde_json::to_string_pretty(payload)?;
            text.push('\n');
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Config("--jobs must be positive".into()));
        }
        // ignore a second initialisation within one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let tables = match &cli.cache_dir {
        Some(dir) => {
            let disk = Arc::new(DiskCache::new(dir)?);
            Tables::Disk(disk.clone(), MemoTables::new(SharedDisk(disk)))
        }
        None => Tables::Memory(MemoTables::default()),
    };
    let start = Instant::now();
    match cli.target.command() {
        Some(cmd) => {
            let params = Params {
                q: cli.q,
                n: cli.n,
                k: cli.k,
                composition: cli.composition.clone(),
                prime: cli.prime,
                all_maps: cli.all_maps,
            };
            let eval = evaluate(cmd, &params, tables.source())?;
            let sidecar =
                Sidecar { wall_time_secs: start.elapsed().as_secs_f64(), cache: tables.stats(), details: eval.details };
            emit(cli, &serde_json::to_value(&eval.report)?, &sidecar)?;
            let expected = if cli.expect_fail { Verdict::Fail } else { Verdict::Pass };
            eprintln!("{}: {} (expected {})", eval.report.claim, eval.report.verdict, expected);
            Ok(if eval.report.verdict == expected { EXIT_OK } else { EXIT_MISMATCH })
        }
        None => {
            if cli.expect_fail {
                return Err(CliError::Config("--expect-fail does not apply to `all`; set expectations per row".into()));
            }
            let rows = match &cli.manifest {
                Some(path) => manifest::parse_manifest(&std::fs::read_to_string(path)?)?,
                None => manifest::default_manifest(),
            };
            let suite = manifest::run_suite(&rows, tables.source());
            let sidecar = Sidecar {
                wall_time_secs: start.elapsed().as_secs_f64(),
                cache: tables.stats(),
                details: Value::Null,
            };
            emit(cli, &manifest::as_value(&suite), &sidecar)?;
            for line in manifest::summary_lines(&suite) {
                eprintln!("{line}");
            }
            eprintln!("{} of {} rows met their expectation", suite.met, suite.total);
            Ok(if suite.errors > 0 {
                EXIT_ERROR
            } else if suite.all_met {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            })
        }
    }
}

/// Parses arguments, runs, and maps the outcome to the exit contract.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
