//! Command-line driver: argument parsing, validated run configurations and
//! the [`run`] entry point used by the `g2n` binary.
//!
//! Exit codes: `0` when every emitted check passed, `1` when at least one
//! report row failed, `2` on usage, range or input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use g2n_core::{SigmaInstance, SigmaMethod};

pub mod commands;
pub mod sequence;
pub mod table;

use commands::Checked;
use sequence::{LoadedSequence, SequenceSource};
pub use table::{emit_table, Cell, Format, Kind, TableRow, APPROX_DIGITS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Range(String),
    #[error("sequence file {}: {message}", path.display())]
    Sequence { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] g2n_core::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Closed,
    Both,
}

impl From<MethodArg> for SigmaMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => SigmaMethod::Direct,
            MethodArg::Closed => SigmaMethod::Closed,
            MethodArg::Both => SigmaMethod::Both,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "g2n",
    version,
    about = "Exact verification suites for G(2,N) and Racah polynomial scans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads; defaults to the number of logical CPUs.
    #[arg(long, env = "G2N_JOBS", global = true)]
    pub jobs: Option<usize>,

    /// Seed for random sequences.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Report elapsed time on stderr.
    #[arg(long, global = true)]
    pub timing: bool,

    /// Invert the verdict of the first report row.
    #[arg(long, hide = true, global = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Σ(N,k) > 0 for every N <= Nmax and 0 <= 2k <= N.
    VerifyGrassmannian {
        #[arg(long = "Nmax", default_value_t = 40)]
        n_max: u32,
        /// Restrict to one k.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// Commutator relation and τ_n > 0 on projective space, 1 <= n <= nmax.
    VerifyPn {
        #[arg(long, default_value_t = 30)]
        nmax: u32,
    },
    /// Orthogonality of R_n(·,T) for every T in Tmin..=Tmax.
    VerifyOrtho {
        #[command(flatten)]
        range: TRange,
    },
    /// The alternating inequality for every n < T.
    VerifyNeeded {
        #[command(flatten)]
        range: TRange,
        /// `harmonic`, `random` or a path to a file of values H_1, H_2, ...
        #[arg(long, default_value = "harmonic")]
        sequence: SequenceSource,
        /// Accept arbitrary positive sequences; results are exploratory.
        #[arg(long)]
        exploratory: bool,
    },
    /// Exhaustive exact search for |R_n(s,T)| > 1.
    ScanBound {
        #[arg(long = "Tmin", default_value_t = 3)]
        t_min: u32,
        #[arg(long = "Tmax", default_value_t = 50)]
        t_max: u32,
    },
    /// Σ(N,k) for one instance.
    Sigma {
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Plot-ready tables without pass/fail checks.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum TableKind {
    /// R_n(s,T) for 0 <= n, s <= T-1, sorted by (T, n, s).
    Racah {
        #[command(flatten)]
        range: TRange,
    },
    /// Σ(N,k) in closed form, sorted by (N, k).
    Sigma {
        #[arg(long = "Nmax", default_value_t = 20)]
        n_max: u32,
    },
}

/// Either a single `--T` or a `--Tmin`/`--Tmax` range.
#[derive(Debug, Args, Clone, Copy)]
pub struct TRange {
    #[arg(long = "T", conflicts_with_all = ["t_min", "t_max"])]
    pub t: Option<u32>,
    #[arg(long = "Tmin")]
    pub t_min: Option<u32>,
    #[arg(long = "Tmax")]
    pub t_max: Option<u32>,
}

impl TRange {
    fn resolve(&self, default: (u32, u32)) -> Result<(u32, u32), CliError> {
        let (lo, hi) = match self.t {
            Some(t) => (t, t),
            None => (
                self.t_min.unwrap_or(default.0),
                self.t_max.unwrap_or(default.1),
            ),
        };
        check_t_range(lo, hi)?;
        Ok((lo, hi))
    }
}

fn check_t_range(lo: u32, hi: u32) -> Result<(), CliError> {
    if lo < 3 {
        return Err(CliError::Range(format!("T must be at least 3, got {lo}")));
    }
    if hi < lo {
        return Err(CliError::Range(format!("empty T range {lo}..={hi}")));
    }
    Ok(())
}

/// A validated request. Construction checks every range and loads any
/// sequence file, so [`run`] only fails on I/O.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub suite: Suite,
    pub format: Format,
    pub jobs: Option<usize>,
    pub timing: bool,
    pub inject_fault: bool,
}

#[derive(Debug, Clone)]
pub enum Suite {
    Grassmannian {
        instances: Vec<SigmaInstance>,
        method: SigmaMethod,
    },
    Pn {
        n_max: u32,
    },
    Ortho {
        t_min: u32,
        t_max: u32,
    },
    Needed {
        t_min: u32,
        t_max: u32,
        sequence: LoadedSequence,
        exploratory: bool,
    },
    Scan {
        t_min: u32,
        t_max: u32,
    },
    RacahTable {
        t_min: u32,
        t_max: u32,
    },
    SigmaTable {
        instances: Vec<SigmaInstance>,
    },
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let g = &cli.global;
        if g.jobs == Some(0) {
            return Err(CliError::Range("--jobs must be positive".into()));
        }
        let suite = match &cli.command {
            Command::VerifyGrassmannian { n_max, k, method } => {
                if *n_max == 0 {
                    return Err(CliError::Range("--Nmax must be positive".into()));
                }
                let instances: Vec<SigmaInstance> = SigmaInstance::all_up_to(*n_max)
                    .into_iter()
                    .filter(|i| k.is_none_or(|k| i.k() == k))
                    .collect();
                if instances.is_empty() {
                    return Err(CliError::Range(format!(
                        "no instance with N <= {n_max} and k = {}",
                        k.unwrap_or(0)
                    )));
                }
                Suite::Grassmannian {
                    instances,
                    method: (*method).into(),
                }
            }
            Command::VerifyPn { nmax } => {
                if *nmax == 0 {
                    return Err(CliError::Range("--nmax must be positive".into()));
                }
                Suite::Pn { n_max: *nmax }
            }
            Command::VerifyOrtho { range } => {
                let (t_min, t_max) = range.resolve((3, 25))?;
                Suite::Ortho { t_min, t_max }
            }
            Command::VerifyNeeded {
                range,
                sequence,
                exploratory,
            } => {
                let (t_min, t_max) = range.resolve((3, 40))?;
                let sequence = LoadedSequence::load(sequence, g.seed, *exploratory, t_max)?;
                Suite::Needed {
                    t_min,
                    t_max,
                    sequence,
                    exploratory: *exploratory,
                }
            }
            Command::ScanBound { t_min, t_max } => {
                check_t_range(*t_min, *t_max)?;
                Suite::Scan {
                    t_min: *t_min,
                    t_max: *t_max,
                }
            }
            Command::Sigma { big_n, k, method } => {
                let inst = SigmaInstance::new(*big_n, *k).map_err(|_| {
                    CliError::Range(format!(
                        "need N >= 1 and 0 <= 2k <= N, got N={big_n}, k={k}"
                    ))
                })?;
                Suite::Grassmannian {
                    instances: vec![inst],
                    method: (*method).into(),
                }
            }
            Command::Table { kind } => match kind {
                TableKind::Racah { range } => {
                    let (t_min, t_max) = range.resolve((3, 10))?;
                    Suite::RacahTable { t_min, t_max }
                }
                TableKind::Sigma { n_max } => Suite::SigmaTable {
                    instances: SigmaInstance::all_up_to(*n_max),
                },
            },
        };
        Ok(RunConfig {
            suite,
            format: g.format,
            jobs: g.jobs,
            timing: g.timing,
            inject_fault: g.inject_fault,
        })
    }
}

fn emit_checked<R, W>(mut rows: Vec<R>, cfg: &RunConfig, out: &mut W) -> Result<i32, CliError>
where
    R: TableRow + Checked,
    W: Write,
{
    if cfg.inject_fault {
        if let Some(first) = rows.first_mut() {
            first.corrupt();
        }
    }
    emit_table(&rows, cfg.format, out)?;
    Ok(if rows.iter().all(Checked::ok) {
        EXIT_OK
    } else {
        EXIT_FAILED_CHECK
    })
}

/// Executes `cfg`, writing the report table to `out` and diagnostics to
/// stderr. Returns the exit code.
pub fn run<W: Write>(cfg: &RunConfig, out: &mut W) -> Result<i32, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build()?;
    let start = std::time::Instant::now();
    let mut buf = Vec::new();
    let code = pool.install(|| run_suite(cfg, &mut buf))?;
    out.write_all(&buf)?;
    out.flush()?;
    if cfg.timing {
        eprintln!("elapsed_ms: {}", start.elapsed().as_millis());
    }
    Ok(code)
}

fn run_suite<W: Write>(cfg: &RunConfig, out: &mut W) -> Result<i32, CliError> {
    match &cfg.suite {
        Suite::Grassmannian { instances, method } => {
            emit_checked(commands::sigma_rows(instances, *method), cfg, out)
        }
        Suite::Pn { n_max } => emit_checked(commands::pn_rows(*n_max), cfg, out),
        Suite::Ortho { t_min, t_max } => {
            emit_checked(commands::ortho_rows(*t_min, *t_max)?, cfg, out)
        }
        Suite::Needed {
            t_min,
            t_max,
            sequence,
            exploratory,
        } => {
            if *exploratory {
                eprintln!("note: exploratory mode; arbitrary positive sequences are outside the proven class");
            }
            emit_checked(
                commands::needed_rows(*t_min, *t_max, sequence, *exploratory)?,
                cfg,
                out,
            )
        }
        Suite::Scan { t_min, t_max } => {
            let report = g2n_core::racah::bound_scan(*t_min, *t_max, cfg.timing)?;
            for n in &report.notes {
                eprintln!("note: {n}");
            }
            match cfg.format {
                Format::Csv => emit_checked(commands::scan_rows(&report), cfg, out),
                Format::Json => {
                    let v = commands::scan_json(&report, cfg.inject_fault)?;
                    writeln!(out, "{}", serde_json::to_string(&v)?)?;
                    Ok(if v["passed"] == true {
                        EXIT_OK
                    } else {
                        EXIT_FAILED_CHECK
                    })
                }
            }
        }
        Suite::RacahTable { t_min, t_max } => {
            emit_table(
                &commands::racah_value_rows(*t_min, *t_max)?,
                cfg.format,
                out,
            )?;
            Ok(EXIT_OK)
        }
        Suite::SigmaTable { instances } => {
            emit_table(&commands::sigma_value_rows(instances), cfg.format, out)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let cfg = match RunConfig::from_cli(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match run(&cfg, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
