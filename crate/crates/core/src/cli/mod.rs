//! Command-line driver: argument parsing, configuration, report output and
//! the basis cache.

pub mod cache;
pub mod commands;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "dirac-sphere", version, about = "Conformal Dirac operator on S^n with Clifford-valued functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Sphere dimension n (functions live on S^n in R^(n+1)).
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Highest degree m.
    #[arg(long = "m-max", global = true, default_value_t = 3)]
    pub m_max: usize,
    /// Truncation degree of T_a.
    #[arg(long, global = true, default_value_t = 1)]
    pub a: usize,
    /// Order of the spinorial Laplacian.
    #[arg(long, global = true, default_value_t = 1)]
    pub d: u32,
    /// Sobolev order s.
    #[arg(long, global = true, default_value_t = 2.0)]
    pub s: f64,
    /// Sobolev order t (t <= s).
    #[arg(long, global = true, default_value_t = 0.5)]
    pub t: f64,
    /// Quadrature exactness degree; chosen per task when omitted.
    #[arg(long = "quad-degree", global = true)]
    pub quad_degree: Option<usize>,
    /// Overrides the default tolerance of every check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Basis cache directory (DIRAC_SPHERE_CACHE takes precedence).
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Worker threads; 1 gives bit-stable output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build (or load) orthonormal H_m, P_m, Q_m bases and print dimensions.
    Basis,
    /// Eigenvalues of the assembled D_s matrix for each degree.
    Spectrum,
    /// Run the full verification suite.
    Verify,
    /// Sobolev norms and estimate ratios of a coefficient file.
    Sobolev { coeffs: PathBuf },
    /// Apply T_a (and the spinorial Laplacian) to a coefficient file.
    Project { coeffs: PathBuf },
    /// Addition theorem and reproducing kernel checks.
    Kernel,
    /// Cauchy theorem and Cauchy integral formula checks.
    Cauchy,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub m_max: usize,
    pub a: usize,
    pub d: u32,
    pub s: f64,
    pub t: f64,
    pub quad_degree: Option<usize>,
    pub tol: Option<f64>,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub output: OutputFormat,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli, env_cache: Option<OsString>) -> Result<Self, Error> {
        if cli.n == 0 {
            return Err(Error::InvalidParameter("--n must be at least 1".into()));
        }
        if cli.n + 1 > crate::clifford::MAX_DIM {
            return Err(Error::UnsupportedDimension(cli.n + 1));
        }
        if !(cli.s >= 0.0 && cli.t >= 0.0 && cli.s.is_finite() && cli.t.is_finite()) {
            return Err(Error::InvalidParameter("Sobolev orders must be finite and nonnegative".into()));
        }
        if let Some(tol) = cli.tol {
            if !(tol > 0.0) {
                return Err(Error::InvalidParameter("--tol must be positive".into()));
            }
        }
        if cli.threads == Some(0) {
            return Err(Error::InvalidParameter("--threads must be positive".into()));
        }
        let cache_dir = env_cache
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| cli.cache_dir.clone());
        Ok(Self {
            n: cli.n,
            m_max: cli.m_max,
            a: cli.a,
            d: cli.d,
            s: cli.s,
            t: cli.t,
            quad_degree: cli.quad_degree,
            tol: cli.tol,
            seed: cli.seed,
            cache_dir,
            output: cli.output,
        })
    }

    /// Quadrature degree for a task needing at least `required`.
    pub fn quad_degree_at_least(&self, required: usize) -> Result<usize, Error> {
        match self.quad_degree {
            Some(q) if q < required => Err(Error::QuadratureTooWeak {
                required,
                available: q,
            }),
            Some(q) => Ok(q),
            None => Ok(required),
        }
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } | Error::Integrity { .. } => EXIT_IO,
        Error::DependentElement { .. } => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Output of a command: the JSON report, an optional table and the verdict.
pub struct Outcome {
    /// Pretty-printed JSON, newline-terminated.
    pub json: String,
    pub table: Option<String>,
    pub pass: bool,
}

/// Parses `args`, runs the command, writes the report to `out` and
/// diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, env_cache: Option<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    if let Some(threads) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let cfg = match RunConfig::from_cli(&cli, env_cache) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = commands::dispatch(&cli.command, &cfg);
    match result {
        Ok(outcome) => {
            let text = match cfg.output {
                OutputFormat::Json => outcome.json,
                OutputFormat::Csv => match outcome.table {
                    Some(t) => t,
                    None => {
                        let _ = writeln!(err, "error: this command has no tabular output; use --output json");
                        return EXIT_USAGE;
                    }
                },
            };
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                let _ = writeln!(err, "error: writing report: {e}");
                return EXIT_IO;
            }
            if outcome.pass {
                EXIT_PASS
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        std::env::var_os(cache::CACHE_ENV),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}
