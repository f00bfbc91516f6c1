//! `selzet` command-line front end.
//!
//! Exit status: 0 on success, 1 when an asserted residual misses its
//! tolerance, 2 for malformed arguments or input files, 3 when the library
//! reports a numerical domain error (pole, divergence, unmet tail bound).

mod commands;
mod output;
mod parse;

use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{write_rows, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] selzet::Error),
    #[error("cannot write output: {0}")]
    Output(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "selzet", version, about = "Two-variable Selberg zeta functions and their building blocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format (JSON lines or CSV with a fixed header).
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write rows here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tail tolerance for evaluations; asserted residual tolerance for checks.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Ignore classes with norm above this.
    #[arg(long = "norm-cutoff")]
    pub norm_cutoff: Option<f64>,
    /// Fixed length of the binomial tower in product evaluations.
    #[arg(long = "n-cutoff")]
    pub n_cutoff: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaMethod {
    Auto,
    Series,
    Cont,
    Int,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProductKind {
    /// Z(s, t)
    TwoVar,
    /// ζ_Γ(s)
    Ruelle,
    /// Z_Γ(s)
    Classic,
    /// Z^(r)(s), needs --rank
    Rank,
    /// ∂_s^{m+1} log Z(s, t), needs --m
    Logderiv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DetKind {
    /// detΓ(s, t)
    Gamma,
    /// detS(s, n)
    Sine,
    /// det(Δ + s(1-s)), zero mode skipped unless --include-zero-mode
    Laplacian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Binomial Hurwitz zeta ζ_t(z, s), or its z-derivative at 0.
    ZetaT {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: ZetaMethod,
        /// Emit ∂_z ζ_t(z, s) at z = 0 instead (ignores --z).
        #[arg(long)]
        deriv: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Two-variable gamma function Γ(s, t).
    Gamma2 {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        common: Common,
    },
    /// Multiple sine S(s, n).
    Msin {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate conjugacy classes from hyperbolic generators.
    SpectrumEnum {
        /// Generator `a,b,c,d` (row-major, determinant 1); repeat for more.
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
        #[arg(long, default_value_t = 2)]
        genus: u32,
        #[arg(long = "max-word-len", default_value_t = 8)]
        max_word_len: usize,
        #[arg(long)]
        threads: Option<usize>,
        /// Add every missing power of a primitive class below the cutoff.
        #[arg(long = "close-powers")]
        close_powers: bool,
        /// Summary rows go here; the spectrum itself goes to --out.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Summarize a length-spectrum or eigenvalue file.
    SpectrumInfo {
        #[arg(long)]
        spectrum: Option<PathBuf>,
        #[arg(long)]
        eigen: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Euler products over a length spectrum.
    Zprod {
        #[arg(long, value_enum)]
        kind: ProductKind,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        spectrum: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Zeta-regularized spectral determinants.
    Det {
        #[arg(long, value_enum)]
        kind: DetKind,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
        /// Keep the zero eigenvalue in the Laplacian determinant.
        #[arg(long = "include-zero-mode")]
        include_zero_mode: bool,
        #[arg(long)]
        eigen: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Both sides of the trace formula and their difference.
    TraceCheck {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        m: u32,
        /// Omitted: no geodesics.
        #[arg(long)]
        spectrum: Option<PathBuf>,
        /// Omitted: no eigenvalues.
        #[arg(long)]
        eigen: Option<PathBuf>,
        #[arg(long)]
        genus: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Functional-equation residuals on an eigenvalue list.
    FeCheck {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Derivative order; defaults to the smallest admissible one.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        eigen: PathBuf,
        /// Extra spectral parameters for the per-term reflection check.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long)]
        genus: Option<u32>,
        /// Completion polynomial coefficients `p0,p1,...` for the Ẑ report.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the invariant battery and print a summary table on stderr.
    Suite {
        /// Only checks whose id starts with one of these.
        #[arg(long)]
        filter: Vec<String>,
        /// Only checks tagged with this acceptance criterion.
        #[arg(long)]
        criterion: Option<u8>,
        /// List check ids and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SELZET_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("SELZET_THREADS={v:?} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))
}

fn emit(rows: &[output::Row], common: &Common) -> Result<(), CliError> {
    match &common.out {
        Some(path) => write_rows(rows, common.format, BufWriter::new(File::create(path)?)),
        None => write_rows(rows, common.format, io::stdout().lock()),
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    use commands as c;
    let (rows, common) = match cli.command {
        Command::ZetaT { z, s, t, method, deriv, common } => (c::zeta_t(&z, &s, &t, method, deriv, &common)?, common),
        Command::Gamma2 { s, t, common } => (c::gamma2(&s, &t, &common)?, common),
        Command::Msin { s, n, common } => (c::msin(&s, &n, &common)?, common),
        Command::SpectrumEnum {
            generators,
            genus,
            max_word_len,
            threads,
            close_powers,
            summary,
            common,
        } => {
            let rows = c::spectrum_enum(&generators, genus, max_word_len, threads, close_powers, &common)?;
            if let Some(path) = summary {
                write_rows(&rows, common.format, BufWriter::new(File::create(path)?))?;
            }
            return Ok(true);
        }
        Command::SpectrumInfo { spectrum, eigen, common } => (c::spectrum_info(spectrum.as_deref(), eigen.as_deref())?, common),
        Command::Zprod {
            kind,
            s,
            t,
            m,
            rank,
            spectrum,
            common,
        } => (c::zprod(kind, &s, t.as_deref(), m, rank, &spectrum, &common)?, common),
        Command::Det {
            kind,
            s,
            t,
            n,
            sign,
            include_zero_mode,
            eigen,
            common,
        } => (c::det(kind, &s, t.as_deref(), n.as_deref(), sign, include_zero_mode, &eigen, &common)?, common),
        Command::TraceCheck {
            s,
            t,
            m,
            spectrum,
            eigen,
            genus,
            common,
        } => (c::trace_check(&s, &t, m, spectrum.as_deref(), eigen.as_deref(), genus, &common)?, common),
        Command::FeCheck {
            n,
            s,
            m,
            eigen,
            y,
            genus,
            p,
            common,
        } => (c::fe_check(&n, &s, m, &eigen, y.as_deref(), genus, p.as_deref(), &common)?, common),
        Command::Suite {
            filter,
            criterion,
            list,
            common,
        } => (c::suite(&filter, criterion, list)?, common),
    };
    emit(&rows, &common)?;
    Ok(rows.iter().all(|r| r.passed != Some(false)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("selzet: residual above tolerance");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("selzet: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
