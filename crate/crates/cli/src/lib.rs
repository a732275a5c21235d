//! Command-line front end: classification reports, normal forms, entropy
//! surfaces and seeded self-checks.

pub mod selfcheck;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use entangle3::classify::{classify3_with, EntanglementClass, Tolerances};
use entangle3::invariants::{
    invariant_vector, jacobian_rank, tangles, three_tangle, JacobianRank, TangleSet,
    DEFAULT_JACOBIAN_TOL,
};
use entangle3::linalg::C2x2;
use entangle3::normalform::lps;
use entangle3::stabilizer::{self, StabilizerAlgebra};
use entangle3::state::{PureState3, StateJson};
use entangle3::surface::{surface_rows, write_csv, SurfaceFamily, DEFAULT_GRID};
use entangle3::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFCHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_NORMALIZED: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "entangle3",
    version,
    about = "Local-unitary classification of three-qubit pure states"
)]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; `csv` applies to `surface` only.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a state given as `{"amps": [[re, im], ...]}` (8 entries).
    Classify {
        /// Input file; stdin when absent or `-`.
        input: Option<PathBuf>,
        /// Relative rank cutoff of the stabilizer solver.
        #[arg(long, default_value_t = stabilizer::DEFAULT_RANK_TOL)]
        tol_rank: f64,
        /// Amplitude-scale zero test of the classifier.
        #[arg(long, default_value_t = entangle3::classify::DEFAULT_CLASS_TOL)]
        tol_class: f64,
    },
    /// Five-parameter normal form and the local unitary reaching it.
    Normalform { input: Option<PathBuf> },
    /// Single-particle entropy surface of a two-parameter family.
    Surface {
        /// One of `pod`, `slices`, `beechnut`.
        #[arg(long, value_parser = parse_family)]
        family: SurfaceFamily,
        /// Samples per parameter axis.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Seeded randomized invariance and genericity checks.
    Selfcheck {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = stabilizer::DEFAULT_RANK_TOL)]
        tol_rank: f64,
        #[arg(long, default_value_t = entangle3::classify::DEFAULT_CLASS_TOL)]
        tol_class: f64,
    },
}

fn parse_family(s: &str) -> Result<SurfaceFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(io::Error),
    SelfcheckFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(Error::NotNormalized { .. }) => EXIT_NOT_NORMALIZED,
            CliError::Core(Error::ClassifierInconsistency { .. }) => EXIT_INCONSISTENT,
            CliError::Core(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::SelfcheckFailed => EXIT_SELFCHECK,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
            CliError::SelfcheckFailed => write!(f, "self-check failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub fn read_state(input: Option<&PathBuf>) -> Result<PureState3, CliError> {
    let mut text = String::new();
    match input {
        Some(p) if p.as_os_str() != "-" => {
            File::open(p)?.read_to_string(&mut text)?;
        }
        _ => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    parse_state(&text)
}

pub fn parse_state(text: &str) -> Result<PureState3, CliError> {
    let js: StateJson = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("invalid state JSON: {e}")))?;
    PureState3::try_from(js).map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Debug, Serialize)]
pub struct StabilizerReport {
    pub dim: usize,
    pub rank: usize,
    pub residual: f64,
    pub smallest_singular: Vec<f64>,
}

impl From<&StabilizerAlgebra> for StabilizerReport {
    fn from(a: &StabilizerAlgebra) -> Self {
        Self {
            dim: a.dim,
            rank: a.rank,
            residual: a.residual,
            smallest_singular: a.smallest_singular(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub tag: String,
    pub stab_dim: usize,
    pub class: EntanglementClass,
    pub stabilizer: StabilizerReport,
    pub tangles: TangleSet,
    pub three_tangle_discrepancy: f64,
    pub invariants: [f64; 6],
    pub jacobian: JacobianRank,
}

pub fn classify_report(s: &PureState3, tols: Tolerances) -> Result<ClassifyReport, CliError> {
    s.require_normalized()?;
    let class = classify3_with(s, tols)?;
    let alg = stabilizer::solve(s, tols.rank)?;
    Ok(ClassifyReport {
        tag: class.tag.as_str().to_string(),
        stab_dim: class.stab_dim,
        stabilizer: StabilizerReport::from(&alg),
        tangles: tangles(s)?,
        three_tangle_discrepancy: three_tangle(s)?.max_discrepancy,
        invariants: invariant_vector(s).0,
        jacobian: jacobian_rank(s, DEFAULT_JACOBIAN_TOL)?,
        class,
    })
}

fn matrix_json(m: &C2x2) -> serde_json::Value {
    json!(m
        .0
        .iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn normalform_report(s: &PureState3) -> Result<serde_json::Value, CliError> {
    let f = lps(s)?;
    let p = f.params;
    Ok(json!({
        "alpha": p.alpha,
        "beta": p.beta,
        "t": p.t,
        "s": p.s,
        "z": [p.z.re, p.z.im],
        "transform": {
            "phase": f.transform.phase,
            "u": matrix_json(&f.transform.u),
            "v": matrix_json(&f.transform.v),
            "w": matrix_json(&f.transform.w),
        },
    }))
}

fn open_output<'a>(
    path: Option<&PathBuf>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

fn emit_json<T: Serialize>(
    value: &T,
    path: Option<&PathBuf>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let mut w = open_output(path, stdout)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let out = cli.output.as_ref();
    let require_json = |cmd: &str| match cli.format {
        Some(Format::Csv) => Err(CliError::Usage(format!("{cmd} only emits JSON"))),
        _ => Ok(()),
    };
    match &cli.command {
        Command::Classify {
            input,
            tol_rank,
            tol_class,
        } => {
            require_json("classify")?;
            check_tol(*tol_rank, "tol-rank")?;
            check_tol(*tol_class, "tol-class")?;
            let s = read_state(input.as_ref())?;
            let report = classify_report(
                &s,
                Tolerances {
                    class: *tol_class,
                    rank: *tol_rank,
                },
            )?;
            emit_json(&report, out, stdout)
        }
        Command::Normalform { input } => {
            require_json("normalform")?;
            let s = read_state(input.as_ref())?;
            emit_json(&normalform_report(&s)?, out, stdout)
        }
        Command::Surface { family, grid } => {
            if cli.format == Some(Format::Json) {
                return Err(CliError::Usage("surface only emits CSV".into()));
            }
            if *grid < 2 {
                return Err(CliError::Usage(format!(
                    "grid must be at least 2, got {grid}"
                )));
            }
            let rows = surface_rows(*family, *grid)?;
            let w = open_output(out, stdout)?;
            write_csv(&rows, w)?;
            Ok(())
        }
        Command::Selfcheck {
            samples,
            seed,
            tol_rank,
            tol_class,
        } => {
            require_json("selfcheck")?;
            if *samples == 0 {
                return Err(CliError::Usage("samples must be at least 1".into()));
            }
            check_tol(*tol_rank, "tol-rank")?;
            check_tol(*tol_class, "tol-class")?;
            let tols = Tolerances {
                class: *tol_class,
                rank: *tol_rank,
            };
            let summary = selfcheck::run(*samples, *seed, tols);
            emit_json(&summary, out, stdout)?;
            if summary.all_passed {
                Ok(())
            } else {
                Err(CliError::SelfcheckFailed)
            }
        }
    }
}

fn check_tol(t: f64, name: &str) -> Result<(), CliError> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be positive and finite, got {t}"
        )))
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
/// Diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "entangle3: {e}");
            e.exit_code()
        }
    }
}
