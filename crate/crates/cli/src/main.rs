//! Command-line front end: one subcommand per pipeline stage plus the full
//! pipeline. All output is JSON; exit codes are 0 ok, 2 parse or usage,
//! 3 validation, 4 threshold refusal, 5 internal invariant.

mod expansion;
mod pipeline;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use geolocal::chainmap::{verify_chain_map, ChainMap};
use geolocal::code::{
    is_reasonable_full, minimalize_code, parameters, parse_alist, read_code, CodeFile,
    DistanceMethod, Side,
};
use geolocal::complex::{ComplexFile, DummyPolicy, SquareSubspaceComplex};
use geolocal::embed::{choose_l, embed_heuristic, verify_embedding, Embedding, LayoutOptions};
use geolocal::subdivide::{check_l, subdivide_with, SubdividedComplex};
use geolocal::{CssCode, Error, Exec, Limits};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "geolocal",
    version,
    about = "Geometrically local codes from CSS LDPC codes"
)]
struct Cli {
    /// JSON file overriding exhaustive-search limits (missing fields keep defaults).
    #[arg(long, global = true)]
    limits: Option<PathBuf>,
    /// Run every search on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every stage and write all artifacts to a directory.
    Pipeline(pipeline::PipelineArgs),
    /// Check shapes, commutation and reasonableness.
    Validate(CodeSource),
    /// Replace generators by minimal ones.
    Minimalize {
        #[command(flatten)]
        source: CodeSource,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the square complex (full faces plus dummy faces).
    ExtractComplex {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long, default_value = "all")]
        dummy: DummyPolicy,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Subdivide and write the new code.
    Subdivide {
        #[command(flatten)]
        sub: SubdivisionArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the subdivided complex (vertices, levels, edges).
        #[arg(long)]
        complex_output: Option<PathBuf>,
    },
    /// Dimension, distances and energy barriers.
    Params {
        #[command(flatten)]
        source: CodeSource,
        /// `exact` or `bounded:W`.
        #[arg(long, default_value = "exact")]
        distance: String,
    },
    /// Build and check the chain map into the subdivided code.
    Chainmap {
        #[command(flatten)]
        sub: SubdivisionArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lay the subdivided complex out in Z^D.
    Embed {
        #[command(flatten)]
        sub: SubdivisionArgs,
        /// Positions tried above a taken point before sharing it.
        #[arg(long, default_value_t = 4)]
        column_height: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recompute locality and density of an embedding.
    VerifyEmbedding {
        embedding: PathBuf,
        #[command(flatten)]
        sub: SubdivisionArgs,
        #[arg(long, default_value_t = f64::INFINITY)]
        a_max: f64,
        #[arg(long, default_value_t = usize::MAX)]
        b_max: usize,
    },
    /// Measure expansion constants of local pieces or of a whole code.
    Expansion(expansion::ExpansionArgs),
}

/// A code from a JSON file or from two alist matrices.
#[derive(Args, Clone)]
pub struct CodeSource {
    /// Code JSON file.
    #[arg(required_unless_present = "hx")]
    code: Option<PathBuf>,
    /// X-check matrix in alist format.
    #[arg(long, requires = "hz", conflicts_with = "code")]
    hx: Option<PathBuf>,
    /// Z-check matrix in alist format.
    #[arg(long, requires = "hx")]
    hz: Option<PathBuf>,
}

impl CodeSource {
    pub fn load(&self) -> Result<CssCode, Error> {
        match (&self.code, &self.hx, &self.hz) {
            (Some(path), _, _) => read_code(path),
            (None, Some(hx), Some(hz)) => {
                let read = |p: &Path| -> Result<_, Error> {
                    let text = std::fs::read_to_string(p)?;
                    parse_alist(&text).map_err(|e| Error::Format(format!("{}: {e}", p.display())))
                };
                let name = hx
                    .file_stem()
                    .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
                CssCode::new(name, read(hx)?, read(hz)?)
            }
            _ => Err(Error::Argument(
                "give a code file or both --hx and --hz".into(),
            )),
        }
    }
}

#[derive(Args, Clone)]
pub struct SubdivisionArgs {
    #[command(flatten)]
    source: CodeSource,
    /// Complex JSON from `extract-complex`; built from the code otherwise.
    #[arg(long)]
    complex: Option<PathBuf>,
    #[arg(long, default_value = "all")]
    dummy: DummyPolicy,
    /// Subdivision size (odd, ≥ 3). Chosen from `--c` and `--D` if absent.
    #[arg(long = "L")]
    l: Option<usize>,
    /// Scale in the automatic choice `L ≥ c·N^(1/(D−2))`.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Target lattice dimension.
    #[arg(long = "D", default_value_t = 3)]
    d: usize,
}

pub struct Subdivided {
    pub code: CssCode,
    pub sub: SubdividedComplex,
}

impl SubdivisionArgs {
    pub fn load(&self, exec: Exec) -> Result<Subdivided, Error> {
        let code = self.source.load()?;
        code.require_commuting()?;
        let cx = match &self.complex {
            Some(path) => {
                let file: ComplexFile = read_json(path)?;
                file.to_complex(&code)?
            }
            None => SquareSubspaceComplex::build(&code, self.dummy)?,
        };
        let l = match self.l {
            Some(l) => {
                check_l(l)?;
                l
            }
            None => choose_l(&cx, self.d, self.c)?,
        };
        let sub = subdivide_with(&cx, l, exec)?;
        Ok(Subdivided { code, sub })
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, Error> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Writes to `path`, or to stdout when absent.
pub fn emit<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), Error> {
    let text = to_json(value)?;
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

pub fn parse_distance(s: &str) -> Result<DistanceMethod, Error> {
    match s.split_once(':') {
        None if s == "exact" => Ok(DistanceMethod::Exact),
        Some(("bounded", w)) => w
            .parse()
            .map(DistanceMethod::BoundedWeight)
            .map_err(|_| Error::Argument(format!("bad weight in {s:?}"))),
        _ => Err(Error::Argument(format!(
            "distance method must be exact or bounded:W, got {s:?}"
        ))),
    }
}

/// A failure with its exit status.
pub struct Failure {
    pub status: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Format(_) | Error::Json(_) | Error::Io(_) | Error::Argument(_) => 2,
            Error::Shape { .. }
            | Error::NotCommuting { .. }
            | Error::Validation(_)
            | Error::NoLogicals => 3,
            Error::Threshold { .. } => 4,
            Error::Invariant(_) => 5,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn load_limits(cli: &Cli) -> Result<Limits, Error> {
    let mut limits: Limits = match &cli.limits {
        Some(path) => read_json(path)?,
        None => Limits::default(),
    };
    limits.exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    Ok(limits)
}

fn configure_threads() -> Result<(), Error> {
    let Ok(value) = std::env::var("GEOLOCAL_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().map_err(|_| {
        Error::Argument(format!("GEOLOCAL_THREADS must be a number, got {value:?}"))
    })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Argument(format!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

#[derive(Serialize)]
struct ValidateOutput {
    validation: geolocal::code::ValidationReport,
    reasonable: Option<geolocal::code::ReasonableReport>,
    /// Qubits without Z checks, then without X checks.
    idle_qubits: [Vec<usize>; 2],
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let limits = load_limits(&cli)?;
    match cli.command {
        Command::Pipeline(args) => pipeline::run(&args, &limits),
        Command::Validate(source) => {
            let code = source.load()?;
            let validation = code.validate();
            let reasonable = if validation.commutes {
                Some(is_reasonable_full(&code, &limits)?)
            } else {
                None
            };
            let out = ValidateOutput {
                reasonable,
                idle_qubits: [code.idle_qubits(Side::X), code.idle_qubits(Side::Z)],
                validation,
            };
            emit(&out, None)?;
            match code.require_commuting() {
                Ok(()) => Ok(()),
                Err(e) => Err(e.into()),
            }
        }
        Command::Minimalize { source, output } => {
            let code = source.load()?;
            code.require_commuting()?;
            let min = minimalize_code(&code, &limits)?;
            emit(&CodeFile::from_code(&min), output.as_deref())?;
            Ok(())
        }
        Command::ExtractComplex {
            source,
            dummy,
            output,
        } => {
            let code = source.load()?;
            code.require_commuting()?;
            let cx = SquareSubspaceComplex::build(&code, dummy)?;
            emit(&cx.to_file(), output.as_deref())?;
            Ok(())
        }
        Command::Subdivide {
            sub,
            output,
            complex_output,
        } => {
            let s = sub.load(limits.exec)?;
            let code_l = s.sub.extract_code()?;
            if let Some(path) = complex_output {
                emit(&s.sub.to_file(), Some(&path))?;
            }
            emit(&CodeFile::from_code(&code_l), output.as_deref())?;
            Ok(())
        }
        Command::Params { source, distance } => {
            let code = source.load()?;
            let method = parse_distance(&distance)?;
            emit(&parameters(&code, method, &limits)?, None)?;
            Ok(())
        }
        Command::Chainmap { sub, output } => {
            let s = sub.load(limits.exec)?;
            let code_l = s.sub.extract_code()?;
            let map = ChainMap::build(&s.sub);
            let check = verify_chain_map(&s.code, &code_l, &map)?;
            emit(&map.to_file(), output.as_deref())?;
            if output.is_some() {
                emit(&check, None)?;
            }
            if check.holds() {
                Ok(())
            } else {
                Err(Error::Invariant(format!("chain map does not commute: {check:?}")).into())
            }
        }
        Command::Embed {
            sub,
            column_height,
            output,
        } => {
            let s = sub.load(limits.exec)?;
            let options = LayoutOptions {
                d: sub.d,
                column_height,
            };
            emit(&embed_heuristic(&s.sub, options)?, output.as_deref())?;
            Ok(())
        }
        Command::VerifyEmbedding {
            embedding,
            sub,
            a_max,
            b_max,
        } => {
            let emb: Embedding = read_json(&embedding)?;
            let s = sub.load(limits.exec)?;
            emit(&verify_embedding(&s.sub, &emb, a_max, b_max)?, None)?;
            Ok(())
        }
        Command::Expansion(args) => expansion::run(&args, &limits),
    }
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
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
