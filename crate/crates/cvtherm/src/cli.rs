//! Command-line front end: `analyze`, `certify`, `reach`, `decompose`, and
//! `gen-channel`, all reading and writing the crate's JSON/CSV formats.
//!
//! Conventions shared by every command:
//!
//! * data goes to stdout, or to `--out` when given; nothing else is printed
//!   on stdout;
//! * errors go to stderr as a single-line JSON diagnostic and exit code 1;
//! * all randomness flows from `--seed`; when the flag is absent a seed is
//!   drawn, printed to stderr as `{"seed": N}`, and used, so any run can be
//!   reproduced byte for byte;
//! * `certify` exits 0 for `NotExcluded`, 2 for `Forbidden`, 1 on error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use serde::Serialize;

use crate::channel::BLTOChannel;
use crate::monotones::profile;
use crate::reach::{
    emit_region, sample_reachable, theorem_bound_region, GridSpec, RegionData, RegionFormat,
};
use crate::state::GaussianState;
use crate::symplectic::random_orthogonal_symplectic;
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "cvtherm",
    about = "Gaussian-state thermodynamics: profiles, transition certification, reachable regions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full monotone profile of a state.
    Analyze(AnalyzeArgs),
    /// Test a candidate transition against every law.
    Certify(CertifyArgs),
    /// Sample reachable single-mode outputs and rasterize the outer bounds.
    Reach(ReachArgs),
    /// Print the Williamson and Bloch-Messiah decompositions of a state.
    Decompose(DecomposeArgs),
    /// Write a random channel with a fresh Haar matrix.
    GenChannel(GenChannelArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// State file (JSON).
    state: PathBuf,
    /// Bath thermal level (>= 1).
    #[arg(long)]
    eta: f64,
    /// Apply this channel (JSON) before profiling.
    #[arg(long)]
    channel: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    /// Initial state file (JSON).
    rho: PathBuf,
    /// Candidate final state file (JSON).
    sigma: PathBuf,
    #[arg(long)]
    eta: f64,
    /// Law tolerance: a law fails only when violated by more than this.
    #[arg(long, default_value_t = crate::certify::DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReachArgs {
    /// Initial state file (JSON).
    state: PathBuf,
    #[arg(long)]
    eta: f64,
    /// Number of random channels to sample.
    #[arg(long)]
    samples: usize,
    /// Maximum ancilla count per sample.
    #[arg(long, default_value_t = 3)]
    anc_max: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rasterize the outer bounds on this lattice: x0,x1,y0,y1,res.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    /// Output format; inferred from the --out extension when omitted.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Worker threads for sampling (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = crate::certify::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct DecomposeArgs {
    /// State file (JSON).
    state: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenChannelArgs {
    #[arg(long)]
    m_in: usize,
    #[arg(long)]
    m_anc: usize,
    #[arg(long)]
    eta: f64,
    /// Kept output modes, comma separated (default: the first m_in modes).
    #[arg(long, value_delimiter = ',')]
    kept: Option<Vec<usize>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_grid(text: &str) -> std::result::Result<GridSpec, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 5 {
        return Err("expected x0,x1,y0,y1,res".into());
    }
    let nums: Vec<f64> = parts[..4]
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<_, String>>()?;
    let res: usize = parts[4].parse().map_err(|e: std::num::ParseIntError| e.to_string())?;
    let spec = GridSpec {
        tau1_range: (nums[0], nums[1]),
        tau2_range: (nums[2], nums[3]),
        resolution: res,
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

/// Entry point for the binary.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            let diag = serde_json::json!({ "error": err.to_string() });
            eprintln!("{diag}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Reach(args) => cmd_reach(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::GenChannel(args) => cmd_gen_channel(args),
    }
}

fn read_state(path: &Path) -> Result<GaussianState> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Other(format!("cannot read {}: {e}", path.display())))?;
    let state: GaussianState = serde_json::from_str(&text)?;
    Ok(state)
}

fn read_channel(path: &Path) -> Result<BLTOChannel> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Other(format!("cannot read {}: {e}", path.display())))?;
    let channel: BLTOChannel = serde_json::from_str(&text)?;
    Ok(channel)
}

fn write_output<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            let s: u64 = rand::random();
            eprintln!("{}", serde_json::json!({ "seed": s }));
            s
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<ExitCode> {
    let mut state = read_state(&args.state)?;
    if let Some(channel_path) = &args.channel {
        let channel = read_channel(channel_path)?;
        if (channel.eta() - args.eta).abs() > 1e-12 {
            return Err(Error::IncompatibleBath(channel.eta(), args.eta));
        }
        state.ensure_valid(crate::state::PHYSICS_TOL)?;
        state = channel.apply(&state)?;
    }
    let report = profile(&state, args.eta)?;
    write_output(&report, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(args: CertifyArgs) -> Result<ExitCode> {
    let rho = read_state(&args.rho)?;
    let sigma = read_state(&args.sigma)?;
    let verdict = crate::certify::certify_transition(&rho, &sigma, args.eta, args.tol)?;
    write_output(&verdict, args.out.as_deref())?;
    Ok(if verdict.is_forbidden() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_reach(args: ReachArgs) -> Result<ExitCode> {
    let state = read_state(&args.state)?;
    let seed = resolve_seed(args.seed);
    let samples = match args.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Other(format!("thread pool: {e}")))?;
            pool.install(|| sample_reachable(&state, args.eta, args.anc_max, args.samples, seed))?
        }
        None => sample_reachable(&state, args.eta, args.anc_max, args.samples, seed)?,
    };
    let grid = match args.grid {
        Some(spec) => {
            let mut grid = theorem_bound_region(&state, args.eta, spec, args.tol)?;
            grid.mark_samples(&samples);
            Some(grid)
        }
        None => None,
    };
    let data = RegionData { samples, grid };
    let format = match args.format.as_deref() {
        Some("json") => RegionFormat::Json,
        Some(_) => RegionFormat::Csv,
        None => match args.out.as_deref().and_then(|p| p.extension()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => RegionFormat::Json,
            _ => RegionFormat::Csv,
        },
    };
    match args.out.as_deref() {
        Some(path) => emit_region(&data, path, format)?,
        None => {
            // stream through a temp file to reuse the single writer path
            let dir = std::env::temp_dir();
            let path = dir.join(format!("cvtherm-reach-{}.tmp", std::process::id()));
            emit_region(&data, &path, format)?;
            let text = std::fs::read_to_string(&path)?;
            let _ = std::fs::remove_file(&path);
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

#[derive(Serialize)]
struct DecomposeOutput {
    williamson: WilliamsonOutput,
    bloch_messiah: BlochMessiahOutput,
}

#[derive(Serialize)]
struct WilliamsonOutput {
    #[serde(rename = "S")]
    s: Vec<Vec<f64>>,
    nu: Vec<f64>,
    reconstruction_error: f64,
}

#[derive(Serialize)]
struct BlochMessiahOutput {
    #[serde(rename = "O1")]
    o1: Vec<Vec<f64>>,
    r: Vec<f64>,
    #[serde(rename = "O2")]
    o2: Vec<Vec<f64>>,
    reconstruction_error: f64,
}

fn cmd_decompose(args: DecomposeArgs) -> Result<ExitCode> {
    let state = read_state(&args.state)?;
    state.ensure_valid(crate::state::PHYSICS_TOL)?;
    let w = crate::decomp::williamson(state.cov())?;
    let bm = crate::decomp::bloch_messiah(&w.s)?;
    let out = DecomposeOutput {
        williamson: WilliamsonOutput {
            s: matrix_rows(&w.s),
            nu: w.nu.clone(),
            reconstruction_error: (w.reconstruct() - state.cov()).amax(),
        },
        bloch_messiah: BlochMessiahOutput {
            o1: matrix_rows(bm.o1.matrix()),
            r: bm.r.clone(),
            o2: matrix_rows(bm.o2.matrix()),
            reconstruction_error: (bm.reconstruct() - &w.s).amax(),
        },
    };
    write_output(&out, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen_channel(args: GenChannelArgs) -> Result<ExitCode> {
    let seed = resolve_seed(args.seed);
    let kept = args.kept.unwrap_or_else(|| (0..args.m_in).collect());
    let matrix = random_orthogonal_symplectic(args.m_in + args.m_anc, seed)?;
    let channel = BLTOChannel::new(args.m_in, args.m_anc, args.eta, matrix, kept)?;
    write_output(&channel, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
