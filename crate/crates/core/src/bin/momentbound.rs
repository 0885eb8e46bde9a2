use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use momentbound::model::{parse_model, ReactionNetwork};
use momentbound::report::{
    bench_csv, bench_failed, bench_rows, bound_report, decompose_report, parse_moment_list,
    parse_mu_list, simulate_csv, simulate_report, BoundRequest,
};
use momentbound::sdp::{
    assemble_with, auto_species_scale, export_problem, AssembleOptions, Mode, Sense, SolverSettings,
};
use momentbound::ssa::SimConfig;
use momentbound::Error;

#[derive(Parser)]
#[command(name = "momentbound", version, about = "Stationary moment bounds for reaction networks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Original,
    Decomposed,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lower and upper bounds of a linear moment objective.
    Bound {
        model: PathBuf,
        /// Truncation order(s): `3`, `2,3,4` or `2..4`.
        #[arg(long)]
        mu: String,
        /// Objective such as `E[X2]` or `E[X1^2] - E[X1]`.
        #[arg(long)]
        objective: String,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also impose full localizing matrices for species that are never reactants.
        #[arg(long)]
        localize_all: bool,
        /// Moment scaling: `auto` (per-species, from an order-2 presolve) or a
        /// uniform base (`1` disables).
        #[arg(long, default_value = "auto")]
        scale: String,
        /// Cross-check the bounds against a simulation of this length.
        #[arg(long)]
        ssa_t_end: Option<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the conic problem of the first order and mode as JSON here.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Sparsity sets, partitions and block accounting.
    Decompose {
        model: PathBuf,
        #[arg(long)]
        mu: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve timings per order, mode and sense as CSV.
    Bench {
        model: PathBuf,
        #[arg(long)]
        mu_list: String,
        #[arg(long)]
        objective: String,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// As for `bound`.
        #[arg(long, default_value = "auto")]
        scale: String,
    },
    /// Time-averaged moments from stochastic simulation.
    Simulate {
        model: PathBuf,
        #[arg(long)]
        t_end: f64,
        /// Defaults to a tenth of `--t-end`.
        #[arg(long)]
        burn_in: Option<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Monomials, e.g. `X1,X1^2,X1*X2`.
        #[arg(long)]
        moments: String,
        #[arg(long, default_value_t = 1)]
        trajectories: usize,
        /// Initial copy numbers, e.g. `X1=5,X2=0`; unspecified species start at 0.
        #[arg(long)]
        init: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn load(path: &Path) -> Result<(String, String, ReactionNetwork), Error> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let net = parse_model(&text)?;
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    Ok((name, text, net))
}

fn write_out(out: &Option<PathBuf>, body: &[u8]) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, body).map_err(|e| io_err(p, e)),
        None => std::io::stdout()
            .write_all(body)
            .map_err(|e| io_err(Path::new("<stdout>"), e)),
    }
}

fn json<T: serde::Serialize>(v: &T) -> Result<Vec<u8>, Error> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    Ok(s)
}

fn parse_init(net: &ReactionNetwork, spec: &str) -> Result<Vec<i64>, Error> {
    let mut x = vec![0; net.n_species()];
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("expected NAME=COUNT, got '{item}'")))?;
        let j = net
            .species_index(name.trim())
            .ok_or_else(|| Error::Usage(format!("unknown species '{}'", name.trim())))?;
        x[j] = v
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("invalid count in '{item}'")))?;
    }
    Ok(x)
}

fn solver_settings(net: &ReactionNetwork, scale: &str) -> Result<SolverSettings, Error> {
    let base = SolverSettings::from_env();
    if scale.trim() == "auto" {
        let scales = auto_species_scale(net, &base);
        return Ok(base.with_species_scale(scales));
    }
    match scale.trim().parse::<f64>() {
        Ok(s) if s.is_finite() && s > 0.0 => Ok(base.with_scale(s)),
        _ => Err(Error::Usage(format!("--scale expects 'auto' or a positive number, got '{scale}'"))),
    }
}

/// Returns whether every solve succeeded.
fn run(cmd: Cmd) -> Result<bool, Error> {
    match cmd {
        Cmd::Bound {
            model,
            mu,
            objective,
            mode,
            out,
            localize_all,
            scale,
            ssa_t_end,
            seed,
            export,
        } => {
            let (name, text, net) = load(&model)?;
            let mus = parse_mu_list(&mu)?;
            let modes: Vec<Mode> = match mode {
                ModeArg::Original => vec![Mode::Original],
                ModeArg::Decomposed => vec![Mode::Decomposed],
                ModeArg::Both => vec![Mode::Original, Mode::Decomposed],
            };
            let options = AssembleOptions {
                localize_non_reactants: localize_all,
            };
            if let Some(path) = &export {
                let obj = momentbound::model::parse_objective(&net, &objective)?;
                let problem = assemble_with(&net, mus[0], &obj, modes[0], Sense::Max, options)?;
                fs::write(path, json(&export_problem(&problem))?).map_err(|e| io_err(path, e))?;
            }
            let ssa = ssa_t_end.map(|t| SimConfig::new(net.n_species(), t, seed, Vec::new()));
            let req = BoundRequest {
                name: &name,
                source: &text,
                objective: &objective,
                mus: &mus,
                modes: &modes,
                settings: solver_settings(&net, &scale)?,
                options,
                ssa,
            };
            let report = bound_report(&net, &req)?;
            write_out(&out, &json(&report)?)?;
            Ok(report.runs.iter().all(|r| r.ok()) && report.ok)
        }
        Cmd::Decompose { model, mu, out } => {
            let (name, text, net) = load(&model)?;
            let report = decompose_report(&name, &text, &net, mu)?;
            write_out(&out, &json(&report)?)?;
            Ok(true)
        }
        Cmd::Bench {
            model,
            mu_list,
            objective,
            repeats,
            out,
            scale,
        } => {
            let (name, _, net) = load(&model)?;
            let mus = parse_mu_list(&mu_list)?;
            let settings = solver_settings(&net, &scale)?;
            let rows = bench_rows(&name, &net, &objective, &mus, repeats, &settings, AssembleOptions::default())?;
            let mut buf = Vec::new();
            bench_csv(&rows, &mut buf)?;
            write_out(&out, &buf)?;
            Ok(!bench_failed(&rows))
        }
        Cmd::Simulate {
            model,
            t_end,
            burn_in,
            seed,
            moments,
            trajectories,
            init,
            format,
            out,
        } => {
            let (name, text, net) = load(&model)?;
            let mut cfg = SimConfig::new(net.n_species(), t_end, seed, parse_moment_list(&net, &moments)?);
            if let Some(b) = burn_in {
                cfg.burn_in = b;
            }
            cfg.n_trajectories = trajectories;
            if let Some(spec) = init {
                cfg.initial_state = parse_init(&net, &spec)?;
            }
            let report = simulate_report(&name, &text, &net, &cfg)?;
            let body = match format {
                Format::Json => json(&report)?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    simulate_csv(&report, &mut buf)?;
                    buf
                }
            };
            write_out(&out, &body)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Sdp(_) | Error::Ssa(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
