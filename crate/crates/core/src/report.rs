//! Reproducible run reports: bounds, decompositions, benchmarks and
//! simulations, each stamped with the model hash, solver settings and crate
//! version.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, ModelError};
use crate::model::{parse_objective, PropensityKind, ReactionNetwork};
use crate::moments::{LinearForm, MonomialSet, MultiIndex};
use crate::sdp::{
    assemble_with, build_full_blocks, solve, AssembleOptions, BoundResult, BoundStatus, Mode,
    Sense, SolverSettings,
};
use crate::sparsity::{build_profile, BlockSpec, SparsityProfile};
use crate::ssa::{check_containment, simulate, MomentEstimate, SimConfig, Verdict};

/// Slack allowed when comparing bounds across modes and orders.
pub const SANDWICH_SLACK: f64 = 1e-5;

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub fn tool_info() -> ToolInfo {
    ToolInfo {
        name: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelInfo {
    pub name: String,
    pub sha256: String,
    pub n_species: usize,
    pub n_reactions: usize,
    pub species: Vec<String>,
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn model_info(name: &str, source: &str, net: &ReactionNetwork) -> ModelInfo {
    ModelInfo {
        name: name.to_string(),
        sha256: sha256_hex(source),
        n_species: net.n_species(),
        n_reactions: net.n_reactions(),
        species: net.species_names(),
    }
}

/// Parses a comma-separated list of monomials such as `X1, X1^2*X2`.
pub fn parse_moment_list(net: &ReactionNetwork, list: &str) -> Result<Vec<MultiIndex>, ModelError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let form = if item == "1" {
                LinearForm::moment(MultiIndex::zero(net.n_species()))
            } else {
                parse_objective(net, &format!("E[{item}]"))?
            };
            match form.coeffs().iter().next() {
                Some((a, c)) if form.len() == 1 && *c == crate::Coeff::from_integer(1.into()) => Ok(a.clone()),
                _ => Err(ModelError::Invalid(format!("'{item}' is not a single monomial"))),
            }
        })
        .collect()
}

/// Parses `"3"`, `"2,3,4"`, `"1..4"` or `"1..=4"` into truncation orders.
pub fn parse_mu_list(s: &str) -> Result<Vec<u32>, Error> {
    let bad = || Error::Usage(format!("invalid truncation order list '{s}'"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.trim_start_matches('=');
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err(bad());
    }
    Ok(out)
}

// ---------------------------------------------------------------- bounds

#[derive(Clone, Debug, Serialize)]
pub struct ModeRun {
    pub mu: u32,
    pub mode: Mode,
    pub lower: BoundResult,
    pub upper: BoundResult,
    /// `upper − lower` when both are available.
    pub gap: Option<f64>,
    pub assemble_seconds: f64,
    pub wall_seconds: f64,
}

impl ModeRun {
    pub fn ok(&self) -> bool {
        self.lower.status.has_value() && self.upper.status.has_value()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichCheck {
    pub mu: u32,
    pub decomposed_min: f64,
    pub original_min: f64,
    pub original_max: f64,
    pub decomposed_max: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: ToolInfo,
    pub model: ModelInfo,
    pub solver: SolverSettings,
    pub objective: String,
    pub mu: Vec<u32>,
    pub localize_non_reactants: bool,
    pub runs: Vec<ModeRun>,
    pub sandwich: Vec<SandwichCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ssa: Option<SsaCheck>,
    /// Every solve optimal and every sandwich check satisfied.
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SsaCheck {
    pub config: SimConfig,
    pub estimate: MomentEstimate,
    pub verdicts: Vec<(u32, Mode, Verdict)>,
}

/// Lower and upper bounds of `objective` for one order and mode.
pub fn bound_pair(
    net: &ReactionNetwork,
    mu: u32,
    objective: &LinearForm,
    mode: Mode,
    settings: &SolverSettings,
    options: AssembleOptions,
) -> Result<ModeRun, Error> {
    let wall = Instant::now();
    let t0 = Instant::now();
    let problem = assemble_with(net, mu, objective, mode, Sense::Min, options)?;
    let assemble_seconds = t0.elapsed().as_secs_f64();
    let lower = solve(&problem, settings);
    let upper = solve(&problem.with_sense(Sense::Max), settings);
    let gap = match (lower.value, upper.value) {
        (Some(l), Some(u)) => Some(u - l),
        _ => None,
    };
    Ok(ModeRun {
        mu,
        mode,
        lower,
        upper,
        gap,
        assemble_seconds,
        wall_seconds: wall.elapsed().as_secs_f64(),
    })
}

fn sandwich_checks(runs: &[ModeRun]) -> Vec<SandwichCheck> {
    let mut by_mu: BTreeMap<u32, (Option<&ModeRun>, Option<&ModeRun>)> = BTreeMap::new();
    for r in runs {
        let e = by_mu.entry(r.mu).or_default();
        match r.mode {
            Mode::Original => e.0 = Some(r),
            Mode::Decomposed => e.1 = Some(r),
        }
    }
    by_mu
        .into_iter()
        .filter_map(|(mu, pair)| match pair {
            (Some(o), Some(d)) => {
                let (ol, ou, dl, du) = (o.lower.value?, o.upper.value?, d.lower.value?, d.upper.value?);
                Some(SandwichCheck {
                    mu,
                    decomposed_min: dl,
                    original_min: ol,
                    original_max: ou,
                    decomposed_max: du,
                    holds: sandwich_holds(dl, ol, ou, du, SANDWICH_SLACK),
                })
            }
            _ => None,
        })
        .collect()
}

/// `dl ≤ ol ≤ ou ≤ du` up to `slack`.
pub fn sandwich_holds(dl: f64, ol: f64, ou: f64, du: f64, slack: f64) -> bool {
    dl <= ol + slack && ol <= ou + slack && ou <= du + slack
}

pub struct BoundRequest<'a> {
    pub name: &'a str,
    pub source: &'a str,
    pub objective: &'a str,
    pub mus: &'a [u32],
    pub modes: &'a [Mode],
    pub settings: SolverSettings,
    pub options: AssembleOptions,
    pub ssa: Option<SimConfig>,
}

/// Solves every `(μ, mode)` pair for both senses and runs the optional
/// simulation cross-check.
pub fn bound_report(net: &ReactionNetwork, req: &BoundRequest<'_>) -> Result<RunReport, Error> {
    let objective = parse_objective(net, req.objective)?;
    let jobs: Vec<(u32, Mode)> = req
        .mus
        .iter()
        .flat_map(|&mu| req.modes.iter().map(move |&m| (mu, m)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(mu, mode)| bound_pair(net, mu, &objective, mode, &req.settings, req.options))
        .collect::<Result<Vec<_>, _>>()?;
    let sandwich = sandwich_checks(&runs);

    let ssa = match &req.ssa {
        None => None,
        Some(cfg) => {
            let targets: Vec<MultiIndex> = objective.coeffs().keys().cloned().collect();
            let mut cfg = cfg.clone();
            cfg.moments = targets;
            let estimate = simulate(net, &cfg)?;
            let verdicts = if objective.len() == 1 {
                let (alpha, c) = objective.coeffs().iter().next().expect("one term");
                let c = crate::moments::coeff_to_f64(c);
                runs.iter()
                    .filter_map(|r| {
                        let (lo, hi) = (r.lower.value? / c, r.upper.value? / c);
                        let (lo, hi) = if c < 0.0 { (hi, lo) } else { (lo, hi) };
                        check_containment((lo, hi), &estimate, alpha).map(|v| (r.mu, r.mode, v))
                    })
                    .collect()
            } else {
                Vec::new()
            };
            Some(SsaCheck {
                config: cfg,
                estimate,
                verdicts,
            })
        }
    };

    let ok = runs.iter().all(ModeRun::ok)
        && sandwich.iter().all(|s| s.holds)
        && ssa.as_ref().map_or(true, |s| s.verdicts.iter().all(|v| v.2.pass));
    Ok(RunReport {
        tool: tool_info(),
        model: model_info(req.name, req.source, net),
        solver: req.settings.clone(),
        objective: req.objective.to_string(),
        mu: req.mus.to_vec(),
        localize_non_reactants: req.options.localize_non_reactants,
        runs,
        sandwich,
        ssa,
        ok,
    })
}

// ---------------------------------------------------------- decomposition

#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    pub dim: usize,
    pub multiplier: Option<String>,
    pub base: Vec<String>,
    pub appended: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizingSummary {
    pub species: String,
    pub omega: Vec<String>,
    pub omega_bar: Vec<String>,
    pub q: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReactionSummary {
    pub label: String,
    pub term: String,
    pub reactants: Vec<String>,
    pub xi_size: usize,
    pub phi: Vec<String>,
    pub phi_bar: Vec<String>,
    pub phi1: Vec<String>,
    pub phi2: Vec<String>,
    pub phi_bar1: Vec<String>,
    pub phi_bar2: Vec<String>,
    pub p: usize,
    pub localizing: Vec<LocalizingSummary>,
    pub blocks: Vec<BlockSummary>,
    /// Members of `Φ` that could have been unused; empty when the
    /// constructed unused set is maximal.
    pub maximality_gaps: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintAccounting {
    pub block_dims: Vec<usize>,
    pub n_blocks: usize,
    pub max_block_dim: usize,
}

impl ConstraintAccounting {
    fn from_dims(mut dims: Vec<usize>) -> Self {
        dims.sort_unstable_by(|a, b| b.cmp(a));
        ConstraintAccounting {
            n_blocks: dims.len(),
            max_block_dim: dims.first().copied().unwrap_or(0),
            block_dims: dims,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeReport {
    pub tool: ToolInfo,
    pub model: ModelInfo,
    pub mu: u32,
    pub reactions: Vec<ReactionSummary>,
    pub original: ConstraintAccounting,
    pub decomposed: ConstraintAccounting,
    #[serde(skip)]
    pub profile: SparsityProfile,
}

fn names(set: &MonomialSet, species: &[String]) -> Vec<String> {
    set.display_with(species)
}

fn term_name(kind: PropensityKind, species: &[String]) -> String {
    match kind {
        PropensityKind::ZeroOrder => "1".into(),
        PropensityKind::Unimolecular(j) => species[j].clone(),
        PropensityKind::HomoBimolecular(j) => format!("{0}({0}-1)/2", species[j]),
        PropensityKind::HeteroBimolecular(j, k) => format!("{}*{}", species[j], species[k]),
    }
}

fn block_summary(b: &BlockSpec, species: &[String]) -> BlockSummary {
    BlockSummary {
        dim: b.dim(),
        multiplier: b.multiplier.map(|k| species[k].clone()),
        base: names(&b.base, species),
        appended: names(&b.appended, species),
    }
}

pub fn decompose_report(name: &str, source: &str, net: &ReactionNetwork, mu: u32) -> Result<DecomposeReport, Error> {
    if mu == 0 {
        return Err(Error::Usage("truncation order must be at least 1".into()));
    }
    let profile = build_profile(net, mu)?;
    let sp = net.species_names();
    let reactions = profile
        .reactions
        .iter()
        .zip(&profile.partitions)
        .map(|(rs, part)| ReactionSummary {
            label: rs.label.clone(),
            term: term_name(rs.kind, &sp),
            reactants: rs.reactants.iter().map(|&k| sp[k].clone()).collect(),
            xi_size: rs.xi.len(),
            phi: names(&rs.phi, &sp),
            phi_bar: names(&rs.phi_bar, &sp),
            phi1: names(&rs.phi1, &sp),
            phi2: names(&rs.phi2, &sp),
            phi_bar1: names(&rs.phi_bar1, &sp),
            phi_bar2: names(&rs.phi_bar2, &sp),
            p: part.p(),
            localizing: rs
                .omega
                .iter()
                .map(|(&k, (om, om_bar))| LocalizingSummary {
                    species: sp[k].clone(),
                    omega: names(om, &sp),
                    omega_bar: names(om_bar, &sp),
                    q: part.localizing.get(&k).map_or(0, Vec::len),
                })
                .collect(),
            blocks: part.blocks().map(|b| block_summary(b, &sp)).collect(),
            maximality_gaps: rs.maximality_gaps.iter().map(|a| a.display_with(&sp)).collect(),
        })
        .collect();
    let original = ConstraintAccounting::from_dims(
        build_full_blocks(net.n_species(), mu).iter().map(|b| b.dim()).collect(),
    );
    let decomposed = ConstraintAccounting::from_dims(
        crate::sdp::build_reduced_blocks(&profile).iter().map(|b| b.dim()).collect(),
    );
    Ok(DecomposeReport {
        tool: tool_info(),
        model: model_info(name, source, net),
        mu,
        reactions,
        original,
        decomposed,
        profile,
    })
}

// -------------------------------------------------------------- benchmark

pub const BENCH_HEADER: [&str; 10] = [
    "model",
    "mu",
    "mode",
    "sense",
    "value",
    "status",
    "max_block_dim",
    "n_blocks",
    "assemble_s",
    "solve_s",
];

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub model: String,
    pub mu: u32,
    pub mode: Mode,
    pub sense: Sense,
    pub value: Option<f64>,
    /// Solver status; `|low_confidence` is appended for single-sample rows.
    pub status: String,
    pub max_block_dim: usize,
    pub n_blocks: usize,
    pub assemble_s: f64,
    pub solve_s: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Median-of-repeats timings for every `(μ, mode, sense)`. Solves run one at
/// a time so timings do not compete for cores.
pub fn bench_rows(
    name: &str,
    net: &ReactionNetwork,
    objective: &str,
    mus: &[u32],
    repeats: usize,
    settings: &SolverSettings,
    options: AssembleOptions,
) -> Result<Vec<BenchRow>, Error> {
    let objective = parse_objective(net, objective)?;
    let repeats = repeats.max(1);
    let mut rows = Vec::new();
    for &mu in mus {
        for mode in [Mode::Original, Mode::Decomposed] {
            for sense in [Sense::Min, Sense::Max] {
                let mut asm = Vec::new();
                let mut sol = Vec::new();
                let mut last: Option<BoundResult> = None;
                for _ in 0..repeats {
                    let t0 = Instant::now();
                    let problem = assemble_with(net, mu, &objective, mode, sense, options)?;
                    asm.push(t0.elapsed().as_secs_f64());
                    let r = solve(&problem, settings);
                    sol.push(r.solve_seconds);
                    last = Some(r);
                }
                let r = last.expect("at least one repeat");
                let mut status = r.status.as_str().to_string();
                if repeats == 1 {
                    status.push_str("|low_confidence");
                }
                rows.push(BenchRow {
                    model: name.to_string(),
                    mu,
                    mode,
                    sense,
                    value: r.value,
                    status,
                    max_block_dim: r.max_block_dim,
                    n_blocks: r.block_count,
                    assemble_s: median(asm),
                    solve_s: median(sol),
                });
            }
        }
    }
    Ok(rows)
}

pub fn bench_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BENCH_HEADER)?;
    for r in rows {
        w.write_record([
            r.model.clone(),
            r.mu.to_string(),
            r.mode.to_string(),
            r.sense.to_string(),
            r.value.map_or(String::new(), |v| format!("{v:.10e}")),
            r.status.clone(),
            r.max_block_dim.to_string(),
            r.n_blocks.to_string(),
            format!("{:.6}", r.assemble_s),
            format!("{:.6}", r.solve_s),
        ])?;
    }
    w.flush().map_err(|e| Error::Io {
        path: "<csv>".into(),
        source: e,
    })?;
    Ok(())
}

/// True when any row failed to reach an optimal or near-optimal status.
pub fn bench_failed(rows: &[BenchRow]) -> bool {
    rows.iter().any(|r| {
        let s = r.status.split('|').next().unwrap_or("");
        s != BoundStatus::Optimal.as_str() && s != BoundStatus::NearOptimal.as_str()
    })
}

// ------------------------------------------------------------- simulation

#[derive(Clone, Debug, Serialize)]
pub struct SimulateReport {
    pub tool: ToolInfo,
    pub model: ModelInfo,
    pub config: SimConfig,
    pub moment_names: Vec<String>,
    pub estimate: MomentEstimate,
}

pub fn simulate_report(name: &str, source: &str, net: &ReactionNetwork, cfg: &SimConfig) -> Result<SimulateReport, Error> {
    let estimate = simulate(net, cfg)?;
    let sp = net.species_names();
    Ok(SimulateReport {
        tool: tool_info(),
        model: model_info(name, source, net),
        config: cfg.clone(),
        moment_names: cfg.moments.iter().map(|a| a.display_with(&sp)).collect(),
        estimate,
    })
}

pub fn simulate_csv<W: std::io::Write>(report: &SimulateReport, out: W) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["moment", "mean", "se"])?;
    for (name, s) in report.moment_names.iter().zip(&report.estimate.moments) {
        w.write_record([name.clone(), format!("{:.10e}", s.mean), format!("{:.10e}", s.se)])?;
    }
    w.flush().map_err(|e| Error::Io {
        path: "<csv>".into(),
        source: e,
    })?;
    Ok(())
}
