use std::collections::HashMap;
use std::time::Instant;

use clarabel::algebra::CscMatrix;
use clarabel::solver::{
    DefaultSettingsBuilder, DefaultSolver, IPSolver, SolverStatus, SupportedConeT,
};
use serde::Serialize;

use super::problem::{assemble, ConicProblem, Mode, Sense};
use crate::model::ReactionNetwork;
use crate::moments::{coeff_to_f64, LinearForm, MultiIndex};

/// Environment variable that overrides [`SolverSettings::tol`].
pub const TOL_ENV: &str = "MOMENTBOUND_SOLVER_TOL";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverSettings {
    /// Feasibility and optimality-gap tolerance.
    pub tol: f64,
    pub max_iter: u32,
    /// Moment variables are solved for as `m_η / s^{|η|}`. A value near a
    /// typical copy number improves conditioning at high orders; `1.0`
    /// disables scaling.
    pub scale: f64,
    /// Per-species scales; when set they replace `scale`.
    pub species_scale: Option<Vec<f64>>,
    /// Let the solver apply its own chordal decomposition to PSD cones.
    pub solver_chordal: bool,
    /// Sparse LDL backend: `"auto"`, `"qdldl"` or `"faer"`.
    pub linear_solver: String,
    pub verbose: bool,
    /// Refuse to start a solve whose estimated footprint exceeds this many
    /// bytes. `None` uses the memory currently available to the process,
    /// when the platform reports it.
    pub memory_limit: Option<u64>,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            tol: 1e-8,
            max_iter: 200,
            scale: 1.0,
            species_scale: None,
            solver_chordal: true,
            linear_solver: "auto".to_string(),
            verbose: false,
            memory_limit: None,
        }
    }
}

impl SolverSettings {
    /// Defaults, with the tolerance taken from the environment when set.
    pub fn from_env() -> Self {
        let mut s = Self::default();
        if let Some(tol) = std::env::var(TOL_ENV).ok().and_then(|v| v.trim().parse::<f64>().ok()) {
            if tol > 0.0 && tol.is_finite() {
                s.tol = tol;
            }
        }
        s
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_species_scale(mut self, scales: Vec<f64>) -> Self {
        self.species_scale = Some(scales);
        self
    }
}

/// Per-species scales from a cheap order-2 presolve: the midpoint of the
/// bounds on each mean, clamped to `[1, 1e4]`; `1` where the presolve is
/// inconclusive.
pub fn auto_species_scale(net: &ReactionNetwork, settings: &SolverSettings) -> Vec<f64> {
    let n = net.n_species();
    let mut base = settings.clone();
    base.species_scale = None;
    base.scale = 1.0;
    (0..n)
        .map(|j| {
            let obj = LinearForm::moment(MultiIndex::unit(n, j));
            let Ok(p) = assemble(net, 2, &obj, Mode::Original, Sense::Min) else {
                return 1.0;
            };
            let lo = solve(&p, &base);
            let hi = solve(&p.with_sense(Sense::Max), &base);
            match (lo.value, hi.value) {
                (Some(l), Some(h)) if h.is_finite() && l.is_finite() => {
                    (0.5 * (l + h)).clamp(1.0, 1e4)
                }
                _ => 1.0,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Optimal,
    NearOptimal,
    Infeasible,
    Unbounded,
    NumericalError,
    /// Not attempted: the estimated footprint exceeds the memory limit.
    InsufficientMemory,
}

impl BoundStatus {
    pub fn has_value(self) -> bool {
        matches!(self, BoundStatus::Optimal | BoundStatus::NearOptimal)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundStatus::Optimal => "optimal",
            BoundStatus::NearOptimal => "near_optimal",
            BoundStatus::Infeasible => "infeasible",
            BoundStatus::Unbounded => "unbounded",
            BoundStatus::NumericalError => "numerical_error",
            BoundStatus::InsufficientMemory => "insufficient_memory",
        }
    }

    fn from_clarabel(s: SolverStatus) -> Self {
        match s {
            SolverStatus::Solved => BoundStatus::Optimal,
            SolverStatus::AlmostSolved => BoundStatus::NearOptimal,
            SolverStatus::PrimalInfeasible | SolverStatus::AlmostPrimalInfeasible => {
                BoundStatus::Infeasible
            }
            SolverStatus::DualInfeasible | SolverStatus::AlmostDualInfeasible => {
                BoundStatus::Unbounded
            }
            _ => BoundStatus::NumericalError,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundResult {
    pub sense: Sense,
    pub value: Option<f64>,
    pub status: BoundStatus,
    pub solve_seconds: f64,
    pub iterations: u32,
    pub block_dims: Vec<usize>,
    pub max_block_dim: usize,
    pub block_count: usize,
    pub n_variables: usize,
    pub n_equalities: usize,
    /// Optimal moment vector over the referenced moments, when available.
    #[serde(skip)]
    pub moments: Option<Vec<(MultiIndex, f64)>>,
}

/// Measured peak resident bytes per entry of the PSD Hessian blocks; covers
/// the KKT matrix, its factor and solver workspaces.
const BYTES_PER_HESSIAN_ENTRY: u64 = 56;

/// Rough peak memory of a solve. Every PSD cone of dimension `d` places a
/// dense `t × t` block with `t = d(d+1)/2` in the KKT system, which
/// dominates everything else at moderate orders.
pub fn memory_estimate(problem: &ConicProblem) -> u64 {
    let hessian: u64 = problem
        .block_dims()
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| {
            let t = (d * (d + 1) / 2) as u64;
            t * t
        })
        .sum();
    BYTES_PER_HESSIAN_ENTRY * hessian
}

/// `MemAvailable` from `/proc/meminfo`, in bytes.
pub fn available_memory() -> Option<u64> {
    let info = std::fs::read_to_string("/proc/meminfo").ok()?;
    let line = info.lines().find(|l| l.starts_with("MemAvailable:"))?;
    let kib: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kib * 1024)
}

struct Triplets {
    rows: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Triplets {
    fn push(&mut self, r: usize, c: usize, v: f64) {
        if v != 0.0 {
            self.rows.push(r);
            self.cols.push(c);
            self.vals.push(v);
        }
    }
}

/// Solves the problem with Clarabel.
///
/// Unreferenced moments are dropped. Equality rows are normalized by their
/// largest coefficient. Each block of dimension 1 becomes a nonnegativity
/// constraint, larger ones a PSD cone in scaled upper-triangle form.
pub fn solve(problem: &ConicProblem, settings: &SolverSettings) -> BoundResult {
    let vars = problem.referenced_moments();
    let col: HashMap<&MultiIndex, usize> = vars.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let s = settings.scale;
    let var_scale = |a: &MultiIndex| match &settings.species_scale {
        Some(v) => a.exponents().iter().zip(v).map(|(&e, si)| si.powi(e as i32)).product(),
        None => s.powi(a.degree() as i32),
    };

    let mut t = Triplets {
        rows: Vec::new(),
        cols: Vec::new(),
        vals: Vec::new(),
    };
    let mut b = Vec::new();
    let mut cones = Vec::new();

    let mut n_eq = 0;
    for row in &problem.equalities {
        let coeffs: Vec<(usize, f64)> = row
            .form
            .coeffs()
            .iter()
            .map(|(a, c)| (col[a], coeff_to_f64(c) * var_scale(a)))
            .collect();
        let norm = coeffs.iter().fold(0.0f64, |m, (_, v)| m.max(v.abs()));
        if norm == 0.0 {
            continue;
        }
        for (j, v) in coeffs {
            t.push(n_eq, j, v / norm);
        }
        b.push(coeff_to_f64(&row.rhs) / norm);
        n_eq += 1;
    }
    if n_eq > 0 {
        cones.push(SupportedConeT::ZeroConeT(n_eq));
    }

    let sqrt2 = std::f64::consts::SQRT_2;
    let mut r = n_eq;
    for block in &problem.blocks {
        let d = block.dim();
        for (p, q, e) in block.svec_entries() {
            let w = if p == q { 1.0 } else { sqrt2 };
            t.push(r, col[&e], -w);
            b.push(0.0);
            r += 1;
        }
        cones.push(if d == 1 {
            SupportedConeT::NonnegativeConeT(1)
        } else {
            SupportedConeT::PSDTriangleConeT(d)
        });
    }

    let nvar = vars.len();
    let sign = match problem.sense {
        Sense::Max => -1.0,
        Sense::Min => 1.0,
    };
    let mut q = vec![0.0; nvar];
    for (a, c) in problem.objective.coeffs() {
        q[col[a]] += sign * coeff_to_f64(c) * var_scale(a);
    }

    let a_mat = CscMatrix::new_from_triplets(r, nvar, t.rows, t.cols, t.vals);
    let p_mat = CscMatrix::zeros((nvar, nvar));
    let clarabel_settings = DefaultSettingsBuilder::default()
        .tol_feas(settings.tol)
        .tol_gap_abs(settings.tol)
        .tol_gap_rel(settings.tol)
        .max_iter(settings.max_iter)
        .verbose(settings.verbose)
        .chordal_decomposition_enable(settings.solver_chordal)
        .direct_solve_method(settings.linear_solver.clone())
        .build()
        .expect("valid solver settings");

    let block_dims = problem.block_dims();
    let mut result = BoundResult {
        sense: problem.sense,
        value: None,
        status: BoundStatus::NumericalError,
        solve_seconds: 0.0,
        iterations: 0,
        max_block_dim: block_dims.iter().copied().max().unwrap_or(0),
        block_count: block_dims.len(),
        block_dims,
        n_variables: nvar,
        n_equalities: n_eq,
        moments: None,
    };

    if let Some(limit) = settings.memory_limit.or_else(available_memory) {
        if memory_estimate(problem) > limit {
            result.status = BoundStatus::InsufficientMemory;
            return result;
        }
    }

    let start = Instant::now();
    let solver = DefaultSolver::new(&p_mat, &q, &a_mat, &b, &cones, clarabel_settings);
    let mut solver = match solver {
        Ok(s) => s,
        Err(_) => {
            result.solve_seconds = start.elapsed().as_secs_f64();
            return result;
        }
    };
    solver.solve();
    result.solve_seconds = start.elapsed().as_secs_f64();

    let sol = &solver.solution;
    result.status = BoundStatus::from_clarabel(sol.status);
    result.iterations = sol.iterations;
    if result.status.has_value() {
        let m: Vec<(MultiIndex, f64)> = vars
            .iter()
            .zip(&sol.x)
            .map(|(a, &x)| (a.clone(), x * var_scale(a)))
            .collect();
        let value = problem
            .objective
            .coeffs()
            .iter()
            .map(|(a, c)| coeff_to_f64(c) * m[col[a]].1)
            .sum();
        result.value = Some(value);
        result.moments = Some(m);
    }
    result
}
