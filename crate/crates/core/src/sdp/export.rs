use serde::Serialize;

use super::problem::{ConicProblem, Mode, Sense};
use crate::moments::{coeff_to_f64, MultiIndex};

pub const SCHEMA: &str = "momentbound.conic/1";

#[derive(Serialize)]
pub struct ExportedRow {
    /// `(variable, coefficient)` pairs.
    pub terms: Vec<(usize, f64)>,
    /// Exact coefficients as `p/q` strings, aligned with `terms`.
    pub exact: Vec<String>,
    pub rhs: f64,
}

#[derive(Serialize)]
pub struct ExportedBlock {
    pub dim: usize,
    pub multiplier: Option<usize>,
    pub basis: Vec<MultiIndex>,
    /// Upper-triangle `(p, q, variable)` entries.
    pub entries: Vec<(usize, usize, usize)>,
}

/// Self-contained JSON form of a [`ConicProblem`].
#[derive(Serialize)]
pub struct ExportedProblem {
    pub schema: &'static str,
    pub n_species: usize,
    pub mu: u32,
    pub mode: Mode,
    pub sense: Sense,
    /// Variable `j` is the moment with this exponent vector.
    pub variables: Vec<MultiIndex>,
    pub objective: Vec<(usize, f64)>,
    pub equalities: Vec<ExportedRow>,
    pub blocks: Vec<ExportedBlock>,
}

pub fn export_problem(problem: &ConicProblem) -> ExportedProblem {
    let vars = problem.referenced_moments();
    let idx = |a: &MultiIndex| vars.binary_search(a).expect("referenced moment");
    ExportedProblem {
        schema: SCHEMA,
        n_species: problem.space.nvars(),
        mu: problem.mu,
        mode: problem.mode,
        sense: problem.sense,
        objective: problem
            .objective
            .coeffs()
            .iter()
            .map(|(a, c)| (idx(a), coeff_to_f64(c)))
            .collect(),
        equalities: problem
            .equalities
            .iter()
            .map(|r| ExportedRow {
                terms: r.form.coeffs().iter().map(|(a, c)| (idx(a), coeff_to_f64(c))).collect(),
                exact: r.form.coeffs().values().map(|c| c.to_string()).collect(),
                rhs: coeff_to_f64(&r.rhs),
            })
            .collect(),
        blocks: problem
            .blocks
            .iter()
            .map(|b| ExportedBlock {
                dim: b.dim(),
                multiplier: b.multiplier,
                basis: b.basis.members().to_vec(),
                entries: b.svec_entries().into_iter().map(|(p, q, e)| (p, q, idx(&e))).collect(),
            })
            .collect(),
        variables: vars.clone(),
    }
}
