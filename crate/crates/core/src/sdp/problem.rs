use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use super::block::{build_full_blocks, build_reduced_blocks, AffinePsdBlock};
use crate::error::SdpError;
use crate::model::ReactionNetwork;
use crate::moments::{monomials_up_to, truncated_system, LinearForm, MomentSpace, MultiIndex};
use crate::sparsity::{build_profile, localizing_basis_degree, SparsityProfile};
use crate::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Original,
    Decomposed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Original => "original",
            Mode::Decomposed => "decomposed",
        })
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Max => "max",
            Sense::Min => "min",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "original" => Ok(Mode::Original),
            "decomposed" => Ok(Mode::Decomposed),
            _ => Err(format!("unknown mode '{s}'")),
        }
    }
}

/// `form · m = rhs`; `alpha` names the moment equation, `None` marks the
/// normalization row.
#[derive(Clone, Debug, PartialEq)]
pub struct EqualityRow {
    pub alpha: Option<MultiIndex>,
    pub form: LinearForm,
    pub rhs: Coeff,
}

/// Linear objective, equality rows and PSD blocks over the moment vector.
#[derive(Clone, Debug)]
pub struct ConicProblem {
    pub mu: u32,
    pub mode: Mode,
    pub sense: Sense,
    pub space: MomentSpace,
    pub objective: LinearForm,
    pub equalities: Vec<EqualityRow>,
    pub blocks: Vec<AffinePsdBlock>,
}

impl ConicProblem {
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(AffinePsdBlock::dim).collect()
    }

    pub fn max_block_dim(&self) -> usize {
        self.blocks.iter().map(AffinePsdBlock::dim).max().unwrap_or(0)
    }

    /// Moments referenced anywhere in the problem, in graded-lex order.
    pub fn referenced_moments(&self) -> Vec<MultiIndex> {
        let mut set: BTreeSet<MultiIndex> = BTreeSet::new();
        set.insert(MultiIndex::zero(self.space.nvars()));
        set.extend(self.objective.coeffs().keys().cloned());
        for r in &self.equalities {
            set.extend(r.form.coeffs().keys().cloned());
        }
        for b in &self.blocks {
            for (_, _, e) in b.svec_entries() {
                set.insert(e);
            }
        }
        set.into_iter().collect()
    }

    pub fn with_sense(&self, sense: Sense) -> ConicProblem {
        ConicProblem {
            sense,
            ..self.clone()
        }
    }
}

/// Assembly switches beyond mode and sense.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AssembleOptions {
    /// In decomposed mode, also impose the full localizing matrix of every
    /// species that is never a reactant.
    pub localize_non_reactants: bool,
}

fn check_inputs(net: &ReactionNetwork, mu: u32, objective: &LinearForm) -> Result<(), SdpError> {
    if mu == 0 {
        return Err(SdpError::ZeroTruncation);
    }
    let degree = objective.max_degree();
    if degree > mu + 1 {
        return Err(SdpError::ObjectiveDegree { degree, mu });
    }
    debug_assert!(objective.coeffs().keys().all(|a| a.len() == net.n_species()));
    Ok(())
}

fn equalities(net: &ReactionNetwork, mu: u32) -> Result<Vec<EqualityRow>, SdpError> {
    let mut rows = vec![EqualityRow {
        alpha: None,
        form: LinearForm::moment(MultiIndex::zero(net.n_species())),
        rhs: Coeff::one(),
    }];
    for (alpha, form) in truncated_system(net, mu)? {
        rows.push(EqualityRow {
            alpha: Some(alpha),
            form,
            rhs: Coeff::from_integer(0.into()),
        });
    }
    Ok(rows)
}

/// Builds the original or decomposed bound problem with default options.
pub fn assemble(
    net: &ReactionNetwork,
    mu: u32,
    objective: &LinearForm,
    mode: Mode,
    sense: Sense,
) -> Result<ConicProblem, SdpError> {
    assemble_with(net, mu, objective, mode, sense, AssembleOptions::default())
}

pub fn assemble_with(
    net: &ReactionNetwork,
    mu: u32,
    objective: &LinearForm,
    mode: Mode,
    sense: Sense,
    options: AssembleOptions,
) -> Result<ConicProblem, SdpError> {
    check_inputs(net, mu, objective)?;
    match mode {
        Mode::Original => Ok(ConicProblem {
            mu,
            mode,
            sense,
            space: MomentSpace::for_truncation(net.n_species(), mu),
            objective: objective.clone(),
            equalities: equalities(net, mu)?,
            blocks: build_full_blocks(net.n_species(), mu),
        }),
        Mode::Decomposed => {
            let profile = build_profile(net, mu)?;
            assemble_from_profile(net, &profile, objective, sense, options)
        }
    }
}

/// Decomposed problem from a precomputed profile (which may carry a
/// non-default partition plan).
pub fn assemble_from_profile(
    net: &ReactionNetwork,
    profile: &SparsityProfile,
    objective: &LinearForm,
    sense: Sense,
    options: AssembleOptions,
) -> Result<ConicProblem, SdpError> {
    let mu = profile.mu;
    check_inputs(net, mu, objective)?;
    let n = net.n_species();
    let mut blocks = build_reduced_blocks(profile);
    if options.localize_non_reactants {
        let reactants: HashSet<usize> = profile
            .reactions
            .iter()
            .flat_map(|r| r.reactants.iter().copied())
            .collect();
        let loc = monomials_up_to(n, localizing_basis_degree(mu));
        for k in (0..n).filter(|k| !reactants.contains(k)) {
            blocks.push(AffinePsdBlock::new(loc.clone(), Some(k)));
        }
    }
    Ok(ConicProblem {
        mu,
        mode: Mode::Decomposed,
        sense,
        space: MomentSpace::for_truncation(n, mu),
        objective: objective.clone(),
        equalities: equalities(net, mu)?,
        blocks,
    })
}
