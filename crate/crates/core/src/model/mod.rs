//! Reaction networks with mass-action style polynomial propensities.
//!
//! Every reaction stores its propensity as a list of signed elementary
//! terms (zeroth order, unimolecular, homo- and hetero-bimolecular). A
//! polynomial propensity that is not itself elementary, such as
//! `k*(50 - C)`, is split into several terms sharing the reaction's
//! stoichiometry; downstream code only ever sees elementary terms.

mod emit;
mod parse;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::ModelError;
use crate::moments::{coeff_to_f64, MultiIndex, Polynomial};
use crate::Coeff;

pub use emit::emit_model;
pub use parse::{parse_model, parse_objective};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Species {
    pub name: String,
    pub index: usize,
}

/// Shape of an elementary propensity term. Species indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PropensityKind {
    ZeroOrder,
    Unimolecular(usize),
    HomoBimolecular(usize),
    /// `x_j x_k` with `j < k`.
    HeteroBimolecular(usize, usize),
}

impl PropensityKind {
    /// Species whose copy numbers enter the term.
    pub fn reactants(&self) -> Vec<usize> {
        match *self {
            PropensityKind::ZeroOrder => vec![],
            PropensityKind::Unimolecular(j) | PropensityKind::HomoBimolecular(j) => vec![j],
            PropensityKind::HeteroBimolecular(j, k) => vec![j, k],
        }
    }

    /// Exponent of the highest-degree monomial of the term.
    pub fn leading_exponent(&self, n: usize) -> MultiIndex {
        match *self {
            PropensityKind::ZeroOrder => MultiIndex::zero(n),
            PropensityKind::Unimolecular(j) => MultiIndex::unit(n, j),
            PropensityKind::HomoBimolecular(j) => MultiIndex::unit(n, j).add_unit(j),
            PropensityKind::HeteroBimolecular(j, k) => MultiIndex::unit(n, j).add_unit(k),
        }
    }

    /// Unit-rate polynomial: `1`, `x_j`, `x_j(x_j-1)/2` or `x_j x_k`.
    pub fn polynomial(&self, n: usize) -> Polynomial {
        match *self {
            PropensityKind::ZeroOrder => Polynomial::constant(n, Coeff::one()),
            PropensityKind::Unimolecular(j) => Polynomial::var(n, j),
            PropensityKind::HomoBimolecular(j) => {
                let x = Polynomial::var(n, j);
                let half = Coeff::new(1.into(), 2.into());
                (&(&x * &x) - &x).scale(&half)
            }
            PropensityKind::HeteroBimolecular(j, k) => &Polynomial::var(n, j) * &Polynomial::var(n, k),
        }
    }

    pub fn order(&self) -> u32 {
        match self {
            PropensityKind::ZeroOrder => 0,
            PropensityKind::Unimolecular(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropensityTerm {
    pub kind: PropensityKind,
    /// Strictly positive rate constant.
    #[serde(serialize_with = "ser_coeff")]
    pub rate: Coeff,
}

impl PropensityTerm {
    pub fn polynomial(&self, n: usize) -> Polynomial {
        self.kind.polynomial(n).scale(&self.rate)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn coeff(self) -> Coeff {
        match self {
            Sign::Plus => Coeff::one(),
            Sign::Minus => -Coeff::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedTerm {
    pub sign: Sign,
    pub term: PropensityTerm,
}

impl SignedTerm {
    pub fn plus(kind: PropensityKind, rate: Coeff) -> Self {
        SignedTerm {
            sign: Sign::Plus,
            term: PropensityTerm { kind, rate },
        }
    }

    pub fn minus(kind: PropensityKind, rate: Coeff) -> Self {
        SignedTerm {
            sign: Sign::Minus,
            term: PropensityTerm { kind, rate },
        }
    }

    /// Signed contribution `±θ·w(x)` as a polynomial.
    pub fn polynomial(&self, n: usize) -> Polynomial {
        self.term.polynomial(n).scale(&self.sign.coeff())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reaction {
    pub label: String,
    /// Left-hand side as `(species, multiplicity)`.
    pub reactants: Vec<(usize, u32)>,
    pub products: Vec<(usize, u32)>,
    /// Net change `s_i`.
    pub stoich: Vec<i64>,
    pub terms: Vec<SignedTerm>,
}

impl Reaction {
    /// `𝒦_i`: species appearing in any propensity term.
    pub fn reactant_set(&self) -> BTreeSet<usize> {
        self.terms
            .iter()
            .flat_map(|t| t.term.kind.reactants())
            .collect()
    }

    /// `𝒮_i`: species whose copy number changes.
    pub fn change_set(&self) -> BTreeSet<usize> {
        self.stoich
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(j, _)| j)
            .collect()
    }

    /// Total propensity `w_i(x)` as a polynomial.
    pub fn propensity(&self, n: usize) -> Polynomial {
        self.terms
            .iter()
            .fold(Polynomial::zero(n), |acc, t| &acc + &t.polynomial(n))
    }

    pub fn is_split(&self) -> bool {
        self.terms.len() > 1
    }
}

/// One signed propensity term together with its reaction's stoichiometry.
///
/// Split reactions contribute one elementary reaction per term; sparsity
/// sets and reduced blocks are built per elementary reaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryReaction<'a> {
    pub reaction: usize,
    pub term_index: usize,
    pub label: String,
    pub stoich: &'a [i64],
    pub term: &'a SignedTerm,
}

impl ElementaryReaction<'_> {
    pub fn reactant_set(&self) -> BTreeSet<usize> {
        self.term.term.kind.reactants().into_iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReactionNetwork {
    pub species: Vec<Species>,
    pub reactions: Vec<Reaction>,
    /// Named constants, exact.
    pub parameters: BTreeMap<String, Coeff>,
}

impl ReactionNetwork {
    /// Builds a network and checks the structural invariants.
    pub fn new(
        species: Vec<Species>,
        reactions: Vec<Reaction>,
        parameters: BTreeMap<String, Coeff>,
    ) -> Result<Self, ModelError> {
        if species.is_empty() {
            return Err(ModelError::Invalid("network has no species".into()));
        }
        if reactions.is_empty() {
            return Err(ModelError::Invalid("network has no reactions".into()));
        }
        let n = species.len();
        let mut seen = BTreeSet::new();
        for (i, s) in species.iter().enumerate() {
            if s.index != i {
                return Err(ModelError::Invalid(format!(
                    "species '{}' has index {} at position {i}",
                    s.name, s.index
                )));
            }
            if !seen.insert(s.name.clone()) {
                return Err(ModelError::Duplicate(s.name.clone()));
            }
        }
        for r in &reactions {
            if r.stoich.len() != n {
                return Err(ModelError::Invalid(format!(
                    "reaction '{}' has stoichiometry of length {}",
                    r.label,
                    r.stoich.len()
                )));
            }
            if r.terms.is_empty() {
                return Err(ModelError::Invalid(format!(
                    "reaction '{}' has no propensity terms",
                    r.label
                )));
            }
            for t in &r.terms {
                if !t.term.rate.is_positive() {
                    return Err(ModelError::NegativeRate(r.label.clone()));
                }
                if t.term.kind.reactants().iter().any(|&j| j >= n) {
                    return Err(ModelError::Invalid(format!(
                        "reaction '{}' references a species out of range",
                        r.label
                    )));
                }
                if let PropensityKind::HeteroBimolecular(j, k) = t.term.kind {
                    if j >= k {
                        return Err(ModelError::Invalid(format!(
                            "reaction '{}': hetero-bimolecular term needs j < k",
                            r.label
                        )));
                    }
                }
            }
        }
        Ok(ReactionNetwork {
            species,
            reactions,
            parameters,
        })
    }

    pub fn n_species(&self) -> usize {
        self.species.len()
    }

    pub fn n_reactions(&self) -> usize {
        self.reactions.len()
    }

    pub fn species_names(&self) -> Vec<String> {
        self.species.iter().map(|s| s.name.clone()).collect()
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s.name == name)
    }

    /// Flattened view with one entry per signed propensity term.
    pub fn elementary_reactions(&self) -> Vec<ElementaryReaction<'_>> {
        self.reactions
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                r.terms.iter().enumerate().map(move |(t, term)| ElementaryReaction {
                    reaction: i,
                    term_index: t,
                    label: if r.terms.len() > 1 {
                        format!("{}#{}", r.label, t + 1)
                    } else {
                        r.label.clone()
                    },
                    stoich: &r.stoich,
                    term,
                })
            })
            .collect()
    }

    /// True when any reaction has a second-order term.
    pub fn has_bimolecular(&self) -> bool {
        self.reactions
            .iter()
            .flat_map(|r| &r.terms)
            .any(|t| t.term.kind.order() == 2)
    }

    pub fn parameter_f64(&self, name: &str) -> Option<f64> {
        self.parameters.get(name).map(coeff_to_f64)
    }
}

/// Splits a polynomial of degree ≤ 2 into signed elementary terms.
///
/// A square `a·x_j²` becomes a homo-bimolecular term of rate `2a`, whose
/// `-a·x_j` remainder is absorbed into the linear coefficient; whatever
/// linear, cross and constant coefficients are left each become one term.
/// The signed sum of the returned terms equals `poly` exactly.
pub fn normalize_propensity(poly: &Polynomial) -> Result<Vec<SignedTerm>, ModelError> {
    let n = poly.nvars();
    if poly.degree() > 2 {
        return Err(ModelError::DegreeTooHigh(poly.degree()));
    }
    let mut linear: BTreeMap<usize, Coeff> = BTreeMap::new();
    let mut constant = Coeff::zero();
    let mut squares: Vec<(usize, Coeff)> = Vec::new();
    let mut cross: Vec<(usize, usize, Coeff)> = Vec::new();

    for (alpha, c) in poly.terms() {
        let support: Vec<usize> = (0..n).filter(|&j| alpha.exponents()[j] > 0).collect();
        match (alpha.degree(), support.as_slice()) {
            (0, _) => constant += c,
            (1, [j]) => *linear.entry(*j).or_insert_with(Coeff::zero) += c,
            (2, [j]) => squares.push((*j, c.clone())),
            (2, [j, k]) => cross.push((*j, *k, c.clone())),
            _ => unreachable!("degree checked above"),
        }
    }

    let mut out = Vec::new();
    let push = |out: &mut Vec<SignedTerm>, kind: PropensityKind, c: &Coeff| {
        if c.is_zero() {
            return;
        }
        let term = if c.is_positive() {
            SignedTerm::plus(kind, c.clone())
        } else {
            SignedTerm::minus(kind, -c.clone())
        };
        out.push(term);
    };

    push(&mut out, PropensityKind::ZeroOrder, &constant);
    for (j, a) in &squares {
        // a x² = 2a · x(x-1)/2 + a x
        *linear.entry(*j).or_insert_with(Coeff::zero) += a;
    }
    for (j, c) in &linear {
        push(&mut out, PropensityKind::Unimolecular(*j), c);
    }
    for (j, a) in &squares {
        push(&mut out, PropensityKind::HomoBimolecular(*j), &(a + a));
    }
    for (j, k, c) in &cross {
        push(&mut out, PropensityKind::HeteroBimolecular(*j, *k), c);
    }
    Ok(out)
}

fn ser_coeff<S: serde::Serializer>(c: &Coeff, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(coeff_to_f64(c))
}
