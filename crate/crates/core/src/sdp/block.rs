use std::collections::HashSet;

use serde::Serialize;

use crate::moments::{monomials_up_to, MonomialSet, MultiIndex};
use crate::sparsity::{localizing_basis_degree, moment_basis_degree, BlockSpec, SparsityProfile};

/// A symmetric matrix whose `(p,q)` entry is the moment
/// `E[x^{b_p + b_q} (x_k)]` for basis members `b_p, b_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffinePsdBlock {
    pub basis: MonomialSet,
    pub multiplier: Option<usize>,
    /// Rows whose mutual entries carry no coefficient (the unused part of a
    /// reduced block). Empty for full blocks.
    pub zero_rows: MonomialSet,
}

impl AffinePsdBlock {
    pub fn new(basis: MonomialSet, multiplier: Option<usize>) -> Self {
        AffinePsdBlock {
            basis,
            multiplier,
            zero_rows: MonomialSet::new(),
        }
    }

    pub fn from_spec(spec: &BlockSpec) -> Self {
        AffinePsdBlock {
            basis: spec.basis(),
            multiplier: spec.multiplier,
            zero_rows: spec.appended.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, p: usize, q: usize) -> MultiIndex {
        let b = self.basis.members();
        let e = b[p].add(&b[q]);
        match self.multiplier {
            Some(k) => e.add_unit(k),
            None => e,
        }
    }

    /// Whether `(p,q)` lies in the zero pattern of a reduced block.
    pub fn is_forbidden(&self, p: usize, q: usize) -> bool {
        let b = self.basis.members();
        self.zero_rows.contains(&b[p]) && self.zero_rows.contains(&b[q])
    }

    /// Upper-triangle entries in column-major order, `(p, q, index)` with `p ≤ q`.
    pub fn svec_entries(&self) -> Vec<(usize, usize, MultiIndex)> {
        let d = self.dim();
        let mut out = Vec::with_capacity(d * (d + 1) / 2);
        for q in 0..d {
            for p in 0..=q {
                out.push((p, q, self.entry(p, q)));
            }
        }
        out
    }

    pub fn max_entry_degree(&self) -> u32 {
        let top = self.basis.iter().map(MultiIndex::degree).max().unwrap_or(0);
        2 * top + u32::from(self.multiplier.is_some())
    }

    fn key(&self) -> (MonomialSet, Option<usize>) {
        (self.basis.clone(), self.multiplier)
    }
}

/// The moment matrix over `𝓜_{⌈μ/2⌉}` followed by one localizing matrix
/// per species over `𝓜_{⌈(μ−1)/2⌉}`.
pub fn build_full_blocks(n: usize, mu: u32) -> Vec<AffinePsdBlock> {
    let mut out = vec![AffinePsdBlock::new(monomials_up_to(n, moment_basis_degree(mu)), None)];
    let loc = monomials_up_to(n, localizing_basis_degree(mu));
    for k in 0..n {
        out.push(AffinePsdBlock::new(loc.clone(), Some(k)));
    }
    out
}

/// Blocks of one elementary reaction: moment-type first, then localizing
/// blocks by ascending species.
pub fn reaction_blocks(profile: &SparsityProfile, unit: usize) -> Vec<AffinePsdBlock> {
    profile.partitions[unit].blocks().map(AffinePsdBlock::from_spec).collect()
}

/// Full blocks as seen by one elementary reaction: the moment matrix and
/// the localizing matrices of its reactants.
pub fn reaction_full_blocks(n: usize, mu: u32, reactants: &[usize]) -> Vec<AffinePsdBlock> {
    let mut out = vec![AffinePsdBlock::new(monomials_up_to(n, moment_basis_degree(mu)), None)];
    let loc = monomials_up_to(n, localizing_basis_degree(mu));
    for &k in reactants {
        out.push(AffinePsdBlock::new(loc.clone(), Some(k)));
    }
    out
}

/// Union of every reaction's reduced blocks, deduplicated on
/// `(basis, multiplier)` and kept in first-seen order.
pub fn build_reduced_blocks(profile: &SparsityProfile) -> Vec<AffinePsdBlock> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for unit in 0..profile.partitions.len() {
        for b in reaction_blocks(profile, unit) {
            if seen.insert(b.key()) {
                out.push(b);
            }
        }
    }
    out
}
