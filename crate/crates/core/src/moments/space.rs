use std::collections::HashMap;

use super::{monomials_up_to, MonomialSet, MultiIndex};

/// Bijection between multi-indices of degree `≤ max_degree` and positions
/// in the moment vector `m`, in graded-lex order (`(m)_0` sits at 0).
#[derive(Clone, Debug)]
pub struct MomentSpace {
    n: usize,
    max_degree: u32,
    basis: MonomialSet,
    index_of: HashMap<MultiIndex, usize>,
}

impl MomentSpace {
    pub fn new(n: usize, max_degree: u32) -> Self {
        let basis = monomials_up_to(n, max_degree);
        let index_of = basis
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        MomentSpace {
            n,
            max_degree,
            basis,
            index_of,
        }
    }

    /// Space for truncation order `μ`: all moments up to degree `μ+1`.
    pub fn for_truncation(n: usize, mu: u32) -> Self {
        Self::new(n, mu + 1)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, alpha: &MultiIndex) -> Option<usize> {
        self.index_of.get(alpha).copied()
    }

    pub fn multi_index(&self, pos: usize) -> &MultiIndex {
        &self.basis.members()[pos]
    }

    pub fn basis(&self) -> &MonomialSet {
        &self.basis
    }
}
