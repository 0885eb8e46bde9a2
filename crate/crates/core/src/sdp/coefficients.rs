use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::block::AffinePsdBlock;
use crate::error::SdpError;
use crate::moments::{LinearForm, MultiIndex};
use crate::Coeff;

/// Sparse symmetric coefficient matrix paired with one block; both `(p,q)`
/// and `(q,p)` are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMatrix {
    pub block: usize,
    pub dim: usize,
    pub values: BTreeMap<(usize, usize), Coeff>,
}

impl CoefficientMatrix {
    fn new(block: usize, dim: usize) -> Self {
        CoefficientMatrix {
            block,
            dim,
            values: BTreeMap::new(),
        }
    }

    fn add(&mut self, p: usize, q: usize, c: Coeff) {
        let e = self.values.entry((p, q)).or_insert_with(Coeff::zero);
        *e += c;
        if e.is_zero() {
            self.values.remove(&(p, q));
        }
    }

    pub fn get(&self, p: usize, q: usize) -> Coeff {
        self.values.get(&(p, q)).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `⟨A, B(m)⟩` for the paired block evaluated at `m`.
    pub fn frobenius<F: Fn(&MultiIndex) -> Coeff>(&self, block: &AffinePsdBlock, m: F) -> Coeff {
        self.values
            .iter()
            .fold(Coeff::zero(), |acc, ((p, q), c)| acc + c * m(&block.entry(*p, *q)))
    }

    /// Dense copy, for display and golden comparisons.
    pub fn dense(&self) -> Vec<Vec<Coeff>> {
        let mut out = vec![vec![Coeff::zero(); self.dim]; self.dim];
        for ((p, q), c) in &self.values {
            out[*p][*q] = c.clone();
        }
        out
    }
}

/// Coefficient matrices `A` with `Σ ⟨A_b, B_b(m)⟩ = f · m`, one per block
/// that receives a coefficient.
///
/// Each monomial of `f` goes whole to the first admissible entry: blocks are
/// scanned in the given order, entries `p ≤ q` row by row in
/// graded-lex order, skipping the zero pattern of reduced blocks. An
/// off-diagonal coefficient is halved across `(p,q)` and `(q,p)`.
pub fn build_coefficient_matrices(
    label: &str,
    f: &LinearForm,
    blocks: &[AffinePsdBlock],
) -> Result<Vec<CoefficientMatrix>, SdpError> {
    let mut homes: BTreeMap<MultiIndex, (usize, usize, usize)> = BTreeMap::new();
    for (bi, b) in blocks.iter().enumerate() {
        // stop early once every monomial has a home
        if f.coeffs().keys().all(|eta| homes.contains_key(eta)) {
            break;
        }
        for p in 0..b.dim() {
            for q in p..b.dim() {
                if b.is_forbidden(p, q) {
                    continue;
                }
                let eta = b.entry(p, q);
                if f.coeffs().contains_key(&eta) {
                    homes.entry(eta).or_insert((bi, p, q));
                }
            }
        }
    }
    let mut mats: BTreeMap<usize, CoefficientMatrix> = BTreeMap::new();
    let half = Coeff::new(One::one(), 2.into());
    for (eta, c) in f.coeffs() {
        let &(bi, p, q) = homes.get(eta).ok_or_else(|| SdpError::Allocation {
            reaction: label.to_string(),
            moment: eta.to_string(),
        })?;
        let mat = mats
            .entry(bi)
            .or_insert_with(|| CoefficientMatrix::new(bi, blocks[bi].dim()));
        if p == q {
            mat.add(p, p, c.clone());
        } else {
            let h = c * &half;
            mat.add(p, q, h.clone());
            mat.add(q, p, h);
        }
    }
    Ok(mats.into_values().collect())
}

/// `Σ ⟨A_b, B_b(m)⟩` over a set of coefficient matrices.
pub fn frobenius_sum<F: Fn(&MultiIndex) -> Coeff>(
    mats: &[CoefficientMatrix],
    blocks: &[AffinePsdBlock],
    m: F,
) -> Coeff {
    mats.iter()
        .fold(Coeff::zero(), |acc, a| acc + a.frobenius(&blocks[a.block], &m))
}
