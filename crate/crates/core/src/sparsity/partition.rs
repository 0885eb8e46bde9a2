use serde::Serialize;

use crate::moments::MonomialSet;

/// Disjoint graded-lex chunks of an unused set, appended one at a time to
/// a base set to form the reduced matrices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub blocks: Vec<MonomialSet>,
    /// Chunk size used.
    pub budget: usize,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Largest `ℓ ≥ 1` with `2(s+ℓ)³ ≥ (s+2ℓ)³`, floored at 1.
///
/// One merged block of size `s+2ℓ` costs no more than two overlapping
/// blocks of size `s+ℓ` under a cubic cost model exactly when the
/// inequality holds.
pub fn clique_budget(base_size: usize) -> usize {
    let s = base_size as u128;
    let ok = |l: u128| 2 * (s + l).pow(3) >= (s + 2 * l).pow(3);
    let mut l = 1u128;
    while ok(l + 1) {
        l += 1;
    }
    l as usize
}

/// Chunks `bar` into blocks of `block_size` in graded-lex order.
pub fn partition_bar_set(bar: &MonomialSet, block_size: usize) -> Partition {
    assert!(block_size >= 1, "block size must be positive");
    Partition {
        blocks: if bar.is_empty() {
            Vec::new()
        } else {
            bar.chunks(block_size)
        },
        budget: block_size,
    }
}
