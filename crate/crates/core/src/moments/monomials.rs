use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use super::MultiIndex;

/// Sorted, duplicate-free set of monomials in graded-lex order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialSet {
    members: Vec<MultiIndex>,
}

impl MonomialSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_iter_sorted<I: IntoIterator<Item = MultiIndex>>(iter: I) -> Self {
        let set: BTreeSet<MultiIndex> = iter.into_iter().collect();
        MonomialSet {
            members: set.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[MultiIndex] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiIndex> {
        self.members.iter()
    }

    pub fn contains(&self, a: &MultiIndex) -> bool {
        self.members.binary_search(a).is_ok()
    }

    pub fn position(&self, a: &MultiIndex) -> Option<usize> {
        self.members.binary_search(a).ok()
    }

    pub fn union(&self, other: &MonomialSet) -> MonomialSet {
        Self::from_iter_sorted(self.members.iter().chain(other.iter()).cloned())
    }

    pub fn difference(&self, other: &MonomialSet) -> MonomialSet {
        MonomialSet {
            members: self
                .members
                .iter()
                .filter(|a| !other.contains(a))
                .cloned()
                .collect(),
        }
    }

    pub fn intersection(&self, other: &MonomialSet) -> MonomialSet {
        MonomialSet {
            members: self
                .members
                .iter()
                .filter(|a| other.contains(a))
                .cloned()
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &MonomialSet) -> bool {
        self.members.iter().all(|a| other.contains(a))
    }

    pub fn is_disjoint(&self, other: &MonomialSet) -> bool {
        self.members.iter().all(|a| !other.contains(a))
    }

    /// Consecutive graded-lex chunks of at most `size` members.
    pub fn chunks(&self, size: usize) -> Vec<MonomialSet> {
        assert!(size >= 1, "chunk size must be positive");
        self.members
            .chunks(size)
            .map(|c| MonomialSet { members: c.to_vec() })
            .collect()
    }

    pub fn display_with(&self, names: &[String]) -> Vec<String> {
        self.members.iter().map(|a| a.display_with(names)).collect()
    }
}

impl FromIterator<MultiIndex> for MonomialSet {
    fn from_iter<I: IntoIterator<Item = MultiIndex>>(iter: I) -> Self {
        Self::from_iter_sorted(iter)
    }
}

impl<'a> IntoIterator for &'a MonomialSet {
    type Item = &'a MultiIndex;
    type IntoIter = std::slice::Iter<'a, MultiIndex>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl Serialize for MonomialSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

/// All exponent vectors of length `n` with total degree exactly `degree`,
/// in graded-lex order.
pub fn monomials_of_degree(n: usize, degree: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos == n - 1 {
            cur[pos] = left;
            out.push(MultiIndex::new(cur.clone()));
            return;
        }
        for a in (0..=left).rev() {
            cur[pos] = a;
            rec(n, pos + 1, left - a, cur, out);
        }
        cur[pos] = 0;
    }
    assert!(n >= 1, "need at least one species");
    let mut out = Vec::new();
    rec(n, 0, degree, &mut vec![0; n], &mut out);
    out
}

/// `𝓜_δ`: every monomial in `n` variables of degree at most `max_degree`.
pub fn monomials_up_to(n: usize, max_degree: u32) -> MonomialSet {
    let members: Vec<MultiIndex> = (0..=max_degree)
        .flat_map(|d| monomials_of_degree(n, d))
        .collect();
    debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
    MonomialSet { members }
}

/// Binomial coefficient, used for basis-size bookkeeping.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn two_species_degree_one() {
        let m = monomials_up_to(2, 1);
        assert_eq!(m.members(), &[mi(&[0, 0]), mi(&[1, 0]), mi(&[0, 1])]);
    }

    #[test]
    fn two_species_degree_two_basis() {
        let m = monomials_up_to(2, 2);
        let want = [
            mi(&[0, 0]),
            mi(&[1, 0]),
            mi(&[0, 1]),
            mi(&[2, 0]),
            mi(&[1, 1]),
            mi(&[0, 2]),
        ];
        assert_eq!(m.members(), &want);
    }

    #[test]
    fn seven_species_sizes() {
        assert_eq!(monomials_up_to(7, 3).len(), 120);
        assert_eq!(monomials_up_to(7, 2).len(), 36);
        assert_eq!(monomials_up_to(7, 1).len(), 8);
    }

    #[test]
    fn size_is_binomial() {
        for n in 1..5 {
            for d in 0..6 {
                assert_eq!(
                    monomials_up_to(n, d).len() as u64,
                    binomial(n as u64 + d as u64, d as u64)
                );
            }
        }
    }

    #[test]
    fn chunks_keep_order() {
        let m = monomials_up_to(2, 2);
        let c = m.chunks(4);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].len(), 4);
        assert_eq!(c[1].members(), &[mi(&[1, 1]), mi(&[0, 2])]);
    }
}
