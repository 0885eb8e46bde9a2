use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `α ∈ ℕ₀ⁿ` identifying the monomial `x^α`.
///
/// Ordering is graded lexicographic: total degree first, then the exponent
/// of the earliest species descending, so for two species the order reads
/// `1, x1, x2, x1², x1x2, x2², …`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// Standard basis vector `e_j`.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Exponent-wise sum, i.e. the index of the product monomial.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn add_unit(&self, j: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[j] += 1;
        MultiIndex(e)
    }

    /// `self / x^other` when the division is exact.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Evaluates `x^α` at an integer point.
    pub fn eval_i64(&self, x: &[i64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .map(|(&a, &xi)| (xi as f64).powi(a as i32))
            .product()
    }

    /// Renders the monomial with species names, e.g. `x1^2*x2` or `1`.
    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(j, &a)| {
                if a == 1 {
                    names[j].clone()
                } else {
                    format!("{}^{}", names[j], a)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.len()).map(|j| format!("x{j}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn graded_lex_two_species() {
        let mut v: Vec<MultiIndex> = vec![
            [0, 2].into(),
            [1, 0].into(),
            [1, 1].into(),
            [0, 0].into(),
            [2, 0].into(),
            [0, 1].into(),
        ];
        v.sort();
        let want: Vec<MultiIndex> = vec![
            [0, 0].into(),
            [1, 0].into(),
            [0, 1].into(),
            [2, 0].into(),
            [1, 1].into(),
            [0, 2].into(),
        ];
        assert_eq!(v, want);
    }

    #[test]
    fn display() {
        let a: MultiIndex = [2, 1, 0].into();
        assert_eq!(a.to_string(), "x1^2*x2");
        assert_eq!(MultiIndex::zero(3).to_string(), "1");
    }

    fn idx3() -> impl Strategy<Value = MultiIndex> {
        proptest::collection::vec(0u32..4, 3).prop_map(MultiIndex::new)
    }

    proptest! {
        #[test]
        fn order_is_total_and_consistent(a in idx3(), b in idx3(), c in idx3()) {
            // antisymmetry
            if a <= b && b <= a {
                prop_assert_eq!(&a, &b);
            }
            // transitivity
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
            // degree dominates
            if a.degree() < b.degree() {
                prop_assert!(a < b);
            }
        }

        #[test]
        fn sorting_is_idempotent(mut v in proptest::collection::vec(idx3(), 0..30)) {
            v.sort();
            let once = v.clone();
            v.sort();
            prop_assert_eq!(once, v);
        }
    }
}
