use std::collections::BTreeMap;

use num_traits::Zero;

use super::{MultiIndex, Polynomial};
use crate::moments::poly::coeff_to_f64;
use crate::Coeff;

/// Linear form over the moment vector: `Σ_α c_α (m)_α`.
///
/// Applying `𝓛` to a polynomial yields exactly this, so the form shares the
/// polynomial's coefficient map; the distinction is only in what the keys
/// mean (moments instead of monomials).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<MultiIndex, Coeff>,
}

impl LinearForm {
    pub fn new() -> Self {
        Self::default()
    }

    /// `𝓛(p)`.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        LinearForm {
            coeffs: p.terms().clone(),
        }
    }

    /// `(m)_α` with unit coefficient.
    pub fn moment(alpha: MultiIndex) -> Self {
        let mut f = Self::new();
        f.add(alpha, Coeff::from_integer(1.into()));
        f
    }

    pub fn add(&mut self, alpha: MultiIndex, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(alpha.clone()).or_insert_with(Coeff::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&alpha);
        }
    }

    pub fn add_form(&mut self, other: &LinearForm) {
        for (a, c) in &other.coeffs {
            self.add(a.clone(), c.clone());
        }
    }

    pub fn scaled(&self, c: &Coeff) -> LinearForm {
        let mut out = LinearForm::new();
        for (a, v) in &self.coeffs {
            out.add(a.clone(), v * c);
        }
        out
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Coeff> {
        &self.coeffs
    }

    pub fn get(&self, alpha: &MultiIndex) -> Coeff {
        self.coeffs.get(alpha).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.coeffs.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// Exact evaluation given a moment lookup.
    pub fn eval<F: Fn(&MultiIndex) -> Coeff>(&self, m: F) -> Coeff {
        self.coeffs
            .iter()
            .fold(Coeff::zero(), |acc, (a, c)| acc + c * m(a))
    }

    pub fn eval_f64<F: Fn(&MultiIndex) -> f64>(&self, m: F) -> f64 {
        self.coeffs.iter().map(|(a, c)| coeff_to_f64(c) * m(a)).sum()
    }
}
