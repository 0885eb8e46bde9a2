use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::MultiIndex;
use crate::Coeff;

/// Sparse polynomial in the copy numbers with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<MultiIndex, Coeff>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Coeff) -> Self {
        Self::monomial(n, MultiIndex::zero(n), c)
    }

    pub fn monomial(n: usize, alpha: MultiIndex, c: Coeff) -> Self {
        let mut p = Self::zero(n);
        p.add_term(alpha, c);
        p
    }

    /// The variable `x_j`.
    pub fn var(n: usize, j: usize) -> Self {
        Self::monomial(n, MultiIndex::unit(n, j), Coeff::one())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Coeff> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Coeff {
        self.terms.get(alpha).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// Constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(a, _)| a.is_zero())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, v)| (a.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.n, Coeff::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &[Coeff]) -> Coeff {
        self.terms
            .iter()
            .map(|(a, c)| {
                a.exponents()
                    .iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&e, xi)| acc * pow_coeff(xi, e))
            })
            .fold(Coeff::zero(), |acc, t| acc + t)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(a, c)| {
                let v: f64 = a
                    .exponents()
                    .iter()
                    .zip(x)
                    .map(|(&e, &xi)| xi.powi(e as i32))
                    .product();
                coeff_to_f64(c) * v
            })
            .sum()
    }
}

fn pow_coeff(x: &Coeff, e: u32) -> Coeff {
    let mut acc = Coeff::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Lossy conversion used only at solver hand-off and for reporting.
pub fn coeff_to_f64(c: &Coeff) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // fall back to separate conversion when the ratio helper overflows
        let n = c.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Exact rational from a float (floats are dyadic rationals).
pub fn coeff_from_f64(x: f64) -> Option<Coeff> {
    Coeff::from_float(x)
}

pub fn coeff_from_int(x: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(x))
}

pub fn coeff_is_negative(c: &Coeff) -> bool {
    c.is_negative()
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let n = self.n.max(rhs.n);
        let mut out = Polynomial::zero(n);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Coeff {
        Coeff::new(n.into(), d.into())
    }

    #[test]
    fn expand_product() {
        // 2*x1*(10 - x2) = 20 x1 - 2 x1 x2
        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        let ten = Polynomial::constant(2, q(10, 1));
        let p = &x1.scale(&q(2, 1)) * &(&ten - &x2);
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.coeff(&[1, 0].into()), q(20, 1));
        assert_eq!(p.coeff(&[1, 1].into()), q(-2, 1));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = Polynomial::var(1, 0);
        let z = &x - &x;
        assert!(z.is_zero());
        assert_eq!(z.as_constant(), Some(Coeff::zero()));
    }

    #[test]
    fn eval_matches() {
        let x = Polynomial::var(1, 0);
        let p = &(&x * &x) - &x; // x^2 - x
        assert_eq!(p.eval(&[q(3, 1)]), q(6, 1));
        assert_eq!(p.eval_f64(&[3.0]), 6.0);
    }

    #[test]
    fn exact_float_conversion() {
        let c = coeff_from_f64(0.5).unwrap();
        assert_eq!(c, q(1, 2));
        assert_eq!(coeff_to_f64(&c), 0.5);
    }
}
