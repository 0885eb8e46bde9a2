use rayon::prelude::*;

use super::{monomials_up_to, LinearForm, MultiIndex, Polynomial};
use crate::error::SdpError;
use crate::model::{ReactionNetwork, SignedTerm};
use crate::moments::poly::coeff_from_int;

/// `(x+s)^α − x^α` expanded exactly.
pub fn shift_difference(stoich: &[i64], alpha: &MultiIndex) -> Polynomial {
    let n = stoich.len();
    let mut shifted = Polynomial::constant(n, coeff_from_int(1));
    for (j, &a) in alpha.exponents().iter().enumerate() {
        if a == 0 {
            continue;
        }
        let base = &Polynomial::var(n, j) + &Polynomial::constant(n, coeff_from_int(stoich[j]));
        shifted = &shifted * &base.pow(a);
    }
    &shifted - &Polynomial::monomial(n, alpha.clone(), coeff_from_int(1))
}

/// Contribution of one signed propensity term to the drift of `E[x^α]`.
pub fn elementary_term(stoich: &[i64], term: &SignedTerm, alpha: &MultiIndex) -> LinearForm {
    if alpha.is_zero() {
        return LinearForm::new();
    }
    let n = stoich.len();
    let drift = &shift_difference(stoich, alpha) * &term.polynomial(n);
    LinearForm::from_polynomial(&drift)
}

/// `f_{i,α} = E[((x+s_i)^α − x^α) w_i(x)]` as a linear form over moments.
pub fn reaction_term(net: &ReactionNetwork, i: usize, alpha: &MultiIndex) -> LinearForm {
    let r = &net.reactions[i];
    let mut out = LinearForm::new();
    for t in &r.terms {
        out.add_form(&elementary_term(&r.stoich, t, alpha));
    }
    out
}

/// Stationary moment equation row `a_α`; the constraint reads `a_α · m = 0`.
pub fn moment_equation_row(
    net: &ReactionNetwork,
    alpha: &MultiIndex,
    mu: u32,
) -> Result<LinearForm, SdpError> {
    let d = alpha.degree();
    if d == 0 || d > mu {
        return Err(SdpError::AlphaOutOfRange { degree: d, mu });
    }
    let mut row = LinearForm::new();
    for i in 0..net.n_reactions() {
        row.add_form(&reaction_term(net, i, alpha));
    }
    Ok(row)
}

/// All rows `a_α` with `1 ≤ |α| ≤ μ`, in graded-lex order of `α`.
pub fn truncated_system(net: &ReactionNetwork, mu: u32) -> Result<Vec<(MultiIndex, LinearForm)>, SdpError> {
    if mu == 0 {
        return Err(SdpError::ZeroTruncation);
    }
    let alphas: Vec<MultiIndex> = monomials_up_to(net.n_species(), mu)
        .iter()
        .filter(|a| !a.is_zero())
        .cloned()
        .collect();
    alphas
        .into_par_iter()
        .map(|a| moment_equation_row(net, &a, mu).map(|row| (a, row)))
        .collect()
}
