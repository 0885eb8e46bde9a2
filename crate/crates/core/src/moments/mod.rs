//! Multi-indices, monomial bases, the moment functional and the truncated
//! stationary moment equations.

mod equations;
mod form;
mod monomials;
mod multi_index;
mod poly;
mod space;

pub use equations::{
    elementary_term, moment_equation_row, reaction_term, shift_difference, truncated_system,
};
pub use form::LinearForm;
pub use monomials::{binomial, monomials_of_degree, monomials_up_to, MonomialSet};
pub use multi_index::MultiIndex;
pub use poly::{coeff_from_f64, coeff_from_int, coeff_is_negative, coeff_to_f64, Polynomial};
pub use space::MomentSpace;
