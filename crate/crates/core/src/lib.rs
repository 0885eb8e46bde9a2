//! Guaranteed bounds on stationary moments of stochastic chemical reaction
//! networks.
//!
//! The crate assembles the moment-bounding semidefinite program over the
//! truncated stationary moment equations, together with a relaxed variant
//! whose positive-semidefinite constraints are split into small principal
//! submatrices chosen reaction by reaction. Both are solved through an
//! interior-point conic solver, and a Gillespie simulator provides an
//! empirical check that the bounds contain the truth.
//!
//! ```no_run
//! use momentbound::{model::parse_model, sdp::{assemble, solve, Mode, Sense, SolverSettings}};
//!
//! let net = parse_model(include_str!("../models/bd.model")).unwrap();
//! let objective = momentbound::model::parse_objective(&net, "E[X]").unwrap();
//! let problem = assemble(&net, 2, &objective, Mode::Original, Sense::Max).unwrap();
//! let result = solve(&problem, &SolverSettings::default());
//! println!("{:?} {:?}", result.status, result.value);
//! ```

// links the system OpenBLAS used by the PSD cone
extern crate openblas_src;

pub mod error;
pub mod model;
pub mod moments;
pub mod report;
pub mod sdp;
pub mod sparsity;
pub mod ssa;

/// Exact coefficient type used from parsing through problem assembly.
pub type Coeff = num_rational::BigRational;

pub use error::Error;
