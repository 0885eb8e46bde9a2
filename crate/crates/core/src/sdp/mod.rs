//! Moment and localizing matrices, reaction-wise coefficient matrices, and
//! the original and decomposed bound problems over a shared moment vector.
//!
//! Both problems carry the same equality rows (the truncated stationary
//! moment equations plus `E[1] = 1`). They differ only in the PSD blocks:
//! the original problem imposes the full moment matrix and one localizing
//! matrix per species; the decomposed one imposes the reduced principal
//! submatrices of every reaction. The coefficient-matrix form of the
//! equations is built for verification and is not what the solver sees.

mod block;
mod coefficients;
mod export;
mod problem;
mod solver;

pub use block::{
    build_full_blocks, build_reduced_blocks, reaction_blocks, reaction_full_blocks, AffinePsdBlock,
};
pub use coefficients::{build_coefficient_matrices, frobenius_sum, CoefficientMatrix};
pub use export::{export_problem, ExportedBlock, ExportedProblem, ExportedRow, SCHEMA};
pub use problem::{
    assemble, assemble_from_profile, assemble_with, AssembleOptions, ConicProblem, EqualityRow,
    Mode, Sense,
};
pub use solver::{
    auto_species_scale, available_memory, memory_estimate, solve, BoundResult, BoundStatus,
    SolverSettings, TOL_ENV,
};
