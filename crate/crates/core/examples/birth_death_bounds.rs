//! Bounds on the mean of a birth-death process. The stationary law is
//! Poisson with mean `k_birth / k_death`, so both bounds equal 10.
//!
//! cargo run --release --example birth_death_bounds

use momentbound::model::{parse_model, parse_objective};
use momentbound::sdp::{assemble, solve, Mode, Sense, SolverSettings};

fn main() {
    let net = parse_model(include_str!("../models/bd.model")).unwrap();
    let settings = SolverSettings::default();
    for objective in ["E[X1]", "E[X1^2]"] {
        let obj = parse_objective(&net, objective).unwrap();
        for mode in [Mode::Original, Mode::Decomposed] {
            let lo = solve(&assemble(&net, 3, &obj, mode, Sense::Min).unwrap(), &settings);
            let hi = solve(&assemble(&net, 3, &obj, mode, Sense::Max).unwrap(), &settings);
            println!(
                "{objective:8} {mode:10} [{:.6}, {:.6}]  ({}, {})",
                lo.value.unwrap_or(f64::NAN),
                hi.value.unwrap_or(f64::NAN),
                lo.status.as_str(),
                hi.status.as_str()
            );
        }
    }
}
