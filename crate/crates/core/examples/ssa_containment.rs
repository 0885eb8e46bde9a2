//! Check that a simulated stationary mean falls inside the computed bounds.
//!
//! cargo run --release --example ssa_containment -- 20000

use momentbound::model::{parse_model, parse_objective};
use momentbound::moments::MultiIndex;
use momentbound::report::bound_pair;
use momentbound::sdp::{AssembleOptions, Mode, SolverSettings};
use momentbound::ssa::{check_containment, simulate, SimConfig};

fn main() {
    let t_end: f64 = std::env::args().nth(1).map_or(1e4, |s| s.parse().expect("number"));
    let net = parse_model(include_str!("../models/dimer.model")).unwrap();
    let x2 = MultiIndex::new(vec![0, 1]);

    let mut cfg = SimConfig::new(2, t_end, 42, vec![x2.clone()]);
    cfg.n_trajectories = 4;
    let est = simulate(&net, &cfg).unwrap();
    println!("{} events, {:.0} time units", est.events, est.total_sim_time);

    let obj = parse_objective(&net, "E[X2]").unwrap();
    let settings = SolverSettings::default();
    for mu in 2..=4 {
        let run = bound_pair(&net, mu, &obj, Mode::Decomposed, &settings, AssembleOptions::default()).unwrap();
        let bounds = (run.lower.value.unwrap(), run.upper.value.unwrap());
        let v = check_containment(bounds, &est, &x2).unwrap();
        println!(
            "mu={mu}: {:.5} ± {:.5} in [{:.5}, {:.5}]: {}",
            v.estimate, v.se, v.lo, v.hi, v.pass
        );
    }
}
