//! Solve-time comparison of the original and decomposed problems on the
//! seven-species gene expression model with a molecular sponge.
//!
//! cargo run --release --example gene_sponge_benchmark -- 3..4
//!
//! Orders 5 and above take minutes per solve and several GB of memory.

use momentbound::model::parse_model;
use momentbound::report::{bench_csv, bench_rows, parse_mu_list};
use momentbound::sdp::{auto_species_scale, AssembleOptions, SolverSettings};

fn main() {
    let mus = parse_mu_list(&std::env::args().nth(1).unwrap_or_else(|| "3..4".into())).unwrap();
    let net = parse_model(include_str!("../models/gene_sponge_7.model")).unwrap();
    let base = SolverSettings::from_env();
    let settings = base.clone().with_species_scale(auto_species_scale(&net, &base));

    let rows = bench_rows("gene_sponge_7", &net, "E[P2]", &mus, 1, &settings, AssembleOptions::default()).unwrap();
    bench_csv(&rows, std::io::stdout()).unwrap();

    for mu in &mus {
        let total = |mode: &str| -> f64 {
            rows.iter()
                .filter(|r| r.mu == *mu && r.mode.to_string() == mode)
                .map(|r| r.solve_s)
                .sum()
        };
        let (o, d) = (total("original"), total("decomposed"));
        eprintln!("mu={mu}: original {o:.2}s, decomposed {d:.2}s ({:+.0}%)", 100.0 * (d / o - 1.0));
    }
}
