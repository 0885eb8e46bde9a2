//! Print the stationary moment equations of a network up to order `mu`.
//!
//! cargo run --example moment_equations -- models/bd.model 3

use momentbound::model::parse_model;
use momentbound::moments::truncated_system;

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "models/bd.model".into());
    let mu: u32 = args.next().map_or(2, |s| s.parse().expect("integer order"));
    let net = parse_model(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let names = net.species_names();

    for (alpha, row) in truncated_system(&net, mu).unwrap() {
        let terms: Vec<String> = row
            .coeffs()
            .iter()
            .map(|(eta, c)| format!("({c}) E[{}]", eta.display_with(&names)))
            .collect();
        println!("d/dt E[{}] = {} = 0", alpha.display_with(&names), terms.join(" + "));
    }
}
