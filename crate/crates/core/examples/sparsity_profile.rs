//! Used and unused monomials per elementary reaction, and the reduced
//! blocks built from them.
//!
//! cargo run --example sparsity_profile -- models/dimer.model 3

use momentbound::model::parse_model;
use momentbound::sdp::{build_full_blocks, build_reduced_blocks};
use momentbound::sparsity::build_profile;

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "models/dimer.model".into());
    let mu: u32 = args.next().map_or(3, |s| s.parse().expect("integer order"));
    let net = parse_model(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let sp = net.species_names();
    let profile = build_profile(&net, mu).unwrap();

    for (rs, part) in profile.reactions.iter().zip(&profile.partitions) {
        println!("{} ({:?})", rs.label, rs.kind);
        println!("  |Xi| = {}", rs.xi.len());
        println!("  used   {:?}", rs.phi.display_with(&sp));
        println!("  unused {:?}", rs.phi_bar.display_with(&sp));
        for b in part.blocks() {
            let mult = b.multiplier.map_or(String::new(), |k| format!(" x {}", sp[k]));
            println!("  block{mult}: {:?} + {:?}", b.base.display_with(&sp), b.appended.display_with(&sp));
        }
    }

    let full: Vec<usize> = build_full_blocks(net.n_species(), mu).iter().map(|b| b.dim()).collect();
    let mut reduced: Vec<usize> = build_reduced_blocks(&profile).iter().map(|b| b.dim()).collect();
    reduced.sort_unstable_by(|a, b| b.cmp(a));
    println!("\noriginal blocks {full:?}");
    println!("decomposed blocks {reduced:?}");
}
