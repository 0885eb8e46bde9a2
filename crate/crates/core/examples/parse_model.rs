//! Parse a model file, list its reactions and print the canonical form.
//!
//! cargo run --example parse_model -- models/gene_sponge_7.model

use momentbound::model::{emit_model, parse_model, Sign};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "models/dimer.model".into());
    let text = std::fs::read_to_string(&path).expect("readable model file");
    let net = parse_model(&text).unwrap_or_else(|e| panic!("{path}: {e}"));

    println!("species: {}", net.species_names().join(" "));
    for r in &net.reactions {
        let terms: Vec<String> = r
            .terms
            .iter()
            .map(|t| {
                let s = if t.sign == Sign::Minus { "-" } else { "+" };
                format!("{s}{:?}@{}", t.term.kind, t.term.rate)
            })
            .collect();
        println!("{:>6}  s={:?}  {}", r.label, r.stoich, terms.join(" "));
    }
    println!("{} elementary reactions\n", net.elementary_reactions().len());
    print!("{}", emit_model(&net));
}
