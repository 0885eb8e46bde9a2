use std::fmt::Write;

use num_traits::Signed;

use super::{ReactionNetwork, SignedTerm};
use crate::moments::Polynomial;
use crate::Coeff;

fn rational(c: &Coeff) -> String {
    if c.is_integer() {
        let s = c.to_integer().to_string();
        if c.is_negative() {
            format!("({s})")
        } else {
            s
        }
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

fn side(net: &ReactionNetwork, items: &[(usize, u32)]) -> String {
    if items.is_empty() {
        return "0".into();
    }
    items
        .iter()
        .map(|(j, m)| {
            if *m == 1 {
                net.species[*j].name.clone()
            } else {
                format!("{m} {}", net.species[*j].name)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn polynomial(net: &ReactionNetwork, p: &Polynomial) -> String {
    let names = net.species_names();
    let parts: Vec<String> = p
        .terms()
        .iter()
        .map(|(a, c)| {
            if a.is_zero() {
                rational(c)
            } else {
                format!("{}*{}", rational(c), a.display_with(&names))
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Serializes a network back to model source. Rates are written as exact
/// rationals so that parsing the output reproduces the network.
pub fn emit_model(net: &ReactionNetwork) -> String {
    let mut out = String::new();
    let names = net.species_names();
    writeln!(out, "species {};", names.join(" ")).unwrap();
    for (name, v) in &net.parameters {
        writeln!(out, "parameter {name} = {};", rational(v)).unwrap();
    }
    let n = net.n_species();
    for r in &net.reactions {
        let law = match r.terms.as_slice() {
            [SignedTerm { sign, term }]
                if *sign == super::Sign::Plus
                    && super::parse::mass_kind_matches(&r.reactants, term.kind) =>
            {
                format!("mass({})", rational(&term.rate))
            }
            _ => format!("poly({})", polynomial(net, &r.propensity(n))),
        };
        writeln!(
            out,
            "reaction {}: {} -> {} @ {};",
            r.label,
            side(net, &r.reactants),
            side(net, &r.products),
            law
        )
        .unwrap();
    }
    out
}
