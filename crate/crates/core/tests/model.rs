mod common;

use std::collections::BTreeSet;

use common::*;
use momentbound::model::{
    emit_model, normalize_propensity, parse_model, PropensityKind, Sign, SignedTerm,
};
use momentbound::moments::Polynomial;
use momentbound::Coeff;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int(v: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(v))
}

#[test]
fn dimer_model_structure() {
    let net = dimer();
    assert_eq!(net.n_species(), 2);
    assert_eq!(net.n_reactions(), 4);
    assert_eq!(net.reactions[2].terms.len(), 1);
    assert_eq!(net.reactions[2].terms[0].term.kind, PropensityKind::HomoBimolecular(0));
    assert_eq!(net.reactions[2].stoich, vec![-2, 1]);
    assert_eq!(net.parameter_f64("theta2").unwrap(), std::f64::consts::LN_2);
}

#[test]
fn sponge_model_structure() {
    let net = sponge();
    assert_eq!(net.n_species(), 7);
    assert_eq!(net.n_reactions(), 14);
    let split: Vec<&str> = net
        .reactions
        .iter()
        .filter(|r| r.is_split())
        .map(|r| r.label.as_str())
        .collect();
    assert_eq!(split, vec!["R1", "R5", "R12", "R13"]);
    assert_eq!(net.elementary_reactions().len(), 18);
}

#[test]
fn split_transcription_keeps_signed_terms() {
    let net = parse_model(
        "species X1 P x4; parameter k = 2;\n\
         reaction b: X1 -> X1 + P @ poly(k*(50 - x4));",
    )
    .unwrap();
    let terms = &net.reactions[0].terms;
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0], SignedTerm::plus(PropensityKind::ZeroOrder, int(100)));
    assert_eq!(terms[1], SignedTerm::minus(PropensityKind::Unimolecular(2), int(2)));
}

#[test]
fn normalize_examples() {
    let n = 2;
    let x1 = Polynomial::var(n, 0);
    let x2 = Polynomial::var(n, 1);
    // θ x1 (x1 − 1) / 2 with θ = 3
    let homo = (&x1 * &(&x1 - &Polynomial::constant(n, int(1)))).scale(&q(3, 2));
    assert_eq!(
        normalize_propensity(&homo).unwrap(),
        vec![SignedTerm::plus(PropensityKind::HomoBimolecular(0), int(3))]
    );
    assert_eq!(
        normalize_propensity(&Polynomial::constant(n, int(5))).unwrap(),
        vec![SignedTerm::plus(PropensityKind::ZeroOrder, int(5))]
    );
    // 2 x1 (10 − x2)
    let p = &x1.scale(&int(2)) * &(&Polynomial::constant(n, int(10)) - &x2);
    assert_eq!(
        normalize_propensity(&p).unwrap(),
        vec![
            SignedTerm::plus(PropensityKind::Unimolecular(0), int(20)),
            SignedTerm::minus(PropensityKind::HeteroBimolecular(0, 1), int(2)),
        ]
    );
    let cubic = &(&x1 * &x1) * &x2;
    assert!(normalize_propensity(&cubic).is_err());
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_model("species A;\nreaction r: 0 -> B @ mass(1);").unwrap_err();
    assert!(err.to_string().contains("2:"), "{err}");
    assert!(parse_model("species A; reaction r: A -> 0 @ mass(-1);").is_err());
    assert!(parse_model("species A; reaction r: 0 -> A @ poly(A^3);").is_err());
    assert!(parse_model("species A; reaction r: 0 -> A @ mass(A);").is_err());
    assert!(parse_model("species A; reaction r: 0 -> A @ poly(1/A);").is_err());
    assert!(parse_model("species A; parameter k = q; reaction r: 0 -> A @ mass(k);").is_err());
}

#[test]
fn derived_sets_follow_terms_and_stoichiometry() {
    let net = sponge();
    for r in &net.reactions {
        let from_terms: BTreeSet<usize> = r.terms.iter().flat_map(|t| t.term.kind.reactants()).collect();
        assert_eq!(r.reactant_set(), from_terms);
        let changes: BTreeSet<usize> = r
            .stoich
            .iter()
            .enumerate()
            .filter(|(_, s)| **s != 0)
            .map(|(j, _)| j)
            .collect();
        assert_eq!(r.change_set(), changes);
    }
}

fn signed_sum_at(terms: &[SignedTerm], n: usize, x: &[i64]) -> Coeff {
    let xs: Vec<Coeff> = x.iter().map(|&v| int(v)).collect();
    terms.iter().fold(int(0), |acc, t| {
        let v = t.term.polynomial(n).eval(&xs);
        match t.sign {
            Sign::Plus => acc + v,
            Sign::Minus => acc - v,
        }
    })
}

/// Random degree-2 integer polynomial as model text, with its own evaluator.
fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> (String, Vec<(Vec<u32>, i64)>) {
    let mut terms = Vec::new();
    for a in all_alphas(n, 2) {
        if rng.gen_bool(0.5) {
            let c = rng.gen_range(-9..=9);
            if c != 0 {
                terms.push((a, c));
            }
        }
    }
    if terms.is_empty() {
        terms.push((vec![0; n], 3));
    }
    let text = terms
        .iter()
        .map(|(a, c)| {
            let mut s = format!("({c})");
            for (j, &e) in a.iter().enumerate() {
                for _ in 0..e {
                    s.push_str(&format!("*S{}", j + 1));
                }
            }
            s
        })
        .collect::<Vec<_>>()
        .join(" + ");
    (text, terms)
}

#[test]
fn polynomial_identity_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let (text, oracle) = random_poly(&mut rng, n);
        let names: Vec<String> = (1..=n).map(|j| format!("S{j}")).collect();
        let src = format!("species {};\nreaction r: 0 -> S1 @ poly({text});", names.join(" "));
        let net = match parse_model(&src) {
            Ok(net) => net,
            // a polynomial that cancels to zero has no terms
            Err(_) => continue,
        };
        let terms = &net.reactions[0].terms;
        for _ in 0..100 {
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=60)).collect();
            let want: i64 = oracle
                .iter()
                .map(|(a, c)| c * a.iter().zip(&x).map(|(&e, &v)| v.pow(e)).product::<i64>())
                .sum();
            assert_eq!(signed_sum_at(terms, n, &x), int(want), "{src} at {x:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn emit_then_parse_round_trips(seed in any::<u64>(), n in 1usize..=3, r in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, n, r);
        let again = parse_model(&emit_model(&net)).unwrap();
        prop_assert_eq!(&net, &again);
    }

    #[test]
    fn split_models_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (text, _) = random_poly(&mut rng, 2);
        let src = format!("species S1 S2;\nparameter k = 3/7;\nreaction r: S1 -> S2 @ poly(k*({text}));");
        if let Ok(net) = parse_model(&src) {
            let again = parse_model(&emit_model(&net)).unwrap();
            prop_assert_eq!(&net, &again);
        }
    }
}

#[test]
fn benchmark_models_round_trip() {
    for net in [bd(), dimer(), sponge()] {
        assert_eq!(parse_model(&emit_model(&net)).unwrap(), net);
    }
}
