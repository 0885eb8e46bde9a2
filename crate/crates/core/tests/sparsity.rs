mod common;

use std::collections::BTreeSet;

use common::*;
use momentbound::moments::{monomials_up_to, MonomialSet, MultiIndex};
use momentbound::sparsity::{
    build_profile, clique_budget, localizing_basis_degree, moment_basis_degree, partition_bar_set,
    reaction_sparsity, BlockSpec, ReactionSparsity,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pairs(a: &MonomialSet, b: &MonomialSet) -> Vec<(MultiIndex, MultiIndex)> {
    a.iter().flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

fn as_set(s: &MonomialSet) -> BTreeSet<MultiIndex> {
    s.iter().cloned().collect()
}

fn check_unit(rs: &ReactionSparsity, n: usize, mu: u32) {
    let full = as_set(&monomials_up_to(n, moment_basis_degree(mu)));
    let phi = as_set(&rs.phi);
    let phi_bar = as_set(&rs.phi_bar);
    assert!(phi.is_disjoint(&phi_bar));
    assert_eq!(&phi | &phi_bar, full);

    // no product of two unused monomials is used by the reaction
    for (a, b) in pairs(&rs.phi_bar, &rs.phi_bar) {
        assert!(!rs.xi.contains(&a.add(&b)), "{}: {a} * {b}", rs.label);
    }
    for (&k, (om, om_bar)) in &rs.omega {
        let loc = as_set(&monomials_up_to(n, localizing_basis_degree(mu)));
        assert_eq!(&as_set(om) | &as_set(om_bar), loc);
        for (a, b) in pairs(om_bar, om_bar) {
            assert!(!rs.xi.contains(&a.add(&b).add_unit(k)), "{}: x{k} {a} * {b}", rs.label);
        }
    }

    // maximality witnesses recomputed directly
    let gaps: Vec<MultiIndex> = rs
        .phi
        .iter()
        .filter(|z| {
            !rs.xi.contains(&z.add(z)) && rs.phi_bar.iter().all(|w| !rs.xi.contains(&z.add(w)))
        })
        .cloned()
        .collect();
    assert_eq!(gaps, rs.maximality_gaps);

    // refined split
    assert_eq!(&as_set(&rs.phi1) | &as_set(&rs.phi2), phi);
    assert!(as_set(&rs.phi1).is_disjoint(&as_set(&rs.phi2)));
    assert_eq!(&as_set(&rs.phi_bar1) | &as_set(&rs.phi_bar2), phi_bar);
    for (a, b) in pairs(&rs.phi2, &rs.phi_bar2) {
        assert!(!rs.xi.contains(&a.add(&b)), "{}: {a} * {b}", rs.label);
    }
}

/// Every monomial product the reaction needs has a block where at most one
/// factor is appended.
fn check_blocks_cover(rs: &ReactionSparsity, blocks: &[BlockSpec]) {
    let housed = |a: &MultiIndex, b: &MultiIndex, mult: Option<usize>| {
        blocks.iter().filter(|s| s.multiplier == mult).any(|s| {
            let basis = s.basis();
            basis.contains(a) && basis.contains(b) && !(s.appended.contains(a) && s.appended.contains(b))
        })
    };
    let all = rs.phi.union(&rs.phi_bar);
    for (a, b) in pairs(&all, &all) {
        if rs.xi.contains(&a.add(&b)) {
            assert!(housed(&a, &b, None), "{}: {a} * {b} has no block", rs.label);
        }
    }
    for (&k, (om, om_bar)) in &rs.omega {
        let all = om.union(om_bar);
        for (a, b) in pairs(&all, &all) {
            if rs.xi.contains(&a.add(&b).add_unit(k)) {
                assert!(housed(&a, &b, Some(k)), "{}: x{k} {a} * {b} has no block", rs.label);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_network_sets_are_consistent(seed in any::<u64>(), n in 1usize..=3, mu in 1u32..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, n, 4);
        let profile = build_profile(&net, mu).unwrap();
        for (rs, part) in profile.reactions.iter().zip(&profile.partitions) {
            check_unit(rs, n, mu);
            let blocks: Vec<BlockSpec> = part.blocks().cloned().collect();
            check_blocks_cover(rs, &blocks);
        }
    }

    #[test]
    fn chunks_cover_in_order(seed in any::<u64>(), size in 1usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let n = rng.gen_range(1..=3);
        let basis = monomials_up_to(n, rng.gen_range(0..=3));
        let bar: MonomialSet = basis.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
        let part = partition_bar_set(&bar, size);
        let flat: Vec<MultiIndex> = part.blocks.iter().flat_map(|b| b.iter().cloned()).collect();
        prop_assert_eq!(flat, bar.members().to_vec());
        for (i, b) in part.blocks.iter().enumerate() {
            prop_assert!(!b.is_empty());
            if i + 1 < part.blocks.len() {
                prop_assert_eq!(b.len(), size);
            } else {
                prop_assert!(b.len() <= size);
            }
        }
    }
}

#[test]
fn sponge_sets_are_consistent() {
    let net = sponge();
    for mu in 1..=6 {
        let profile = build_profile(&net, mu).unwrap();
        for (rs, part) in profile.reactions.iter().zip(&profile.partitions) {
            check_unit(rs, 7, mu);
            let blocks: Vec<BlockSpec> = part.blocks().cloned().collect();
            check_blocks_cover(rs, &blocks);
        }
    }
}

#[test]
fn clique_budget_against_float_bound() {
    // ℓ ≤ s (2^{1/3} − 1) / (2 − 2^{1/3}), so ℓ(s) is the floor of that, at least 1
    let c = (2f64.cbrt() - 1.0) / (2.0 - 2f64.cbrt());
    for s in 0..400usize {
        let want = ((s as f64 * c + 1e-9).floor() as usize).max(1);
        assert_eq!(clique_budget(s), want, "s = {s}");
    }
}

#[test]
fn dimer_reactions_at_order_three() {
    let net = dimer();
    let n = 2;
    // R1 (zero order) uses only moments up to degree three
    let rs = reaction_sparsity(&net, 0, 3).unwrap();
    assert!(rs.xi.iter().all(|a| a.degree() <= 3));
    assert_eq!(rs.phi.len() + rs.phi_bar.len(), monomials_up_to(n, 2).len());
    // R3 (x1 (x1 − 1) / 2) keeps x1 in every used monomial of its moment block
    let rs = reaction_sparsity(&net, 2, 3).unwrap();
    assert!(rs.phi.iter().all(|a| a.exponents()[0] >= 1));
    assert_eq!(rs.reactants, BTreeSet::from([0]));
}
