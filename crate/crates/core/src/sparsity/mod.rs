//! Reaction-wise sparsity of the moment equations.
//!
//! For each elementary reaction (one signed propensity term) we compute
//! `Ξ_i`, the exact set of moments the reaction contributes to any
//! truncated equation, and from it the split of the moment-matrix basis into
//! a used part `Φ_i` and an unused part `Φ̄_i` whose pairwise products never
//! reach `Ξ_i`. The localizing bases split the same way into `Ω_i^(k)` and
//! `Ω̄_i^(k)`. The unused parts are then chunked; each chunk appended to
//! its base set gives one reduced PSD block.
//!
//! The refinement of `(Φ_i, Φ̄_i)` into `Φ_{i1}, Φ_{i2}, Φ̄_{i1}, Φ̄_{i2}` is
//! read as a minimum bipartite vertex cover of the interaction graph; the
//! tie-break prefers `Φ̄` vertices. This is our reading, not a unique
//! definition.

mod partition;
mod sets;
mod split;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::SparsityError;
use crate::model::{PropensityKind, ReactionNetwork};
use crate::moments::{monomials_up_to, MonomialSet, MultiIndex};

pub use partition::{clique_budget, partition_bar_set, Partition};
pub use sets::{
    check_product_condition, divided_monomials, localizing_basis_degree, maximality_violations,
    moment_basis_degree, omega_for, phi_exponent, phi_for, xi_for,
};
pub use split::{interaction_edges, min_vertex_cover, split_phi, PhiSplit};

/// Sparsity sets of one elementary reaction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReactionSparsity {
    /// Position in [`ReactionNetwork::elementary_reactions`].
    pub unit: usize,
    pub reaction: usize,
    pub label: String,
    pub kind: PropensityKind,
    /// `𝒦_i`.
    pub reactants: BTreeSet<usize>,
    /// Exponent used by the constructive `Φ_i`.
    pub d: MultiIndex,
    pub xi: MonomialSet,
    pub phi: MonomialSet,
    pub phi_bar: MonomialSet,
    pub phi1: MonomialSet,
    pub phi2: MonomialSet,
    pub phi_bar1: MonomialSet,
    pub phi_bar2: MonomialSet,
    /// `k ↦ (Ω_i^(k), Ω̄_i^(k))` for `k ∈ 𝒦_i`.
    pub omega: BTreeMap<usize, (MonomialSet, MonomialSet)>,
    /// Members of `Φ_i` that could have joined `Φ̄_i`; empty when the
    /// constructive `Φ̄_i` is the largest admissible set.
    pub maximality_gaps: Vec<MultiIndex>,
}

/// One reduced block: `base ∪ appended`, optionally weighted by `x_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSpec {
    pub base: MonomialSet,
    pub appended: MonomialSet,
    pub multiplier: Option<usize>,
}

impl BlockSpec {
    pub fn basis(&self) -> MonomialSet {
        self.base.union(&self.appended)
    }

    pub fn dim(&self) -> usize {
        self.base.len() + self.appended.len()
    }
}

/// Reduced blocks of one elementary reaction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReactionPartition {
    pub moment: Vec<BlockSpec>,
    pub localizing: BTreeMap<usize, Vec<BlockSpec>>,
}

impl ReactionPartition {
    /// Blocks from the refined split with chunk sizes `ℓ(Φ_i)` for `Φ̄_{i1}`,
    /// `ℓ(Φ_{i1})` for `Φ̄_{i2}` and `ℓ(Ω_i^(k))` for `Ω̄_i^(k)`.
    pub fn refined(rs: &ReactionSparsity) -> Self {
        let mut moment = Vec::new();
        let p1 = partition_bar_set(&rs.phi_bar1, clique_budget(rs.phi.len()));
        for chunk in p1.blocks {
            moment.push(BlockSpec {
                base: rs.phi.clone(),
                appended: chunk,
                multiplier: None,
            });
        }
        if moment.is_empty() && !rs.phi.is_empty() {
            // Φ×Φ entries still need a home
            moment.push(BlockSpec {
                base: rs.phi.clone(),
                appended: MonomialSet::new(),
                multiplier: None,
            });
        }
        // with Φ_{i1} empty these blocks would carry no coefficient
        let p2 = if rs.phi1.is_empty() {
            Partition::default()
        } else {
            partition_bar_set(&rs.phi_bar2, clique_budget(rs.phi1.len()))
        };
        for chunk in p2.blocks {
            moment.push(BlockSpec {
                base: rs.phi1.clone(),
                appended: chunk,
                multiplier: None,
            });
        }
        ReactionPartition {
            moment,
            localizing: Self::localizing_blocks(rs),
        }
    }

    /// Blocks `Φ_i ∪ Φ̄_{i,j}` from an explicit partition of `Φ̄_i`, without
    /// the refined split.
    pub fn plain(rs: &ReactionSparsity, phi_bar_partition: &Partition) -> Self {
        let mut moment: Vec<BlockSpec> = phi_bar_partition
            .blocks
            .iter()
            .map(|chunk| BlockSpec {
                base: rs.phi.clone(),
                appended: chunk.clone(),
                multiplier: None,
            })
            .collect();
        if moment.is_empty() {
            moment.push(BlockSpec {
                base: rs.phi.clone(),
                appended: MonomialSet::new(),
                multiplier: None,
            });
        }
        ReactionPartition {
            moment,
            localizing: Self::localizing_blocks(rs),
        }
    }

    fn localizing_blocks(rs: &ReactionSparsity) -> BTreeMap<usize, Vec<BlockSpec>> {
        rs.omega
            .iter()
            .map(|(&k, (om, om_bar))| {
                let part = partition_bar_set(om_bar, clique_budget(om.len()));
                let mut blocks: Vec<BlockSpec> = part
                    .blocks
                    .into_iter()
                    .map(|chunk| BlockSpec {
                        base: om.clone(),
                        appended: chunk,
                        multiplier: Some(k),
                    })
                    .collect();
                if blocks.is_empty() && !om.is_empty() {
                    blocks.push(BlockSpec {
                        base: om.clone(),
                        appended: MonomialSet::new(),
                        multiplier: Some(k),
                    });
                }
                (k, blocks)
            })
            .collect()
    }

    /// `p_i`.
    pub fn p(&self) -> usize {
        self.moment.len()
    }

    /// `q_i` per reactant species.
    pub fn q(&self) -> BTreeMap<usize, usize> {
        self.localizing.iter().map(|(&k, v)| (k, v.len())).collect()
    }

    pub fn blocks(&self) -> impl Iterator<Item = &BlockSpec> {
        self.moment.iter().chain(self.localizing.values().flatten())
    }
}

/// Sparsity sets and reduced-block plan for every elementary reaction.
#[derive(Clone, Debug, Serialize)]
pub struct SparsityProfile {
    pub mu: u32,
    pub n_species: usize,
    pub reactions: Vec<ReactionSparsity>,
    pub partitions: Vec<ReactionPartition>,
}

fn unit_kind(net: &ReactionNetwork, unit: usize) -> (PropensityKind, String, usize) {
    let units = net.elementary_reactions();
    let u = &units[unit];
    (u.term.term.kind, u.label.clone(), u.reaction)
}

/// `Ξ_i` of elementary reaction `unit`.
pub fn xi_set(net: &ReactionNetwork, unit: usize, mu: u32) -> MonomialSet {
    let (kind, _, _) = unit_kind(net, unit);
    xi_for(net.n_species(), kind, mu)
}

/// `(Φ_i, Φ̄_i)` of elementary reaction `unit`, with the product condition
/// on `Φ̄_i` verified.
pub fn phi_sets(net: &ReactionNetwork, unit: usize, mu: u32) -> Result<(MonomialSet, MonomialSet), SparsityError> {
    let (kind, label, _) = unit_kind(net, unit);
    let n = net.n_species();
    let xi = xi_for(n, kind, mu);
    let phi = phi_for(n, kind, mu);
    let phi_bar = monomials_up_to(n, moment_basis_degree(mu)).difference(&phi);
    check_product_condition(&label, &phi_bar, None, &xi)?;
    Ok((phi, phi_bar))
}

/// `(Ω_i^(k), Ω̄_i^(k))` of elementary reaction `unit`; `k` must be a
/// reactant of the term.
pub fn omega_sets(
    net: &ReactionNetwork,
    unit: usize,
    k: usize,
    mu: u32,
) -> Result<(MonomialSet, MonomialSet), SparsityError> {
    let (kind, label, _) = unit_kind(net, unit);
    assert!(kind.reactants().contains(&k), "species {k} is not a reactant of '{label}'");
    let n = net.n_species();
    let xi = xi_for(n, kind, mu);
    let om = omega_for(n, kind, k, mu);
    let om_bar = monomials_up_to(n, localizing_basis_degree(mu)).difference(&om);
    check_product_condition(&label, &om_bar, Some(k), &xi)?;
    Ok((om, om_bar))
}

/// Full sparsity analysis of one elementary reaction.
pub fn reaction_sparsity(net: &ReactionNetwork, unit: usize, mu: u32) -> Result<ReactionSparsity, SparsityError> {
    let (kind, label, reaction) = unit_kind(net, unit);
    let n = net.n_species();
    let xi = xi_for(n, kind, mu);
    let (phi, phi_bar) = phi_sets(net, unit, mu)?;
    let split = split_phi(&phi, &phi_bar, &xi);
    let reactants: BTreeSet<usize> = kind.reactants().into_iter().collect();
    let omega = reactants
        .iter()
        .map(|&k| omega_sets(net, unit, k, mu).map(|o| (k, o)))
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    let maximality_gaps = maximality_violations(&phi, &phi_bar, None, &xi);
    Ok(ReactionSparsity {
        unit,
        reaction,
        label,
        kind,
        reactants,
        d: phi_exponent(n, kind),
        xi,
        phi,
        phi_bar,
        phi1: split.phi1,
        phi2: split.phi2,
        phi_bar1: split.phi_bar1,
        phi_bar2: split.phi_bar2,
        omega,
        maximality_gaps,
    })
}

/// Sparsity profile with the default (refined) partition plan.
pub fn build_profile(net: &ReactionNetwork, mu: u32) -> Result<SparsityProfile, SparsityError> {
    let reactions = (0..net.elementary_reactions().len())
        .map(|u| reaction_sparsity(net, u, mu))
        .collect::<Result<Vec<_>, _>>()?;
    let partitions = reactions.iter().map(ReactionPartition::refined).collect();
    Ok(SparsityProfile {
        mu,
        n_species: net.n_species(),
        reactions,
        partitions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_model;

    fn dimer() -> ReactionNetwork {
        parse_model(
            "species X1 X2;\n\
             reaction R1: 0 -> X1 @ mass(1);\n\
             reaction R2: X1 -> 0 @ mass(1);\n\
             reaction R3: 2 X1 -> X2 @ mass(1);\n\
             reaction R4: X2 -> 0 @ mass(1);",
        )
        .unwrap()
    }

    fn set(v: &[&[u32]]) -> MonomialSet {
        v.iter().map(|e| MultiIndex::new(e.to_vec())).collect()
    }

    #[test]
    fn dimer_r3_sets() {
        let net = dimer();
        let (phi, phi_bar) = phi_sets(&net, 2, 3).unwrap();
        assert_eq!(phi, set(&[&[1, 0], &[2, 0], &[1, 1]]));
        assert_eq!(phi_bar, set(&[&[0, 0], &[0, 1], &[0, 2]]));
        let (om, om_bar) = omega_sets(&net, 2, 0, 3).unwrap();
        assert_eq!(om, set(&[&[0, 0], &[1, 0], &[0, 1]]));
        assert!(om_bar.is_empty());
    }

    #[test]
    fn dimer_r3_plain_partition_dims() {
        let net = dimer();
        let rs = reaction_sparsity(&net, 2, 3).unwrap();
        let part = ReactionPartition::plain(&rs, &partition_bar_set(&rs.phi_bar, 2));
        let dims: Vec<usize> = part.moment.iter().map(BlockSpec::dim).collect();
        assert_eq!(dims, vec![5, 4]);
    }

    #[test]
    fn dimer_r3_split_satisfies_condition() {
        let net = dimer();
        let rs = reaction_sparsity(&net, 2, 3).unwrap();
        for a in &rs.phi2 {
            for b in &rs.phi_bar2 {
                assert!(!rs.xi.contains(&a.add(b)));
            }
        }
        // K_{3,3} minus one edge: minimum cover has size 3
        assert_eq!(rs.phi1.len() + rs.phi_bar1.len(), 3);
    }

    #[test]
    fn profile_covers_every_unit() {
        let net = dimer();
        for mu in 1..=5 {
            let prof = build_profile(&net, mu).unwrap();
            assert_eq!(prof.reactions.len(), 4);
            for (rs, part) in prof.reactions.iter().zip(&prof.partitions) {
                assert_eq!(rs.phi.union(&rs.phi_bar), monomials_up_to(2, moment_basis_degree(mu)));
                assert!(rs.phi.is_disjoint(&rs.phi_bar));
                assert!(part.p() >= 1);
                for (om, om_bar) in rs.omega.values() {
                    assert_eq!(om.union(om_bar), monomials_up_to(2, localizing_basis_degree(mu)));
                }
            }
        }
    }

    #[test]
    fn zeroth_order_phi() {
        let net = parse_model("species A B; reaction r: 0 -> A @ mass(1);").unwrap();
        let (phi, _) = phi_sets(&net, 0, 3).unwrap();
        assert_eq!(phi, monomials_up_to(2, 1));
        assert_eq!(xi_set(&net, 0, 3), monomials_up_to(2, 2));
    }

    #[test]
    fn unimolecular_omega_by_order() {
        let net = parse_model("species A B; reaction r: A -> 0 @ mass(1);").unwrap();
        let (om, bar) = omega_sets(&net, 0, 0, 3).unwrap();
        assert_eq!(om, monomials_up_to(2, 1));
        assert!(bar.is_empty());
        let (_, bar) = omega_sets(&net, 0, 0, 4).unwrap();
        assert!(bar.contains(&MultiIndex::from([0, 2])));
        let (_, bar) = omega_sets(&net, 0, 0, 5).unwrap();
        assert!(bar.is_empty());
    }
}
