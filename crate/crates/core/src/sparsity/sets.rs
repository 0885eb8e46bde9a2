//! Constructive support sets for one elementary reaction.

use std::collections::BTreeSet;

use crate::error::SparsityError;
use crate::model::PropensityKind;
use crate::moments::{monomials_up_to, MonomialSet, MultiIndex};

/// `⌈x/2⌉` for possibly negative `x`.
pub(crate) fn ceil_half(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

/// Degree of the moment-matrix basis, `⌈μ/2⌉`.
pub fn moment_basis_degree(mu: u32) -> u32 {
    ceil_half(mu as i64) as u32
}

/// Degree of the localizing-matrix basis, `⌈(μ−1)/2⌉`.
pub fn localizing_basis_degree(mu: u32) -> u32 {
    ceil_half(mu as i64 - 1).max(0) as u32
}

/// `Ξ_i`: every monomial whose moment can appear in the reaction's drift
/// terms for some `|α| ≤ μ`.
///
/// Built as `{β + γ : |β| ≤ μ−1, 1 ≤ γ_j ≤ d_j on the reactants, γ_j = 0
/// elsewhere}`, with `d` the exponent of the leading propensity monomial.
/// Zeroth-order reactions have no reactants, so `γ = 0` and the set is
/// `𝓜_{μ−1}`.
pub fn xi_for(n: usize, kind: PropensityKind, mu: u32) -> MonomialSet {
    if mu == 0 {
        return MonomialSet::new();
    }
    let d = kind.leading_exponent(n);
    let reactants = kind.reactants();
    let mut gammas: Vec<Vec<u32>> = vec![vec![0; n]];
    for &j in &reactants {
        gammas = gammas
            .into_iter()
            .flat_map(|g| {
                (1..=d.exponents()[j]).map(move |v| {
                    let mut g = g.clone();
                    g[j] = v;
                    g
                })
            })
            .collect();
    }
    let betas = monomials_up_to(n, mu - 1);
    let mut out = BTreeSet::new();
    for g in &gammas {
        let g = MultiIndex::new(g.clone());
        for b in &betas {
            out.insert(b.add(&g));
        }
    }
    out.into_iter().collect()
}

/// The multi-index `d` used by the constructive `Φ_i`: the leading exponent,
/// except that `x_j x_k` (`j < k`) uses `e_j`.
pub fn phi_exponent(n: usize, kind: PropensityKind) -> MultiIndex {
    match kind {
        PropensityKind::HeteroBimolecular(j, _) => MultiIndex::unit(n, j),
        k => k.leading_exponent(n),
    }
}

fn in_box(beta: &MultiIndex, kappa: &MultiIndex, total_cap: i64, hi_offset: i64) -> bool {
    if beta.degree() as i64 > total_cap {
        return false;
    }
    beta.exponents()
        .iter()
        .zip(kappa.exponents())
        .all(|(&b, &k)| {
            let b = b as i64;
            let lo = ceil_half(k as i64);
            let hi = ceil_half(hi_offset + k as i64);
            lo <= b && b <= hi
        })
}

/// Constructive `Φ_i` intersected with `𝓜_{⌈μ/2⌉}`.
pub fn phi_for(n: usize, kind: PropensityKind, mu: u32) -> MonomialSet {
    let d = phi_exponent(n, kind);
    let mu = mu as i64;
    let base = ceil_half(mu - 2);
    let total_cap = base + ceil_half(d.degree() as i64);
    monomials_up_to(n, moment_basis_degree(mu as u32))
        .iter()
        .filter(|b| {
            // ⌈d_j/2⌉ ≤ β_j ≤ ⌈(μ−2)/2⌉ + ⌈d_j/2⌉
            b.degree() as i64 <= total_cap
                && b.exponents().iter().zip(d.exponents()).all(|(&bj, &dj)| {
                    let lo = ceil_half(dj as i64);
                    (lo..=base + lo).contains(&(bj as i64))
                })
        })
        .cloned()
        .collect()
}

/// `𝒟_i^(k)`: propensity monomials divisible by `x_k`, divided by `x_k`.
pub fn divided_monomials(n: usize, kind: PropensityKind, k: usize) -> Vec<MultiIndex> {
    let monomials: Vec<MultiIndex> = kind.polynomial(n).terms().keys().cloned().collect();
    let ek = MultiIndex::unit(n, k);
    let mut out: Vec<MultiIndex> = monomials.iter().filter_map(|m| m.checked_sub(&ek)).collect();
    out.sort();
    out.dedup();
    out
}

/// Constructive `Ω_i^(k)`: union of `Λ_κ` over `κ ∈ 𝒟_i^(k)`, intersected
/// with `𝓜_{⌈(μ−1)/2⌉}`.
pub fn omega_for(n: usize, kind: PropensityKind, k: usize, mu: u32) -> MonomialSet {
    let basis = monomials_up_to(n, localizing_basis_degree(mu));
    let mu = mu as i64;
    let kappas = divided_monomials(n, kind, k);
    basis
        .iter()
        .filter(|b| {
            kappas.iter().any(|kappa| {
                let cap = ceil_half(mu + kappa.degree() as i64 - 2);
                in_box(b, kappa, cap, mu - 2)
            })
        })
        .cloned()
        .collect()
}

/// Checks that no product of two members of `bar` (times `x_k` when a
/// multiplier is given) falls in `xi`.
pub fn check_product_condition(
    label: &str,
    bar: &MonomialSet,
    multiplier: Option<usize>,
    xi: &MonomialSet,
) -> Result<(), SparsityError> {
    for (p, a) in bar.iter().enumerate() {
        for b in &bar.members()[p..] {
            let mut prod = a.add(b);
            if let Some(k) = multiplier {
                prod = prod.add_unit(k);
            }
            if xi.contains(&prod) {
                return Err(SparsityError::Consistency {
                    reaction: label.to_string(),
                    a: a.to_string(),
                    b: b.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Members of `used` that could move to the unused side without breaking
/// the product condition, i.e. witnesses that `unused` is not maximal.
pub fn maximality_violations(
    used: &MonomialSet,
    unused: &MonomialSet,
    multiplier: Option<usize>,
    xi: &MonomialSet,
) -> Vec<MultiIndex> {
    let hits = |a: &MultiIndex, b: &MultiIndex| {
        let mut prod = a.add(b);
        if let Some(k) = multiplier {
            prod = prod.add_unit(k);
        }
        xi.contains(&prod)
    };
    used.iter()
        .filter(|z| !hits(z, z) && unused.iter().all(|w| !hits(z, w)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[&[u32]]) -> MonomialSet {
        v.iter().map(|e| MultiIndex::new(e.to_vec())).collect()
    }

    #[test]
    fn ceil_half_negative() {
        assert_eq!(ceil_half(-1), 0);
        assert_eq!(ceil_half(-2), -1);
        assert_eq!(ceil_half(3), 2);
        assert_eq!(localizing_basis_degree(1), 0);
        assert_eq!(moment_basis_degree(5), 3);
    }

    #[test]
    fn xi_dimerization_r3() {
        let xi = xi_for(2, PropensityKind::HomoBimolecular(0), 3);
        let want = set(&[
            &[1, 0],
            &[2, 0],
            &[3, 0],
            &[4, 0],
            &[1, 1],
            &[2, 1],
            &[3, 1],
            &[1, 2],
            &[2, 2],
        ]);
        assert_eq!(xi, want);
    }

    #[test]
    fn xi_death_and_zeroth() {
        assert_eq!(xi_for(1, PropensityKind::Unimolecular(0), 2), set(&[&[1], &[2]]));
        assert_eq!(xi_for(2, PropensityKind::ZeroOrder, 3), monomials_up_to(2, 2));
    }

    #[test]
    fn phi_examples() {
        let phi = phi_for(2, PropensityKind::HomoBimolecular(0), 3);
        assert_eq!(phi, set(&[&[1, 0], &[2, 0], &[1, 1]]));
        let phi = phi_for(2, PropensityKind::ZeroOrder, 3);
        assert_eq!(phi, set(&[&[0, 0], &[1, 0], &[0, 1]]));
        let phi = phi_for(1, PropensityKind::Unimolecular(0), 2);
        assert_eq!(phi, set(&[&[1]]));
    }

    #[test]
    fn hetero_uses_smaller_index() {
        assert_eq!(
            phi_exponent(3, PropensityKind::HeteroBimolecular(0, 2)),
            MultiIndex::unit(3, 0)
        );
    }

    #[test]
    fn omega_examples() {
        let om = omega_for(2, PropensityKind::HomoBimolecular(0), 0, 3);
        assert_eq!(om, monomials_up_to(2, 1));
        let om = omega_for(2, PropensityKind::Unimolecular(0), 0, 3);
        assert_eq!(om, monomials_up_to(2, 1));
        // μ=4: the degree-2 part of the basis is unused
        let om = omega_for(2, PropensityKind::Unimolecular(0), 0, 4);
        assert_eq!(om, monomials_up_to(2, 1));
        // μ=5: every product x1 z z' still lies in Ξ, so nothing is unused
        let om = omega_for(2, PropensityKind::Unimolecular(0), 0, 5);
        assert_eq!(om, monomials_up_to(2, 2));
    }

    #[test]
    fn divided_monomials_homo() {
        let d = divided_monomials(2, PropensityKind::HomoBimolecular(1), 1);
        assert_eq!(d, vec![MultiIndex::zero(2), MultiIndex::unit(2, 1)]);
        assert!(divided_monomials(2, PropensityKind::Unimolecular(0), 1).is_empty());
    }
}
