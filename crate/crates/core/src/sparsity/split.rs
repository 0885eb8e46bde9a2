//! Refinement of `(Φ_i, Φ̄_i)` into the parts that interact.
//!
//! The interaction graph joins `z1 ∈ Φ_i` and `z2 ∈ Φ̄_i` whenever
//! `z1·z2 ∈ Ξ_i`. Any vertex cover `C` yields a valid split: with
//! `Φ_{i1} = C ∩ Φ_i` and `Φ̄_{i1} = C ∩ Φ̄_i`, no edge survives between
//! the remainders `Φ_{i2}` and `Φ̄_{i2}`. We take a minimum cover (König),
//! choosing among minimum covers the one with the most `Φ̄_i` vertices.

use crate::moments::{MonomialSet, MultiIndex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSplit {
    pub phi1: MonomialSet,
    pub phi2: MonomialSet,
    pub phi_bar1: MonomialSet,
    pub phi_bar2: MonomialSet,
}

/// Edges `(p, q)` between `phi[p]` and `phi_bar[q]`.
pub fn interaction_edges(phi: &MonomialSet, phi_bar: &MonomialSet, xi: &MonomialSet) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (p, a) in phi.iter().enumerate() {
        for (q, b) in phi_bar.iter().enumerate() {
            if xi.contains(&a.add(b)) {
                edges.push((p, q));
            }
        }
    }
    edges
}

/// Minimum vertex cover of a bipartite graph, returned as membership flags
/// `(left, right)`. Among minimum covers, the one with the largest
/// right-hand part is returned.
pub fn min_vertex_cover(n_left: usize, n_right: usize, edges: &[(usize, usize)]) -> (Vec<bool>, Vec<bool>) {
    // Work from the right side: König's construction starting at unmatched
    // vertices of side X keeps X's part of the cover as large as possible.
    let mut adj_r: Vec<Vec<usize>> = vec![Vec::new(); n_right];
    for &(l, r) in edges {
        adj_r[r].push(l);
    }
    let mut match_l: Vec<Option<usize>> = vec![None; n_left];
    let mut match_r: Vec<Option<usize>> = vec![None; n_right];

    fn augment(
        r: usize,
        adj_r: &[Vec<usize>],
        seen: &mut [bool],
        match_l: &mut [Option<usize>],
        match_r: &mut [Option<usize>],
    ) -> bool {
        for &l in &adj_r[r] {
            if seen[l] {
                continue;
            }
            seen[l] = true;
            let free = match match_l[l] {
                None => true,
                Some(r2) => augment(r2, adj_r, seen, match_l, match_r),
            };
            if free {
                match_l[l] = Some(r);
                match_r[r] = Some(l);
                return true;
            }
        }
        false
    }

    for r in 0..n_right {
        let mut seen = vec![false; n_left];
        augment(r, &adj_r, &mut seen, &mut match_l, &mut match_r);
    }

    // alternating reachability from unmatched right vertices
    let mut z_r = vec![false; n_right];
    let mut z_l = vec![false; n_left];
    let mut stack: Vec<usize> = (0..n_right).filter(|&r| match_r[r].is_none()).collect();
    for &r in &stack {
        z_r[r] = true;
    }
    while let Some(r) = stack.pop() {
        for &l in &adj_r[r] {
            if match_r[r] == Some(l) || z_l[l] {
                continue;
            }
            z_l[l] = true;
            if let Some(r2) = match_l[l] {
                if !z_r[r2] {
                    z_r[r2] = true;
                    stack.push(r2);
                }
            }
        }
    }
    let cover_r: Vec<bool> = z_r.iter().map(|z| !z).collect();
    (z_l, cover_r)
}

/// Splits `Φ_i`/`Φ̄_i` so that `z1 ∈ Φ_{i2}, z2 ∈ Φ̄_{i2} ⟹ z1·z2 ∉ Ξ_i`
/// with `|Φ_{i1}| + |Φ̄_{i1}|` minimal.
pub fn split_phi(phi: &MonomialSet, phi_bar: &MonomialSet, xi: &MonomialSet) -> PhiSplit {
    let edges = interaction_edges(phi, phi_bar, xi);
    let (in_l, in_r) = min_vertex_cover(phi.len(), phi_bar.len(), &edges);
    let pick = |set: &MonomialSet, flags: &[bool], want: bool| -> MonomialSet {
        set.iter()
            .zip(flags)
            .filter(|(_, &f)| f == want)
            .map(|(a, _)| a.clone())
            .collect::<Vec<MultiIndex>>()
            .into_iter()
            .collect()
    };
    PhiSplit {
        phi1: pick(phi, &in_l, true),
        phi2: pick(phi, &in_l, false),
        phi_bar1: pick(phi_bar, &in_r, true),
        phi_bar2: pick(phi_bar, &in_r, false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_min_cover(nl: usize, nr: usize, edges: &[(usize, usize)]) -> (usize, usize) {
        // (min size, max right count among min covers)
        let mut best = (usize::MAX, 0);
        for mask in 0u32..(1 << (nl + nr)) {
            let ok = edges
                .iter()
                .all(|&(l, r)| mask & (1 << l) != 0 || mask & (1 << (nl + r)) != 0);
            if !ok {
                continue;
            }
            let size = mask.count_ones() as usize;
            let right = (0..nr).filter(|r| mask & (1 << (nl + r)) != 0).count();
            if size < best.0 || (size == best.0 && right > best.1) {
                best = (size, right);
            }
        }
        best
    }

    #[test]
    fn edgeless_graph() {
        let (l, r) = min_vertex_cover(3, 2, &[]);
        assert!(l.iter().chain(&r).all(|f| !f));
    }

    #[test]
    fn complete_bipartite_takes_smaller_side() {
        let edges: Vec<_> = (0..2).flat_map(|l| (0..4).map(move |r| (l, r))).collect();
        let (l, r) = min_vertex_cover(2, 4, &edges);
        assert_eq!(l, vec![true, true]);
        assert!(r.iter().all(|f| !f));
    }

    #[test]
    fn single_edge_prefers_right() {
        let (l, r) = min_vertex_cover(1, 1, &[(0, 0)]);
        assert_eq!((l[0], r[0]), (false, true));
    }

    proptest! {
        #[test]
        fn cover_is_minimum_and_right_heavy(
            nl in 0usize..6,
            nr in 0usize..6,
            raw in proptest::collection::vec((0usize..6, 0usize..6), 0..20),
        ) {
            let edges: Vec<(usize, usize)> = raw
                .into_iter()
                .filter(|&(l, r)| l < nl && r < nr)
                .collect();
            let (cl, cr) = min_vertex_cover(nl, nr, &edges);
            for &(l, r) in &edges {
                prop_assert!(cl[l] || cr[r]);
            }
            let size = cl.iter().chain(&cr).filter(|f| **f).count();
            let right = cr.iter().filter(|f| **f).count();
            let (best, best_right) = brute_min_cover(nl, nr, &edges);
            prop_assert_eq!(size, best);
            prop_assert_eq!(right, best_right);
        }
    }
}
