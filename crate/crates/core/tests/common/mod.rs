#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use momentbound::model::{parse_model, PropensityKind, ReactionNetwork};
use momentbound::moments::MultiIndex;
use momentbound::Coeff;
use num_bigint::BigInt;
use rand::Rng;

pub const BD: &str = include_str!("../../models/bd.model");
pub const DIMER: &str = include_str!("../../models/dimer.model");
pub const SPONGE: &str = include_str!("../../models/gene_sponge_7.model");

pub fn bd() -> ReactionNetwork {
    parse_model(BD).unwrap()
}

pub fn dimer() -> ReactionNetwork {
    parse_model(DIMER).unwrap()
}

pub fn sponge() -> ReactionNetwork {
    parse_model(SPONGE).unwrap()
}

pub fn mi(e: &[u32]) -> MultiIndex {
    MultiIndex::new(e.to_vec())
}

/// Dense integer polynomial keyed by exponent vectors; an oracle kept
/// separate from the library's rational polynomial type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPoly(pub BTreeMap<Vec<u32>, i128>);

impl IntPoly {
    pub fn constant(n: usize, c: i128) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(vec![0; n], c);
        }
        IntPoly(m)
    }

    pub fn var(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        IntPoly(BTreeMap::from([(e, 1)]))
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            *m.entry(e.clone()).or_insert(0) += c;
        }
        m.retain(|_, c| *c != 0);
        IntPoly(m)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|(e, c)| (e.clone(), -c)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        let mut m: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *m.entry(e).or_insert(0) += c1 * c2;
            }
        }
        m.retain(|_, c| *c != 0);
        IntPoly(m)
    }

    pub fn support(&self) -> BTreeSet<MultiIndex> {
        self.0.keys().map(|e| MultiIndex::new(e.clone())).collect()
    }

    pub fn eval(&self, x: &[i64]) -> i128 {
        self.0
            .iter()
            .map(|(e, c)| {
                c * e
                    .iter()
                    .zip(x)
                    .map(|(&k, &v)| (v as i128).pow(k))
                    .product::<i128>()
            })
            .sum()
    }
}

/// `2·w(x)` for a unit-rate elementary term, kept integral.
pub fn twice_propensity(n: usize, kind: PropensityKind) -> IntPoly {
    match kind {
        PropensityKind::ZeroOrder => IntPoly::constant(n, 2),
        PropensityKind::Unimolecular(j) => IntPoly::var(n, j).mul(&IntPoly::constant(n, 2)),
        PropensityKind::HomoBimolecular(j) => {
            let x = IntPoly::var(n, j);
            x.mul(&x.add(&IntPoly::constant(n, -1)))
        }
        PropensityKind::HeteroBimolecular(j, k) => IntPoly::var(n, j)
            .mul(&IntPoly::var(n, k))
            .mul(&IntPoly::constant(n, 2)),
    }
}

/// `(x+s)^α − x^α` by repeated multiplication.
pub fn shift_diff(stoich: &[i64], alpha: &[u32]) -> IntPoly {
    let n = stoich.len();
    let mut p = IntPoly::constant(n, 1);
    let mut plain = IntPoly::constant(n, 1);
    for (j, &a) in alpha.iter().enumerate() {
        let base = IntPoly::var(n, j).add(&IntPoly::constant(n, stoich[j] as i128));
        for _ in 0..a {
            p = p.mul(&base);
            plain = plain.mul(&IntPoly::var(n, j));
        }
    }
    p.add(&plain.neg())
}

pub fn all_alphas(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=max_degree).map(move |k| {
                    let mut v = v.clone();
                    v.push(k);
                    v
                })
            })
            .filter(|v| v.iter().sum::<u32>() <= max_degree)
            .collect();
    }
    out
}

fn random_kind<R: Rng>(rng: &mut R, n: usize) -> (PropensityKind, Vec<(usize, u32)>) {
    loop {
        match rng.gen_range(0..4) {
            0 => return (PropensityKind::ZeroOrder, vec![]),
            1 => {
                let j = rng.gen_range(0..n);
                return (PropensityKind::Unimolecular(j), vec![(j, 1)]);
            }
            2 => {
                let j = rng.gen_range(0..n);
                return (PropensityKind::HomoBimolecular(j), vec![(j, 2)]);
            }
            _ if n >= 2 => {
                let j = rng.gen_range(0..n - 1);
                let k = rng.gen_range(j + 1..n);
                return (PropensityKind::HeteroBimolecular(j, k), vec![(j, 1), (k, 1)]);
            }
            _ => continue,
        }
    }
}

/// Random mass-action network in the model language, with `n` species and
/// `r` reactions. Products are chosen freely, so stoichiometries range over
/// small positive and negative values.
pub fn random_network_source<R: Rng>(rng: &mut R, n: usize, r: usize) -> String {
    let names: Vec<String> = (1..=n).map(|j| format!("S{j}")).collect();
    let mut src = format!("species {};\n", names.join(" "));
    for i in 0..r {
        let (_, lhs) = random_kind(rng, n);
        let mut rhs: Vec<(usize, u32)> = Vec::new();
        loop {
            rhs.clear();
            for j in 0..n {
                let c = rng.gen_range(0..3u32);
                if c > 0 && rng.gen_bool(0.4) {
                    rhs.push((j, c));
                }
            }
            let l: BTreeMap<usize, u32> = lhs.iter().copied().collect();
            let rr: BTreeMap<usize, u32> = rhs.iter().copied().collect();
            if l != rr {
                break;
            }
        }
        let side = |v: &[(usize, u32)]| {
            if v.is_empty() {
                "0".to_string()
            } else {
                v.iter()
                    .map(|&(j, c)| if c == 1 { names[j].clone() } else { format!("{c} {}", names[j]) })
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
        };
        let num = rng.gen_range(1..20);
        let den = rng.gen_range(1..5);
        src.push_str(&format!(
            "reaction r{i}: {} -> {} @ mass({num}/{den});\n",
            side(&lhs),
            side(&rhs)
        ));
    }
    src
}

pub fn random_network<R: Rng>(rng: &mut R, n: usize, r: usize) -> ReactionNetwork {
    parse_model(&random_network_source(rng, n, r)).unwrap()
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Coeff {
    let num: i64 = rng.gen_range(-50..=50);
    let den: i64 = rng.gen_range(1..=9);
    Coeff::new(BigInt::from(num), BigInt::from(den))
}

/// Random rational moment vector, looked up by multi-index.
pub fn random_moments<R: Rng>(rng: &mut R, support: &[MultiIndex]) -> BTreeMap<MultiIndex, Coeff> {
    support.iter().map(|a| (a.clone(), random_rational(rng))).collect()
}

pub fn q(n: i64, d: i64) -> Coeff {
    Coeff::new(BigInt::from(n), BigInt::from(d))
}
