//! Gillespie direct-method simulation with time-averaged moment estimates.
//!
//! Each trajectory draws from its own ChaCha stream keyed by
//! `(seed, trajectory index)`, so results do not depend on thread count.
//! The window `[burn_in, t_end]` is cut into equal batches; the standard
//! error is that of the pooled batch means.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::SsaError;
use crate::model::{PropensityKind, ReactionNetwork};
use crate::moments::{coeff_to_f64, MultiIndex};

const EXPLOSION_LIMIT: f64 = 1e9;
const BATCHES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimConfig {
    pub initial_state: Vec<i64>,
    pub t_end: f64,
    pub burn_in: f64,
    pub seed: u64,
    pub n_trajectories: usize,
    pub moments: Vec<MultiIndex>,
}

impl SimConfig {
    /// One trajectory from the origin with burn-in `t_end / 10`.
    pub fn new(n: usize, t_end: f64, seed: u64, moments: Vec<MultiIndex>) -> Self {
        SimConfig {
            initial_state: vec![0; n],
            t_end,
            burn_in: t_end / 10.0,
            seed,
            n_trajectories: 1,
            moments,
        }
    }

    fn validate(&self, n: usize) -> Result<(), SsaError> {
        let bad = |m: &str| Err(SsaError::Config(m.to_string()));
        if self.initial_state.len() != n {
            return bad("initial state length differs from the species count");
        }
        if self.initial_state.iter().any(|&x| x < 0) {
            return bad("initial state has negative copy numbers");
        }
        if !(self.burn_in >= 0.0 && self.burn_in < self.t_end && self.t_end.is_finite()) {
            return bad("need 0 <= burn_in < t_end");
        }
        if self.n_trajectories == 0 {
            return bad("need at least one trajectory");
        }
        if self.moments.iter().any(|a| a.len() != n) {
            return bad("moment multi-index length differs from the species count");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentStat {
    pub moment: MultiIndex,
    pub mean: f64,
    pub se: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub moments: Vec<MomentStat>,
    /// Simulated time inside the averaging window, summed over trajectories.
    pub total_sim_time: f64,
    pub n_trajectories: usize,
    /// Reaction events over all trajectories, burn-in included.
    pub events: u64,
}

impl MomentEstimate {
    pub fn get(&self, alpha: &MultiIndex) -> Option<&MomentStat> {
        self.moments.iter().find(|s| &s.moment == alpha)
    }
}

struct Compiled {
    stoich: Vec<Vec<i64>>,
    terms: Vec<Vec<(PropensityKind, f64)>>,
    labels: Vec<String>,
}

impl Compiled {
    fn new(net: &ReactionNetwork) -> Self {
        Compiled {
            stoich: net.reactions.iter().map(|r| r.stoich.clone()).collect(),
            terms: net
                .reactions
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|t| (t.term.kind, coeff_to_f64(&(t.sign.coeff() * &t.term.rate))))
                        .collect()
                })
                .collect(),
            labels: net.reactions.iter().map(|r| r.label.clone()).collect(),
        }
    }

    fn propensity(&self, i: usize, x: &[i64]) -> Result<f64, SsaError> {
        let mut total = 0.0;
        let mut scale = 0.0;
        for &(kind, rate) in &self.terms[i] {
            let base = match kind {
                PropensityKind::ZeroOrder => 1.0,
                PropensityKind::Unimolecular(j) => x[j] as f64,
                PropensityKind::HomoBimolecular(j) => {
                    let v = x[j] as f64;
                    v * (v - 1.0) / 2.0
                }
                PropensityKind::HeteroBimolecular(j, k) => x[j] as f64 * x[k] as f64,
            };
            total += rate * base;
            scale += (rate * base).abs();
        }
        if total < 0.0 {
            // rounding noise from cancelling split terms
            if total >= -1e-9 * scale {
                return Ok(0.0);
            }
            return Err(SsaError::NegativePropensity {
                reaction: self.labels[i].clone(),
                value: total,
                state: x.to_vec(),
            });
        }
        Ok(total)
    }
}

struct Trajectory {
    /// `batch_sums[b][m]`: time integral of moment `m` over batch `b`.
    batch_sums: Vec<Vec<f64>>,
    events: u64,
}

fn powers(x: &[i64], moments: &[MultiIndex], out: &mut [f64]) {
    for (o, a) in out.iter_mut().zip(moments) {
        *o = a.eval_i64(x);
    }
}

fn run_trajectory(
    sys: &Compiled,
    cfg: &SimConfig,
    names: &[String],
    index: usize,
) -> Result<Trajectory, SsaError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let nm = cfg.moments.len();
    let width = (cfg.t_end - cfg.burn_in) / BATCHES as f64;
    let mut batch_sums = vec![vec![0.0; nm]; BATCHES];
    let mut x = cfg.initial_state.clone();
    let mut a = vec![0.0; sys.stoich.len()];
    let mut pw = vec![0.0; nm];
    let mut t = 0.0;
    let mut events = 0u64;

    // accumulate the current state over [t0, t1] clipped to the window
    let accumulate = |t0: f64, t1: f64, pw: &[f64], sums: &mut [Vec<f64>]| {
        let lo = t0.max(cfg.burn_in);
        let hi = t1.min(cfg.t_end);
        if hi <= lo {
            return;
        }
        let first = (((lo - cfg.burn_in) / width) as usize).min(BATCHES - 1);
        let last = (((hi - cfg.burn_in) / width) as usize).min(BATCHES - 1);
        for (b, batch) in sums.iter_mut().enumerate().take(last + 1).skip(first) {
            let b_lo = cfg.burn_in + b as f64 * width;
            let b_hi = if b == BATCHES - 1 { cfg.t_end } else { b_lo + width };
            let dt = hi.min(b_hi) - lo.max(b_lo);
            if dt > 0.0 {
                for (s, p) in batch.iter_mut().zip(pw) {
                    *s += p * dt;
                }
            }
        }
    };

    while t < cfg.t_end {
        let mut a0 = 0.0;
        for (i, ai) in a.iter_mut().enumerate() {
            *ai = sys.propensity(i, &x)?;
            a0 += *ai;
        }
        powers(&x, &cfg.moments, &mut pw);
        if a0 <= 0.0 {
            accumulate(t, cfg.t_end, &pw, &mut batch_sums);
            break;
        }
        let u: f64 = 1.0 - rng.gen::<f64>();
        let tau = -u.ln() / a0;
        let t_next = t + tau;
        accumulate(t, t_next, &pw, &mut batch_sums);
        if t_next >= cfg.t_end {
            break;
        }
        let target = rng.gen::<f64>() * a0;
        let mut acc = 0.0;
        let mut chosen = a.len() - 1;
        for (i, &ai) in a.iter().enumerate() {
            acc += ai;
            if target < acc && ai > 0.0 {
                chosen = i;
                break;
            }
        }
        while a[chosen] <= 0.0 {
            chosen -= 1;
        }
        for (xj, s) in x.iter_mut().zip(&sys.stoich[chosen]) {
            *xj += s;
        }
        events += 1;
        t = t_next;
        if let Some(j) = x.iter().position(|&v| v as f64 > EXPLOSION_LIMIT) {
            return Err(SsaError::Explosion {
                species: names[j].clone(),
                time: t,
                trajectory: index,
            });
        }
    }
    Ok(Trajectory { batch_sums, events })
}

/// Runs `n_trajectories` independent trajectories and pools their
/// time-averaged moments.
pub fn simulate(net: &ReactionNetwork, cfg: &SimConfig) -> Result<MomentEstimate, SsaError> {
    cfg.validate(net.n_species())?;
    let sys = Compiled::new(net);
    let names = net.species_names();
    let runs: Vec<Result<Trajectory, SsaError>> = (0..cfg.n_trajectories)
        .into_par_iter()
        .map(|i| run_trajectory(&sys, cfg, &names, i))
        .collect();
    let runs = runs.into_iter().collect::<Result<Vec<_>, _>>()?;

    let width = (cfg.t_end - cfg.burn_in) / BATCHES as f64;
    let nm = cfg.moments.len();
    let nb = (runs.len() * BATCHES) as f64;
    let mut moments = Vec::with_capacity(nm);
    for (mi, alpha) in cfg.moments.iter().enumerate() {
        let means: Vec<f64> = runs
            .iter()
            .flat_map(|r| r.batch_sums.iter().map(move |b| b[mi] / width))
            .collect();
        let mean = means.iter().sum::<f64>() / nb;
        let se = if alpha.is_zero() || nb < 2.0 {
            0.0
        } else {
            let var = means.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nb - 1.0);
            (var / nb).sqrt()
        };
        let mean = if alpha.is_zero() { 1.0 } else { mean };
        moments.push(MomentStat {
            moment: alpha.clone(),
            mean,
            se,
        });
    }
    Ok(MomentEstimate {
        moments,
        total_sim_time: (cfg.t_end - cfg.burn_in) * runs.len() as f64,
        n_trajectories: runs.len(),
        events: runs.iter().map(|r| r.events).sum(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub moment: MultiIndex,
    pub lo: f64,
    pub hi: f64,
    pub estimate: f64,
    pub se: f64,
    pub pass: bool,
}

/// Passes iff `[lo − 3·SE, hi + 3·SE]` contains the estimate.
pub fn check_containment(bounds: (f64, f64), est: &MomentEstimate, moment: &MultiIndex) -> Option<Verdict> {
    let s = est.get(moment)?;
    let (lo, hi) = bounds;
    let pass = lo - 3.0 * s.se <= s.mean && s.mean <= hi + 3.0 * s.se;
    Some(Verdict {
        moment: moment.clone(),
        lo,
        hi,
        estimate: s.mean,
        se: s.se,
        pass,
    })
}
