//! Seeded instance generators.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! and every integer is drawn as a `u64`, so a seed and parameter set give the
//! same instance on every platform. Draw order for set cover: membership of
//! element `e` in set `j` for `j = 1..=m`, `e = 1..=n` (Bernoulli with
//! `density`), then the bounds for `e = 1..=n`, then the prices for
//! `j = 1..=m`. For bribery: opinions row by row, then the targets by a
//! partial Fisher-Yates shuffle of `1..=n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::consent::{BriberyInstance, Profile};
use crate::error::{Error, Result};
use crate::instance::{Mode, SetCoverInstance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceParams {
    pub min_price: u64,
    pub max_price: u64,
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SetCoverParams {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub mode: Mode,
    /// Probability that an element joins a set.
    pub density: f64,
    pub multiplicities: bool,
    pub pricing: Option<PriceParams>,
}

impl SetCoverParams {
    pub fn new(n: usize, m: usize, k: usize, mode: Mode, density: f64) -> Self {
        SetCoverParams {
            n,
            m,
            k,
            mode,
            density,
            multiplicities: false,
            pricing: None,
        }
    }

    /// Bounds are drawn from `0..=bound_max()`: beyond `k` a demand is
    /// unsatisfiable and a capacity vacuous, and without multiplicities a
    /// set is counted at most once, so `m` caps the useful range too.
    pub fn bound_max(&self) -> usize {
        if self.multiplicities {
            self.k
        } else {
            self.k.min(self.m)
        }
    }
}

fn check_rate(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Invalid(format!(
            "{name} must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

fn draw(rng: &mut ChaCha8Rng, lo: u64, hi_inclusive: u64) -> u64 {
    rng.gen_range(lo..=hi_inclusive)
}

pub fn generate_setcover(seed: u64, params: &SetCoverParams) -> Result<SetCoverInstance> {
    check_rate("density", params.density)?;
    if let Some(p) = params.pricing {
        if p.min_price > p.max_price {
            return Err(Error::Invalid(format!(
                "min price {} exceeds max price {}",
                p.min_price, p.max_price
            )));
        }
        if params.multiplicities {
            return Err(Error::Unsupported(
                "prices combined with multiplicities".into(),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family: Vec<Vec<usize>> = (0..params.m)
        .map(|_| {
            (1..=params.n)
                .filter(|_| rng.gen_bool(params.density))
                .collect()
        })
        .collect();
    let top = params.bound_max() as u64;
    let bounds = (0..params.n)
        .map(|_| draw(&mut rng, 0, top) as usize)
        .collect();
    let instance = SetCoverInstance::new(params.n, family, params.mode, bounds, params.k)?
        .with_multiplicities(params.multiplicities);
    match params.pricing {
        Some(p) => {
            let prices = (0..params.m)
                .map(|_| draw(&mut rng, p.min_price, p.max_price))
                .collect();
            instance.with_pricing(prices, p.budget)
        }
        None => Ok(instance),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BriberyParams {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub ell: usize,
    pub target_count: usize,
    /// Probability that an opinion is `+1`.
    pub positive_rate: f64,
}

pub fn generate_bribery(seed: u64, params: &BriberyParams) -> Result<BriberyInstance> {
    check_rate("positive rate", params.positive_rate)?;
    if params.target_count > params.n {
        return Err(Error::Invalid(format!(
            "{} targets among {} agents",
            params.target_count, params.n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = Vec::with_capacity(params.n * params.n);
    for _ in 0..params.n * params.n {
        cells.push(rng.gen_bool(params.positive_rate));
    }
    let profile = Profile::from_fn(params.n, |a, b| cells[(a - 1) * params.n + (b - 1)]);
    let mut agents: Vec<usize> = (1..=params.n).collect();
    for i in 0..params.target_count {
        let j = draw(&mut rng, i as u64, params.n as u64 - 1) as usize;
        agents.swap(i, j);
    }
    let targets = agents[..params.target_count].to_vec();
    BriberyInstance::new(profile, targets, params.s, params.t, params.ell)
}
