//! Instance suites shared by the differential and acceptance tests.
#![allow(dead_code)]

use demandcover::branch::{self, node_bound};
use demandcover::generate::{generate_setcover, PriceParams, SetCoverParams};
use demandcover::oracle::brute_decision;
use demandcover::transform::complement;
use demandcover::{Mode, SetCoverInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Plain,
    Multi,
    Priced,
}

pub const VARIANTS: [Variant; 3] = [Variant::Plain, Variant::Multi, Variant::Priced];
pub const MODES: [Mode; 2] = [Mode::Demands, Mode::Capacities];

const PRICE_PATTERNS: [[u64; 3]; 5] = [[1, 2, 3], [3, 1, 2], [2, 2, 1], [0, 3, 1], [1, 1, 1]];

/// Adds the variant's flags to a plain instance; `salt` picks prices and budget.
pub fn with_variant(base: SetCoverInstance, variant: Variant, salt: usize) -> SetCoverInstance {
    match variant {
        Variant::Plain => base,
        Variant::Multi => base.with_multiplicities(true),
        Variant::Priced => {
            let pattern = PRICE_PATTERNS[salt % PRICE_PATTERNS.len()];
            let prices = (0..base.m()).map(|j| pattern[j % 3]).collect();
            let budget = (salt / PRICE_PATTERNS.len() % 7) as u64;
            base.with_pricing(prices, budget).unwrap()
        }
    }
}

/// Every plain instance with `n, m <= 3`, bounds in `0..=3` and `k <= 3`, in
/// both modes.
pub fn exhaustive_grid(mut visit: impl FnMut(SetCoverInstance)) {
    for n in 0..=3usize {
        for m in 0..=3usize {
            let subsets = 1usize << n;
            let families = subsets.pow(m as u32);
            let bound_vectors = 4usize.pow(n as u32);
            for f in 0..families {
                let family: Vec<Vec<usize>> = (0..m)
                    .map(|j| {
                        let mask = f / subsets.pow(j as u32) % subsets;
                        (1..=n).filter(|e| mask >> (e - 1) & 1 == 1).collect()
                    })
                    .collect();
                for b in 0..bound_vectors {
                    let bounds: Vec<usize> = (0..n).map(|i| b / 4usize.pow(i as u32) % 4).collect();
                    for k in 0..=3 {
                        for mode in MODES {
                            visit(
                                SetCoverInstance::new(n, family.clone(), mode, bounds.clone(), k)
                                    .unwrap(),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// `count` seeded random instances with `1 <= n, m <= 6` and `k <= 4`.
pub fn random_suite(seed: u64, count: usize, variant: Variant) -> Vec<SetCoverInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let mut p = SetCoverParams::new(
                rng.gen_range(1..=6),
                rng.gen_range(1..=6),
                rng.gen_range(0..=4),
                MODES[i % 2],
                rng.gen_range(0.1..0.9),
            );
            match variant {
                Variant::Plain => {}
                Variant::Multi => p.multiplicities = true,
                Variant::Priced => {
                    p.pricing = Some(PriceParams {
                        min_price: 0,
                        max_price: 4,
                        budget: rng.gen_range(0..=10),
                    })
                }
            }
            generate_setcover(rng.gen(), &p).unwrap()
        })
        .collect()
}

/// Capacities form the branch solver searches: the instance itself, or its
/// complement for demands. `None` when some demand exceeds `k`.
pub fn searched_form(instance: &SetCoverInstance) -> Option<SetCoverInstance> {
    match instance.mode() {
        Mode::Capacities => Some(instance.clone()),
        Mode::Demands => complement(instance).ok(),
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct BranchCheck {
    pub decision_match: bool,
    pub witness_ok: bool,
    pub within_node_bound: bool,
    pub oracle_yes: bool,
    pub solver_yes: bool,
    pub price_ok: bool,
}

pub fn check_branch(instance: &SetCoverInstance) -> BranchCheck {
    let oracle = brute_decision(instance).unwrap();
    let (found, stats) = branch::solve(instance).unwrap();
    let witness_ok = found.as_ref().is_none_or(|s| instance.is_solution(s));
    let price_ok = match (&found, instance.pricing()) {
        (Some(s), Some(p)) => instance.total_price(s) <= p.budget,
        _ => true,
    };
    let within_node_bound = match searched_form(instance) {
        Some(caps) => {
            (stats.nodes_visited as u128)
                <= node_bound(caps.max_set_size(), caps.max_occurrence(), caps.k())
                && stats.max_depth <= caps.k()
        }
        None => stats.nodes_visited == 0,
    };
    BranchCheck {
        decision_match: oracle.is_some() == found.is_some(),
        witness_ok,
        within_node_bound,
        oracle_yes: oracle.is_some(),
        solver_yes: found.is_some(),
        price_ok,
    }
}
