//! Complement reduction between the demands and capacities forms.
//!
//! Every set is replaced by its complement in the universe and every bound
//! `b` by `k - b`. A set chosen `x` times covers element `i` in the original
//! iff it does not cover `i` in the complement, so coverage becomes `k` minus
//! coverage and "at least d" turns into "at most k - d". Solutions therefore
//! carry over unchanged.

use crate::error::{Error, Result};
use crate::instance::{SetCoverInstance, Solution};

pub fn complement(instance: &SetCoverInstance) -> Result<SetCoverInstance> {
    let k = instance.k();
    if let Some((i, &b)) = instance.bounds().iter().enumerate().find(|(_, &b)| b > k) {
        return Err(Error::TriviallyInfeasible {
            element: i + 1,
            bound: b,
            k,
        });
    }
    let n = instance.n();
    let family = instance
        .family()
        .iter()
        .map(|set| {
            let mut inside = vec![false; n + 1];
            for &e in set {
                inside[e] = true;
            }
            (1..=n).filter(|&e| !inside[e]).collect()
        })
        .collect();
    let bounds = instance.bounds().iter().map(|&b| k - b).collect();
    let out = SetCoverInstance::new(n, family, instance.mode().opposite(), bounds, k)?
        .with_multiplicities(instance.multiplicities());
    match instance.pricing() {
        Some(p) => out.with_pricing(p.prices.clone(), p.budget),
        None => Ok(out),
    }
}

/// Solutions of an instance and of its complement coincide.
pub fn map_solution(solution: &Solution) -> Solution {
    solution.clone()
}
