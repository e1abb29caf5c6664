//! Exhaustive reference solvers. No pruning: every candidate is generated in
//! lexicographic order and handed to [`SetCoverInstance::verify`].

use crate::error::{Error, Result};
use crate::instance::{SetCoverInstance, Solution};

/// Largest number of candidates the oracle agrees to enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// `C(n, r)`, saturating at `u128::MAX`.
pub fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of candidates the oracle would enumerate for `instance`.
pub fn candidate_count(instance: &SetCoverInstance) -> u128 {
    let (m, k) = (instance.m() as u128, instance.k() as u128);
    if instance.multiplicities() {
        if m == 0 {
            u128::from(k == 0)
        } else {
            binomial(k + m - 1, m - 1)
        }
    } else {
        binomial(m, k)
    }
}

fn guard(instance: &SetCoverInstance) -> Result<()> {
    let count = candidate_count(instance);
    if count > ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Calls `visit` on every `k`-subset of `1..=m` in lexicographic order until it
/// returns `false`.
pub fn for_each_subset(m: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        // rightmost position that can still advance
        let Some(p) = (0..k).rev().find(|&p| idx[p] < m - (k - 1 - p)) else {
            return;
        };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Calls `visit` on every vector of `m` non-negative integers summing to `k`,
/// in lexicographic order, until it returns `false`.
pub fn for_each_composition(m: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if m == 0 {
        if k == 0 {
            visit(&[]);
        }
        return;
    }
    let mut counts = vec![0; m];
    counts[m - 1] = k;
    loop {
        if !visit(&counts) {
            return;
        }
        // next composition: bump the last non-final position that still has
        // mass to its right, and push the remaining mass to the end
        let Some(p) = (0..m - 1)
            .rev()
            .find(|&p| counts[p + 1..].iter().any(|&c| c > 0))
        else {
            return;
        };
        counts[p] += 1;
        let rest: usize = k - counts[..=p].iter().sum::<usize>();
        for c in &mut counts[p + 1..] {
            *c = 0;
        }
        counts[m - 1] = rest;
    }
}

fn enumerate(
    instance: &SetCoverInstance,
    mut on_valid: impl FnMut(Solution) -> bool,
) -> Result<()> {
    guard(instance)?;
    if instance.multiplicities() {
        for_each_composition(instance.m(), instance.k(), |counts| {
            let s = Solution::Multi(counts.to_vec());
            !instance.is_solution(&s) || on_valid(s)
        });
    } else {
        for_each_subset(instance.m(), instance.k(), |picks| {
            let s = Solution::Sets(picks.to_vec());
            !instance.is_solution(&s) || on_valid(s)
        });
    }
    Ok(())
}

/// Every feasible solution, in lexicographic order.
pub fn brute_setcover(instance: &SetCoverInstance) -> Result<Vec<Solution>> {
    let mut all = Vec::new();
    enumerate(instance, |s| {
        all.push(s);
        true
    })?;
    Ok(all)
}

/// Lexicographically first feasible solution, if any.
pub fn brute_decision(instance: &SetCoverInstance) -> Result<Option<Solution>> {
    let mut first = None;
    enumerate(instance, |s| {
        first = Some(s);
        false
    })?;
    Ok(first)
}
