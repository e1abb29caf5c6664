//! Two-case solver for set cover with capacities.
//!
//! After deleting zero-capacity elements together with the sets that contain
//! them, either the surviving family is small (`m' <= k * s_max * o_max`) and
//! all `k`-subsets are tried, or it is large and a greedy pass always
//! succeeds: each pick saturates at most `s_max` elements, which knocks out at
//! most `s_max * o_max` sets, so a set is left for each of the `k` picks.

use crate::error::{Error, Result};
use crate::instance::{Mode, SetCoverInstance, Solution};
use crate::oracle::for_each_subset;
use crate::transform::complement;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    BruteForce,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdOutcome {
    pub solution: Option<Solution>,
    pub route: Route,
    /// Surviving sets after zero-capacity preprocessing.
    pub reduced_m: usize,
    /// `s_max` and `o_max` of the reduced instance.
    pub s_max: usize,
    pub o_max: usize,
    /// k-subsets examined on the brute-force route.
    pub subsets_checked: u64,
}

/// Zero-capacity preprocessing: the reduced instance together with, for each
/// surviving set, its index in the original instance.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub instance: SetCoverInstance,
    pub set_origin: Vec<usize>,
}

pub fn drop_zero_capacity(instance: &SetCoverInstance) -> Result<Reduced> {
    if instance.mode() != Mode::Capacities {
        return Err(Error::Unsupported(
            "zero-capacity preprocessing needs capacities".into(),
        ));
    }
    let n = instance.n();
    // new id of each kept element, 0 if deleted
    let mut renumber = vec![0; n + 1];
    let mut bounds = Vec::new();
    for e in 1..=n {
        if instance.bound(e) > 0 {
            bounds.push(instance.bound(e));
            renumber[e] = bounds.len();
        }
    }
    let mut family = Vec::new();
    let mut set_origin = Vec::new();
    for j in 1..=instance.m() {
        let set = instance.set(j);
        if set.iter().all(|&e| renumber[e] > 0) {
            family.push(set.iter().map(|&e| renumber[e]).collect());
            set_origin.push(j);
        }
    }
    let reduced =
        SetCoverInstance::new(bounds.len(), family, Mode::Capacities, bounds, instance.k())?;
    Ok(Reduced {
        instance: reduced,
        set_origin,
    })
}

/// True when the greedy route is guaranteed to succeed on `reduced`.
pub fn greedy_applies(reduced: &SetCoverInstance) -> bool {
    let fan = reduced.max_set_size() * reduced.max_occurrence();
    // with fan == 0 every set is empty and any k of them work
    reduced.m() > reduced.k() * fan.max(1)
}

/// Greedy construction on a zero-capacity-free instance with more than
/// `k * s_max * o_max` sets. Indices refer to `reduced`.
pub fn greedy_construct(reduced: &SetCoverInstance) -> Result<Solution> {
    if reduced.mode() != Mode::Capacities || reduced.bounds().contains(&0) {
        return Err(Error::Contract(
            "greedy construction needs a capacities instance without zero capacities".into(),
        ));
    }
    if !greedy_applies(reduced) {
        return Err(Error::Contract(format!(
            "greedy construction needs m > k * s_max * o_max (m = {}, k = {}, s_max = {}, o_max = {})",
            reduced.m(),
            reduced.k(),
            reduced.max_set_size(),
            reduced.max_occurrence()
        )));
    }
    let mut pool = vec![true; reduced.m() + 1];
    pool[0] = false;
    let mut coverage = vec![0; reduced.n() + 1];
    let mut picks = Vec::with_capacity(reduced.k());
    while picks.len() < reduced.k() {
        let j = pool
            .iter()
            .position(|&p| p)
            .ok_or_else(|| Error::Contract("greedy pool ran dry".into()))?;
        pool[j] = false;
        picks.push(j);
        for &e in reduced.set(j) {
            coverage[e] += 1;
            if coverage[e] == reduced.bound(e) {
                for &o in reduced.occurrences(e)? {
                    pool[o] = false;
                }
            }
        }
    }
    picks.sort_unstable();
    Ok(Solution::Sets(picks))
}

pub fn solve_capacities_threshold(instance: &SetCoverInstance) -> Result<ThresholdOutcome> {
    if instance.mode() != Mode::Capacities || instance.is_priced() || instance.multiplicities() {
        return Err(Error::Unsupported(
            "threshold solver handles plain capacities instances only".into(),
        ));
    }
    let Reduced {
        instance: reduced,
        set_origin,
    } = drop_zero_capacity(instance)?;
    let (s_max, o_max) = (reduced.max_set_size(), reduced.max_occurrence());
    let lift = |s: Solution| match s {
        Solution::Sets(picks) => {
            Solution::Sets(picks.into_iter().map(|j| set_origin[j - 1]).collect())
        }
        multi => multi,
    };

    if greedy_applies(&reduced) {
        let found = greedy_construct(&reduced)?;
        return Ok(ThresholdOutcome {
            solution: Some(lift(found)),
            route: Route::Greedy,
            reduced_m: reduced.m(),
            s_max,
            o_max,
            subsets_checked: 0,
        });
    }

    let mut checked = 0u64;
    let mut found = None;
    for_each_subset(reduced.m(), reduced.k(), |picks| {
        checked += 1;
        let candidate = Solution::Sets(picks.to_vec());
        if reduced.is_solution(&candidate) {
            found = Some(candidate);
            false
        } else {
            true
        }
    });
    Ok(ThresholdOutcome {
        solution: found.map(lift),
        route: Route::BruteForce,
        reduced_m: reduced.m(),
        s_max,
        o_max,
        subsets_checked: checked,
    })
}

/// Complements a demands instance and runs the threshold solver on it.
/// `Ok(None)` when some demand exceeds `k`.
pub fn solve_demands_threshold(instance: &SetCoverInstance) -> Result<Option<ThresholdOutcome>> {
    if instance.mode() != Mode::Demands {
        return Err(Error::Unsupported("expected a demands instance".into()));
    }
    match complement(instance) {
        Ok(caps) => solve_capacities_threshold(&caps).map(Some),
        Err(Error::TriviallyInfeasible { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}
