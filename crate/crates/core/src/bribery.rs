//! Constructive agent bribery under the consent rule.
//!
//! A bribed agent always ends up qualifying everyone; no other rewrite helps
//! a constructive briber. Bribes only turn `-1` into `+1`, and with
//! `s + t <= n + 2` a qualified agent stays qualified under further bribes,
//! so targets can be dropped as soon as they are qualified.
//!
//! Once every remaining target qualifies itself, only qualifier counts
//! matter: target `a` needs `s - |Q+(a)|` more qualifiers, and bribing agent
//! `x` gives one to each target `x` currently disqualifies. That is set cover
//! with demands over the remaining targets, solved by [`crate::branch`].

use crate::branch::solve_demands;
use crate::consent::{delta, BribeSet, BriberyInstance, Profile};
use crate::error::{Error, Result};
use crate::instance::{Mode, SetCoverInstance, Solution};
use crate::oracle::{binomial, for_each_subset};

/// Largest number of bribe sets [`brute_bribery`] agrees to enumerate.
pub const BRIBERY_ENUMERATION_LIMIT: u128 = 1_000_000;

/// Demands instance built from a partially bribed profile. Element `e` is
/// target `targets[e - 1]`, set `j` is agent `agents[j - 1]`. `k` is 0 and
/// left to the caller.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub instance: SetCoverInstance,
    pub targets: Vec<usize>,
    pub agents: Vec<usize>,
}

pub fn reduce_to_demands(
    profile: &Profile,
    targets: &[usize],
    s: usize,
    budget: usize,
) -> Result<Reduction> {
    if budget >= s {
        return Err(Error::Contract(format!(
            "reduction needs budget < s (budget = {budget}, s = {s})"
        )));
    }
    let mut demands = Vec::with_capacity(targets.len());
    for &a in targets {
        if !profile.qualifies(a, a) {
            return Err(Error::Contract(format!("target {a} disqualifies itself")));
        }
        let have = profile.qualifier_count(a);
        if have >= s {
            return Err(Error::Contract(format!("target {a} is already qualified")));
        }
        demands.push(s - have);
    }
    let agents: Vec<usize> = (1..=profile.n())
        .filter(|&x| !profile.row_all_ones(x))
        .collect();
    let family = agents
        .iter()
        .map(|&x| {
            (1..=targets.len())
                .filter(|&e| !profile.qualifies(x, targets[e - 1]))
                .collect()
        })
        .collect();
    let instance = SetCoverInstance::new(targets.len(), family, Mode::Demands, demands, 0)?;
    Ok(Reduction {
        instance,
        targets: targets.to_vec(),
        agents,
    })
}

/// A reduction the solver built, with the parameters it was solved under.
#[derive(Debug, Clone)]
pub struct ReductionRecord {
    pub reduction: Reduction,
    pub s: usize,
    pub budget: usize,
    /// Largest number of remaining targets one agent qualifies, measured on
    /// the profile the reduction was built from.
    pub delta: usize,
    /// Cardinalities handed to the set-cover solver, in order.
    pub tried_k: Vec<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct BriberyOutcome {
    pub bribes: Option<BribeSet>,
    pub reductions: Vec<ReductionRecord>,
}

#[derive(Clone)]
struct State {
    profile: Profile,
    bribed: Vec<usize>,
    budget: usize,
    targets: Vec<usize>,
    s: usize,
    t: usize,
}

impl State {
    fn new(inst: &BriberyInstance) -> State {
        let mut state = State {
            profile: inst.profile().clone(),
            bribed: Vec::new(),
            budget: inst.ell(),
            targets: inst.targets().to_vec(),
            s: inst.s(),
            t: inst.t(),
        };
        state.drop_qualified();
        state
    }

    fn drop_qualified(&mut self) {
        let (p, s, t) = (&self.profile, self.s, self.t);
        self.targets.retain(|&a| !p.is_socially_qualified(a, s, t));
    }

    /// `false` when the budget is exhausted.
    fn bribe(&mut self, a: usize) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        self.bribed.push(a);
        self.profile.make_all_ones(a);
        self.drop_qualified();
        true
    }

    fn is_bribed(&self, a: usize) -> bool {
        self.bribed.contains(&a)
    }

    fn into_bribes(self) -> BribeSet {
        BribeSet::new(self.bribed).expect("each agent is bribed at most once")
    }

    /// Finishes a state whose remaining targets all qualify themselves.
    fn finish(mut self, records: &mut Vec<ReductionRecord>) -> Result<Option<BribeSet>> {
        if self.targets.is_empty() {
            return Ok(Some(self.into_bribes()));
        }
        let n = self.profile.n();
        if self.s > n {
            return Ok(None);
        }
        if self.budget >= self.s {
            // s agents that qualify everyone qualify every target
            let fresh: Vec<usize> = (1..=n)
                .filter(|&x| !self.is_bribed(x))
                .take(self.s)
                .collect();
            for x in fresh {
                self.bribe(x);
            }
            debug_assert!(self.targets.is_empty());
            return Ok(Some(self.into_bribes()));
        }

        let reduction = reduce_to_demands(&self.profile, &self.targets, self.s, self.budget)?;
        let mut record = ReductionRecord {
            delta: delta(&self.profile, &self.targets),
            reduction,
            s: self.s,
            budget: self.budget,
            tried_k: Vec::new(),
        };
        let mut answer = None;
        for k in 0..=self.budget {
            record.tried_k.push(k);
            let (found, _) = solve_demands(&record.reduction.instance.clone().with_k(k))?;
            if let Some(Solution::Sets(picks)) = found {
                answer = Some(picks);
                break;
            }
        }
        let agents = record.reduction.agents.clone();
        records.push(record);
        let Some(picks) = answer else {
            return Ok(None);
        };
        for j in picks {
            self.bribe(agents[j - 1]);
        }
        Ok(Some(self.into_bribes()))
    }
}

/// Bribery for `t = 1` with the reductions it built.
pub fn solve_bribery_t1_traced(inst: &BriberyInstance) -> Result<BriberyOutcome> {
    if inst.t() != 1 {
        return Err(Error::Contract(format!(
            "expected t = 1, got t = {}",
            inst.t()
        )));
    }
    let mut state = State::new(inst);
    // with t = 1 a self-disqualifying target is lost unless bribed itself
    let forced: Vec<usize> = state
        .targets
        .iter()
        .copied()
        .filter(|&a| !state.profile.qualifies(a, a))
        .collect();
    for a in forced {
        if !state.bribe(a) {
            return Ok(BriberyOutcome::default());
        }
    }
    let mut reductions = Vec::new();
    let bribes = state.finish(&mut reductions)?;
    Ok(BriberyOutcome { bribes, reductions })
}

pub fn solve_bribery_t1(inst: &BriberyInstance) -> Result<Option<BribeSet>> {
    Ok(solve_bribery_t1_traced(inst)?.bribes)
}

fn search_general(
    mut state: State,
    records: &mut Vec<ReductionRecord>,
) -> Result<Option<BribeSet>> {
    // a self-disqualifying target with at least budget + t disqualifiers
    // cannot be rescued by bribing others, so it must be bribed itself
    loop {
        let forced = state.targets.iter().copied().find(|&a| {
            !state.profile.qualifies(a, a)
                && state.profile.disqualifier_count(a) >= state.budget + state.t
        });
        match forced {
            Some(a) => {
                if !state.bribe(a) {
                    return Ok(None);
                }
            }
            None => break,
        }
    }

    let open = state
        .targets
        .iter()
        .copied()
        .find(|&a| !state.profile.qualifies(a, a));
    let Some(a) = open else {
        return state.finish(records);
    };
    // every successful completion bribes `a` or one of its disqualifiers
    // (a itself is among them)
    if state.budget == 0 {
        return Ok(None);
    }
    for x in state.profile.disqualifiers(a)? {
        let mut child = state.clone();
        child.bribe(x);
        if let Some(found) = search_general(child, records)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Bribery for any `t` with the reductions built on every explored branch.
pub fn solve_bribery_general_traced(inst: &BriberyInstance) -> Result<BriberyOutcome> {
    let mut reductions = Vec::new();
    let bribes = search_general(State::new(inst), &mut reductions)?;
    Ok(BriberyOutcome { bribes, reductions })
}

pub fn solve_bribery_general(inst: &BriberyInstance) -> Result<Option<BribeSet>> {
    Ok(solve_bribery_general_traced(inst)?.bribes)
}

/// Tries every bribe set of size `0..=ell` in order of size, then
/// lexicographically, and returns the first that works.
pub fn brute_bribery(inst: &BriberyInstance) -> Result<Option<BribeSet>> {
    let n = inst.n();
    let top = inst.ell().min(n);
    let count = (0..=top).fold(0u128, |acc, r| {
        acc.saturating_add(binomial(n as u128, r as u128))
    });
    if count > BRIBERY_ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            count,
            limit: BRIBERY_ENUMERATION_LIMIT,
        });
    }
    let mut result = None;
    let mut failure = None;
    for size in 0..=top {
        for_each_subset(n, size, |agents| {
            let b = BribeSet::new(agents.to_vec()).expect("subsets are strictly increasing");
            match inst.is_successful(&b) {
                Ok(true) => {
                    result = Some(b);
                    false
                }
                Ok(false) => true,
                Err(e) => {
                    failure = Some(e);
                    false
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        if result.is_some() {
            break;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(ell: usize) -> BriberyInstance {
        let p = Profile::from_rows(&[vec![1, -1, -1], vec![-1, -1, -1], vec![-1, -1, -1]]).unwrap();
        BriberyInstance::new(p, vec![1], 2, 1, ell).unwrap()
    }

    #[test]
    fn reduction_example() {
        let inst = example(1);
        let r = reduce_to_demands(inst.profile(), &[1], 2, 1).unwrap();
        assert_eq!(r.instance.n(), 1);
        assert_eq!(r.instance.bounds(), &[1]);
        assert_eq!(r.instance.family(), &[vec![], vec![1], vec![1]]);
        assert_eq!(r.agents, vec![1, 2, 3]);
        // each target is missing from at most s - 1 sets
        let missing = r.instance.m() - r.instance.occurrences(1).unwrap().len();
        assert!(missing <= 1);
    }

    #[test]
    fn reduction_skips_all_ones_rows() {
        let p = Profile::from_fn(3, |a, b| a != 3 || b != 1);
        let r = reduce_to_demands(&p, &[1], 3, 0).unwrap();
        assert_eq!(r.agents, vec![3]);
        assert_eq!(r.instance.bounds(), &[1]);
        let all = Profile::all_ones(3);
        assert!(reduce_to_demands(&all, &[], 3, 0)
            .unwrap()
            .instance
            .family()
            .is_empty());
    }

    #[test]
    fn reduction_preconditions() {
        let inst = example(1);
        assert!(reduce_to_demands(inst.profile(), &[2], 2, 1).is_err());
        assert!(reduce_to_demands(inst.profile(), &[1], 2, 2).is_err());
        assert!(reduce_to_demands(inst.profile(), &[1], 1, 0).is_err());
    }

    #[test]
    fn t1_examples() {
        let b = solve_bribery_t1(&example(1)).unwrap().unwrap();
        assert!(b == BribeSet::new(vec![2]).unwrap() || b == BribeSet::new(vec![3]).unwrap());
        assert_eq!(solve_bribery_t1(&example(0)).unwrap(), None);

        let all = BriberyInstance::new(Profile::all_ones(3), vec![1, 2, 3], 3, 1, 0).unwrap();
        assert_eq!(solve_bribery_t1(&all).unwrap(), Some(BribeSet::default()));
    }

    #[test]
    fn t1_forced_and_shortcut() {
        // target 2 disqualifies itself and must be bribed
        let p = Profile::from_fn(4, |a, b| !(b == 2 && a == 2));
        let inst = BriberyInstance::new(p, vec![2], 1, 1, 1).unwrap();
        assert_eq!(
            solve_bribery_t1(&inst).unwrap(),
            Some(BribeSet::new(vec![2]).unwrap())
        );
        let broke = BriberyInstance::new(inst.profile().clone(), vec![2], 1, 1, 0).unwrap();
        assert_eq!(solve_bribery_t1(&broke).unwrap(), None);

        // budget >= s: bribe the s lowest-index agents
        let none = Profile::from_fn(4, |a, b| a == b);
        let inst = BriberyInstance::new(none, vec![3, 4], 2, 1, 2).unwrap();
        assert_eq!(
            solve_bribery_t1(&inst).unwrap(),
            Some(BribeSet::new(vec![1, 2]).unwrap())
        );
    }

    #[test]
    fn t1_rejects_other_t() {
        let p = Profile::all_ones(3);
        let inst = BriberyInstance::new(p, vec![1], 1, 2, 0).unwrap();
        assert!(matches!(solve_bribery_t1(&inst), Err(Error::Contract(_))));
    }

    #[test]
    fn unreachable_s_is_infeasible() {
        let inst =
            BriberyInstance::new(Profile::from_fn(2, |a, b| a == b), vec![1], 3, 1, 2).unwrap();
        assert_eq!(solve_bribery_t1(&inst).unwrap(), None);
        assert_eq!(brute_bribery(&inst).unwrap(), None);
    }

    #[test]
    fn general_examples() {
        let p = Profile::from_fn(3, |_, b| b != 1);
        let inst = BriberyInstance::new(p, vec![1], 1, 2, 1).unwrap();
        assert_eq!(
            solve_bribery_general(&inst).unwrap(),
            Some(BribeSet::new(vec![1]).unwrap())
        );
        assert_eq!(
            brute_bribery(&inst).unwrap(),
            Some(BribeSet::new(vec![1]).unwrap())
        );

        let none =
            BriberyInstance::new(Profile::from_fn(3, |_, _| false), vec![], 2, 2, 0).unwrap();
        assert_eq!(
            solve_bribery_general(&none).unwrap(),
            Some(BribeSet::default())
        );
    }

    #[test]
    fn general_branches_over_disqualifiers() {
        // target 1 disqualifies itself, n = 4, t = 3: agents 1 and 2
        // disqualify it; with budget 1 it already qualifies (2 < 3)
        let p = Profile::from_fn(4, |a, b| !(b == 1 && a <= 2));
        let ok = BriberyInstance::new(p.clone(), vec![1], 1, 3, 0).unwrap();
        assert_eq!(
            solve_bribery_general(&ok).unwrap(),
            Some(BribeSet::default())
        );
        // with t = 2 one bribe among {1, 2} is needed; bribing 1 makes it
        // self-qualifying with 3 >= s qualifiers
        let need = BriberyInstance::new(p, vec![1], 2, 2, 1).unwrap();
        let b = solve_bribery_general(&need).unwrap().unwrap();
        assert!(need.is_successful(&b).unwrap());
        assert!(brute_bribery(&need).unwrap().is_some());
    }

    #[test]
    fn brute_examples() {
        assert_eq!(
            brute_bribery(&example(1)).unwrap(),
            Some(BribeSet::new(vec![2]).unwrap())
        );
        assert_eq!(brute_bribery(&example(0)).unwrap(), None);
        let everyone =
            BriberyInstance::new(Profile::from_fn(3, |_, _| false), vec![1, 2, 3], 3, 1, 3)
                .unwrap();
        assert_eq!(
            brute_bribery(&everyone).unwrap(),
            Some(BribeSet::new(vec![1, 2, 3]).unwrap())
        );
    }

    #[test]
    fn brute_guard() {
        let inst = BriberyInstance::new(Profile::all_ones(40), vec![1], 1, 1, 10).unwrap();
        assert!(matches!(
            brute_bribery(&inst),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
