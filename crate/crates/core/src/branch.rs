//! Bounded search tree for set cover with capacities.
//!
//! Every node keeps the elements that still have free capacity and the sets
//! all of whose elements do (the selectable sets). A node first sweeps
//! saturated elements out, then picks a pivot among the selectable sets and
//! branches on adding the pivot or any selectable set that overlaps it. If
//! some completion avoids the pivot and all its overlapping sets, the pivot's
//! elements are untouched by that completion and the pivot can replace any of
//! its sets, so one of the children always extends a solution. The tree has
//! depth at most `k` and fan-out at most `s_max * o_max`.
//!
//! Variants:
//! - multiplicities: a chosen set stays selectable;
//! - prices: the pivot is a cheapest selectable set and nodes over budget are
//!   rejected.
//!
//! Demands instances are complemented first (see [`crate::transform`]).

use crate::error::{Error, Result};
use crate::instance::{Mode, SetCoverInstance, Solution};
use crate::transform::complement;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Recursive calls, including the root.
    pub nodes_visited: u64,
    /// Child branches expanded.
    pub branches_taken: u64,
    /// Deepest level reached; the root is level 0.
    pub max_depth: usize,
}

/// One pivot choice, recorded for inspection of the search order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotEvent {
    pub depth: usize,
    pub pivot: usize,
    /// Selectable sets at the moment the pivot was chosen.
    pub selectable: Vec<usize>,
}

/// Upper bound on `nodes_visited` for a run with the given fan-out
/// parameters: `sum_{i=0..=k} max(1, s_max * o_max)^i`, saturating.
pub fn node_bound(s_max: usize, o_max: usize, k: usize) -> u128 {
    let b = (s_max as u128 * o_max as u128).max(1);
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=k {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(b);
    }
    total
}

struct Search<'a> {
    inst: &'a SetCoverInstance,
    multi: bool,
    budget: Option<u64>,
    coverage: Vec<usize>,
    counts: Vec<usize>,
    price: u64,
    stats: SearchStats,
    trace: Option<Vec<PivotEvent>>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a SetCoverInstance, record: bool) -> Self {
        Search {
            inst,
            multi: inst.multiplicities(),
            budget: inst.pricing().map(|p| p.budget),
            coverage: vec![0; inst.n()],
            counts: vec![0; inst.m()],
            price: 0,
            stats: SearchStats::default(),
            trace: record.then(Vec::new),
        }
    }

    fn run(&mut self) -> bool {
        let free = vec![true; self.inst.n()];
        let selectable = vec![true; self.inst.m()];
        self.node(free, selectable, self.inst.k(), 0)
    }

    /// `free[i]`/`selectable[j]` are 0-based views of the element and set
    /// pools; they are owned so each child works on its own copy.
    fn node(
        &mut self,
        mut free: Vec<bool>,
        mut selectable: Vec<bool>,
        left: usize,
        depth: usize,
    ) -> bool {
        self.stats.nodes_visited += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);

        if self.budget.is_some_and(|t| self.price > t) {
            return false;
        }

        // saturation sweep; removing sets never changes coverage, so one
        // pass reaches the fixpoint
        for e in 0..self.inst.n() {
            if free[e] && self.coverage[e] == self.inst.bounds()[e] {
                free[e] = false;
                for &j in self.inst.occurrences(e + 1).expect("element in range") {
                    selectable[j - 1] = false;
                }
            }
        }

        if left == 0 {
            return true;
        }

        let Some(pivot) = self.pick_pivot(&selectable) else {
            return false;
        };
        if let Some(trace) = &mut self.trace {
            trace.push(PivotEvent {
                depth,
                pivot,
                selectable: (1..=selectable.len())
                    .filter(|&j| selectable[j - 1])
                    .collect(),
            });
        }

        let mut children = vec![pivot];
        let mut overlapping: Vec<usize> = self
            .inst
            .neighborhood(self.inst.set(pivot))
            .expect("set elements in range")
            .into_iter()
            .filter(|&j| j != pivot && selectable[j - 1])
            .collect();
        if self.budget.is_some() {
            overlapping.sort_by_key(|&j| (self.inst.price(j), j));
        }
        children.extend(overlapping);

        for chosen in children {
            self.stats.branches_taken += 1;
            self.select(chosen, 1);
            let mut child_sel = selectable.clone();
            if !self.multi {
                child_sel[chosen - 1] = false;
            }
            if self.node(free.clone(), child_sel, left - 1, depth + 1) {
                return true;
            }
            self.select(chosen, -1);
        }
        false
    }

    fn pick_pivot(&self, selectable: &[bool]) -> Option<usize> {
        let candidates = (1..=selectable.len()).filter(|&j| selectable[j - 1]);
        if self.budget.is_some() {
            candidates.min_by_key(|&j| (self.inst.price(j), j))
        } else {
            candidates.min()
        }
    }

    fn select(&mut self, j: usize, delta: isize) {
        for &e in self.inst.set(j) {
            self.coverage[e - 1] = self.coverage[e - 1].wrapping_add_signed(delta);
        }
        self.counts[j - 1] = self.counts[j - 1].wrapping_add_signed(delta);
        let p = self.inst.price(j);
        if delta > 0 {
            self.price += p;
        } else {
            self.price -= p;
        }
    }

    fn solution(&self) -> Solution {
        if self.multi {
            Solution::Multi(self.counts.clone())
        } else {
            Solution::Sets(
                (1..=self.counts.len())
                    .filter(|&j| self.counts[j - 1] > 0)
                    .collect(),
            )
        }
    }
}

fn require(instance: &SetCoverInstance, mode: Mode, multi: bool, priced: bool) -> Result<()> {
    let describe = |mode: Mode, multi: bool, priced: bool| {
        format!(
            "{mode}{}{}",
            if multi { " with multiplicities" } else { "" },
            if priced { " with prices" } else { "" }
        )
    };
    let (im, imulti, ipriced) = (
        instance.mode(),
        instance.multiplicities(),
        instance.is_priced(),
    );
    if (im, imulti, ipriced) != (mode, multi, priced) {
        return Err(Error::Unsupported(format!(
            "solver expects {}, instance is {}",
            describe(mode, multi, priced),
            describe(im, imulti, ipriced)
        )));
    }
    Ok(())
}

fn run_capacities(instance: &SetCoverInstance) -> (Option<Solution>, SearchStats) {
    let mut search = Search::new(instance, false);
    let found = search.run();
    (found.then(|| search.solution()), search.stats)
}

pub fn solve_capacities(instance: &SetCoverInstance) -> Result<(Option<Solution>, SearchStats)> {
    require(instance, Mode::Capacities, false, false)?;
    Ok(run_capacities(instance))
}

pub fn solve_capacities_multi(
    instance: &SetCoverInstance,
) -> Result<(Option<Solution>, SearchStats)> {
    require(instance, Mode::Capacities, true, false)?;
    Ok(run_capacities(instance))
}

pub fn solve_capacities_priced(
    instance: &SetCoverInstance,
) -> Result<(Option<Solution>, SearchStats)> {
    require(instance, Mode::Capacities, false, true)?;
    Ok(run_capacities(instance))
}

fn run_demands(instance: &SetCoverInstance) -> (Option<Solution>, SearchStats) {
    match complement(instance) {
        Ok(caps) => run_capacities(&caps),
        // some demand exceeds k
        Err(_) => (None, SearchStats::default()),
    }
}

pub fn solve_demands(instance: &SetCoverInstance) -> Result<(Option<Solution>, SearchStats)> {
    require(instance, Mode::Demands, false, false)?;
    Ok(run_demands(instance))
}

pub fn solve_demands_multi(instance: &SetCoverInstance) -> Result<(Option<Solution>, SearchStats)> {
    require(instance, Mode::Demands, true, false)?;
    Ok(run_demands(instance))
}

pub fn solve_demands_priced(
    instance: &SetCoverInstance,
) -> Result<(Option<Solution>, SearchStats)> {
    require(instance, Mode::Demands, false, true)?;
    Ok(run_demands(instance))
}

/// Dispatches on mode and variant flags.
pub fn solve(instance: &SetCoverInstance) -> Result<(Option<Solution>, SearchStats)> {
    if instance.multiplicities() && instance.is_priced() {
        return Err(Error::Unsupported(
            "prices combined with multiplicities".into(),
        ));
    }
    Ok(match instance.mode() {
        Mode::Capacities => run_capacities(instance),
        Mode::Demands => run_demands(instance),
    })
}

/// Runs the capacities search and records every pivot choice.
pub fn trace_pivots(instance: &SetCoverInstance) -> Result<(Option<Solution>, Vec<PivotEvent>)> {
    if instance.mode() != Mode::Capacities || instance.multiplicities() && instance.is_priced() {
        return Err(Error::Unsupported(
            "pivot tracing runs on capacities instances".into(),
        ));
    }
    let mut search = Search::new(instance, true);
    let found = search.run();
    Ok((
        found.then(|| search.solution()),
        search.trace.unwrap_or_default(),
    ))
}

/// Priced solve without a fixed cardinality: since every price is at least 1,
/// a solution within budget `t` has at most `t` sets, so `k = 1..=t` is tried
/// in turn (non-multiplicity solutions also need `k <= m`). Demands instances
/// whose demands are all zero accept the empty solution first.
pub fn solve_priced_anyk(instance: &SetCoverInstance) -> Result<Option<Solution>> {
    let Some(pricing) = instance.pricing() else {
        return Err(Error::Unsupported("any-k search needs prices".into()));
    };
    if instance.multiplicities() {
        return Err(Error::Unsupported(
            "prices combined with multiplicities".into(),
        ));
    }
    if let Some(j) = pricing.prices.iter().position(|&p| p == 0) {
        return Err(Error::Invalid(format!(
            "set {} has price 0; cardinality cannot be bounded by the budget",
            j + 1
        )));
    }
    if instance.mode() == Mode::Demands && instance.bounds().iter().all(|&d| d == 0) {
        return Ok(Some(Solution::empty()));
    }
    let top = usize::try_from(pricing.budget)
        .unwrap_or(usize::MAX)
        .min(instance.m());
    for k in 1..=top {
        let (found, _) = solve(&instance.clone().with_k(k))?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}
