//! Set-cover instances with per-element demands or capacities, their
//! solutions, and the verifier every solver answer is checked against.
//!
//! Elements and set indices are 1-based in every public signature.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Element `i` must be covered at least `bounds[i]` times.
    Demands,
    /// Element `i` may be covered at most `bounds[i]` times.
    Capacities,
}

impl Mode {
    pub fn opposite(self) -> Mode {
        match self {
            Mode::Demands => Mode::Capacities,
            Mode::Capacities => Mode::Demands,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Mode::Demands => "demands",
            Mode::Capacities => "capacities",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Per-set prices together with the budget the chosen sets must respect.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pricing {
    pub prices: Vec<u64>,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetCoverInstance {
    n: usize,
    family: Vec<Vec<usize>>,
    mode: Mode,
    bounds: Vec<usize>,
    k: usize,
    pricing: Option<Pricing>,
    multiplicities: bool,
    // occurrences[i - 1] = sorted indices of the sets containing element i
    occurrences: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    /// Builds an instance over the universe `1..=n`. Each set is normalized to
    /// ascending order; repeated elements inside one set are rejected.
    pub fn new(
        n: usize,
        family: Vec<Vec<usize>>,
        mode: Mode,
        bounds: Vec<usize>,
        k: usize,
    ) -> Result<Self> {
        if bounds.len() != n {
            return Err(Error::LengthMismatch {
                what: "bounds",
                expected: n,
                found: bounds.len(),
            });
        }
        let mut family = family;
        for (j, set) in family.iter_mut().enumerate() {
            set.sort_unstable();
            for w in set.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateElement {
                        set: j + 1,
                        element: w[0],
                    });
                }
            }
            if let Some(&e) = set.iter().find(|&&e| e == 0 || e > n) {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
        }
        let mut occurrences = vec![Vec::new(); n];
        for (j, set) in family.iter().enumerate() {
            for &e in set {
                occurrences[e - 1].push(j + 1);
            }
        }
        Ok(SetCoverInstance {
            n,
            family,
            mode,
            bounds,
            k,
            pricing: None,
            multiplicities: false,
            occurrences,
        })
    }

    pub fn with_pricing(mut self, prices: Vec<u64>, budget: u64) -> Result<Self> {
        if prices.len() != self.m() {
            return Err(Error::LengthMismatch {
                what: "prices",
                expected: self.m(),
                found: prices.len(),
            });
        }
        self.pricing = Some(Pricing { prices, budget });
        Ok(self)
    }

    pub fn without_pricing(mut self) -> Self {
        self.pricing = None;
        self
    }

    pub fn with_multiplicities(mut self, on: bool) -> Self {
        self.multiplicities = on;
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.family.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    /// Bound of element `i` (1-based).
    pub fn bound(&self, element: usize) -> usize {
        self.bounds[element - 1]
    }

    pub fn family(&self) -> &[Vec<usize>] {
        &self.family
    }

    /// Elements of set `j` (1-based), ascending.
    pub fn set(&self, j: usize) -> &[usize] {
        &self.family[j - 1]
    }

    pub fn pricing(&self) -> Option<&Pricing> {
        self.pricing.as_ref()
    }

    pub fn is_priced(&self) -> bool {
        self.pricing.is_some()
    }

    pub fn multiplicities(&self) -> bool {
        self.multiplicities
    }

    /// Price of set `j` (1-based); zero for unpriced instances.
    pub fn price(&self, j: usize) -> u64 {
        self.pricing.as_ref().map_or(0, |p| p.prices[j - 1])
    }

    fn check_element(&self, element: usize) -> Result<()> {
        if element == 0 || element > self.n {
            return Err(Error::ElementOutOfRange { element, n: self.n });
        }
        Ok(())
    }

    /// Indices of the sets containing `element`, ascending.
    pub fn occurrences(&self, element: usize) -> Result<&[usize]> {
        self.check_element(element)?;
        Ok(&self.occurrences[element - 1])
    }

    /// Indices of the sets containing any of `elements`, ascending.
    pub fn neighborhood(&self, elements: &[usize]) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.m() + 1];
        for &e in elements {
            for &j in self.occurrences(e)? {
                seen[j] = true;
            }
        }
        Ok((1..=self.m()).filter(|&j| seen[j]).collect())
    }

    /// Largest set size, or 0 for an empty family.
    pub fn max_set_size(&self) -> usize {
        self.family.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest number of sets sharing one element, or 0 for an empty universe.
    pub fn max_occurrence(&self) -> usize {
        self.occurrences.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn extremal_stats(&self) -> Result<InstanceStats> {
        if self.family.is_empty() {
            return Err(Error::Invalid("set size extrema of an empty family".into()));
        }
        if self.n == 0 {
            return Err(Error::Invalid(
                "occurrence extrema of an empty universe".into(),
            ));
        }
        let sizes = self.family.iter().map(Vec::len);
        let occ = self.occurrences.iter().map(Vec::len);
        Ok(InstanceStats {
            s_min: sizes.clone().min().unwrap_or(0),
            s_max: sizes.max().unwrap_or(0),
            o_min: occ.clone().min().unwrap_or(0),
            o_max: occ.max().unwrap_or(0),
        })
    }

    /// Number of chosen sets (counted with multiplicity) containing `element`.
    pub fn coverage(&self, solution: &Solution, element: usize) -> Result<usize> {
        self.check_element(element)?;
        self.check_solution_shape(solution)?;
        Ok(self.coverage_unchecked(solution, element))
    }

    fn coverage_unchecked(&self, solution: &Solution, element: usize) -> usize {
        let occ = &self.occurrences[element - 1];
        match solution {
            Solution::Sets(picks) => picks
                .iter()
                .filter(|j| occ.binary_search(j).is_ok())
                .count(),
            Solution::Multi(counts) => occ.iter().map(|&j| counts[j - 1]).sum(),
        }
    }

    /// Checks that `solution` refers only to existing sets and that its shape
    /// matches the multiplicity flag of the instance.
    pub fn check_solution_shape(&self, solution: &Solution) -> Result<()> {
        match solution {
            Solution::Sets(picks) => {
                if self.multiplicities {
                    return Err(Error::Invalid(
                        "set solution given for an instance with multiplicities".into(),
                    ));
                }
                if let Some(&j) = picks.iter().find(|&&j| j == 0 || j > self.m()) {
                    return Err(Error::SetOutOfRange {
                        index: j,
                        m: self.m(),
                    });
                }
            }
            Solution::Multi(counts) => {
                if !self.multiplicities {
                    return Err(Error::Invalid(
                        "multiplicity solution given for an instance without multiplicities".into(),
                    ));
                }
                if counts.len() != self.m() {
                    return Err(Error::LengthMismatch {
                        what: "multiplicities",
                        expected: self.m(),
                        found: counts.len(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Total price of the chosen sets, counted with multiplicity.
    pub fn total_price(&self, solution: &Solution) -> u64 {
        match solution {
            Solution::Sets(picks) => picks.iter().map(|&j| self.price(j)).sum(),
            Solution::Multi(counts) => counts
                .iter()
                .enumerate()
                .map(|(j, &c)| c as u64 * self.price(j + 1))
                .sum(),
        }
    }

    /// Checks cardinality, then every element bound in ascending element
    /// order, then the price budget, and reports the first failure.
    pub fn verify(&self, solution: &Solution) -> Result<Verdict> {
        self.check_solution_shape(solution)?;
        let size = solution.size();
        if size != self.k {
            return Ok(Verdict::Invalid(Violation::Cardinality {
                expected: self.k,
                found: size,
            }));
        }
        for element in 1..=self.n {
            let coverage = self.coverage_unchecked(solution, element);
            let bound = self.bound(element);
            match self.mode {
                Mode::Demands if coverage < bound => {
                    return Ok(Verdict::Invalid(Violation::Demand {
                        element,
                        coverage,
                        demand: bound,
                    }));
                }
                Mode::Capacities if coverage > bound => {
                    return Ok(Verdict::Invalid(Violation::Capacity {
                        element,
                        coverage,
                        capacity: bound,
                    }));
                }
                _ => {}
            }
        }
        if let Some(p) = &self.pricing {
            let total = self.total_price(solution);
            if total > p.budget {
                return Ok(Verdict::Invalid(Violation::Price {
                    total,
                    budget: p.budget,
                }));
            }
        }
        Ok(Verdict::Valid)
    }

    pub fn is_solution(&self, solution: &Solution) -> bool {
        matches!(self.verify(solution), Ok(Verdict::Valid))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceStats {
    pub s_min: usize,
    pub s_max: usize,
    pub o_min: usize,
    pub o_max: usize,
}

/// A chosen subfamily: either distinct set indices, or a multiplicity per set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Solution {
    /// Strictly increasing 1-based set indices.
    Sets(Vec<usize>),
    /// `counts[j - 1]` copies of set `j`.
    Multi(Vec<usize>),
}

impl Solution {
    /// Sorts `indices` and rejects repeats.
    pub fn from_indices(mut indices: Vec<usize>) -> Result<Solution> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("set {} picked twice", w[0])));
        }
        Ok(Solution::Sets(indices))
    }

    pub fn empty() -> Solution {
        Solution::Sets(Vec::new())
    }

    /// Number of chosen sets, counted with multiplicity.
    pub fn size(&self) -> usize {
        match self {
            Solution::Sets(picks) => picks.len(),
            Solution::Multi(counts) => counts.iter().sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Cardinality {
        expected: usize,
        found: usize,
    },
    Demand {
        element: usize,
        coverage: usize,
        demand: usize,
    },
    Capacity {
        element: usize,
        coverage: usize,
        capacity: usize,
    },
    Price {
        total: u64,
        budget: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Cardinality { expected, found } => {
                write!(f, "cardinality {found} differs from k = {expected}")
            }
            Violation::Demand {
                element,
                coverage,
                demand,
            } => write!(
                f,
                "element {element} covered {coverage} times, demand {demand}"
            ),
            Violation::Capacity {
                element,
                coverage,
                capacity,
            } => write!(
                f,
                "element {element} covered {coverage} times, capacity {capacity}"
            ),
            Violation::Price { total, budget } => {
                write!(f, "total price {total} exceeds budget {budget}")
            }
        }
    }
}
