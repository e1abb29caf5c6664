//! Qualification profiles and the consent rule `f^(s,t)`.

use crate::error::{Error, Result};

/// Square matrix of opinions; `qualifies(a, b)` is true when agent `a` deems
/// agent `b` qualified. Agents are `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    n: usize,
    cells: Vec<bool>,
}

impl Profile {
    /// Rows of `+1`/`-1` entries, one per opinion holder.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Profile> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    what: "opinions in a profile row",
                    expected: n,
                    found: row.len(),
                });
            }
            for &v in row {
                cells.push(match v {
                    1 => true,
                    -1 => false,
                    other => {
                        return Err(Error::Invalid(format!(
                            "opinion {other} of agent {} is not -1 or 1",
                            a + 1
                        )))
                    }
                });
            }
        }
        Ok(Profile { n, cells })
    }

    pub fn from_fn(n: usize, mut qualifies: impl FnMut(usize, usize) -> bool) -> Profile {
        let mut cells = Vec::with_capacity(n * n);
        for a in 1..=n {
            for b in 1..=n {
                cells.push(qualifies(a, b));
            }
        }
        Profile { n, cells }
    }

    pub fn all_ones(n: usize) -> Profile {
        Profile {
            n,
            cells: vec![true; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn qualifies(&self, a: usize, b: usize) -> bool {
        self.cells[(a - 1) * self.n + (b - 1)]
    }

    /// `phi(a, b)` as `+1` / `-1`.
    pub fn opinion(&self, a: usize, b: usize) -> i8 {
        if self.qualifies(a, b) {
            1
        } else {
            -1
        }
    }

    pub fn row(&self, a: usize) -> &[bool] {
        &self.cells[(a - 1) * self.n..a * self.n]
    }

    pub fn row_all_ones(&self, a: usize) -> bool {
        self.row(a).iter().all(|&q| q)
    }

    fn check_agent(&self, a: usize) -> Result<()> {
        if a == 0 || a > self.n {
            return Err(Error::AgentOutOfRange {
                agent: a,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Agents qualifying `a`.
    pub fn qualifiers(&self, a: usize) -> Result<Vec<usize>> {
        self.check_agent(a)?;
        Ok((1..=self.n).filter(|&x| self.qualifies(x, a)).collect())
    }

    /// Agents disqualifying `a`.
    pub fn disqualifiers(&self, a: usize) -> Result<Vec<usize>> {
        self.check_agent(a)?;
        Ok((1..=self.n).filter(|&x| !self.qualifies(x, a)).collect())
    }

    pub fn qualifier_count(&self, a: usize) -> usize {
        (1..=self.n).filter(|&x| self.qualifies(x, a)).count()
    }

    pub fn disqualifier_count(&self, a: usize) -> usize {
        self.n - self.qualifier_count(a)
    }

    /// Whether `a` is socially qualified under `f^(s,t)`: a self-qualifying
    /// agent needs at least `s` qualifiers, a self-disqualifying agent is out
    /// once `t` agents disqualify it.
    pub fn is_socially_qualified(&self, a: usize, s: usize, t: usize) -> bool {
        if self.qualifies(a, a) {
            self.qualifier_count(a) >= s
        } else {
            self.disqualifier_count(a) < t
        }
    }

    pub fn socially_qualified(&self, s: usize, t: usize) -> Vec<usize> {
        (1..=self.n)
            .filter(|&a| self.is_socially_qualified(a, s, t))
            .collect()
    }

    /// Every bribed agent's row becomes all `+1`.
    pub fn apply_bribe(&self, bribes: &BribeSet) -> Result<Profile> {
        let mut out = self.clone();
        for &a in bribes.agents() {
            self.check_agent(a)?;
            out.make_all_ones(a);
        }
        Ok(out)
    }

    pub(crate) fn make_all_ones(&mut self, a: usize) {
        let n = self.n;
        self.cells[(a - 1) * n..a * n].fill(true);
    }
}

/// Agents to bribe, ascending and without repeats.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BribeSet(Vec<usize>);

impl BribeSet {
    pub fn new(mut agents: Vec<usize>) -> Result<BribeSet> {
        agents.sort_unstable();
        if let Some(w) = agents.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("agent {} bribed twice", w[0])));
        }
        Ok(BribeSet(agents))
    }

    pub fn agents(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BriberyInstance {
    profile: Profile,
    targets: Vec<usize>,
    s: usize,
    t: usize,
    ell: usize,
}

impl BriberyInstance {
    pub fn new(
        profile: Profile,
        targets: Vec<usize>,
        s: usize,
        t: usize,
        ell: usize,
    ) -> Result<Self> {
        let n = profile.n();
        if s == 0 || t == 0 {
            return Err(Error::Invalid(format!(
                "consent thresholds must be positive (s = {s}, t = {t})"
            )));
        }
        if s + t > n + 2 {
            return Err(Error::Invalid(format!(
                "s + t = {} exceeds n + 2 = {}",
                s + t,
                n + 2
            )));
        }
        let mut targets = targets;
        targets.sort_unstable();
        targets.dedup();
        if let Some(&a) = targets.iter().find(|&&a| a == 0 || a > n) {
            return Err(Error::AgentOutOfRange { agent: a, n });
        }
        Ok(BriberyInstance {
            profile,
            targets,
            s,
            t,
            ell,
        })
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    /// Largest number of targets a single agent qualifies.
    pub fn delta(&self) -> usize {
        delta(&self.profile, &self.targets)
    }

    /// True when `bribes` fits the budget and makes every target socially
    /// qualified.
    pub fn is_successful(&self, bribes: &BribeSet) -> Result<bool> {
        if bribes.len() > self.ell {
            return Ok(false);
        }
        let after = self.profile.apply_bribe(bribes)?;
        Ok(self
            .targets
            .iter()
            .all(|&a| after.is_socially_qualified(a, self.s, self.t)))
    }
}

pub fn delta(profile: &Profile, targets: &[usize]) -> usize {
    (1..=profile.n())
        .map(|a| targets.iter().filter(|&&b| profile.qualifies(a, b)).count())
        .max()
        .unwrap_or(0)
}
