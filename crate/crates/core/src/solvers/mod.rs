//! Solvers for budgeted diversity maximization under viability constraints.
//!
//! All solvers work against a [`SubmodularOracle`] and a [`FoodWeb`]; they
//! never look at the tree. Tie-breaking is fixed everywhere so identical
//! inputs give identical reports.

mod decompose;
mod exact;
mod faller;
mod greedy;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

pub use decompose::{decompose, Decomposition};
pub use exact::solve_exact;
pub use faller::solve_faller;
pub use greedy::{solve_enum_p, solve_greedy_from, solve_greedy_p};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::{PdOracle, SubmodularOracle};
use crate::scalar::Weight;
use crate::species::SpeciesSet;
use crate::viability::{is_viable, Extender, DEFAULT_MAX_STARTERS};
use crate::web::FoodWeb;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Faller,
    GreedyP,
    EnumP,
    Exact,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Faller => "faller",
            Algorithm::GreedyP => "greedy_p",
            Algorithm::EnumP => "enum_p",
            Algorithm::Exact => "exact",
        }
    }

    pub fn uses_p(self) -> bool {
        matches!(self, Algorithm::GreedyP | Algorithm::EnumP)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "faller" => Ok(Algorithm::Faller),
            "greedy_p" => Ok(Algorithm::GreedyP),
            "enum_p" => Ok(Algorithm::EnumP),
            "exact" => Ok(Algorithm::Exact),
            other => Err(Error::Invalid(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Resource caps. Exceeding any of them is an error, never a silent fallback.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Unconnected species routed by one viable-extension query.
    pub max_starters: usize,
    /// Candidate sets of size `1..=p` enumerated per greedy pass.
    pub max_candidates: u64,
    /// Subsets examined while enumerating seeds for `enum_p`.
    pub max_seeds: u64,
    /// Largest species count accepted by the exact solver.
    pub exact_max_species: usize,
    pub time_limit: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_starters: DEFAULT_MAX_STARTERS,
            max_candidates: 5_000_000,
            max_seeds: 100_000,
            exact_max_species: 20,
            time_limit: None,
        }
    }
}

impl Limits {
    /// Applies `key=value` overrides separated by commas, e.g.
    /// `max_seeds=1000000,time_limit_ms=500`.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("limit override `{item}` is not key=value")))?;
            let num: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("limit `{key}` needs an integer, got `{value}`")))?;
            match key.trim() {
                "max_starters" => self.max_starters = num as usize,
                "max_candidates" => self.max_candidates = num,
                "max_seeds" => self.max_seeds = num,
                "exact_max_species" => self.exact_max_species = num as usize,
                "time_limit_ms" => self.time_limit = Some(Duration::from_millis(num)),
                other => return Err(Error::Invalid(format!("unknown limit `{other}`"))),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// Subset-size parameter of `greedy_p` and `enum_p`.
    pub p: usize,
    pub limits: Limits,
    /// Worker threads for candidate evaluation; 1 keeps everything on the caller.
    pub threads: usize,
}

impl SolverConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        SolverConfig {
            algorithm,
            p: 1,
            limits: Limits::default(),
            threads: 1,
        }
    }

    pub fn with_p(mut self, p: usize) -> Self {
        self.p = p;
        self
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport<V> {
    pub algorithm: Algorithm,
    pub p: Option<usize>,
    pub chosen: SpeciesSet,
    pub value: V,
    pub viable: bool,
    pub iterations: u64,
    pub oracle_calls: u64,
    pub steiner_calls: u64,
    pub elapsed: Duration,
}

/// Solves `inst` with its phylogenetic diversity as the objective.
pub fn solve<W: Weight>(inst: &Instance<W>, config: &SolverConfig) -> Result<SolveReport<W>> {
    let oracle = PdOracle::new(&inst.tree);
    solve_with(&inst.web, &oracle, inst.budget, config)
}

/// Dispatches on `config.algorithm` for an arbitrary oracle.
pub fn solve_with<O: SubmodularOracle>(
    web: &FoodWeb,
    oracle: &O,
    budget: usize,
    config: &SolverConfig,
) -> Result<SolveReport<O::Value>> {
    match config.algorithm {
        Algorithm::Faller => solve_faller(web, oracle, budget, config),
        Algorithm::GreedyP => solve_greedy_p(web, oracle, budget, config),
        Algorithm::EnumP => solve_enum_p(web, oracle, budget, config),
        Algorithm::Exact => solve_exact(web, oracle, budget, config),
    }
}

/// Shared bookkeeping for one solver run.
pub(crate) struct Run<'a, O> {
    pub web: &'a FoodWeb,
    pub oracle: &'a O,
    pub extender: Extender<'a>,
    pub config: &'a SolverConfig,
    start: Instant,
    oracle_calls: AtomicU64,
    steiner_calls: AtomicU64,
    pub iterations: u64,
}

impl<'a, O: SubmodularOracle> Run<'a, O> {
    pub fn new(web: &'a FoodWeb, oracle: &'a O, config: &'a SolverConfig) -> Result<Self> {
        if oracle.ground_size() != web.len() {
            return Err(Error::Invalid(format!(
                "oracle covers {} species but the food web has {}",
                oracle.ground_size(),
                web.len()
            )));
        }
        Ok(Run {
            web,
            oracle,
            extender: Extender::new(web).with_max_starters(config.limits.max_starters),
            config,
            start: Instant::now(),
            oracle_calls: AtomicU64::new(0),
            steiner_calls: AtomicU64::new(0),
            iterations: 0,
        })
    }

    pub fn require_standard(&self, what: &'static str) -> Result<()> {
        if self.web.has_and_nodes() {
            Err(Error::Generalized(what))
        } else {
            Ok(())
        }
    }

    pub fn value(&self, set: &SpeciesSet) -> Result<O::Value> {
        self.oracle_calls.fetch_add(1, Ordering::Relaxed);
        self.oracle.value(set)
    }

    pub fn marginal(&self, add: &SpeciesSet, base: &SpeciesSet) -> Result<O::Value> {
        self.oracle_calls.fetch_add(1, Ordering::Relaxed);
        self.oracle.marginal(add, base)
    }

    pub fn extend(&self, add: &SpeciesSet, selected: &SpeciesSet) -> Result<SpeciesSet> {
        self.steiner_calls.fetch_add(1, Ordering::Relaxed);
        self.extender.extend(add, selected)
    }

    pub fn check_time(&self) -> Result<()> {
        match self.config.limits.time_limit {
            Some(limit) if self.start.elapsed() > limit => Err(Error::TimeLimit(limit.as_millis())),
            _ => Ok(()),
        }
    }

    pub fn finish(self, chosen: SpeciesSet) -> Result<SolveReport<O::Value>> {
        let value = self.value(&chosen)?;
        let viable = is_viable(&chosen, self.web)?;
        let algorithm = self.config.algorithm;
        Ok(SolveReport {
            algorithm,
            p: algorithm.uses_p().then_some(self.config.p),
            chosen,
            value,
            viable,
            iterations: self.iterations,
            oracle_calls: self.oracle_calls.into_inner(),
            steiner_calls: self.steiner_calls.into_inner(),
            elapsed: self.start.elapsed(),
        })
    }
}

/// `Σ_{i=lo}^{hi} C(n, i)`, saturating.
pub(crate) fn subsets_up_to(n: usize, lo: usize, hi: usize) -> u64 {
    let mut total: u64 = 0;
    let mut c: u128 = 1;
    for i in 0..=hi.min(n) {
        if i >= lo {
            total = total.saturating_add(c.min(u64::MAX as u128) as u64);
        }
        c = c * (n - i) as u128 / (i + 1) as u128;
        c = c.min(u64::MAX as u128 * 2);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_up_to(4, 0, 4), 16);
        assert_eq!(subsets_up_to(12, 1, 2), 12 + 66);
        assert_eq!(subsets_up_to(3, 0, 10), 8);
        assert_eq!(subsets_up_to(5, 2, 2), 10);
        assert!(subsets_up_to(400, 0, 40) > 1_000_000);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in [Algorithm::Faller, Algorithm::GreedyP, Algorithm::EnumP, Algorithm::Exact] {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("lazy".parse::<Algorithm>().is_err());
    }

    #[test]
    fn limit_overrides() {
        let mut l = Limits::default();
        l.apply_overrides("max_seeds=7, time_limit_ms=250,exact_max_species=30").unwrap();
        assert_eq!(l.max_seeds, 7);
        assert_eq!(l.exact_max_species, 30);
        assert_eq!(l.time_limit, Some(Duration::from_millis(250)));
        assert!(l.apply_overrides("bogus=1").is_err());
        assert!(l.apply_overrides("max_seeds").is_err());
        assert!(l.apply_overrides("max_seeds=x").is_err());
    }
}
