//! Cost-benefit greedy over candidate sets of size at most `p`, with the
//! best-single-candidate safeguard (`greedy_p`) or with exhaustive viable
//! seeding (`enum_p`).

use std::cmp::Ordering;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::SubmodularOracle;
use crate::scalar::cmp_ratio;
use crate::species::SpeciesSet;
use crate::viability::{is_viable, truncated_depth};
use crate::web::FoodWeb;

use super::{subsets_up_to, Run, SolveReport, SolverConfig};

struct Pick<V> {
    set: SpeciesSet,
    gain: V,
    cost: usize,
    extended: SpeciesSet,
}

/// Every subset of `0..n` of size `1..=p`, in size-then-lexicographic order.
fn candidate_sets(n: usize, p: usize, cap: u64) -> Result<Vec<SpeciesSet>> {
    let count = subsets_up_to(n, 1, p);
    if count > cap {
        return Err(Error::LimitExceeded {
            what: "candidate sets",
            needed: count,
            limit: cap,
        });
    }
    Ok((1..=p.min(n))
        .flat_map(|size| (0..n).combinations(size))
        .map(SpeciesSet::from_sorted_unchecked)
        .collect())
}

fn check_p(config: &SolverConfig) -> Result<()> {
    if config.p == 0 {
        return Err(Error::Invalid("p must be at least 1".into()));
    }
    Ok(())
}

impl<O: SubmodularOracle> Run<'_, O> {
    fn evaluate(&self, set: &SpeciesSet, current: &SpeciesSet, residual: usize) -> Result<Option<Pick<O::Value>>> {
        if set.is_subset(current) {
            return Ok(None);
        }
        let gain = self.marginal(set, current)?;
        if gain == num_traits::Zero::zero() {
            return Ok(None);
        }
        let extended = self.extend(set, current)?;
        let cost = extended.len() - current.len();
        if cost > residual {
            return Ok(None);
        }
        Ok(Some(Pick {
            set: set.clone(),
            gain,
            cost,
            extended,
        }))
    }

    /// Highest gain/cost ratio; then smaller cost; then lexicographically smaller set.
    fn better(a: &Pick<O::Value>, b: &Pick<O::Value>) -> bool {
        match cmp_ratio(a.gain, a.cost, b.gain, b.cost) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => (a.cost, &a.set) < (b.cost, &b.set),
        }
    }

    /// Grows `current` by the most cost-efficient candidate until the budget is
    /// spent or no candidate with positive gain fits.
    fn greedy_from(
        &mut self,
        mut current: SpeciesSet,
        budget: usize,
        candidates: &[SpeciesSet],
        pool: Option<&rayon::ThreadPool>,
    ) -> Result<SpeciesSet> {
        while current.len() < budget {
            self.check_time()?;
            let residual = budget - current.len();
            let evaluated: Vec<Option<Pick<O::Value>>> = match pool {
                Some(pool) => {
                    let this = &*self;
                    pool.install(|| {
                        candidates
                            .par_iter()
                            .map(|s| this.evaluate(s, &current, residual))
                            .collect::<Result<_>>()
                    })?
                }
                None => candidates
                    .iter()
                    .map(|s| self.evaluate(s, &current, residual))
                    .collect::<Result<_>>()?,
            };
            let mut best: Option<Pick<O::Value>> = None;
            for pick in evaluated.into_iter().flatten() {
                if best.as_ref().is_none_or(|b| Self::better(&pick, b)) {
                    best = Some(pick);
                }
            }
            let Some(pick) = best else { break };
            current = pick.extended;
            self.iterations += 1;
        }
        Ok(current)
    }
}

fn thread_pool(config: &SolverConfig) -> Result<Option<rayon::ThreadPool>> {
    if config.threads <= 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map(Some)
        .map_err(|e| Error::Invalid(format!("cannot start worker threads: {e}")))
}

/// Parameterized greedy with the best-small-set safeguard.
///
/// Phase one keeps the viable extension of the most valuable set of size at
/// most `p` that fits the budget; phase two runs the cost-benefit greedy from
/// the empty set. The better of the two is returned (phase one wins ties).
pub fn solve_greedy_p<O: SubmodularOracle>(
    web: &FoodWeb,
    oracle: &O,
    budget: usize,
    config: &SolverConfig,
) -> Result<SolveReport<O::Value>> {
    check_p(config)?;
    let mut run = Run::new(web, oracle, config)?;
    run.require_standard("greedy_p")?;
    let candidates = candidate_sets(web.len(), config.p, config.limits.max_candidates)?;
    let pool = thread_pool(config)?;
    let empty = SpeciesSet::new();

    let mut safeguard: Option<(O::Value, SpeciesSet)> = None;
    for s in &candidates {
        run.check_time()?;
        let extended = run.extend(s, &empty)?;
        if extended.len() > budget {
            continue;
        }
        let v = run.value(s)?;
        if safeguard.as_ref().is_none_or(|(best, _)| v > *best) {
            safeguard = Some((v, extended));
        }
    }
    let safeguard = safeguard.map(|(_, set)| set).unwrap_or_default();

    let greedy = run.greedy_from(SpeciesSet::new(), budget, &candidates, pool.as_ref())?;
    let chosen = if run.value(&greedy)? > run.value(&safeguard)? {
        greedy
    } else {
        safeguard
    };
    run.finish(chosen)
}

/// The cost-benefit greedy loop alone, grown from `seed` (repaired to a
/// viable set first if needed). From the empty seed this is the second phase
/// of [`solve_greedy_p`] without the safeguard.
pub fn solve_greedy_from<O: SubmodularOracle>(
    web: &FoodWeb,
    oracle: &O,
    budget: usize,
    config: &SolverConfig,
    seed: &SpeciesSet,
) -> Result<SolveReport<O::Value>> {
    check_p(config)?;
    let mut run = Run::new(web, oracle, config)?;
    run.require_standard("greedy loop")?;
    let candidates = candidate_sets(web.len(), config.p, config.limits.max_candidates)?;
    let pool = thread_pool(config)?;
    let start = run.extend(&SpeciesSet::new(), seed)?;
    let grown = run.greedy_from(start, budget, &candidates, pool.as_ref())?;
    run.finish(grown)
}

/// Cost-benefit greedy restarted from every viable seed of size at most
/// `min(3p + 3d - 3, k)`; returns the best final set (first found wins ties).
pub fn solve_enum_p<O: SubmodularOracle>(
    web: &FoodWeb,
    oracle: &O,
    budget: usize,
    config: &SolverConfig,
) -> Result<SolveReport<O::Value>> {
    check_p(config)?;
    let mut run = Run::new(web, oracle, config)?;
    run.require_standard("enum_p")?;
    let n = web.len();
    let p = config.p;
    let d = truncated_depth(web, budget).d;
    let bound = (3 * p + 3 * d - 3).min(budget);
    let seeds = subsets_up_to(n, 0, bound);
    if seeds > config.limits.max_seeds {
        return Err(Error::LimitExceeded {
            what: "enum_p seed enumeration (seed size bound min(3p+3d-3,k))",
            needed: seeds,
            limit: config.limits.max_seeds,
        });
    }
    let candidates = candidate_sets(n, p, config.limits.max_candidates)?;
    let pool = thread_pool(config)?;

    let mut best: Option<(O::Value, SpeciesSet)> = None;
    for size in 0..=bound.min(n) {
        for combo in (0..n).combinations(size) {
            run.check_time()?;
            let seed = SpeciesSet::from_sorted_unchecked(combo);
            if !is_viable(&seed, web)? {
                continue;
            }
            let grown = run.greedy_from(seed, budget, &candidates, pool.as_ref())?;
            let v = run.value(&grown)?;
            if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                best = Some((v, grown));
            }
        }
    }
    let chosen = best.map(|(_, s)| s).unwrap_or_default();
    run.finish(chosen)
}
