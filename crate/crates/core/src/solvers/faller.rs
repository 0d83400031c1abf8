use crate::error::Result;
use crate::oracle::SubmodularOracle;
use crate::species::SpeciesSet;
use crate::web::FoodWeb;

use super::{Run, SolveReport, SolverConfig};

/// Species-by-species greedy: repeatedly add the species of largest gain among
/// those that keep the set viable (sinks, or species with a selected prey).
///
/// Offers no approximation guarantee. Ties go to the smallest index.
pub fn solve_faller<O: SubmodularOracle>(
    web: &FoodWeb,
    oracle: &O,
    budget: usize,
    config: &SolverConfig,
) -> Result<SolveReport<O::Value>> {
    let mut run = Run::new(web, oracle, config)?;
    run.require_standard("faller greedy")?;
    let n = web.len();
    let mut chosen = SpeciesSet::new();
    let mut member = vec![false; n];
    while chosen.len() < budget {
        run.check_time()?;
        let mut best: Option<(usize, O::Value)> = None;
        for s in 0..n {
            if member[s] {
                continue;
            }
            let succ = web.successors(s);
            if !(succ.is_empty() || succ.iter().any(|&t| member[t])) {
                continue;
            }
            let gain = run.marginal(&SpeciesSet::singleton(s), &chosen)?;
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((s, gain));
            }
        }
        let Some((s, _)) = best else { break };
        member[s] = true;
        chosen.insert(s);
        run.iterations += 1;
    }
    run.finish(chosen)
}
