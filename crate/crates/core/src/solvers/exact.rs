use crate::error::{Error, Result};
use crate::oracle::SubmodularOracle;
use crate::species::SpeciesSet;
use crate::web::{FoodWeb, Mode};

use super::{Run, SolveReport, SolverConfig};

/// Exhaustive search over viable sets of size at most `budget`.
///
/// Species are decided prey-first, so a species can only be included once its
/// own viability is settled; every leaf of the search is a viable set. Works
/// on AND nodes too. Among optimal sets the smallest, then lexicographically
/// smallest, is returned.
pub fn solve_exact<O: SubmodularOracle>(
    web: &FoodWeb,
    oracle: &O,
    budget: usize,
    config: &SolverConfig,
) -> Result<SolveReport<O::Value>> {
    let n = web.len();
    if n > config.limits.exact_max_species {
        return Err(Error::LimitExceeded {
            what: "exact solver species",
            needed: n as u64,
            limit: config.limits.exact_max_species as u64,
        });
    }
    let mut run = Run::new(web, oracle, config)?;
    let order: Vec<usize> = web.topological_order().iter().rev().copied().collect();
    let mut search = Search {
        web,
        order: &order,
        budget,
        member: vec![false; n],
        chosen: Vec::new(),
        best: None,
    };
    search.visit(&mut run, 0)?;
    let chosen = search.best.map(|(_, s)| s).unwrap_or_default();
    run.finish(chosen)
}

struct Search<'a, V> {
    web: &'a FoodWeb,
    order: &'a [usize],
    budget: usize,
    member: Vec<bool>,
    chosen: Vec<usize>,
    best: Option<(V, SpeciesSet)>,
}

impl<V: Copy + Ord> Search<'_, V> {
    fn can_include(&self, v: usize) -> bool {
        let succ = self.web.successors(v);
        match self.web.mode(v) {
            Mode::Or => succ.is_empty() || succ.iter().any(|&w| self.member[w]),
            Mode::And => succ.iter().all(|&w| self.member[w]),
        }
    }

    /// Chosen species plus every undecided one that could still become viable.
    fn optimistic(&self, depth: usize) -> SpeciesSet {
        let mut open = self.member.clone();
        for &v in &self.order[depth..] {
            let succ = self.web.successors(v);
            open[v] = match self.web.mode(v) {
                Mode::Or => succ.is_empty() || succ.iter().any(|&w| open[w]),
                Mode::And => succ.iter().all(|&w| open[w]),
            };
        }
        (0..open.len()).filter(|&v| open[v]).collect()
    }

    fn current(&self) -> SpeciesSet {
        SpeciesSet::from_indices(self.chosen.iter().copied())
    }

    fn visit<O: SubmodularOracle<Value = V>>(&mut self, run: &mut Run<'_, O>, depth: usize) -> Result<()> {
        if depth == self.order.len() || self.chosen.len() == self.budget {
            let set = self.current();
            let value = run.value(&set)?;
            let better = match &self.best {
                None => true,
                Some((bv, bs)) => value > *bv || (value == *bv && (set.len(), &set) < (bs.len(), bs)),
            };
            if better {
                self.best = Some((value, set));
            }
            run.iterations += 1;
            return Ok(());
        }
        if run.iterations % 1024 == 0 {
            run.check_time()?;
        }
        if let Some((bv, bs)) = &self.best {
            let bound = run.value(&self.optimistic(depth))?;
            if bound < *bv || (bound == *bv && self.chosen.len() > bs.len()) {
                return Ok(());
            }
        }
        let v = self.order[depth];
        if self.can_include(v) {
            self.member[v] = true;
            self.chosen.push(v);
            self.visit(run, depth + 1)?;
            self.chosen.pop();
            self.member[v] = false;
        }
        self.visit(run, depth + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::PdOracle;
    use crate::solvers::Algorithm;
    use crate::Instance;

    const FIG1: &str = "[tree]\n((A:1,B:2):1,(D:2,E:1):2,C:3)r;\n[web]\nA B\nA C\nD A\nD E\n[budget]\n3\n";

    fn run(text: &str, k: usize) -> (String, u64) {
        let inst = Instance::<u64>::parse(text).unwrap();
        let pd = PdOracle::new(&inst.tree);
        let r = solve_exact(&inst.web, &pd, k, &SolverConfig::new(Algorithm::Exact)).unwrap();
        assert!(r.viable);
        (inst.species().format_set(&r.chosen), r.value)
    }

    #[test]
    fn five_species_optima() {
        assert_eq!(run(FIG1, 1), ("B".into(), 3));
        assert_eq!(run(FIG1, 2), ("B,C".into(), 6));
        assert_eq!(run(FIG1, 5).1, 12);
    }

    #[test]
    fn generalized_and_node() {
        let text = "[tree]\n(a:1,b:1,t:5)r;\n[web]\nt a\nt b\nAND t\n[budget]\n2\n[generalized]\n";
        assert_eq!(run(text, 2), ("a,b".into(), 2));
        assert_eq!(run(text, 3), ("a,b,t".into(), 7));
    }

    #[test]
    fn species_cap() {
        let inst = Instance::<u64>::parse(FIG1).unwrap();
        let pd = PdOracle::new(&inst.tree);
        let mut cfg = SolverConfig::new(Algorithm::Exact);
        cfg.limits.exact_max_species = 4;
        assert!(matches!(
            solve_exact(&inst.web, &pd, 3, &cfg),
            Err(Error::LimitExceeded { .. })
        ));
    }
}
