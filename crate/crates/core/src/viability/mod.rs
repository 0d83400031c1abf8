//! Viability checks, truncated depth, minimum viable extensions and their cost.

mod steiner;

pub use steiner::SteinerProblem;

use crate::error::{Error, Result};
use crate::species::SpeciesSet;
use crate::web::{FoodWeb, Mode};

/// Default cap on the number of unconnected species a single extension may route.
pub const DEFAULT_MAX_STARTERS: usize = 12;

/// Every member is a sink or has a surviving successor (OR mode), or has all
/// successors surviving (AND mode).
pub fn is_viable(set: &SpeciesSet, web: &FoodWeb) -> Result<bool> {
    set.check_bounds(web.len())?;
    let member = set.mask(web.len());
    Ok(is_viable_mask(&member, set.as_slice(), web))
}

pub(crate) fn is_viable_mask(member: &[bool], set: &[usize], web: &FoodWeb) -> bool {
    set.iter().all(|&s| {
        let succ = web.successors(s);
        match web.mode(s) {
            Mode::Or => succ.is_empty() || succ.iter().any(|&t| member[t]),
            Mode::And => succ.iter().all(|&t| member[t]),
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthInfo {
    /// `min(longest_path_len, k)`.
    pub d: usize,
    /// Node count of the longest path in the web; every maximal path ends in a sink.
    pub longest_path_len: usize,
}

pub fn truncated_depth(web: &FoodWeb, k: usize) -> DepthInfo {
    let mut len = vec![1usize; web.len()];
    for &v in web.topological_order().iter().rev() {
        if let Some(best) = web.successors(v).iter().map(|&w| len[w]).max() {
            len[v] = best + 1;
        }
    }
    let longest_path_len = len.into_iter().max().unwrap_or(0);
    DepthInfo {
        d: longest_path_len.min(k).max(1),
        longest_path_len,
    }
}

/// Computes minimum viable extensions on an OR-only food web.
///
/// Among several minimum extensions the one whose sorted index sequence is
/// lexicographically smallest is returned.
#[derive(Debug, Clone, Copy)]
pub struct Extender<'w> {
    web: &'w FoodWeb,
    max_starters: usize,
}

impl<'w> Extender<'w> {
    pub fn new(web: &'w FoodWeb) -> Self {
        Extender {
            web,
            max_starters: DEFAULT_MAX_STARTERS,
        }
    }

    pub fn with_max_starters(mut self, max_starters: usize) -> Self {
        self.max_starters = max_starters;
        self
    }

    pub fn web(&self) -> &'w FoodWeb {
        self.web
    }

    /// A minimum-cardinality viable superset of `selected ∪ add`.
    pub fn extend(&self, add: &SpeciesSet, selected: &SpeciesSet) -> Result<SpeciesSet> {
        if self.web.has_and_nodes() {
            return Err(Error::Generalized("viable extension"));
        }
        add.check_bounds(self.web.len())?;
        selected.check_bounds(self.web.len())?;
        let base = selected.union(add);
        let problem = SteinerProblem::new(self.web, &base);
        let added = problem.solve(self.max_starters)?;
        Ok(base.union(&SpeciesSet::from_indices(added)))
    }

    /// `|vcl(base ∪ add)| - |base|`.
    pub fn cost(&self, add: &SpeciesSet, base: &SpeciesSet) -> Result<usize> {
        Ok(self.extend(add, base)?.len() - base.len())
    }
}

pub fn viable_extension(add: &SpeciesSet, web: &FoodWeb, selected: &SpeciesSet) -> Result<SpeciesSet> {
    Extender::new(web).extend(add, selected)
}

pub fn cost(add: &SpeciesSet, base: &SpeciesSet, web: &FoodWeb) -> Result<usize> {
    Extender::new(web).cost(add, base)
}
