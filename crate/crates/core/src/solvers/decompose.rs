use crate::error::{Error, Result};
use crate::species::SpeciesSet;
use crate::viability::is_viable;
use crate::web::FoodWeb;

/// A viable set split into blocks `O_i` of at most `p` species, each made
/// viable by the helper set `B_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub pairs: Vec<(SpeciesSet, SpeciesSet)>,
}

impl Decomposition {
    /// Union of all blocks.
    pub fn blocks_union(&self) -> SpeciesSet {
        self.pairs.iter().fold(SpeciesSet::new(), |acc, (o, _)| acc.union(o))
    }

    /// `Σ |O_i ∪ B_i|`.
    pub fn total_size(&self) -> usize {
        self.pairs.iter().map(|(o, b)| o.union(b).len()).sum()
    }
}

/// Splits a viable set `set` by a depth-first search from an artificial root
/// over the reversed web (prey to predator), starting at the sinks.
///
/// Nodes are collected in pop order; a block closes after `p` pops and takes
/// the open DFS path as its helper set. The result is padded with empty pairs
/// to exactly `⌈k/p⌉` entries.
pub fn decompose(set: &SpeciesSet, web: &FoodWeb, p: usize, k: usize) -> Result<Decomposition> {
    if web.has_and_nodes() {
        return Err(Error::Generalized("decomposition"));
    }
    if p == 0 {
        return Err(Error::Invalid("p must be at least 1".into()));
    }
    if set.len() > k {
        return Err(Error::Invalid(format!("set has {} species but k = {k}", set.len())));
    }
    if !is_viable(set, web)? {
        return Err(Error::Invalid(format!(
            "set {{{}}} is not viable",
            web.species().format_set(set)
        )));
    }
    let n = web.len();
    let member = set.mask(n);
    let root = n;
    let children = |v: usize| -> Vec<usize> {
        if v == root {
            set.iter().filter(|&s| web.is_sink(s)).collect()
        } else {
            let mut c: Vec<usize> = web.predecessors(v).iter().copied().filter(|&u| member[u]).collect();
            c.sort_unstable();
            c
        }
    };

    let mut visited = vec![false; n + 1];
    visited[root] = true;
    let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(root, children(root), 0)];
    let mut pairs = Vec::new();
    let mut block = Vec::new();
    while let Some(top) = stack.last_mut() {
        let (v, kids, next) = (top.0, &top.1, &mut top.2);
        if let Some(&c) = kids.get(*next) {
            *next += 1;
            if !visited[c] {
                visited[c] = true;
                let grand = children(c);
                stack.push((c, grand, 0));
            }
            continue;
        }
        stack.pop();
        if v == root {
            break;
        }
        block.push(v);
        if block.len() == p {
            let helpers = stack.iter().map(|e| e.0).filter(|&u| u != root);
            pairs.push((
                SpeciesSet::from_indices(block.drain(..)),
                SpeciesSet::from_indices(helpers),
            ));
        }
    }
    if !block.is_empty() {
        pairs.push((SpeciesSet::from_indices(block), SpeciesSet::new()));
    }
    while pairs.len() < k.div_ceil(p) {
        pairs.push((SpeciesSet::new(), SpeciesSet::new()));
    }
    Ok(Decomposition { pairs })
}
