use itertools::Itertools;

use super::{assemble, cap_error, content_lines};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::scalar::Weight;
use crate::tree::TreeBuilder;

/// Largest number of sets accepted by [`solve_maxcov_exact`].
pub const MAXCOV_EXACT_MAX_SETS: usize = 12;

/// Weighted maximum coverage: pick `k` sets maximizing the covered weight.
///
/// Elements are 0-based here; the text format numbers them from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageInput<W> {
    pub weights: Vec<W>,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl<W: Weight> CoverageInput<W> {
    pub fn new(weights: Vec<W>, sets: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Invalid("coverage input needs at least one element".into()));
        }
        if k == 0 {
            return Err(Error::Invalid("k must be at least 1".into()));
        }
        let n = weights.len();
        let sets = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                match s.iter().find(|&&e| e >= n) {
                    Some(&e) => Err(Error::Invalid(format!("set element {} outside 1..={n}", e + 1))),
                    None => Ok(s),
                }
            })
            .collect::<Result<_>>()?;
        Ok(CoverageInput { weights, sets, k })
    }

    /// First content line: weights. Each further line: one set.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut lines = content_lines(text, &['#']);
        let (_, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing weights line"))?;
        let weights = first
            .split_whitespace()
            .map(|tok| tok.parse::<W>().map_err(|_| Error::parse(1, 1, format!("bad weight `{tok}`"))))
            .collect::<Result<Vec<_>>>()?;
        let n = weights.len();
        let mut sets = Vec::new();
        for (no, line) in lines {
            let set = line
                .split_whitespace()
                .map(|tok| match tok.parse::<usize>() {
                    Ok(e) if (1..=n).contains(&e) => Ok(e - 1),
                    _ => Err(Error::parse(no, 1, format!("element `{tok}` is not in 1..={n}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            sets.push(set);
        }
        Self::new(weights, sets, k)
    }

    pub fn element_count(&self) -> usize {
        self.weights.len()
    }

    /// Weight covered by the chosen set indices.
    pub fn coverage(&self, chosen: &[usize]) -> W {
        let mut covered = vec![false; self.weights.len()];
        for &i in chosen {
            for &e in &self.sets[i] {
                covered[e] = true;
            }
        }
        covered
            .iter()
            .zip(&self.weights)
            .filter(|(c, _)| **c)
            .map(|(_, &w)| w)
            .sum()
    }
}

/// Species `d{i}` per element (edge weight `w_i` to the root) and a chain
/// `S{i}_n -> ... -> S{i}_1` per set, all zero-weight; every element preys on
/// the tops of the chains of the sets containing it. Budget `(k+1)·n`.
///
/// Elements contained in no set are left out (and `n` counts only the rest):
/// as sinks they would be selectable for free.
pub fn generate_maxcov<W: Weight>(input: &CoverageInput<W>) -> Result<Instance<W>> {
    let mut covered = vec![false; input.element_count()];
    for &e in input.sets.iter().flatten() {
        covered[e] = true;
    }
    let n = covered.iter().filter(|&&c| c).count();
    if n == 0 {
        return Err(Error::Invalid("no element is contained in any set".into()));
    }
    let mut tree = TreeBuilder::new(Some("r"));
    let root = tree.root();
    for (i, &w) in input.weights.iter().enumerate() {
        if covered[i] {
            tree.add_child(root, Some(&format!("d{}", i + 1)), w);
        }
    }
    let mut arcs = Vec::new();
    for (i, set) in input.sets.iter().enumerate() {
        let s = i + 1;
        for j in 1..=n {
            tree.add_child(root, Some(&format!("S{s}_{j}")), W::zero());
            if j < n {
                arcs.push((format!("S{s}_{}", j + 1), format!("S{s}_{j}")));
            }
        }
        for &e in set {
            arcs.push((format!("d{}", e + 1), format!("S{s}_{n}")));
        }
    }
    let mut provenance = format!("maxcov n={} m={} k={}", input.element_count(), input.sets.len(), input.k);
    if n < input.element_count() {
        provenance.push_str(&format!(" uncovered={}", input.element_count() - n));
    }
    assemble(tree, &arcs, &[], (input.k + 1) * n, false, provenance)
}

/// Best coverage weight using at most `k` sets.
pub fn solve_maxcov_exact<W: Weight>(input: &CoverageInput<W>) -> Result<W> {
    let m = input.sets.len();
    if m > MAXCOV_EXACT_MAX_SETS {
        return Err(cap_error("max coverage sets", m, MAXCOV_EXACT_MAX_SETS));
    }
    Ok((0..m)
        .combinations(input.k.min(m))
        .map(|c| input.coverage(&c))
        .max()
        .unwrap_or_else(W::zero))
}
