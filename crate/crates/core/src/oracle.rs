//! Monotone submodular set-function oracles.
//!
//! Solvers only see [`SubmodularOracle`]; phylogenetic diversity is one
//! implementation, additive weights another.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::error::Result;
use crate::scalar::Weight;
use crate::species::SpeciesSet;
use crate::tree::PhyloTree;

/// A non-negative, normalized, monotone submodular function over species sets.
pub trait SubmodularOracle: Sync {
    type Value: Weight;

    fn ground_size(&self) -> usize;

    fn value(&self, set: &SpeciesSet) -> Result<Self::Value>;

    /// Gain of adding `add` on top of `base`, i.e. `value(add ∪ base) - value(base)`.
    fn marginal(&self, add: &SpeciesSet, base: &SpeciesSet) -> Result<Self::Value> {
        let joint = self.value(&add.union(base))?;
        Ok(joint - self.value(base)?)
    }
}

/// Phylogenetic diversity: total branch length of the subtree spanning a set and the root.
#[derive(Debug, Clone, Copy)]
pub struct PdOracle<'t, W> {
    tree: &'t PhyloTree<W>,
}

impl<'t, W: Weight> PdOracle<'t, W> {
    pub fn new(tree: &'t PhyloTree<W>) -> Self {
        PdOracle { tree }
    }

    pub fn tree(&self) -> &'t PhyloTree<W> {
        self.tree
    }

    /// Marks root paths of `set`, summing lengths of newly covered edges.
    fn walk(&self, set: &SpeciesSet, covered: &mut [bool]) -> W {
        let mut total = W::zero();
        for s in set {
            let mut node = self.tree.leaf_node(s);
            while let Some(parent) = self.tree.parent(node) {
                if covered[node] {
                    break;
                }
                covered[node] = true;
                total = total + self.tree.length(node);
                node = parent;
            }
        }
        total
    }
}

impl<W: Weight> SubmodularOracle for PdOracle<'_, W> {
    type Value = W;

    fn ground_size(&self) -> usize {
        self.tree.species_count()
    }

    fn value(&self, set: &SpeciesSet) -> Result<W> {
        set.check_bounds(self.ground_size())?;
        let mut covered = vec![false; self.tree.node_count()];
        Ok(self.walk(set, &mut covered))
    }

    fn marginal(&self, add: &SpeciesSet, base: &SpeciesSet) -> Result<W> {
        add.check_bounds(self.ground_size())?;
        base.check_bounds(self.ground_size())?;
        let mut covered = vec![false; self.tree.node_count()];
        self.walk(base, &mut covered);
        Ok(self.walk(add, &mut covered))
    }
}

/// Modular function: the value of a set is the sum of its members' weights.
#[derive(Debug, Clone)]
pub struct AdditiveOracle<W> {
    weights: Vec<W>,
}

impl<W: Weight> AdditiveOracle<W> {
    pub fn new(weights: Vec<W>) -> Self {
        AdditiveOracle { weights }
    }
}

impl<W: Weight> SubmodularOracle for AdditiveOracle<W> {
    type Value = W;

    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, set: &SpeciesSet) -> Result<W> {
        set.check_bounds(self.weights.len())?;
        Ok(set.iter().map(|i| self.weights[i]).sum())
    }

    fn marginal(&self, add: &SpeciesSet, base: &SpeciesSet) -> Result<W> {
        base.check_bounds(self.weights.len())?;
        self.value(&add.difference(base))
    }
}

/// Bounded memo of `value` queries keyed by the canonical set.
///
/// Once `capacity` entries are stored, new results are computed but not kept.
#[derive(Debug)]
pub struct CachedOracle<O: SubmodularOracle> {
    inner: O,
    capacity: usize,
    cache: Mutex<HashMap<SpeciesSet, O::Value>>,
    hits: AtomicU64,
}

impl<O: SubmodularOracle> CachedOracle<O> {
    pub fn new(inner: O, capacity: usize) -> Self {
        CachedOracle {
            inner,
            capacity,
            cache: Mutex::new(HashMap::new()),
            hits: AtomicU64::new(0),
        }
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

impl<O: SubmodularOracle> SubmodularOracle for CachedOracle<O> {
    type Value = O::Value;

    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn value(&self, set: &SpeciesSet) -> Result<O::Value> {
        if let Some(&v) = self.cache.lock().expect("cache poisoned").get(set) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(v);
        }
        let v = self.inner.value(set)?;
        let mut cache = self.cache.lock().expect("cache poisoned");
        if cache.len() < self.capacity {
            cache.insert(set.clone(), v);
        }
        Ok(v)
    }
}
