//! Seeded random instances for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::scalar::Weight;
use crate::species::Species;
use crate::tree::{PhyloTree, TreeBuilder};
use crate::web::FoodWeb;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub species: usize,
    pub budget: usize,
    /// Inclusive upper bound on branch lengths.
    pub max_weight: u64,
    /// Expected number of prey per species.
    pub mean_prey: f64,
}

/// Species names `s0..`, zero-padded so that name order equals number order.
pub fn species_names(n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| format!("s{i:0width$}")).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rooted tree over `n >= 2` named leaves, built by repeatedly joining
/// two or three random clusters.
pub fn random_tree<W: Weight, R: Rng>(rng: &mut R, n: usize, max_weight: u64) -> Result<PhyloTree<W>> {
    if n < 2 {
        return Err(Error::Invalid("a random tree needs at least 2 species".into()));
    }
    let weight = |rng: &mut R| W::from(rng.gen_range(0..=max_weight)).unwrap_or_else(W::max_value);
    // clusters as nested lists, then materialized top-down
    enum Node {
        Leaf(String),
        Inner(Vec<Node>),
    }
    let mut clusters: Vec<Node> = species_names(n).into_iter().map(Node::Leaf).collect();
    while clusters.len() > 1 {
        let take = if clusters.len() >= 3 && rng.gen_bool(0.2) { 3 } else { 2 };
        clusters.shuffle(rng);
        let tail = clusters.split_off(clusters.len() - take);
        clusters.push(Node::Inner(tail));
    }
    let mut builder = TreeBuilder::new(Some("r"));
    let mut stack = vec![(builder.root(), clusters.pop().expect("one cluster"))];
    while let Some((at, node)) = stack.pop() {
        let Node::Inner(children) = node else { unreachable!("leaves are never pushed") };
        for child in children {
            let len = weight(rng);
            match child {
                Node::Leaf(name) => {
                    builder.add_child(at, Some(&name), len);
                }
                inner => {
                    let id = builder.add_child(at, None, len);
                    stack.push((id, inner));
                }
            }
        }
    }
    builder.build()
}

/// Random acyclic food web: species are ranked by a random permutation and
/// each may prey on lower-ranked species only.
pub fn random_web<R: Rng>(rng: &mut R, species: &Species, mean_prey: f64) -> Result<FoodWeb> {
    let n = species.len();
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let mut arcs = Vec::new();
    for hi in 1..n {
        let prob = (mean_prey / hi as f64).min(1.0);
        for lo in 0..hi {
            if rng.gen_bool(prob) {
                arcs.push((rank[hi], rank[lo]));
            }
        }
    }
    FoodWeb::new(species.clone(), &arcs, &[])
}

pub fn random_instance<W: Weight, R: Rng>(rng: &mut R, spec: &RandomSpec) -> Result<Instance<W>> {
    let tree = random_tree::<W, R>(rng, spec.species, spec.max_weight)?;
    let web = random_web(rng, tree.species(), spec.mean_prey)?;
    Ok(Instance::new(tree, web, spec.budget.max(1), false)?.with_provenance(format!(
        "random n={} k={} max_weight={} mean_prey={}",
        spec.species, spec.budget, spec.max_weight, spec.mean_prey
    )))
}
