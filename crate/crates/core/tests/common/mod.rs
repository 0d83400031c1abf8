//! Brute-force reference implementations shared by the integration tests.
//!
//! None of these call into the solver, oracle or viability code under test;
//! they only read the parsed tree and web.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use viaphy::{FoodWeb, Instance, Mode, PhyloTree, SpeciesSet};

/// PD as the total length of the union of root-path edges (edge = child node id).
pub fn brute_pd(tree: &PhyloTree<u64>, set: &[usize]) -> u64 {
    let mut edges = HashSet::new();
    for &s in set {
        let mut node = tree.leaf_node(s);
        while let Some(parent) = tree.parent(node) {
            edges.insert(node);
            node = parent;
        }
    }
    edges.into_iter().map(|e| tree.length(e)).sum()
}

/// Viability straight from the definition, with AND nodes.
pub fn brute_viable(web: &FoodWeb, set: &[usize]) -> bool {
    let member: HashSet<usize> = set.iter().copied().collect();
    set.iter().all(|&s| {
        let succ = web.successors(s);
        match web.mode(s) {
            Mode::Or => succ.is_empty() || succ.iter().any(|t| member.contains(t)),
            Mode::And => succ.iter().all(|t| member.contains(t)),
        }
    })
}

/// OR-only viability by reachability: every member reaches a sink of the web
/// while staying inside the set.
pub fn reach_viable(web: &FoodWeb, set: &[usize]) -> bool {
    let member: HashSet<usize> = set.iter().copied().collect();
    set.iter().all(|&start| {
        let mut seen = HashSet::from([start]);
        let mut todo = vec![start];
        while let Some(v) = todo.pop() {
            if web.successors(v).is_empty() {
                return true;
            }
            for &w in web.successors(v) {
                if member.contains(&w) && seen.insert(w) {
                    todo.push(w);
                }
            }
        }
        false
    })
}

/// Node count of the longest path, by enumerating every path.
pub fn longest_path_enumerated(web: &FoodWeb) -> usize {
    fn walk(web: &FoodWeb, v: usize, len: usize, best: &mut usize) {
        *best = (*best).max(len);
        for &w in web.successors(v) {
            walk(web, w, len + 1, best);
        }
    }
    let mut best = 0;
    for v in 0..web.len() {
        walk(web, v, 1, &mut best);
    }
    best
}

/// Lexicographically first minimum-size viable superset of `base`.
pub fn brute_min_viable_superset(web: &FoodWeb, base: &[usize]) -> Vec<usize> {
    let base_set: BTreeSet<usize> = base.iter().copied().collect();
    let rest: Vec<usize> = (0..web.len()).filter(|v| !base_set.contains(v)).collect();
    for extra in 0..=rest.len() {
        for add in rest.iter().copied().combinations(extra) {
            let cand: Vec<usize> = base_set.iter().copied().chain(add).sorted().collect();
            if brute_viable(web, &cand) {
                return cand;
            }
        }
    }
    unreachable!("the whole species set is viable in an acyclic web")
}

/// Optimum over all viable sets of size at most `k`: (value, set), with ties
/// going to the smaller, then lexicographically first, set.
pub fn brute_optimum(inst: &Instance<u64>, k: usize) -> (u64, Vec<usize>) {
    let n = inst.species_count();
    let mut best = (0u64, Vec::new());
    for size in 0..=k.min(n) {
        for set in (0..n).combinations(size) {
            if !brute_viable(&inst.web, &set) {
                continue;
            }
            let v = brute_pd(&inst.tree, &set);
            if v > best.0 {
                best = (v, set);
            }
        }
    }
    best
}

pub fn set(ix: &[usize]) -> SpeciesSet {
    SpeciesSet::from_indices(ix.iter().copied())
}

/// All connected simple graphs on `2..=max_v` vertices, one per isomorphism class.
pub fn connected_graphs(max_v: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    for v in 2..=max_v {
        let pairs: Vec<(usize, usize)> = (0..v).tuple_combinations().collect();
        let perms: Vec<Vec<usize>> = (0..v).permutations(v).collect();
        let mut seen = HashSet::new();
        for mask in 1u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = (0..pairs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            if !connected(v, &edges) {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    edges
                        .iter()
                        .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                        .sorted()
                        .collect::<Vec<_>>()
                })
                .min()
                .expect("at least one permutation");
            if seen.insert(canon) {
                out.push((v, edges));
            }
        }
    }
    out
}

fn connected(v: usize, edges: &[(usize, usize)]) -> bool {
    let mut reached = vec![false; v];
    reached[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in edges {
            if reached[a] != reached[b] {
                reached[a] = true;
                reached[b] = true;
                changed = true;
            }
        }
    }
    reached.into_iter().all(|r| r)
}

pub const FIG1: &str = "[tree]\n((A:1,B:2):1,(D:2,E:1):2,C:3)r;\n[web]\nA B\nA C\nD A\nD E\n[budget]\n3\n";

/// The two-sink family where the species-by-species greedy is fooled:
/// `z` (worth `c`) needs the worthless `y`, while `x1`, `x2` are worth 1 each.
pub fn faller_trap(c: u64) -> String {
    format!("[tree]\n(y:0,z:{c},x1:1,x2:1)r;\n[web]\nz y\n[budget]\n2\n")
}

/// Violated decomposition invariants, as readable strings.
pub fn decomposition_violations(
    dec: &viaphy::solvers::Decomposition,
    o: &[usize],
    web: &FoodWeb,
    p: usize,
    k: usize,
    d: usize,
) -> Vec<String> {
    let mut bad = Vec::new();
    let mut seen = HashSet::new();
    for (oi, bi) in &dec.pairs {
        for v in oi.iter() {
            if !seen.insert(v) {
                bad.push(format!("species {v} in two blocks"));
            }
        }
        if oi.len() > p {
            bad.push(format!("block of size {} > p = {p}", oi.len()));
        }
        if bi.len() + 1 > d.max(1) {
            bad.push(format!("helper set of size {} > d - 1 = {}", bi.len(), d - 1));
        }
        let joined: Vec<usize> = oi.iter().chain(bi.iter()).sorted().dedup().collect();
        if !brute_viable(web, &joined) {
            bad.push(format!("pair {joined:?} not viable"));
        }
    }
    let union: BTreeSet<usize> = seen.into_iter().collect();
    if union != o.iter().copied().collect() {
        bad.push("blocks do not cover the set".to_string());
    }
    let total: usize = dec.pairs.iter().map(|(a, b)| a.union(b).len()).sum();
    if (total * p) as f64 > (k * (p + d - 1)) as f64 {
        bad.push(format!("total size {total} > (k/p)(p+d-1)"));
    }
    if dec.pairs.len() != k.div_ceil(p) {
        bad.push(format!("{} pairs, expected {}", dec.pairs.len(), k.div_ceil(p)));
    }
    if dec.pairs.last().is_some_and(|(_, b)| !b.is_empty()) {
        bad.push("last helper set is not empty".to_string());
    }
    bad
}
