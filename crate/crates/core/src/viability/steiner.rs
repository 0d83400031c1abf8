//! Minimum node-weight Steiner arborescence on a contracted food web.
//!
//! Every member of the base set already connected to a sink through base
//! members is merged into a terminal `t`; all remaining sinks get an arc to
//! `t`. The unconnected base members (starters) must each reach `t`. Nodes
//! outside the base cost one species each; base nodes and `t` are free.
//!
//! To make the answer unique, the cost of node `v` is `2^n - 2^(n-1-v)`: the
//! leading term counts species, the trailing term prefers small indices, so
//! the optimum is the lexicographically smallest minimum-size extension.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::web::FoodWeb;

#[derive(Debug, Clone, Copy)]
enum Back {
    None,
    Start,
    Merge(u32),
    Relax(u32),
}

/// A contracted Steiner instance for one extension query.
#[derive(Debug, Clone)]
pub struct SteinerProblem<'w> {
    web: &'w FoodWeb,
    in_base: Vec<bool>,
    connected: Vec<bool>,
    starters: Vec<usize>,
}

impl<'w> SteinerProblem<'w> {
    /// Contracts the sink-connected part of `base`. The web must be OR-only.
    pub fn new(web: &'w FoodWeb, base: &crate::species::SpeciesSet) -> Self {
        let n = web.len();
        let in_base = base.mask(n);
        let mut connected = vec![false; n];
        for &v in web.topological_order().iter().rev() {
            connected[v] = in_base[v]
                && (web.is_sink(v) || web.successors(v).iter().any(|&w| connected[w]));
        }
        let starters = base.iter().filter(|&v| !connected[v]).collect();
        SteinerProblem {
            web,
            in_base,
            connected,
            starters,
        }
    }

    /// Base members that still need a route to a sink.
    pub fn starters(&self) -> &[usize] {
        &self.starters
    }

    /// Base members merged into the terminal.
    pub fn terminal_members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.web.len()).filter(|&v| self.connected[v])
    }

    /// Returns the species added outside the base, sorted.
    pub fn solve(&self, max_starters: usize) -> Result<Vec<usize>> {
        let j = self.starters.len();
        if j == 0 {
            return Ok(Vec::new());
        }
        if j > max_starters {
            return Err(Error::LimitExceeded {
                what: "steiner starters",
                needed: j as u64,
                limit: max_starters as u64,
            });
        }
        let n = self.web.len();
        let terminal = n;
        let one_species = BigUint::one() << n;
        let node_cost: Vec<BigUint> = (0..=n)
            .map(|v| {
                if v == terminal || self.in_base[v] {
                    BigUint::zero()
                } else {
                    &one_species - (BigUint::one() << (n - 1 - v))
                }
            })
            .collect();

        let mut order: Vec<usize> = self
            .web
            .topological_order()
            .iter()
            .copied()
            .filter(|&v| !self.connected[v])
            .collect();
        order.push(terminal);
        let targets: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                if self.connected[u] {
                    return Vec::new();
                }
                if self.web.is_sink(u) {
                    return vec![terminal];
                }
                let mut t: Vec<usize> = self
                    .web
                    .successors(u)
                    .iter()
                    .map(|&w| if self.connected[w] { terminal } else { w })
                    .collect();
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();

        let full = (1usize << j) - 1;
        let mut dp: Vec<Vec<Option<BigUint>>> = vec![vec![None; n + 1]; full + 1];
        let mut back: Vec<Vec<Back>> = vec![vec![Back::None; n + 1]; full + 1];

        for mask in 1..=full {
            if mask.is_power_of_two() {
                let s = self.starters[mask.trailing_zeros() as usize];
                dp[mask][s] = Some(node_cost[s].clone());
                back[mask][s] = Back::Start;
            } else {
                let low = mask & mask.wrapping_neg();
                for &v in &order {
                    let mut best: Option<(BigUint, usize)> = None;
                    // submasks holding the lowest bit, so each split is seen once
                    let mut sub = (mask - 1) & mask;
                    while sub > 0 {
                        if sub & low != 0 {
                            if let (Some(a), Some(b)) = (&dp[sub][v], &dp[mask ^ sub][v]) {
                                let val = a + b - &node_cost[v];
                                if best.as_ref().is_none_or(|(bv, _)| val < *bv) {
                                    best = Some((val, sub));
                                }
                            }
                        }
                        sub = (sub - 1) & mask;
                    }
                    if let Some((val, sub)) = best {
                        dp[mask][v] = Some(val);
                        back[mask][v] = Back::Merge(sub as u32);
                    }
                }
            }
            for &u in &order {
                if u == terminal {
                    continue;
                }
                let Some(base) = dp[mask][u].clone() else { continue };
                for &w in &targets[u] {
                    let cand = &base + &node_cost[w];
                    if dp[mask][w].as_ref().is_none_or(|cur| cand < *cur) {
                        dp[mask][w] = Some(cand);
                        back[mask][w] = Back::Relax(u as u32);
                    }
                }
            }
        }

        if dp[full][terminal].is_none() {
            let stuck = self.starters[0];
            return Err(Error::Infeasible(self.web.species().name(stuck).to_string()));
        }
        let mut picked = vec![false; n + 1];
        let mut stack = vec![(full, terminal)];
        while let Some((mask, v)) = stack.pop() {
            picked[v] = true;
            match back[mask][v] {
                Back::Start => {}
                Back::Merge(sub) => {
                    let sub = sub as usize;
                    stack.push((sub, v));
                    stack.push((mask ^ sub, v));
                }
                Back::Relax(u) => stack.push((mask, u as usize)),
                Back::None => unreachable!("reconstruction reached an unset state"),
            }
        }
        Ok((0..n).filter(|&v| picked[v] && !self.in_base[v]).collect())
    }
}
