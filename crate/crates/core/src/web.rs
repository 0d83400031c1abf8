//! Food webs: acyclic dependency graphs over the species.
//!
//! An arc `a -> b` means `a` depends on (preys on) `b`. Text format, one
//! directive per line:
//!
//! ```text
//! # comment
//! A B        arc from A to B
//! AND t      t survives only if all of its successors survive
//! ```

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::species::Species;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Viable if a sink or if at least one successor survives.
    Or,
    /// Viable only if every successor survives.
    And,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoodWeb {
    species: Species,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    mode: Vec<Mode>,
    /// Predators before prey.
    topo: Vec<usize>,
}

impl FoodWeb {
    /// Builds and validates a web from index arcs. Duplicate arcs are merged.
    pub fn new(species: Species, arcs: &[(usize, usize)], and_nodes: &[usize]) -> Result<Self> {
        let n = species.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(a, b) in arcs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, size: n });
                }
            }
            if a == b {
                return Err(Error::Cycle(species.name(a).to_string()));
            }
            succ[a].push(b);
            pred[b].push(a);
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        let mut mode = vec![Mode::Or; n];
        for &v in and_nodes {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, size: n });
            }
            mode[v] = Mode::And;
        }
        let topo = topological_order(&succ, &pred).map_err(|v| Error::Cycle(species.name(v).to_string()))?;
        Ok(FoodWeb {
            species,
            succ,
            pred,
            mode,
            topo,
        })
    }

    /// Parses the line format. AND directives require `generalized`.
    pub fn parse(text: &str, species: &Species, generalized: bool) -> Result<Self> {
        let mut arcs = Vec::new();
        let mut ands = Vec::new();
        let mut lines = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut offset = 0;
            for tok in content.split_whitespace() {
                let col = content[offset..].find(tok).map_or(0, |i| i + offset);
                offset = col + tok.len();
                tokens.push((tok, col + 1));
            }
            let resolve = |(name, col): (&str, usize)| {
                species
                    .index_of(name)
                    .ok_or_else(|| Error::parse(line_no, col, format!("unknown species `{name}`")))
            };
            match tokens.as_slice() {
                [] => {}
                [("AND", col), target] => {
                    if !generalized {
                        return Err(Error::parse(
                            line_no,
                            *col,
                            "AND directive requires a generalized instance",
                        ));
                    }
                    ands.push(resolve(*target)?);
                }
                [from, to] => {
                    arcs.push((resolve(*from)?, resolve(*to)?));
                    lines.push(line_no);
                }
                [(_, col), ..] => {
                    return Err(Error::parse(line_no, *col, "expected `FROM TO` or `AND NAME`"))
                }
            }
        }
        FoodWeb::new(species.clone(), &arcs, &ands).map_err(|e| match e {
            Error::Cycle(name) => {
                let idx = species.index_of(&name).expect("known");
                let line = arcs
                    .iter()
                    .zip(&lines)
                    .find(|((a, _), _)| *a == idx)
                    .map_or(1, |(_, &l)| l);
                Error::parse(line, 1, format!("food web contains a cycle through `{name}`"))
            }
            other => other,
        })
    }

    /// Canonical text: arcs sorted by (from, to) name, then AND directives.
    pub fn to_text(&self) -> String {
        let mut arcs: Vec<(&str, &str)> = self
            .arcs()
            .map(|(a, b)| (self.species.name(a), self.species.name(b)))
            .collect();
        arcs.sort_unstable();
        let mut out = String::new();
        for (a, b) in arcs {
            let _ = writeln!(out, "{a} {b}");
        }
        for v in 0..self.len() {
            if self.mode[v] == Mode::And {
                let _ = writeln!(out, "AND {}", self.species.name(v));
            }
        }
        out
    }

    pub fn species(&self) -> &Species {
        &self.species
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.succ[v].is_empty()
    }

    pub fn mode(&self, v: usize) -> Mode {
        self.mode[v]
    }

    pub fn has_and_nodes(&self) -> bool {
        self.mode.iter().any(|&m| m == Mode::And)
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
    }

    /// Topological order with every predator before its prey.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }
}

/// Kahn's algorithm; returns a node on a cycle on failure.
fn topological_order(succ: &[Vec<usize>], pred: &[Vec<usize>]) -> std::result::Result<Vec<usize>, usize> {
    let n = succ.len();
    let mut indeg: Vec<usize> = pred.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&v| indeg[v] > 0).expect("cycle member"))
    }
}
