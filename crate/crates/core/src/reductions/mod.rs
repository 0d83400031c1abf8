//! Instance generators from classic optimization problems, with exhaustive
//! solvers for the source problems.
//!
//! Source formats:
//! - coverage: a line of element weights, then one set per line as 1-based
//!   element numbers;
//! - graphs: one undirected edge `u v` per line;
//! - CNF: DIMACS with exactly three literals per clause.

mod maxcov;
mod sat;
mod vertex_cover;

pub use maxcov::{generate_maxcov, solve_maxcov_exact, CoverageInput, MAXCOV_EXACT_MAX_SETS};
pub use sat::{generate_sat, solve_sat_exact, CnfInput, SAT_EXACT_MAX_VARS};
pub use vertex_cover::{generate_vertexcover, solve_vc_exact, VertexCoverInput, VC_EXACT_MAX_VERTICES};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::scalar::Weight;
use crate::tree::TreeBuilder;
use crate::web::FoodWeb;

/// Resolves named arcs against the tree's species and assembles the instance.
fn assemble<W: Weight>(
    tree: TreeBuilder<W>,
    arcs: &[(String, String)],
    and_nodes: &[&str],
    budget: usize,
    generalized: bool,
    provenance: String,
) -> Result<Instance<W>> {
    let tree = tree.build()?;
    let species = tree.species().clone();
    let arcs = arcs
        .iter()
        .map(|(a, b)| Ok((species.resolve(a)?, species.resolve(b)?)))
        .collect::<Result<Vec<_>>>()?;
    let ands = and_nodes.iter().map(|a| species.resolve(a)).collect::<Result<Vec<_>>>()?;
    let web = FoodWeb::new(species, &arcs, &ands)?;
    Ok(Instance::new(tree, web, budget, generalized)?.with_provenance(provenance))
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn content_lines<'a>(text: &'a str, comment: &'a [char]) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(move |(_, l)| !l.is_empty() && !l.starts_with(comment))
}

fn cap_error(what: &'static str, needed: usize, limit: usize) -> Error {
    Error::LimitExceeded {
        what,
        needed: needed as u64,
        limit: limit as u64,
    }
}
