use std::collections::HashSet;

use itertools::Itertools;

use super::{assemble, cap_error, content_lines};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::scalar::Weight;
use crate::species::is_valid_name;
use crate::tree::TreeBuilder;

/// Largest vertex count accepted by [`solve_vc_exact`].
pub const VC_EXACT_MAX_VERTICES: usize = 10;

/// Maximum vertex cover: pick `k` vertices touching as many edges as possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCoverInput {
    pub names: Vec<String>,
    /// Edges as vertex index pairs, numbered `f1, f2, ...` in this order.
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
    /// Maximum degree.
    pub gamma: usize,
}

impl VertexCoverInput {
    pub fn new(names: Vec<String>, edges: Vec<(usize, usize)>, k: usize) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::Invalid("graph has no edges".into()));
        }
        if k == 0 {
            return Err(Error::Invalid("k must be at least 1".into()));
        }
        if let Some(bad) = names.iter().find(|n| !is_valid_name(n)) {
            return Err(Error::Invalid(format!("invalid vertex name `{bad}`")));
        }
        let mut seen = HashSet::new();
        let mut degree = vec![0usize; names.len()];
        for &(u, v) in &edges {
            if u >= names.len() || v >= names.len() {
                return Err(Error::IndexOutOfRange {
                    index: u.max(v),
                    size: names.len(),
                });
            }
            if u == v {
                return Err(Error::Invalid(format!("self-loop at `{}`", names[u])));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Invalid(format!("duplicate edge {} {}", names[u], names[v])));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let gamma = degree.into_iter().max().unwrap_or(0);
        Ok(VertexCoverInput { names, edges, k, gamma })
    }

    /// One edge `u v` per line; vertices are numbered by first appearance.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut edges = Vec::new();
        let index = |name: &str, names: &mut Vec<String>| match names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                names.push(name.to_string());
                names.len() - 1
            }
        };
        for (no, line) in content_lines(text, &['#']) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = toks[..] else {
                return Err(Error::parse(no, 1, "expected an edge `u v`"));
            };
            for name in [u, v] {
                if !is_valid_name(name) {
                    return Err(Error::parse(no, 1, format!("invalid vertex name `{name}`")));
                }
            }
            let a = index(u, &mut names);
            let b = index(v, &mut names);
            edges.push((a, b));
        }
        Self::new(names, edges, k)
    }

    /// Edge indices incident to `v`, ordered by the neighbor's index.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        let mut inc: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter_map(|(f, &(a, b))| match (a == v, b == v) {
                (true, _) => Some((b, f)),
                (_, true) => Some((a, f)),
                _ => None,
            })
            .collect();
        inc.sort_unstable();
        inc.into_iter().map(|(_, f)| f).collect()
    }

    /// Number of edges with at least one endpoint in `chosen`.
    pub fn covered_edges(&self, chosen: &[usize]) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| chosen.contains(a) || chosen.contains(b))
            .count()
    }
}

/// Species `{v}_{i}` and `{v}p_{i}` for each vertex and `1 <= i <= Γ`. Each
/// edge becomes an inner node `f{e}` under the root holding the copies of its
/// endpoints; copies beyond a vertex's degree hang from the root. All of those
/// edges weigh 1; the primed copies weigh 0 and form a chain that every
/// unprimed copy preys on. Budget `2kΓ`.
pub fn generate_vertexcover<W: Weight>(input: &VertexCoverInput) -> Result<Instance<W>> {
    let g = input.gamma;
    let one = W::one();
    let mut tree = TreeBuilder::new(Some("r"));
    let root = tree.root();
    let edge_nodes: Vec<usize> = (0..input.edges.len())
        .map(|f| tree.add_child(root, Some(&format!("f{}", f + 1)), one))
        .collect();
    let mut arcs = Vec::new();
    for (v, name) in input.names.iter().enumerate() {
        let inc = input.incident(v);
        for i in 1..=g {
            let parent = inc.get(i - 1).map_or(root, |&f| edge_nodes[f]);
            tree.add_child(parent, Some(&format!("{name}_{i}")), one);
            tree.add_child(root, Some(&format!("{name}p_{i}")), W::zero());
            arcs.push((format!("{name}_{i}"), format!("{name}p_{g}")));
            if i >= 2 {
                arcs.push((format!("{name}p_{i}"), format!("{name}p_{}", i - 1)));
            }
        }
    }
    let provenance = format!(
        "vertexcover V={} E={} gamma={g} k={}",
        input.names.len(),
        input.edges.len(),
        input.k
    );
    assemble(tree, &arcs, &[], 2 * input.k * g, false, provenance)
}

/// Most edges covered by at most `k` vertices.
pub fn solve_vc_exact(input: &VertexCoverInput) -> Result<usize> {
    let n = input.names.len();
    if n > VC_EXACT_MAX_VERTICES {
        return Err(cap_error("vertex cover vertices", n, VC_EXACT_MAX_VERTICES));
    }
    Ok((0..n)
        .combinations(input.k.min(n))
        .map(|c| input.covered_edges(&c))
        .max()
        .unwrap_or(0))
}
