//! Rooted phylogenetic trees with integer branch lengths, and a Newick subset.
//!
//! Accepted Newick: every non-root edge carries a mandatory integer length,
//! labels are `[A-Za-z0-9_]+`, inner labels and the root label are optional,
//! no comments, no quoting. Example: `((A:1,B:2):1,(D:2,E:1):2,C:3)r;`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::Weight;
use crate::species::{is_valid_name, Species};

#[derive(Debug, Clone)]
pub struct TreeNode<W> {
    pub label: Option<String>,
    pub parent: Option<usize>,
    /// Length of the edge to the parent; zero for the root.
    pub length: W,
    pub children: Vec<usize>,
}

/// A validated rooted tree whose leaves are the species.
///
/// Nodes are stored in preorder, so the root is node 0 and two trees built
/// from the same Newick text have identical node numbering.
#[derive(Debug, Clone)]
pub struct PhyloTree<W> {
    nodes: Vec<TreeNode<W>>,
    species: Species,
    leaf_of: Vec<usize>,
}

impl<W: Weight> PhyloTree<W> {
    pub fn root(&self) -> usize {
        0
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: usize) -> &TreeNode<W> {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode<W>] {
        &self.nodes
    }

    pub fn parent(&self, id: usize) -> Option<usize> {
        self.nodes[id].parent
    }

    pub fn length(&self, id: usize) -> W {
        self.nodes[id].length
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        self.nodes[id].children.is_empty()
    }

    pub fn species(&self) -> &Species {
        &self.species
    }

    pub fn species_count(&self) -> usize {
        self.species.len()
    }

    /// Tree node holding species `index`.
    pub fn leaf_node(&self, index: usize) -> usize {
        self.leaf_of[index]
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn total_length(&self) -> W {
        self.nodes.iter().skip(1).map(|n| n.length).sum()
    }

    /// Number of inner nodes other than the root.
    pub fn inner_count(&self) -> usize {
        self.nodes
            .iter()
            .skip(1)
            .filter(|n| !n.children.is_empty())
            .count()
    }

    pub fn parse(text: &str) -> Result<Self> {
        NewickParser::new(text).parse()
    }

    /// Writes the tree as Newick. Anonymous inner nodes are named `_n<id>`.
    pub fn to_newick(&self) -> String {
        let mut out = String::new();
        self.write_node(0, &mut out);
        out.push(';');
        out
    }

    fn write_node(&self, id: usize, out: &mut String) {
        let node = &self.nodes[id];
        if !node.children.is_empty() {
            out.push('(');
            for (k, &c) in node.children.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                self.write_node(c, out);
            }
            out.push(')');
        }
        match &node.label {
            Some(l) => out.push_str(l),
            None if id != 0 => {
                let _ = write!(out, "_n{id}");
            }
            None => {}
        }
        if id != 0 {
            let _ = write!(out, ":{}", node.length);
        }
    }
}

impl<W: Weight> PartialEq for PhyloTree<W> {
    /// Structural equality; labels of inner nodes are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.species == other.species
            && self.nodes.len() == other.nodes.len()
            && self.nodes.iter().zip(&other.nodes).all(|(a, b)| {
                a.parent == b.parent
                    && a.length == b.length
                    && a.children == b.children
                    && (!a.children.is_empty() || a.label == b.label)
            })
    }
}

impl<W: Weight> Eq for PhyloTree<W> {}

/// Incremental tree construction; `build` validates and renumbers into preorder.
#[derive(Debug, Clone)]
pub struct TreeBuilder<W> {
    nodes: Vec<TreeNode<W>>,
}

impl<W: Weight> TreeBuilder<W> {
    pub fn new(root_label: Option<&str>) -> Self {
        TreeBuilder {
            nodes: vec![TreeNode {
                label: root_label.map(str::to_string),
                parent: None,
                length: W::zero(),
                children: Vec::new(),
            }],
        }
    }

    pub fn root(&self) -> usize {
        0
    }

    /// Adds a child under `parent` and returns its id.
    pub fn add_child(&mut self, parent: usize, label: Option<&str>, length: W) -> usize {
        let id = self.nodes.len();
        self.nodes.push(TreeNode {
            label: label.map(str::to_string),
            parent: Some(parent),
            length,
            children: Vec::new(),
        });
        self.nodes[parent].children.push(id);
        id
    }

    pub fn build(self) -> Result<PhyloTree<W>> {
        let old = self.nodes;
        if old[0].children.is_empty() {
            return Err(Error::Invalid("root must have at least 2 children".into()));
        }
        // preorder renumbering
        let mut order = Vec::with_capacity(old.len());
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            order.push(id);
            stack.extend(old[id].children.iter().rev());
        }
        let mut new_id = vec![usize::MAX; old.len()];
        for (n, &o) in order.iter().enumerate() {
            new_id[o] = n;
        }
        let mut nodes = Vec::with_capacity(old.len());
        for &o in &order {
            let node = &old[o];
            if !node.children.is_empty() && node.children.len() < 2 {
                return Err(Error::Invalid(format!(
                    "inner node `{}` has a single child",
                    node.label.as_deref().unwrap_or("<anonymous>")
                )));
            }
            if let Some(l) = &node.label {
                if !is_valid_name(l) {
                    return Err(Error::Invalid(format!("invalid label `{l}`")));
                }
            }
            nodes.push(TreeNode {
                label: node.label.clone(),
                parent: node.parent.map(|p| new_id[p]),
                length: node.length,
                children: node.children.iter().map(|&c| new_id[c]).collect(),
            });
        }
        let mut leaves = Vec::new();
        for (id, node) in nodes.iter().enumerate() {
            if node.children.is_empty() {
                match &node.label {
                    Some(l) => leaves.push((l.clone(), id)),
                    None => return Err(Error::Invalid("leaf without a name".into())),
                }
            }
        }
        let species = Species::new(leaves.iter().map(|(l, _)| l.clone()))
            .map_err(|e| match e {
                Error::Invalid(m) => Error::Invalid(m.replace("species name", "leaf name")),
                other => other,
            })?;
        let mut leaf_of = vec![0; leaves.len()];
        for (l, id) in leaves {
            leaf_of[species.index_of(&l).expect("registered")] = id;
        }
        Ok(PhyloTree {
            nodes,
            species,
            leaf_of,
        })
    }
}

struct NewickParser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> NewickParser<'a> {
    fn new(text: &'a str) -> Self {
        NewickParser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn position(&self, at: usize) -> (usize, usize) {
        let before = &self.text[..at.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        (line, column)
    }

    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.position(at);
        Error::parse(line, column, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == c => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.error(
                self.pos,
                format!("expected `{}`, found `{}`", c as char, b as char),
            )),
            None => Err(self.error(self.pos, format!("expected `{}`, found end of input", c as char))),
        }
    }

    fn label(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.text[start..self.pos].to_string())
    }

    fn length<W: Weight>(&mut self) -> Result<W> {
        self.expect(b':')?;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && matches!(self.bytes[self.pos], b'0'..=b'9' | b'.' | b'-' | b'+' | b'e' | b'E')
        {
            self.pos += 1;
        }
        let token = &self.text[start..self.pos];
        if token.is_empty() {
            return Err(self.error(start, "missing branch length"));
        }
        if token.starts_with('-') {
            return Err(self.error(start, format!("negative branch length `{token}`")));
        }
        if !token.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.error(start, format!("branch length `{token}` is not an integer")));
        }
        token
            .parse::<W>()
            .map_err(|_| self.error(start, format!("branch length `{token}` out of range")))
    }

    fn parse<W: Weight>(mut self) -> Result<PhyloTree<W>> {
        let mut builder = TreeBuilder::<W>::new(None);
        if self.peek() != Some(b'(') {
            return Err(self.error(self.pos, "tree must start with `(`"));
        }
        let open = self.pos;
        self.subtree(&mut builder, 0, open)?;
        builder.nodes[0].label = self.label();
        if self.peek() == Some(b':') {
            return Err(self.error(self.pos, "root must not carry a branch length"));
        }
        self.expect(b';')?;
        if let Some(b) = self.peek() {
            return Err(self.error(self.pos, format!("unexpected `{}` after `;`", b as char)));
        }
        builder.build().map_err(|e| match e {
            Error::Invalid(m) => self.error(0, m),
            other => other,
        })
    }

    /// Parses `( child, child, ... )` into the children of `id`.
    fn subtree<W: Weight>(&mut self, b: &mut TreeBuilder<W>, id: usize, open: usize) -> Result<()> {
        self.expect(b'(')?;
        loop {
            let start = {
                self.skip_ws();
                self.pos
            };
            let child = b.add_child(id, None, W::zero());
            if self.peek() == Some(b'(') {
                self.subtree(b, child, start)?;
                b.nodes[child].label = self.label();
            } else {
                match self.label() {
                    Some(l) => b.nodes[child].label = Some(l),
                    None => {
                        let msg = match self.peek() {
                            Some(c) => format!("expected a species name, found `{}`", c as char),
                            None => "expected a species name, found end of input".into(),
                        };
                        return Err(self.error(self.pos, msg));
                    }
                }
            }
            b.nodes[child].length = self.length()?;
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                Some(c) => {
                    return Err(self.error(self.pos, format!("expected `,` or `)`, found `{}`", c as char)))
                }
                None => return Err(self.error(self.pos, "unbalanced parentheses")),
            }
        }
        if b.nodes[id].children.len() < 2 {
            let what = if id == 0 { "root" } else { "inner node" };
            return Err(self.error(open, format!("{what} has fewer than 2 children")));
        }
        Ok(())
    }
}
