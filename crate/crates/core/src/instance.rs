//! Full problem instances and their sectioned text format.
//!
//! ```text
//! # provenance: maxcov n=4 m=3 k=2
//! [tree]
//! ((A:1,B:2):1,(D:2,E:1):2,C:3)r;
//! [web]
//! A B
//! D A
//! [budget]
//! 3
//! [generalized]
//! ```
//!
//! Sections appear in this order; `[generalized]` is optional and empty.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::Weight;
use crate::species::Species;
use crate::tree::PhyloTree;
use crate::web::FoodWeb;

const PROVENANCE: &str = "# provenance:";

#[derive(Debug, Clone)]
pub struct Instance<W> {
    pub tree: PhyloTree<W>,
    pub web: FoodWeb,
    pub budget: usize,
    pub generalized: bool,
    /// Free-form description of where a generated instance came from.
    pub provenance: Option<String>,
}

impl<W: Weight> PartialEq for Instance<W> {
    fn eq(&self, other: &Self) -> bool {
        self.tree == other.tree
            && self.web == other.web
            && self.budget == other.budget
            && self.generalized == other.generalized
            && self.provenance == other.provenance
    }
}

impl<W: Weight> Eq for Instance<W> {}

impl<W: Weight> Instance<W> {
    pub fn new(tree: PhyloTree<W>, web: FoodWeb, budget: usize, generalized: bool) -> Result<Self> {
        if budget == 0 {
            return Err(Error::Invalid("budget must be at least 1".into()));
        }
        if tree.species() != web.species() {
            return Err(Error::Invalid("tree leaves and food web species differ".into()));
        }
        if !generalized && web.has_and_nodes() {
            return Err(Error::Invalid("AND-mode species require a generalized instance".into()));
        }
        Ok(Instance {
            tree,
            web,
            budget,
            generalized,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn species(&self) -> &Species {
        self.tree.species()
    }

    pub fn species_count(&self) -> usize {
        self.tree.species_count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(p) = &self.provenance {
            let _ = writeln!(out, "{PROVENANCE} {p}");
        }
        let _ = writeln!(out, "[tree]\n{}", self.tree.to_newick());
        let _ = write!(out, "[web]\n{}", self.web.to_text());
        let _ = writeln!(out, "[budget]\n{}", self.budget);
        if self.generalized {
            out.push_str("[generalized]\n");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        const ORDER: [&str; 4] = ["tree", "web", "budget", "generalized"];
        let mut provenance = None;
        // (name, header line, body lines as (line no, text))
        let mut sections: Vec<(&str, usize, Vec<(usize, &str)>)> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line_no = no + 1;
            let trimmed = line.trim();
            if let Some(p) = trimmed.strip_prefix(PROVENANCE) {
                if sections.is_empty() {
                    provenance = Some(p.trim().to_string());
                    continue;
                }
            }
            if let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let rank = ORDER
                    .iter()
                    .position(|&s| s == name)
                    .ok_or_else(|| Error::parse(line_no, 1, format!("unknown section `[{name}]`")))?;
                if let Some((prev, _, _)) = sections.last() {
                    let prev_rank = ORDER.iter().position(|s| s == prev).expect("known");
                    if rank <= prev_rank {
                        return Err(Error::parse(line_no, 1, format!("section `[{name}]` out of order")));
                    }
                }
                sections.push((ORDER[rank], line_no, Vec::new()));
                continue;
            }
            match sections.last_mut() {
                Some((_, _, body)) => body.push((line_no, line)),
                None if trimmed.is_empty() || trimmed.starts_with('#') => {}
                None => return Err(Error::parse(line_no, 1, "content before the first section")),
            }
        }
        let end = text.lines().count().max(1);
        let find = |name: &str| sections.iter().find(|(n, _, _)| *n == name);
        let missing = |name: &str| Error::parse(end, 1, format!("missing `[{name}]` section"));

        let (_, _, tree_body) = find("tree").ok_or_else(|| missing("tree"))?;
        let tree_lines: Vec<&(usize, &str)> = tree_body
            .iter()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#'))
            .collect();
        let first = tree_lines.first().ok_or_else(|| missing("tree"))?.0;
        let newick: String = tree_lines.iter().map(|(_, l)| *l).collect::<Vec<_>>().join("\n");
        let tree = PhyloTree::<W>::parse(&newick).map_err(|e| e.offset_lines(first - 1))?;

        let generalized = match find("generalized") {
            Some((_, _, body)) => {
                if let Some((l, _)) = body.iter().find(|(_, t)| {
                    let t = t.trim();
                    !t.is_empty() && !t.starts_with('#')
                }) {
                    return Err(Error::parse(*l, 1, "`[generalized]` section must be empty"));
                }
                true
            }
            None => false,
        };

        let (_, web_line, web_body) = find("web").ok_or_else(|| missing("web"))?;
        let web_text: String = web_body.iter().map(|(_, l)| format!("{l}\n")).collect();
        let web = FoodWeb::parse(&web_text, tree.species(), generalized)
            .map_err(|e| e.offset_lines(*web_line))?;

        let (_, _, budget_body) = find("budget").ok_or_else(|| missing("budget"))?;
        let mut budget = None;
        for (l, t) in budget_body {
            let t = t.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            if budget.is_some() {
                return Err(Error::parse(*l, 1, "budget section holds more than one value"));
            }
            let k: usize = t
                .parse()
                .map_err(|_| Error::parse(*l, 1, format!("budget `{t}` is not a positive integer")))?;
            if k == 0 {
                return Err(Error::parse(*l, 1, "budget must be at least 1"));
            }
            budget = Some(k);
        }
        let budget = budget.ok_or_else(|| missing("budget"))?;

        let mut inst = Instance::new(tree, web, budget, generalized)?;
        inst.provenance = provenance;
        Ok(inst)
    }
}
