use super::{assemble, cap_error, content_lines};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::scalar::Weight;
use crate::tree::TreeBuilder;

/// Largest variable count accepted by [`solve_sat_exact`].
pub const SAT_EXACT_MAX_VARS: usize = 12;

/// A 3-CNF formula. Literals are DIMACS-style: `j` is `x_j`, `-j` its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInput {
    pub vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfInput {
    pub fn new(vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            for (a, &lit) in c.iter().enumerate() {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > vars {
                    return Err(Error::Invalid(format!("clause {}: literal {lit} out of range", i + 1)));
                }
                if c[..a].iter().any(|&o| o.unsigned_abs() as usize == var) {
                    return Err(Error::Invalid(format!("clause {} repeats variable {var}", i + 1)));
                }
            }
        }
        Ok(CnfInput { vars, clauses })
    }

    /// DIMACS CNF: `c` comments, a `p cnf <vars> <clauses>` header, then
    /// zero-terminated clauses of exactly three literals.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        let mut last_line = 1;
        for (no, line) in content_lines(text, &['c', '%']) {
            last_line = no;
            if let Some(rest) = line.strip_prefix('p') {
                if header.is_some() {
                    return Err(Error::parse(no, 1, "duplicate problem line"));
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let parsed = match toks[..] {
                    ["cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or_else(|| Error::parse(no, 1, "expected `p cnf <vars> <clauses>`"))?);
                continue;
            }
            let Some((vars, _)) = header else {
                return Err(Error::parse(no, 1, "clause before the `p cnf` line"));
            };
            for tok in line.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| Error::parse(no, 1, format!("bad literal `{tok}`")))?;
                if lit == 0 {
                    let clause: [i32; 3] = current.as_slice().try_into().map_err(|_| {
                        Error::parse(no, 1, format!("clause has {} literals, expected 3", current.len()))
                    })?;
                    if let Some(v) = clause
                        .iter()
                        .enumerate()
                        .find_map(|(a, l)| clause[..a].iter().any(|o| o.abs() == l.abs()).then_some(l.abs()))
                    {
                        return Err(Error::parse(no, 1, format!("clause repeats variable {v}")));
                    }
                    clauses.push(clause);
                    current.clear();
                } else if lit.unsigned_abs() as usize > vars {
                    return Err(Error::parse(no, 1, format!("literal {lit} exceeds {vars} variables")));
                } else {
                    current.push(lit);
                }
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::parse(last_line, 1, "missing `p cnf` line"))?;
        if !current.is_empty() {
            return Err(Error::parse(last_line, 1, "last clause is not terminated by 0"));
        }
        if clauses.len() != count {
            return Err(Error::parse(
                last_line,
                1,
                format!("header declares {count} clauses, found {}", clauses.len()),
            ));
        }
        Self::new(vars, clauses)
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }
}

/// Star tree with weight 1 on `t` only. Clause species `c{i}` prey on their
/// literals `x{j}` / `nx{j}`, choice species `cx{j}` prey on both literals of
/// `x_j`, and `t` (AND) preys on every clause and choice species. Budget
/// `2n + m + 1`.
pub fn generate_sat<W: Weight>(input: &CnfInput) -> Result<Instance<W>> {
    let (n, m) = (input.vars, input.clauses.len());
    let mut tree = TreeBuilder::new(Some("r"));
    let root = tree.root();
    tree.add_child(root, Some("t"), W::one());
    let mut arcs = Vec::new();
    for j in 1..=n {
        for name in [format!("x{j}"), format!("nx{j}"), format!("cx{j}")] {
            tree.add_child(root, Some(&name), W::zero());
        }
        arcs.push((format!("cx{j}"), format!("x{j}")));
        arcs.push((format!("cx{j}"), format!("nx{j}")));
        arcs.push(("t".to_string(), format!("cx{j}")));
    }
    for (i, clause) in input.clauses.iter().enumerate() {
        let c = format!("c{}", i + 1);
        tree.add_child(root, Some(&c), W::zero());
        for &lit in clause {
            let var = lit.unsigned_abs();
            let target = if lit > 0 { format!("x{var}") } else { format!("nx{var}") };
            arcs.push((c.clone(), target));
        }
        arcs.push(("t".to_string(), c));
    }
    let provenance = format!("sat n={n} m={m}");
    assemble(tree, &arcs, &["t"], 2 * n + m + 1, true, provenance)
}

/// Truth-table satisfiability check.
pub fn solve_sat_exact(input: &CnfInput) -> Result<bool> {
    let n = input.vars;
    if n > SAT_EXACT_MAX_VARS {
        return Err(cap_error("sat variables", n, SAT_EXACT_MAX_VARS));
    }
    Ok((0u32..1 << n).any(|bits| {
        let a: Vec<bool> = (0..n).map(|j| bits >> j & 1 == 1).collect();
        input.satisfied_by(&a)
    }))
}
