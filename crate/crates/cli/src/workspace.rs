//! The line-oriented input format.
//!
//! ```text
//! group NAME            semigroup NAME        rms NAME          graph NAME
//! elements TOK...       elements TOK...       group GROUP       colours TOK...
//! table                 table                 I n               left n
//! <|G| rows>            <|S| rows>            L m               right m
//! end                   end                   matrix            matrix
//!                                             <m rows of n>     <n rows of m>
//!                                             end               end
//! ```
//!
//! `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use cshom::{
    EdgeColouredBipartiteGraph, FiniteGroup, FiniteSemigroup, ReesMatrixSemigroup, SandwichMatrix,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WorkspaceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate {kind} name `{name}`")]
    DuplicateName { kind: &'static str, name: String },
    #[error("unresolved reference to group `{0}`")]
    UnresolvedReference(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RmsDecl {
    pub name: String,
    pub group: String,
    pub value: Arc<ReesMatrixSemigroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Workspace {
    pub groups: Vec<(String, Arc<FiniteGroup>)>,
    pub semigroups: Vec<(String, FiniteSemigroup)>,
    pub rms: Vec<RmsDecl>,
    pub graphs: Vec<(String, EdgeColouredBipartiteGraph)>,
}

/// A declaration looked up by name.
#[derive(Debug, Clone)]
pub enum Item {
    Group(Arc<FiniteGroup>),
    Semigroup(FiniteSemigroup),
    Rms(Arc<ReesMatrixSemigroup>),
    Graph(EdgeColouredBipartiteGraph),
}

impl Item {
    pub fn table(&self) -> Option<FiniteSemigroup> {
        match self {
            Item::Group(g) => Some(g.to_semigroup()),
            Item::Semigroup(s) => Some(s.clone()),
            Item::Rms(r) => r.try_to_semigroup().ok(),
            Item::Graph(_) => None,
        }
    }
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| {
                (
                    k + 1,
                    l.split('#')
                        .next()
                        .unwrap_or("")
                        .split_whitespace()
                        .collect::<Vec<_>>(),
                )
            })
            .filter(|(_, t)| !t.is_empty())
            .collect();
        Lines { lines, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let l = self.lines.get(self.pos).cloned();
        self.pos += 1;
        l
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(0, |l| l.0)
    }

    fn expect(
        &mut self,
        keyword: &str,
        arity: Option<usize>,
    ) -> Result<(usize, Vec<&'a str>), WorkspaceError> {
        let (line, toks) = self.next().ok_or_else(|| {
            err(
                self.last_line(),
                format!("expected `{keyword}`, found end of input"),
            )
        })?;
        if toks[0] != keyword {
            return Err(err(
                line,
                format!("expected `{keyword}`, found `{}`", toks[0]),
            ));
        }
        if let Some(n) = arity {
            if toks.len() != n + 1 {
                return Err(err(line, format!("`{keyword}` takes {n} argument(s)")));
            }
        }
        Ok((line, toks[1..].to_vec()))
    }

    fn count(&mut self, keyword: &str) -> Result<usize, WorkspaceError> {
        let (line, toks) = self.expect(keyword, Some(1))?;
        toks[0].parse().map_err(|_| {
            err(
                line,
                format!("`{keyword}` needs a count, found `{}`", toks[0]),
            )
        })
    }

    fn rows(
        &mut self,
        n: usize,
        width: usize,
    ) -> Result<Vec<(usize, Vec<&'a str>)>, WorkspaceError> {
        (0..n)
            .map(|_| {
                let (line, toks) = self
                    .next()
                    .ok_or_else(|| err(self.last_line(), "missing table row".into()))?;
                if toks.len() != width {
                    return Err(err(
                        line,
                        format!("expected {width} entries, found {}", toks.len()),
                    ));
                }
                Ok((line, toks))
            })
            .collect()
    }
}

fn err(line: usize, message: String) -> WorkspaceError {
    WorkspaceError::Parse { line, message }
}

fn lookup(index: &HashMap<&str, usize>, tok: &str, line: usize) -> Result<usize, WorkspaceError> {
    index
        .get(tok)
        .copied()
        .ok_or_else(|| err(line, format!("unknown element `{tok}`")))
}

fn read_table(lines: &mut Lines<'_>) -> Result<(Vec<String>, Vec<Vec<usize>>), WorkspaceError> {
    let (line, labels) = lines.expect("elements", None)?;
    if labels.is_empty() {
        return Err(err(line, "no elements".into()));
    }
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
    if index.len() != labels.len() {
        return Err(err(line, "duplicate element label".into()));
    }
    lines.expect("table", Some(0))?;
    let rows = lines
        .rows(labels.len(), labels.len())?
        .into_iter()
        .map(|(line, toks)| toks.iter().map(|t| lookup(&index, t, line)).collect())
        .collect::<Result<_, _>>()?;
    lines.expect("end", Some(0))?;
    Ok((labels.iter().map(|s| s.to_string()).collect(), rows))
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|k| k.to_string()).collect()
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Self, WorkspaceError> {
        let mut ws = Workspace::default();
        ws.extend(text)?;
        Ok(ws)
    }

    /// Adds the declarations of another file.
    pub fn extend(&mut self, text: &str) -> Result<(), WorkspaceError> {
        let mut lines = Lines::new(text);
        while let Some((line, toks)) = lines.next() {
            if toks.len() != 2 {
                return Err(err(
                    line,
                    format!("expected `<kind> NAME`, found `{}`", toks.join(" ")),
                ));
            }
            let name = toks[1].to_string();
            match toks[0] {
                "group" => {
                    let (labels, rows) = read_table(&mut lines)?;
                    let g = FiniteGroup::from_table(labels, &rows)
                        .map_err(|e| err(line, e.to_string()))?;
                    self.check_unique("group", &name, self.groups.iter().map(|g| &g.0))?;
                    self.groups.push((name, Arc::new(g)));
                }
                "semigroup" => {
                    let (labels, rows) = read_table(&mut lines)?;
                    let s = FiniteSemigroup::from_table(labels, &rows)
                        .map_err(|e| err(line, e.to_string()))?;
                    self.check_unique("semigroup", &name, self.semigroups.iter().map(|s| &s.0))?;
                    self.semigroups.push((name, s));
                }
                "rms" => {
                    let (_, g) = lines.expect("group", Some(1))?;
                    let group = self
                        .group(g[0])
                        .ok_or_else(|| WorkspaceError::UnresolvedReference(g[0].to_string()))?;
                    let n = lines.count("I")?;
                    let m = lines.count("L")?;
                    lines.expect("matrix", Some(0))?;
                    let mut entries = Vec::with_capacity(n * m);
                    for (line, toks) in lines.rows(m, n)? {
                        for t in toks {
                            entries.push(
                                group
                                    .index_of(t)
                                    .map_err(|_| err(line, format!("unknown element `{t}`")))?,
                            );
                        }
                    }
                    lines.expect("end", Some(0))?;
                    let matrix = SandwichMatrix::new(group, m, n, entries)
                        .map_err(|e| err(line, e.to_string()))?;
                    self.check_unique("rms", &name, self.rms.iter().map(|r| &r.name))?;
                    self.rms.push(RmsDecl {
                        name,
                        group: g[0].to_string(),
                        value: Arc::new(ReesMatrixSemigroup::new(matrix)),
                    });
                }
                "graph" => {
                    let (cline, colours) = lines.expect("colours", None)?;
                    let index: HashMap<&str, usize> =
                        colours.iter().enumerate().map(|(k, &c)| (c, k)).collect();
                    if index.len() != colours.len() {
                        return Err(err(cline, "duplicate colour".into()));
                    }
                    let n = lines.count("left")?;
                    let m = lines.count("right")?;
                    lines.expect("matrix", Some(0))?;
                    let mut f = Vec::with_capacity(n * m);
                    for (line, toks) in lines.rows(n, m)? {
                        for t in toks {
                            f.push(
                                index
                                    .get(t)
                                    .copied()
                                    .ok_or_else(|| err(line, format!("unknown colour `{t}`")))?,
                            );
                        }
                    }
                    lines.expect("end", Some(0))?;
                    let graph = EdgeColouredBipartiteGraph::new(
                        numbered(n),
                        numbered(m),
                        colours.iter().map(|s| s.to_string()).collect(),
                        f,
                    )
                    .map_err(|e| err(line, e.to_string()))?;
                    self.check_unique("graph", &name, self.graphs.iter().map(|g| &g.0))?;
                    self.graphs.push((name, graph));
                }
                other => return Err(err(line, format!("unknown declaration `{other}`"))),
            }
        }
        Ok(())
    }

    fn check_unique<'a>(
        &self,
        kind: &'static str,
        name: &str,
        mut existing: impl Iterator<Item = &'a String>,
    ) -> Result<(), WorkspaceError> {
        if existing.any(|n| n == name) {
            return Err(WorkspaceError::DuplicateName {
                kind,
                name: name.to_string(),
            });
        }
        Ok(())
    }

    pub fn group(&self, name: &str) -> Option<Arc<FiniteGroup>> {
        self.groups
            .iter()
            .find(|g| g.0 == name)
            .map(|g| g.1.clone())
    }

    /// Looks a name up among rms, semigroup, group and graph declarations,
    /// in that order.
    pub fn item(&self, name: &str) -> Option<Item> {
        if let Some(r) = self.rms.iter().find(|r| r.name == name) {
            return Some(Item::Rms(r.value.clone()));
        }
        if let Some(s) = self.semigroups.iter().find(|s| s.0 == name) {
            return Some(Item::Semigroup(s.1.clone()));
        }
        if let Some(g) = self.group(name) {
            return Some(Item::Group(g));
        }
        self.graphs
            .iter()
            .find(|g| g.0 == name)
            .map(|g| Item::Graph(g.1.clone()))
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (name, g) in &self.groups {
            let rows = g.elements().map(|a| {
                g.elements()
                    .map(|b| g.label(g.mul(a, b)).to_string())
                    .collect()
            });
            write_table(&mut out, "group", name, g.labels(), rows);
        }
        for (name, s) in &self.semigroups {
            let rows = (0..s.len()).map(|a| {
                (0..s.len())
                    .map(|b| s.label(s.mul(a, b)).to_string())
                    .collect()
            });
            write_table(&mut out, "semigroup", name, s.labels(), rows);
        }
        for decl in &self.rms {
            out.push_str(&rms_block(&decl.name, &decl.group, &decl.value));
            out.push('\n');
        }
        for (name, g) in &self.graphs {
            out.push_str(&graph_block(name, g));
            out.push('\n');
        }
        out
    }
}

fn write_table(
    out: &mut String,
    kind: &str,
    name: &str,
    labels: &[String],
    rows: impl Iterator<Item = Vec<String>>,
) {
    let _ = writeln!(out, "{kind} {name}\nelements {}\ntable", labels.join(" "));
    for r in rows {
        let _ = writeln!(out, "{}", r.join(" "));
    }
    let _ = writeln!(out, "end\n");
}

pub fn rms_block(name: &str, group: &str, s: &ReesMatrixSemigroup) -> String {
    let m = s.matrix();
    let mut out = format!(
        "rms {name}\ngroup {group}\nI {}\nL {}\nmatrix\n",
        m.cols(),
        m.rows()
    );
    for r in 0..m.rows() {
        let row: Vec<&str> = (0..m.cols())
            .map(|c| s.group().label(m.get(r, c)))
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out.push_str("end\n");
    out
}

pub fn graph_block(name: &str, g: &EdgeColouredBipartiteGraph) -> String {
    let mut out = format!(
        "graph {name}\ncolours {}\nleft {}\nright {}\nmatrix\n",
        g.colours().join(" "),
        g.left().len(),
        g.right().len()
    );
    for l in 0..g.left().len() {
        let row: Vec<&str> = (0..g.right().len())
            .map(|r| g.colour_label(g.colour(l, r)))
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out.push_str("end\n");
    out
}
