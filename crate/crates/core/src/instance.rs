//! Problem instances and the line-oriented instance format.
//!
//! ```text
//! c comment
//! p isr 4 3 2
//! e 1 2
//! e 2 3
//! e 3 4
//! s 1 3
//! t 2 4
//! ```
//!
//! Vertices are 1-indexed in files and 0-indexed in memory.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::is_feasible;
use crate::graph::{Graph, GraphError, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Isr,
    Dsr,
}

impl Problem {
    /// Allowed solution sizes `(r_l, r_u)` for parameter `k`.
    pub fn size_bounds(self, k: usize) -> (usize, usize) {
        match self {
            Problem::Isr => (k.saturating_sub(1), k),
            Problem::Dsr => (k, k + 1),
        }
    }

    fn property(self) -> &'static str {
        match self {
            Problem::Isr => "independent",
            Problem::Dsr => "dominating",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Isr => "isr",
            Problem::Dsr => "dsr",
        })
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "isr" => Ok(Problem::Isr),
            "dsr" => Ok(Problem::Dsr),
            other => Err(format!("unknown problem `{other}` (expected isr or dsr)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Source,
    Target,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endpoint::Source => "source",
            Endpoint::Target => "target",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("k must be positive")]
    ZeroK,
    #[error("{0} set has {1} vertices but k = {2}")]
    WrongSize(Endpoint, usize, usize),
    #[error("{0} set names unknown vertex {1}")]
    UnknownVertex(Endpoint, Vertex),
    #[error("{0} set is not {1}")]
    Infeasible(Endpoint, &'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub problem: Problem,
    pub graph: Graph,
    pub k: usize,
    pub source: VertexSet,
    pub target: VertexSet,
}

impl Instance {
    /// Builds an instance after checking every instance invariant.
    pub fn new(
        problem: Problem,
        graph: Graph,
        k: usize,
        source: VertexSet,
        target: VertexSet,
    ) -> Result<Self, InstanceError> {
        let inst = Instance {
            problem,
            graph,
            k,
            source,
            target,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.k == 0 {
            return Err(InstanceError::ZeroK);
        }
        for (which, set) in [
            (Endpoint::Source, &self.source),
            (Endpoint::Target, &self.target),
        ] {
            if set.len() != self.k {
                return Err(InstanceError::WrongSize(which, set.len(), self.k));
            }
            if let Some(&v) = set.iter().find(|&&v| !self.graph.contains(v)) {
                return Err(InstanceError::UnknownVertex(which, v));
            }
            if !is_feasible(&self.graph, self.problem, set) {
                return Err(InstanceError::Infeasible(which, self.problem.property()));
            }
        }
        Ok(())
    }

    /// `S_s ∪ S_t`.
    pub fn anchors(&self) -> VertexSet {
        self.source.union(&self.target).copied().collect()
    }

    /// Same endpoints and parameter on a smaller graph.
    pub(crate) fn with_graph(&self, graph: Graph) -> Instance {
        Instance {
            problem: self.problem,
            graph,
            k: self.k,
            source: self.source.clone(),
            target: self.target.clone(),
        }
    }

    /// Same instance with source and target exchanged.
    pub fn reversed(&self) -> Instance {
        Instance {
            problem: self.problem,
            graph: self.graph.clone(),
            k: self.k,
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] InstanceError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

struct Header {
    problem: Problem,
    n: usize,
    m: usize,
    k: usize,
}

fn parse_num<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{tok}`")))
}

fn parse_vertex(tok: &str, line: usize, n: usize) -> Result<Vertex, ParseError> {
    let v: usize = parse_num(tok, line, "a vertex")?;
    if v == 0 || v > n {
        return Err(syntax(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok((v - 1) as Vertex)
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<Header> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut source: Option<VertexSet> = None;
    let mut target: Option<VertexSet> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        if tag.starts_with('#') || tag == "c" {
            continue;
        }
        let rest: Vec<&str> = toks.collect();
        if tag == "p" {
            if header.is_some() {
                return Err(syntax(line, "duplicate problem line"));
            }
            let [problem, n, m, k] = rest[..] else {
                return Err(syntax(line, "expected `p <isr|dsr> <n> <m> <k>`"));
            };
            let problem = problem.parse().map_err(|e: String| syntax(line, e))?;
            header = Some(Header {
                problem,
                n: parse_num(n, line, "vertex count")?,
                m: parse_num(m, line, "edge count")?,
                k: parse_num(k, line, "k")?,
            });
            continue;
        }
        let Some(h) = header.as_ref() else {
            return Err(syntax(line, "problem line `p ...` must come first"));
        };
        match tag {
            "e" => {
                let [u, v] = rest[..] else {
                    return Err(syntax(line, "expected `e <u> <v>`"));
                };
                let (u, v) = (parse_vertex(u, line, h.n)?, parse_vertex(v, line, h.n)?);
                if u >= v {
                    return Err(syntax(line, "edge endpoints must satisfy u < v"));
                }
                if edges.len() == h.m {
                    return Err(syntax(line, format!("more than {} edges", h.m)));
                }
                edges.push((u, v));
            }
            "s" | "t" => {
                let slot = if tag == "s" { &mut source } else { &mut target };
                if slot.is_some() {
                    return Err(syntax(line, format!("duplicate `{tag}` line")));
                }
                let mut set = VertexSet::new();
                for tok in rest {
                    let v = parse_vertex(tok, line, h.n)?;
                    if !set.insert(v) {
                        return Err(syntax(line, format!("vertex {} listed twice", v + 1)));
                    }
                }
                *slot = Some(set);
            }
            other => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
    }

    let Some(h) = header else {
        return Err(syntax(last_line.max(1), "missing problem line"));
    };
    if edges.len() != h.m {
        return Err(syntax(
            last_line,
            format!("expected {} edges, found {}", h.m, edges.len()),
        ));
    }
    let graph = Graph::from_edges(h.n, edges).map_err(|e| match e {
        GraphError::DuplicateEdge(u, v) => {
            syntax(last_line, format!("duplicate edge {} {}", u + 1, v + 1))
        }
        other => syntax(last_line, other.to_string()),
    })?;
    let source = source.ok_or_else(|| syntax(last_line, "missing source line `s ...`"))?;
    let target = target.ok_or_else(|| syntax(last_line, "missing target line `t ...`"))?;
    Ok(Instance::new(h.problem, graph, h.k, source, target)?)
}

/// Serializes an instance. Graphs with deleted ids are relabeled to `1..=n`
/// in ascending id order, and the relabeling is recorded in comment lines.
pub fn write_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let ids: Vec<Vertex> = g.vertices().collect();
    let mut label = vec![0usize; g.id_bound()];
    for (i, &v) in ids.iter().enumerate() {
        label[v as usize] = i + 1;
    }
    let mut out = String::new();
    if !g.is_dense() {
        for (i, &v) in ids.iter().enumerate() {
            writeln!(out, "c vertex {} was {}", i + 1, v + 1).unwrap();
        }
    }
    writeln!(out, "p {} {} {} {}", inst.problem, g.n(), g.m(), inst.k).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", label[u as usize], label[v as usize]).unwrap();
    }
    for (tag, set) in [("s", &inst.source), ("t", &inst.target)] {
        out.push_str(tag);
        for &v in set {
            write!(out, " {}", label[v as usize]).unwrap();
        }
        out.push('\n');
    }
    out
}
