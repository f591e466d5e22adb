//! Audit trail of kernelization steps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::SearchOutcome;
use crate::graph::{Graph, GraphError, Vertex};
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Twin,
    SunflowerDegenerate,
    QuasiWide,
    CoreTwin,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Twin => "twin",
            Rule::SunflowerDegenerate => "sunflower-degenerate",
            Rule::QuasiWide => "quasi-wide",
            Rule::CoreTwin => "core-twin",
        })
    }
}

/// Why a vertex could be deleted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Closed twin of the deleted vertex that stays in the graph.
    Twin { survivor: Vertex },
    /// Closed neighborhoods of `petal_centers` form a sunflower with `core`.
    /// `separator` is the deletion set of a quasi-wide certificate and empty
    /// otherwise.
    Sunflower {
        core: Vec<Vertex>,
        petal_centers: Vec<Vertex>,
        separator: Vec<Vertex>,
    },
    /// Both vertices see the same part of the domination core.
    CoreTwin {
        survivor: Vertex,
        shared_core_neighborhood: Vec<Vertex>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: Rule,
    pub vertex: Vertex,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductionLog {
    pub steps: Vec<ReductionStep>,
}

impl ReductionLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, rule: Rule, vertex: Vertex, certificate: Certificate) {
        self.steps.push(ReductionStep {
            rule,
            vertex,
            certificate,
        });
    }

    pub fn extend(&mut self, other: ReductionLog) {
        self.steps.extend(other.steps);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn deleted(&self) -> Vec<Vertex> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    /// Applies every deletion, in order, to `original`.
    pub fn replay(&self, original: &Graph) -> Result<Graph, GraphError> {
        original.delete_vertices(self.steps.iter().map(|s| &s.vertex))
    }
}

/// Outcome of a reduce-then-search pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub outcome: SearchOutcome,
    pub log: ReductionLog,
    /// The reduced instance the search ran on.
    pub kernel: Instance,
}
