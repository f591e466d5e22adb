//! JSON solver reports. Vertex ids are 1-based, as in instance files.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{ReconfSequence, Verdict};
use crate::graph::{Vertex, VertexSet};
use crate::reduction::{Certificate, ReductionLog, Rule, Solution};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("report is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("inconsistent report: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl From<Verdict> for Answer {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Yes => Answer::Yes,
            Verdict::No => Answer::No,
            Verdict::Exhausted => Answer::Unknown,
        }
    }
}

pub const BUDGET_REASON: &str = "state budget exceeded";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSummary {
    pub n: usize,
    pub m: usize,
    pub deleted: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum CertificateRecord {
    Sunflower {
        core: Vec<Vertex>,
        petal_centers: Vec<Vertex>,
        separator: Vec<Vertex>,
    },
    CoreTwin {
        survivor: Vertex,
        shared_core_neighborhood: Vec<Vertex>,
    },
    Twin {
        survivor: Vertex,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleRecord {
    pub rule: Rule,
    pub vertex: Vertex,
    pub certificate: CertificateRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stats {
    pub states_explored: usize,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub answer: Answer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<Vec<Vertex>>>,
    pub kernel: KernelSummary,
    pub rules: Vec<RuleRecord>,
    pub stats: Stats,
}

fn up(vs: &[Vertex]) -> Vec<Vertex> {
    vs.iter().map(|v| v + 1).collect()
}

fn record(cert: &Certificate) -> CertificateRecord {
    match cert {
        Certificate::Twin { survivor } => CertificateRecord::Twin {
            survivor: survivor + 1,
        },
        Certificate::Sunflower {
            core,
            petal_centers,
            separator,
        } => CertificateRecord::Sunflower {
            core: up(core),
            petal_centers: up(petal_centers),
            separator: up(separator),
        },
        Certificate::CoreTwin {
            survivor,
            shared_core_neighborhood,
        } => CertificateRecord::CoreTwin {
            survivor: survivor + 1,
            shared_core_neighborhood: up(shared_core_neighborhood),
        },
    }
}

/// Log entries with 1-based ids.
pub fn rule_records(log: &ReductionLog) -> Vec<RuleRecord> {
    log.steps
        .iter()
        .map(|s| RuleRecord {
            rule: s.rule,
            vertex: s.vertex + 1,
            certificate: record(&s.certificate),
        })
        .collect()
}

impl Report {
    pub fn from_solution(sol: &Solution, ms: u64) -> Report {
        let outcome = &sol.outcome;
        let answer = Answer::from(outcome.verdict);
        Report {
            answer,
            reason: (answer == Answer::Unknown).then(|| BUDGET_REASON.to_string()),
            sequence: outcome.sequence.as_ref().map(|seq| {
                seq.sets
                    .iter()
                    .map(|s| s.iter().map(|v| v + 1).collect())
                    .collect()
            }),
            kernel: KernelSummary {
                n: sol.kernel.graph.n(),
                m: sol.kernel.graph.m(),
                deleted: up(&sol.log.deleted()),
            },
            rules: rule_records(&sol.log),
            stats: Stats {
                states_explored: outcome.states_explored,
                ms,
            },
        }
    }

    /// The sequence with 0-based ids.
    pub fn reconf_sequence(&self) -> Option<ReconfSequence> {
        self.sequence.as_ref().map(|sets| {
            ReconfSequence::new(
                sets.iter()
                    .map(|s| s.iter().map(|v| v - 1).collect::<VertexSet>())
                    .collect(),
            )
        })
    }

    fn validate(&self) -> Result<(), ReportError> {
        let bad = |msg: &str| Err(ReportError::Invalid(msg.to_string()));
        match (self.answer, &self.sequence) {
            (Answer::Yes, None) => return bad("answer is yes but there is no sequence"),
            (Answer::Yes, Some(seq)) if seq.is_empty() => return bad("sequence is empty"),
            (Answer::No | Answer::Unknown, Some(_)) => {
                return bad("only a yes answer carries a sequence")
            }
            _ => {}
        }
        if self.answer == Answer::Unknown && self.reason.is_none() {
            return bad("unknown answer without a reason");
        }
        let mut ids = self
            .kernel
            .deleted
            .iter()
            .chain(self.sequence.iter().flatten().flatten());
        if ids.any(|&v| v == 0) {
            return bad("vertex ids start at 1");
        }
        if let Some(seq) = &self.sequence {
            if seq.iter().any(|s| s.windows(2).any(|w| w[0] >= w[1])) {
                return bad("sets must list distinct vertices in ascending order");
            }
        }
        let logged: Vec<Vertex> = self.rules.iter().map(|r| r.vertex).collect();
        if logged != self.kernel.deleted {
            return bad("deleted vertices do not match the rule log");
        }
        Ok(())
    }
}

pub fn serialize_report(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("plain data serializes")
}

pub fn parse_report(text: &str) -> Result<Report, ReportError> {
    let report: Report = serde_json::from_str(text)?;
    report.validate()?;
    Ok(report)
}
