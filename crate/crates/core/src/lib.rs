//! Token-jumping reconfiguration of independent sets and dominating sets.
//!
//! The crate pairs an exact breadth-first search over the reconfiguration
//! graph with kernelization pipelines that delete provably irrelevant
//! vertices before searching, and every deletion carries a checkable
//! certificate.

pub mod dsr;
pub mod engine;
pub mod generate;
pub mod graph;
pub mod hardness;
pub mod instance;
pub mod isr_degenerate;
pub mod isr_quasiwide;
pub mod reduction;
pub mod report;
pub mod sunflower;

pub use dsr::{kernelize_dsr, solve_dsr, DsrError};
pub use engine::{
    bfs_reconfig, is_feasible, verify_sequence, ReconfSequence, SearchOutcome, Verdict,
    DEFAULT_STATE_BUDGET,
};
pub use graph::{Graph, GraphError, Vertex, VertexSet};
pub use hardness::{isr_to_dsr, map_sequence_back, GadgetMap};
pub use instance::{parse_instance, write_instance, Instance, ParseError, Problem};
pub use isr_degenerate::{kernelize_degenerate, solve_isr_degenerate};
pub use isr_quasiwide::{kernelize_quasiwide, solve_isr_quasiwide, QuasiWideParams};
pub use reduction::{Certificate, ReductionLog, ReductionStep, Rule, Solution};
pub use report::{parse_report, serialize_report, Report};
