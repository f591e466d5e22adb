//! Breadth-first search over the token-jumping reconfiguration graph.
//!
//! Nodes are feasible sets whose size lies in `[r_l, r_u]`; two nodes are
//! adjacent when they differ in exactly one vertex. The graph is never
//! materialized: successors are generated on demand from the current set.

use std::fmt;

use fixedbitset::FixedBitSet;
use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::{Instance, Problem};

pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReconfSequence {
    pub sets: Vec<VertexSet>,
}

impl ReconfSequence {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        ReconfSequence { sets }
    }

    /// Number of moves.
    pub fn len(&self) -> usize {
        self.sets.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every vertex added or removed somewhere along the sequence.
    pub fn touched(&self) -> VertexSet {
        self.sets
            .windows(2)
            .flat_map(|w| {
                w[0].symmetric_difference(&w[1])
                    .copied()
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    /// Present iff the verdict is `Yes`; a shortest witness.
    pub sequence: Option<ReconfSequence>,
    pub states_explored: usize,
}

/// Independence (ISR) or domination of the whole graph (DSR).
pub fn is_feasible(g: &Graph, problem: Problem, s: &VertexSet) -> bool {
    match problem {
        Problem::Isr => s.iter().all(|&v| {
            g.neighbors(v)
                .is_ok_and(|nv| nv.iter().all(|u| !s.contains(u)))
        }),
        Problem::Dsr => {
            let mut covered = FixedBitSet::with_capacity(g.id_bound());
            for &v in s {
                match g.closed_neighborhood_mask(v) {
                    Ok(mask) => covered.union_with(&mask),
                    Err(_) => return false,
                }
            }
            g.vertex_mask().is_subset(&covered)
        }
    }
}

/// Feasibility checks specialized to the single-vertex moves of the search.
struct MoveOracle<'a> {
    graph: &'a Graph,
    problem: Problem,
    closed: Vec<FixedBitSet>,
    live: FixedBitSet,
}

impl<'a> MoveOracle<'a> {
    fn new(graph: &'a Graph, problem: Problem) -> Self {
        let closed = match problem {
            Problem::Isr => Vec::new(),
            Problem::Dsr => (0..graph.id_bound() as Vertex)
                .map(|v| {
                    graph
                        .closed_neighborhood_mask(v)
                        .unwrap_or_else(|_| FixedBitSet::with_capacity(graph.id_bound()))
                })
                .collect(),
        };
        MoveOracle {
            graph,
            problem,
            closed,
            live: graph.vertex_mask(),
        }
    }

    fn dominates(&self, set: impl Iterator<Item = Vertex>) -> bool {
        let mut covered = FixedBitSet::with_capacity(self.graph.id_bound());
        for v in set {
            covered.union_with(&self.closed[v as usize]);
        }
        self.live.is_subset(&covered)
    }

    /// Whether `state` minus `state[skip]` stays feasible.
    fn removable(&self, state: &[Vertex], skip: usize) -> bool {
        match self.problem {
            Problem::Isr => true,
            Problem::Dsr => self.dominates(
                state
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v),
            ),
        }
    }

    /// Whether `state` plus `v` stays feasible.
    fn addable(&self, state: &[Vertex], v: Vertex) -> bool {
        match self.problem {
            Problem::Isr => self
                .graph
                .neighbors(v)
                .map(|nv| nv.iter().all(|u| state.binary_search(u).is_err()))
                .unwrap_or(false),
            Problem::Dsr => true,
        }
    }
}

/// Shortest reconfiguration sequence from source to target, by BFS.
///
/// Successors are generated as removals in ascending vertex order, then
/// additions in ascending vertex order. The search gives up with
/// [`Verdict::Exhausted`] once more than `state_budget` distinct states
/// have been discovered.
pub fn bfs_reconfig(inst: &Instance, state_budget: usize) -> SearchOutcome {
    let g = &inst.graph;
    let (lo, hi) = inst.problem.size_bounds(inst.k);
    let source: Vec<Vertex> = inst.source.iter().copied().collect();
    let target: Vec<Vertex> = inst.target.iter().copied().collect();
    let oracle = MoveOracle::new(g, inst.problem);
    let vertices: Vec<Vertex> = g.vertices().collect();

    let mut seen: IndexSet<Vec<Vertex>> = IndexSet::new();
    let mut parent: Vec<usize> = Vec::new();
    seen.insert(source.clone());
    parent.push(usize::MAX);

    let mut head = 0;
    let found = loop {
        if seen[0] == target {
            break Some(0);
        }
        if head == seen.len() {
            break None;
        }
        let state = seen.get_index(head).expect("head is in range").clone();
        let mut successors: Vec<Vec<Vertex>> = Vec::new();
        if state.len() > lo {
            for i in 0..state.len() {
                if oracle.removable(&state, i) {
                    let mut next = state.clone();
                    next.remove(i);
                    successors.push(next);
                }
            }
        }
        if state.len() < hi {
            for &v in &vertices {
                if let Err(pos) = state.binary_search(&v) {
                    if oracle.addable(&state, v) {
                        let mut next = state.clone();
                        next.insert(pos, v);
                        successors.push(next);
                    }
                }
            }
        }
        let mut hit = None;
        for next in successors {
            let (idx, fresh) = seen.insert_full(next);
            if !fresh {
                continue;
            }
            parent.push(head);
            if seen.len() > state_budget {
                return SearchOutcome {
                    verdict: Verdict::Exhausted,
                    sequence: None,
                    states_explored: seen.len(),
                };
            }
            if seen[idx] == target {
                hit = Some(idx);
                break;
            }
        }
        if hit.is_some() {
            break hit;
        }
        head += 1;
    };

    match found {
        Some(mut idx) => {
            let mut sets = Vec::new();
            loop {
                sets.push(seen[idx].iter().copied().collect::<VertexSet>());
                if parent[idx] == usize::MAX {
                    break;
                }
                idx = parent[idx];
            }
            sets.reverse();
            SearchOutcome {
                verdict: Verdict::Yes,
                sequence: Some(ReconfSequence { sets }),
                states_explored: seen.len(),
            }
        }
        None => SearchOutcome {
            verdict: Verdict::No,
            sequence: None,
            states_explored: seen.len(),
        },
    }
}

/// Which of the four sequence conditions failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Endpoints are the source and target.
    Endpoints = 1,
    /// Every set is feasible.
    Feasible = 2,
    /// Consecutive sets differ in exactly one vertex.
    SingleMove = 3,
    /// Every size lies in `[r_l, r_u]`.
    SizeBounds = 4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    /// Index of the offending set (for moves, the index of the later set).
    pub index: usize,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition ({}) violated at index {}: {}",
            self.condition as u8, self.index, self.detail
        )
    }
}

impl std::error::Error for Violation {}

/// Checks a sequence against all four conditions and reports the first
/// violation in sequence order.
pub fn verify_sequence(inst: &Instance, seq: &ReconfSequence) -> Result<(), Violation> {
    let (lo, hi) = inst.problem.size_bounds(inst.k);
    let violation = |condition, index, detail: String| Violation {
        condition,
        index,
        detail,
    };
    let (Some(first), Some(last)) = (seq.sets.first(), seq.sets.last()) else {
        return Err(violation(Condition::Endpoints, 0, "empty sequence".into()));
    };
    if *first != inst.source {
        return Err(violation(
            Condition::Endpoints,
            0,
            "first set is not the source".into(),
        ));
    }
    for (i, set) in seq.sets.iter().enumerate() {
        if let Some(&v) = set.iter().find(|&&v| !inst.graph.contains(v)) {
            return Err(violation(
                Condition::Feasible,
                i,
                format!("vertex {} is not in the graph", v + 1),
            ));
        }
        if !is_feasible(&inst.graph, inst.problem, set) {
            let what = match inst.problem {
                Problem::Isr => "is not independent",
                Problem::Dsr => "does not dominate the graph",
            };
            return Err(violation(Condition::Feasible, i, format!("set {what}")));
        }
        if i > 0 {
            let diff = seq.sets[i - 1].symmetric_difference(set).count();
            if diff != 1 {
                return Err(violation(
                    Condition::SingleMove,
                    i,
                    format!("symmetric difference with previous set has size {diff}"),
                ));
            }
        }
        if set.len() < lo || set.len() > hi {
            return Err(violation(
                Condition::SizeBounds,
                i,
                format!("size {} outside [{lo}, {hi}]", set.len()),
            ));
        }
    }
    if *last != inst.target {
        return Err(violation(
            Condition::Endpoints,
            seq.sets.len() - 1,
            "last set is not the target".into(),
        ));
    }
    Ok(())
}
