//! Irrelevant-vertex reduction for independent set reconfiguration on
//! sparse inputs without a degeneracy bound.
//!
//! Vertices outside the endpoints are grouped by their neighborhood in
//! `S_s ∪ S_t`. Inside a large group we look for a small deletion set `B`
//! and a set `A` that is 2-scattered once `B` is gone. Vertices of `A` with
//! the same neighborhood in `B` then have closed neighborhoods forming a
//! sunflower whose core lies in `B ∪ S_s ∪ S_t`, and one petal center can
//! be deleted.
//!
//! The class-dependent constants of the underlying theory are replaced by
//! [`QuasiWideParams`]. Every sunflower is checked explicitly before a
//! deletion, so the parameters only affect how much gets reduced.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use thiserror::Error;

use crate::engine::bfs_reconfig;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::{Instance, Problem};
use crate::isr_degenerate::remove_closed_twins;
use crate::reduction::{Certificate, ReductionLog, ReductionStep, Rule, Solution};
use crate::sunflower::check_sunflower_sets;

/// Scattering radius used throughout.
pub const RADIUS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiWideParams {
    /// Classes larger than this are searched for a sunflower.
    pub class_threshold: usize,
    /// Largest deletion set tried.
    pub max_deletions: usize,
    /// Number of deletion sets the scattered search may try.
    pub search_budget: usize,
}

impl Default for QuasiWideParams {
    fn default() -> Self {
        Self {
            class_threshold: 32,
            max_deletions: 2,
            search_budget: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasiWideError {
    #[error("expected an independent set reconfiguration instance")]
    NotIsr,
    #[error("class threshold {threshold} is below 2k = {min}")]
    ThresholdTooSmall { threshold: usize, min: usize },
    #[error("search budget must be positive")]
    ZeroBudget,
}

impl QuasiWideParams {
    pub fn validate(&self, k: usize) -> Result<(), QuasiWideError> {
        if self.class_threshold < 2 * k {
            return Err(QuasiWideError::ThresholdTooSmall {
                threshold: self.class_threshold,
                min: 2 * k,
            });
        }
        if self.search_budget == 0 {
            return Err(QuasiWideError::ZeroBudget);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScatteredCertificate {
    pub deleted: VertexSet,
    pub scattered: VertexSet,
    pub radius: usize,
}

impl ScatteredCertificate {
    /// Checks that `scattered` avoids `deleted` and that radius balls around
    /// its members are pairwise disjoint in `g - deleted`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        if !self.scattered.is_disjoint(&self.deleted)
            || !self.deleted.iter().all(|&v| g.contains(v))
        {
            return false;
        }
        let Ok(h) = g.delete_vertices(self.deleted.iter()) else {
            return false;
        };
        let mut covered = BTreeSet::new();
        for &a in &self.scattered {
            let Ok(ball) = h.ball(a, self.radius) else {
                return false;
            };
            if !ball.into_iter().all(|x| covered.insert(x)) {
                return false;
            }
        }
        true
    }
}

/// Groups `V \ anchors` by `N(v) ∩ anchors`. Classes and their members are
/// in ascending order.
pub fn partition_by_solution_neighborhood(
    g: &Graph,
    anchors: &VertexSet,
) -> BTreeMap<Vec<Vertex>, Vec<Vertex>> {
    let mut classes: BTreeMap<Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
    for v in g.vertices().filter(|v| !anchors.contains(v)) {
        let key: Vec<Vertex> = g
            .neighbors(v)
            .expect("live vertex")
            .iter()
            .copied()
            .filter(|u| anchors.contains(u))
            .collect();
        classes.entry(key).or_default().push(v);
    }
    classes
}

enum Search {
    Found(ScatteredCertificate),
    NotFound,
    OverBudget,
}

/// Greedy 2-scattered subset of `w \ b` in `h = g - b`, stopping at `want`.
fn greedy_scattered(h: &Graph, w: &[Vertex], want: usize) -> Vec<Vertex> {
    let mut covered: BTreeSet<Vertex> = BTreeSet::new();
    let mut picked = Vec::new();
    for &v in w.iter().filter(|&&v| h.contains(v)) {
        if picked.len() == want {
            break;
        }
        let ball = h.ball(v, RADIUS).expect("live vertex");
        if ball.iter().all(|x| !covered.contains(x)) {
            covered.extend(ball);
            picked.push(v);
        }
    }
    picked
}

/// Vertices lying in at least two radius balls around `w`, most shared
/// first, ties by id.
fn deletion_candidates(g: &Graph, w: &[Vertex]) -> Vec<Vertex> {
    let mut hits: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &v in w {
        for x in g.ball(v, RADIUS).expect("live vertex") {
            *hits.entry(x).or_default() += 1;
        }
    }
    hits.into_iter()
        .filter(|&(_, c)| c >= 2)
        .sorted_by_key(|&(v, c)| (std::cmp::Reverse(c), v))
        .map(|(v, _)| v)
        .collect()
}

fn search(
    g: &Graph,
    w: &VertexSet,
    max_deletions: usize,
    budget: usize,
    required: impl Fn(usize) -> usize,
) -> Search {
    let w: Vec<Vertex> = w.iter().copied().filter(|&v| g.contains(v)).collect();
    let candidates = deletion_candidates(g, &w);
    let mut nodes = 0usize;
    for size in 0..=max_deletions.min(candidates.len()) {
        let want = required(size);
        if want > w.len() {
            continue;
        }
        for b in candidates.iter().copied().combinations(size) {
            nodes += 1;
            if nodes > budget {
                return Search::OverBudget;
            }
            let h = g.delete_vertices(b.iter()).expect("candidates are live");
            let picked = greedy_scattered(&h, &w, want);
            if picked.len() >= want {
                let cert = ScatteredCertificate {
                    deleted: b.into_iter().collect(),
                    scattered: picked.into_iter().collect(),
                    radius: RADIUS,
                };
                if cert.is_valid(g) {
                    return Search::Found(cert);
                }
            }
        }
    }
    Search::NotFound
}

/// Looks for `B` with `|B| ≤ max_deletions` and `A ⊆ w \ B` of size at
/// least `target` that is 2-scattered in `g - B`.
pub fn find_scattered_with_deletions(
    g: &Graph,
    w: &VertexSet,
    target: usize,
    params: &QuasiWideParams,
) -> Option<ScatteredCertificate> {
    match search(g, w, params.max_deletions, params.search_budget, |_| target) {
        Search::Found(cert) => Some(cert),
        Search::NotFound => None,
        Search::OverBudget => {
            log::warn!(
                "scattered-set search gave up after {} deletion sets",
                params.search_budget
            );
            None
        }
    }
}

/// Builds a validated sunflower from a scattered certificate found inside a
/// class, if one of its `B`-neighborhood subclasses has `2k` members.
fn sunflower_from(
    inst: &Instance,
    anchors: &VertexSet,
    cert: &ScatteredCertificate,
) -> Option<ReductionStep> {
    let g = &inst.graph;
    let mut by_separator: BTreeMap<Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
    for &a in &cert.scattered {
        let key: Vec<Vertex> = g
            .neighbors(a)
            .expect("live vertex")
            .iter()
            .copied()
            .filter(|u| cert.deleted.contains(u))
            .collect();
        by_separator.entry(key).or_default().push(a);
    }
    let wanted = 2 * inst.k;
    for centers in by_separator.into_values().filter(|c| c.len() >= wanted) {
        let hoods: Vec<Vec<Vertex>> = centers
            .iter()
            .map(|&c| g.closed_neighborhood(c).expect("live vertex"))
            .collect();
        let core: Vec<Vertex> = hoods[0]
            .iter()
            .copied()
            .filter(|x| hoods[1..].iter().all(|h| h.binary_search(x).is_ok()))
            .collect();
        let core_ok = core
            .iter()
            .all(|x| cert.deleted.contains(x) || anchors.contains(x));
        let centers_ok = centers.iter().all(|c| !anchors.contains(c));
        let petals_ok = check_sunflower_sets(
            &core,
            hoods.iter().enumerate().map(|(i, h)| (i, h.as_slice())),
        )
        .is_ok();
        if core_ok && centers_ok && petals_ok {
            return Some(ReductionStep {
                rule: Rule::QuasiWide,
                vertex: centers[0],
                certificate: Certificate::Sunflower {
                    core,
                    petal_centers: centers,
                    separator: cert.deleted.iter().copied().collect(),
                },
            });
        }
    }
    None
}

/// One application of the reduction. Expects closed twins outside the
/// endpoints to be gone.
pub fn reduce_quasiwide_once(
    inst: &Instance,
    params: &QuasiWideParams,
) -> Option<(Instance, ReductionStep)> {
    let anchors = inst.anchors();
    let outside = inst
        .graph
        .delete_vertices(anchors.iter())
        .expect("anchors are live");
    let k = inst.k;
    for class in partition_by_solution_neighborhood(&inst.graph, &anchors).into_values() {
        if class.len() <= params.class_threshold {
            continue;
        }
        let w: VertexSet = class.into_iter().collect();
        let required =
            |b: usize| (2 * k).saturating_mul(1usize.checked_shl(b as u32).unwrap_or(usize::MAX));
        let cert = match search(
            &outside,
            &w,
            params.max_deletions,
            params.search_budget,
            required,
        ) {
            Search::Found(cert) => cert,
            Search::NotFound => continue,
            Search::OverBudget => {
                log::warn!(
                    "scattered-set search gave up after {} deletion sets on a class of {}",
                    params.search_budget,
                    w.len()
                );
                continue;
            }
        };
        if let Some(step) = sunflower_from(inst, &anchors, &cert) {
            let graph = inst.graph.delete_vertex(step.vertex).expect("live vertex");
            return Some((inst.with_graph(graph), step));
        }
    }
    None
}

/// Alternates twin removal and [`reduce_quasiwide_once`] to a fixpoint.
pub fn kernelize_quasiwide(
    inst: &Instance,
    params: &QuasiWideParams,
) -> Result<(Instance, ReductionLog), QuasiWideError> {
    if inst.problem != Problem::Isr {
        return Err(QuasiWideError::NotIsr);
    }
    params.validate(inst.k)?;
    let mut log = ReductionLog::new();
    let mut current = inst.clone();
    loop {
        let (reduced, twins) = remove_closed_twins(&current);
        log.extend(twins);
        current = reduced;
        match reduce_quasiwide_once(&current, params) {
            Some((reduced, step)) => {
                log.steps.push(step);
                current = reduced;
            }
            None => return Ok((current, log)),
        }
    }
}

/// Kernelizes, then searches. The verdict holds for the original instance;
/// sequences are valid there but need not be shortest.
pub fn solve_isr_quasiwide(
    inst: &Instance,
    params: &QuasiWideParams,
    state_budget: usize,
) -> Result<Solution, QuasiWideError> {
    let (kernel, log) = kernelize_quasiwide(inst, params)?;
    let outcome = bfs_reconfig(&kernel, state_budget);
    Ok(Solution {
        outcome,
        log,
        kernel,
    })
}
