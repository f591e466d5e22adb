//! Dominating set reconfiguration through a domination core.
//!
//! A core `C` is a vertex set such that a set of at most `k+1` vertices
//! dominates `G` exactly when it dominates `C`. Two vertices outside
//! `C ∪ D_s ∪ D_t` with the same neighborhood in `C` are interchangeable in
//! every sequence, so all but one of them can go without changing the
//! reconfiguration distance. Sequences found on the kernel are therefore
//! shortest for the original instance.

use std::collections::BTreeMap;
use std::f64::consts::E;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use thiserror::Error;

use crate::engine::bfs_reconfig;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::{Instance, Problem};
use crate::reduction::{Certificate, ReductionLog, Rule, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DsrError {
    #[error("expected a dominating set reconfiguration instance")]
    NotDsr,
    #[error("graph has no dominating set of size at most {0}")]
    NoSmallDominatingSet(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationCore {
    pub core: VertexSet,
    /// Sets of at most this size dominate `core` iff they dominate the graph.
    pub size_bound_cap: usize,
}

impl DominationCore {
    /// Checks the core property by enumerating every set of at most
    /// `size_bound_cap` vertices.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let all = g.vertex_mask();
        let core = to_mask(g, &self.core);
        subset_masks(g, self.size_bound_cap)
            .iter()
            .all(|(_, m)| core.is_subset(m) == all.is_subset(m))
    }
}

fn to_mask<'a>(g: &Graph, vs: impl IntoIterator<Item = &'a Vertex>) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(g.id_bound());
    for &v in vs {
        mask.insert(v as usize);
    }
    mask
}

/// `(|D|, N[D])` for every `D` with `|D| ≤ max_size`, the empty set
/// included.
fn subset_masks(g: &Graph, max_size: usize) -> Vec<(usize, FixedBitSet)> {
    let closed: Vec<FixedBitSet> = g
        .vertices()
        .map(|v| g.closed_neighborhood_mask(v).expect("live vertex"))
        .collect();
    let mut out = Vec::new();
    for size in 0..=max_size.min(closed.len()) {
        for combo in (0..closed.len()).combinations(size) {
            let mut mask = FixedBitSet::with_capacity(g.id_bound());
            for i in combo {
                mask.union_with(&closed[i]);
            }
            out.push((size, mask));
        }
    }
    out
}

/// Shrinks `V` to a core certified for sets of size at most `k+1`.
///
/// Vertices are tried once each in ascending order. A vertex that cannot
/// be dropped stays undroppable as the core shrinks, so one pass reaches
/// the fixpoint.
pub fn compute_bounded_core(g: &Graph, k: usize) -> Result<DominationCore, DsrError> {
    let cap = k + 1;
    let masks = subset_masks(g, cap);
    let all = g.vertex_mask();
    let small_enough = masks.iter().any(|(size, m)| *size <= k && all.is_subset(m));
    if !small_enough {
        return Err(DsrError::NoSmallDominatingSet(k));
    }
    let mut core = all;
    for w in g.vertices() {
        core.set(w as usize, false);
        let droppable = masks
            .iter()
            .all(|(_, m)| !core.is_subset(m) || m.contains(w as usize));
        if !droppable {
            core.insert(w as usize);
        }
    }
    Ok(DominationCore {
        core: core.ones().map(|v| v as Vertex).collect(),
        size_bound_cap: cap,
    })
}

/// Keeps one vertex (the smallest) of every group outside
/// `C ∪ D_s ∪ D_t` with equal neighborhood in `C`.
pub fn remove_core_twins(inst: &Instance, core: &DominationCore) -> (Instance, ReductionLog) {
    let g = &inst.graph;
    let anchors = inst.anchors();
    let mut cells: BTreeMap<Vec<Vertex>, Vertex> = BTreeMap::new();
    let mut log = ReductionLog::new();
    for u in g
        .vertices()
        .filter(|u| !core.core.contains(u) && !anchors.contains(u))
    {
        let key: Vec<Vertex> = g
            .neighbors(u)
            .expect("live vertex")
            .iter()
            .copied()
            .filter(|x| core.core.contains(x))
            .collect();
        match cells.get(&key) {
            Some(&survivor) => log.push(
                Rule::CoreTwin,
                u,
                Certificate::CoreTwin {
                    survivor,
                    shared_core_neighborhood: key,
                },
            ),
            None => {
                cells.insert(key, u);
            }
        }
    }
    let graph = log.replay(g).expect("deleted vertices are live");
    (inst.with_graph(graph), log)
}

/// Whether `|B| ≤ 2(d-1)·(|A|·e/d)^{2d}`.
pub fn check_twinless_bound(core_side: &VertexSet, twin_side: &VertexSet, d: usize) -> bool {
    if twin_side.is_empty() {
        return true;
    }
    if d == 0 {
        return false;
    }
    let d = d as f64;
    let bound = 2.0 * (d - 1.0) * (core_side.len() as f64 * E / d).powf(2.0 * d);
    twin_side.len() as f64 <= bound
}

/// `dk^d + 2k + 2d(3dk^d)^{2d}`, saturating.
pub fn kernel_size_bound(d: usize, k: usize) -> u128 {
    let (d, k) = (d as u128, k as u128);
    let dkd = d.saturating_mul(k.saturating_pow(d as u32));
    let inner = dkd.saturating_mul(3).saturating_pow(2 * d as u32);
    dkd.saturating_add(2 * k)
        .saturating_add((2 * d).saturating_mul(inner))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsrKernel {
    pub kernel: Instance,
    pub log: ReductionLog,
    pub core: DominationCore,
}

pub fn kernelize_dsr(inst: &Instance) -> Result<DsrKernel, DsrError> {
    if inst.problem != Problem::Dsr {
        return Err(DsrError::NotDsr);
    }
    let core = compute_bounded_core(&inst.graph, inst.k)?;
    let (kernel, log) = remove_core_twins(inst, &core);
    Ok(DsrKernel { kernel, log, core })
}

fn report_diagnostics(inst: &Instance, kernel: &DsrKernel, d: usize) {
    let k = inst.k;
    let core_size = kernel.core.core.len();
    let soft_core = (d as u128).saturating_mul((k as u128).saturating_pow(d as u32));
    if core_size as u128 > soft_core {
        log::info!("core has {core_size} vertices, above d·k^d = {soft_core}");
    }
    let anchors = inst.anchors();
    let twin_side: VertexSet = kernel
        .kernel
        .graph
        .vertices()
        .filter(|v| !kernel.core.core.contains(v) && !anchors.contains(v))
        .collect();
    if !check_twinless_bound(&kernel.core.core, &twin_side, d) {
        log::warn!(
            "{} core-twin-free vertices exceed the bound for K_{{{d},{d}}}-free graphs",
            twin_side.len()
        );
    }
    if !inst.graph.contains_biclique(d) {
        let bound = kernel_size_bound(d, k);
        let n = kernel.kernel.graph.n();
        if n as u128 > bound {
            log::warn!("kernel has {n} vertices, above the bound {bound}");
        } else {
            log::info!("kernel has {n} vertices, bound {bound}");
        }
    }
}

/// Kernelizes and searches. Sequences are shortest for the original
/// instance. With `biclique_d`, size diagnostics for `K_{d,d}`-free graphs
/// are logged.
pub fn solve_dsr(
    inst: &Instance,
    state_budget: usize,
    biclique_d: Option<usize>,
) -> Result<Solution, DsrError> {
    let kernel = kernelize_dsr(inst)?;
    if let Some(d) = biclique_d {
        report_diagnostics(inst, &kernel, d);
    }
    let outcome = bfs_reconfig(&kernel.kernel, state_budget);
    Ok(Solution {
        outcome,
        log: kernel.log,
        kernel: kernel.kernel,
    })
}
