//! Kernelization for independent set reconfiguration on `d`-degenerate
//! graphs.
//!
//! Two rules run to a fixpoint:
//!
//! * closed twins outside the endpoints: one of them is deleted;
//! * low-degree sunflowers: when more than `(2d+1)!·(2k-1)^{2d+1}` vertices
//!   outside the endpoints have degree at most `2d`, their closed
//!   neighborhoods contain a sunflower with `2k` petals, and the center of
//!   any petal is irrelevant.
//!
//! Afterwards a `d`-degenerate graph cannot have more than
//! `(2d+1)·(2d+1)!·(2k-1)^{2d+1}` vertices outside the endpoints, and the
//! remaining instance is solved by breadth-first search.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::engine::bfs_reconfig;
use crate::graph::Vertex;
use crate::instance::{Instance, Problem};
use crate::reduction::{Certificate, ReductionLog, ReductionStep, Rule, Solution};
use crate::sunflower::{find_sunflower, sunflower_threshold, SetFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("expected an independent set reconfiguration instance")]
    NotIsr,
    #[error("kernel invariant broken: {what} is {actual}, bound {bound} (d = {d}, k = {k})")]
    BoundViolated {
        what: &'static str,
        actual: usize,
        bound: u128,
        d: usize,
        k: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateKernel {
    pub kernel: Instance,
    pub log: ReductionLog,
    /// Degeneracy the final thresholds were computed with.
    pub degeneracy: usize,
    /// `(2d+1)!·(2k-1)^{2d+1}`
    pub low_degree_bound: u128,
    /// `(2d+1)·(2d+1)!·(2k-1)^{2d+1} + 2k`
    pub kernel_bound: u128,
}

/// Largest number of low-degree vertices outside the endpoints that the
/// sunflower rule leaves alone.
pub fn low_degree_threshold(d: usize, k: usize) -> u128 {
    sunflower_threshold(2 * d + 1, 2 * k)
}

/// Bound on the vertices outside the endpoints once the rules are exhausted.
pub fn outside_bound(d: usize, k: usize) -> u128 {
    low_degree_threshold(d, k).saturating_mul(2 * d as u128 + 1)
}

pub fn kernel_bound(d: usize, k: usize) -> u128 {
    outside_bound(d, k).saturating_add(2 * k as u128)
}

/// Deletes closed twins outside `S_s ∪ S_t` until none are left.
///
/// In every class of equal closed neighborhoods the smallest id survives.
/// Deleting a vertex never separates two existing twins, so each round
/// removes all redundant class members at once.
pub fn remove_closed_twins(inst: &Instance) -> (Instance, ReductionLog) {
    let anchors = inst.anchors();
    let mut graph = inst.graph.clone();
    let mut log = ReductionLog::new();
    loop {
        let mut first_with: BTreeMap<Vec<Vertex>, Vertex> = BTreeMap::new();
        let mut doomed: Vec<(Vertex, Vertex)> = Vec::new();
        for v in graph.vertices().filter(|v| !anchors.contains(v)) {
            let closed = graph.closed_neighborhood(v).expect("live vertex");
            match first_with.get(&closed) {
                Some(&survivor) => doomed.push((v, survivor)),
                None => {
                    first_with.insert(closed, v);
                }
            }
        }
        if doomed.is_empty() {
            break;
        }
        graph = graph
            .delete_vertices(doomed.iter().map(|(v, _)| v))
            .expect("twins are live");
        for (v, survivor) in doomed {
            log.push(Rule::Twin, v, Certificate::Twin { survivor });
        }
    }
    (inst.with_graph(graph), log)
}

/// Vertices outside `S_s ∪ S_t` of degree at most `2d`, ascending.
pub fn low_degree_vertices(inst: &Instance, d: usize) -> Vec<Vertex> {
    let anchors = inst.anchors();
    inst.graph
        .vertices()
        .filter(|v| !anchors.contains(v))
        .filter(|&v| inst.graph.degree(v).expect("live vertex") <= 2 * d)
        .collect()
}

/// One application of the low-degree sunflower rule.
///
/// Expects closed twins outside the endpoints to be gone already, so that
/// the closed neighborhoods form a family without duplicates.
pub fn reduce_low_degree_once(inst: &Instance, d: usize) -> Option<(Instance, ReductionStep)> {
    let low = low_degree_vertices(inst, d);
    if (low.len() as u128) <= low_degree_threshold(d, inst.k) {
        return None;
    }
    let neighborhoods: Vec<Vec<Vertex>> = low
        .iter()
        .map(|&v| inst.graph.closed_neighborhood(v).expect("live vertex"))
        .collect();
    let family = SetFamily::new(neighborhoods, 2 * d + 1).ok()?;
    let sunflower = find_sunflower(&family, 2 * inst.k)?;
    let petal_centers: Vec<Vertex> = sunflower.petal_indices.iter().map(|&i| low[i]).collect();
    let victim = petal_centers[0];
    let step = ReductionStep {
        rule: Rule::SunflowerDegenerate,
        vertex: victim,
        certificate: Certificate::Sunflower {
            core: sunflower.core,
            petal_centers,
            separator: Vec::new(),
        },
    };
    let graph = inst
        .graph
        .delete_vertex(victim)
        .expect("petal center is live");
    Some((inst.with_graph(graph), step))
}

/// Runs twin removal and the sunflower rule to a fixpoint and certifies the
/// kernel size.
pub fn kernelize_degenerate(inst: &Instance) -> Result<DegenerateKernel, KernelError> {
    if inst.problem != Problem::Isr {
        return Err(KernelError::NotIsr);
    }
    let mut log = ReductionLog::new();
    let mut current = inst.clone();
    let d = loop {
        let (reduced, twins) = remove_closed_twins(&current);
        log.extend(twins);
        current = reduced;
        let d = current.graph.degeneracy_order().degeneracy.max(1);
        match reduce_low_degree_once(&current, d) {
            Some((reduced, step)) => {
                log.steps.push(step);
                current = reduced;
            }
            None => break d,
        }
    };

    let k = inst.k;
    let low = low_degree_vertices(&current, d).len();
    if low as u128 > low_degree_threshold(d, k) {
        return Err(KernelError::BoundViolated {
            what: "low-degree vertices outside the endpoints",
            actual: low,
            bound: low_degree_threshold(d, k),
            d,
            k,
        });
    }
    let anchors = current.anchors();
    let outside = current.graph.n() - anchors.len();
    if outside as u128 > outside_bound(d, k) {
        return Err(KernelError::BoundViolated {
            what: "vertices outside the endpoints",
            actual: outside,
            bound: outside_bound(d, k),
            d,
            k,
        });
    }
    Ok(DegenerateKernel {
        kernel: current,
        log,
        degeneracy: d,
        low_degree_bound: low_degree_threshold(d, k),
        kernel_bound: kernel_bound(d, k),
    })
}

/// Kernelizes, then searches the kernel.
///
/// The verdict holds for the original instance. A returned sequence never
/// touches a deleted vertex, so it is valid in the original graph too, but
/// it need not be shortest there.
pub fn solve_isr_degenerate(inst: &Instance, state_budget: usize) -> Result<Solution, KernelError> {
    let kernel = kernelize_degenerate(inst)?;
    let outcome = bfs_reconfig(&kernel.kernel, state_budget);
    Ok(Solution {
        outcome,
        log: kernel.log,
        kernel: kernel.kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{verify_sequence, Verdict, DEFAULT_STATE_BUDGET};
    use crate::graph::fixtures::*;
    use crate::graph::{Graph, VertexSet};

    fn isr(g: Graph, k: usize, s: &[Vertex], t: &[Vertex]) -> Instance {
        Instance::new(
            Problem::Isr,
            g,
            k,
            s.iter().copied().collect(),
            t.iter().copied().collect(),
        )
        .unwrap()
    }

    #[test]
    fn bounds_evaluate_as_expected() {
        assert_eq!(low_degree_threshold(1, 2), 162);
        assert_eq!(outside_bound(1, 2), 486);
        assert_eq!(kernel_bound(1, 2), 490);
        assert_eq!(low_degree_threshold(2, 3), 120 * 3125);
    }

    #[test]
    fn adjacent_twins_lose_one_member() {
        // 0 and 1 adjacent, both joined to 2 and 3; endpoints elsewhere.
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (4, 5)]).unwrap();
        let (out, log) = remove_closed_twins(&isr(g, 1, &[4], &[5]));
        assert_eq!(log.deleted(), vec![1]);
        assert_eq!(log.steps[0].certificate, Certificate::Twin { survivor: 0 });
        assert!(!out.graph.contains(1));
    }

    #[test]
    fn triangle_twins_outside_endpoints() {
        let (out, log) = remove_closed_twins(&isr(complete(3), 1, &[0], &[0]));
        assert_eq!(log.deleted(), vec![2]);
        assert_eq!(out.graph.n(), 2);
    }

    #[test]
    fn path_has_no_twins() {
        let inst = isr(path(4), 2, &[0, 2], &[1, 3]);
        let (out, log) = remove_closed_twins(&inst);
        assert!(log.is_empty());
        assert_eq!(out, inst);
    }

    #[test]
    fn endpoint_twins_are_kept() {
        let inst = isr(complete(2), 1, &[0], &[1]);
        assert!(remove_closed_twins(&inst).1.is_empty());
    }

    fn isolated(n: usize) -> Instance {
        isr(Graph::empty(n), 2, &[0, 1], &[2, 3])
    }

    #[test]
    fn many_isolated_vertices_trigger_the_rule() {
        let inst = isolated(200);
        let (out, step) = reduce_low_degree_once(&inst, 1).unwrap();
        assert_eq!(out.graph.n(), 199);
        assert_eq!(step.rule, Rule::SunflowerDegenerate);
        let Certificate::Sunflower {
            core,
            petal_centers,
            ..
        } = &step.certificate
        else {
            panic!("wrong certificate");
        };
        assert!(core.is_empty());
        assert!(petal_centers.len() >= 4);
        assert_eq!(step.vertex, petal_centers[0]);
        assert!(!inst.anchors().contains(&step.vertex));
    }

    #[test]
    fn threshold_is_strict() {
        // 4 endpoints + 162 free isolated vertices
        assert!(reduce_low_degree_once(&isolated(166), 1).is_none());
        assert!(reduce_low_degree_once(&isolated(167), 1).is_some());
    }

    #[test]
    fn no_low_degree_vertices_means_no_rule() {
        // all non-endpoint vertices have degree 9 > 2d
        let g = complete(10);
        let inst = isr(g, 1, &[0], &[1]);
        assert!(low_degree_vertices(&inst, 1).is_empty());
        assert!(reduce_low_degree_once(&inst, 1).is_none());
    }

    #[test]
    fn small_instance_is_its_own_kernel() {
        let inst = isr(path(4), 2, &[0, 2], &[1, 3]);
        let kernel = kernelize_degenerate(&inst).unwrap();
        assert_eq!(kernel.kernel, inst);
        assert!(kernel.log.is_empty());
        assert_eq!(kernel.degeneracy, 1);
    }

    #[test]
    fn isolated_vertices_shrink_to_the_threshold() {
        let inst = isolated(200);
        let kernel = kernelize_degenerate(&inst).unwrap();
        assert_eq!(kernel.kernel.graph.n(), 166);
        assert_eq!(kernel.log.len(), 34);
        assert!(kernel.kernel.graph.n() as u128 <= kernel.kernel_bound);
        assert_eq!(kernel.kernel_bound, 490);
        assert_eq!(kernel.log.replay(&inst.graph).unwrap(), kernel.kernel.graph);
    }

    #[test]
    fn forest_only_loses_twins() {
        let g = crate::generate::gen_random_degenerate(10, 1, 3);
        let inst = crate::generate::plant_isr_instance(&g, 2, 3).unwrap();
        let kernel = kernelize_degenerate(&inst).unwrap();
        assert!(kernel.log.steps.iter().all(|s| s.rule == Rule::Twin));
        let (twin_free, _) = remove_closed_twins(&inst);
        assert_eq!(kernel.kernel, twin_free);
    }

    #[test]
    fn solver_decides_the_small_examples() {
        let p4 = isr(path(4), 2, &[0, 2], &[1, 3]);
        let sol = solve_isr_degenerate(&p4, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(sol.outcome.verdict, Verdict::Yes);
        verify_sequence(&p4, sol.outcome.sequence.as_ref().unwrap()).unwrap();

        let c4 = isr(cycle(4), 2, &[0, 2], &[1, 3]);
        assert_eq!(
            solve_isr_degenerate(&c4, DEFAULT_STATE_BUDGET)
                .unwrap()
                .outcome
                .verdict,
            Verdict::No
        );

        let same = isr(cycle(4), 2, &[0, 2], &[0, 2]);
        let sol = solve_isr_degenerate(&same, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(sol.outcome.sequence.unwrap().len(), 0);
    }

    #[test]
    fn dominating_instances_are_rejected() {
        let inst = Instance::new(
            Problem::Dsr,
            path(3),
            1,
            VertexSet::from([1]),
            VertexSet::from([1]),
        )
        .unwrap();
        assert_eq!(
            kernelize_degenerate(&inst).unwrap_err(),
            KernelError::NotIsr
        );
    }
}
