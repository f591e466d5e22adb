//! Transformation of independent set reconfiguration into dominating set
//! reconfiguration with the same parameter.
//!
//! Every vertex `v_p` of the input gets a copy `c^i_p` in each of `k`
//! cliques `C_1..C_k`. A forcer set `F_i` of `k+2` independent vertices
//! joined to `C_i` makes every dominating `k`-set pick one vertex per
//! clique. For `i < j` and every ordered pair `(p, q)` with `p = q` or
//! `v_p v_q` an edge, a guard set of `k+2` independent vertices is joined to
//! `C_i ∪ C_j` minus `c^i_p, c^j_q`, which forbids picking that pair.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::ReconfSequence;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::{Instance, Problem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("expected an independent set reconfiguration instance")]
    NotIsr,
    #[error("input vertices must be numbered consecutively")]
    SparseIds,
    #[error("set {index} of the sequence does not fit the gadget: {detail}")]
    NotGadgetShape { index: usize, detail: String },
    #[error("malformed gadget map: {0}")]
    BadMap(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardSet {
    pub i: usize,
    pub j: usize,
    pub p: usize,
    pub q: usize,
    pub vertices: Vec<Vertex>,
}

/// Where each part of the gadget lives. Indices and ids are 0-based in
/// memory and 1-based in the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMap {
    /// `clique_vertex[i][p]` is the id of `c^i_p`.
    pub clique_vertex: Vec<Vec<Vertex>>,
    pub forcer_sets: Vec<Vec<Vertex>>,
    pub guard_sets: Vec<GuardSet>,
}

impl GadgetMap {
    fn shifted(&self, up: bool) -> Option<GadgetMap> {
        let v = |x: Vertex| {
            if up {
                x.checked_add(1)
            } else {
                x.checked_sub(1)
            }
        };
        let u = |x: usize| {
            if up {
                x.checked_add(1)
            } else {
                x.checked_sub(1)
            }
        };
        let list = |xs: &[Vertex]| xs.iter().map(|&x| v(x)).collect::<Option<Vec<_>>>();
        Some(GadgetMap {
            clique_vertex: self
                .clique_vertex
                .iter()
                .map(|c| list(c))
                .collect::<Option<_>>()?,
            forcer_sets: self
                .forcer_sets
                .iter()
                .map(|f| list(f))
                .collect::<Option<_>>()?,
            guard_sets: self
                .guard_sets
                .iter()
                .map(|r| {
                    Some(GuardSet {
                        i: u(r.i)?,
                        j: u(r.j)?,
                        p: u(r.p)?,
                        q: u(r.q)?,
                        vertices: list(&r.vertices)?,
                    })
                })
                .collect::<Option<_>>()?,
        })
    }

    pub fn to_json(&self) -> String {
        let shifted = self.shifted(true).expect("ids fit after shifting");
        serde_json::to_string_pretty(&shifted).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<GadgetMap, HardnessError> {
        let raw: GadgetMap =
            serde_json::from_str(text).map_err(|e| HardnessError::BadMap(e.to_string()))?;
        let map = raw
            .shifted(false)
            .ok_or_else(|| HardnessError::BadMap("indices start at 1".into()))?;
        let n = map.clique_vertex.first().map_or(0, Vec::len);
        if map.clique_vertex.iter().any(|c| c.len() != n) {
            return Err(HardnessError::BadMap("cliques differ in size".into()));
        }
        Ok(map)
    }

    pub fn k(&self) -> usize {
        self.clique_vertex.len()
    }

    /// Clique index and position of a gadget vertex, if it is a clique vertex.
    fn locate(&self, x: Vertex) -> Option<(usize, usize)> {
        self.clique_vertex
            .iter()
            .enumerate()
            .find_map(|(i, c)| c.iter().position(|&y| y == x).map(|p| (i, p)))
    }
}

/// Number of gadget vertices: `k·n + k(k+2) + (k(k-1)/2)(n+2m)(k+2)`.
pub fn gadget_size(n: usize, m: usize, k: usize) -> usize {
    k * n + k * (k + 2) + k * (k - 1) / 2 * (n + 2 * m) * (k + 2)
}

pub fn isr_to_dsr(inst: &Instance) -> Result<(Instance, GadgetMap), HardnessError> {
    if inst.problem != Problem::Isr {
        return Err(HardnessError::NotIsr);
    }
    let g = &inst.graph;
    if !g.is_dense() {
        return Err(HardnessError::SparseIds);
    }
    let (n, k) = (g.n(), inst.k);
    let mut next: Vertex = 0;
    let mut fresh = |count: usize| {
        let block: Vec<Vertex> = (next..next + count as Vertex).collect();
        next += count as Vertex;
        block
    };

    let clique_vertex: Vec<Vec<Vertex>> = (0..k).map(|_| fresh(n)).collect();
    let forcer_sets: Vec<Vec<Vertex>> = (0..k).map(|_| fresh(k + 2)).collect();
    let mut guard_sets = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for p in 0..n {
                for q in 0..n {
                    if p == q || g.has_edge(p as Vertex, q as Vertex) {
                        guard_sets.push(GuardSet {
                            i,
                            j,
                            p,
                            q,
                            vertices: fresh(k + 2),
                        });
                    }
                }
            }
        }
    }

    let mut edges = Vec::new();
    for (clique, forcers) in clique_vertex.iter().zip(&forcer_sets) {
        for (a, &x) in clique.iter().enumerate() {
            edges.extend(clique[a + 1..].iter().map(|&y| (x, y)));
            edges.extend(forcers.iter().map(|&f| (x, f)));
        }
    }
    for r in &guard_sets {
        let seen = clique_vertex[r.i]
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != r.p)
            .chain(
                clique_vertex[r.j]
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != r.q),
            )
            .map(|(_, &c)| c);
        for c in seen {
            edges.extend(r.vertices.iter().map(|&x| (c, x)));
        }
    }
    let gadget = Graph::from_edges(next as usize, edges).expect("gadget edges are simple");

    let pick = |s: &VertexSet| -> VertexSet {
        s.iter()
            .enumerate()
            .map(|(i, &p)| clique_vertex[i][p as usize])
            .collect()
    };
    let dsr = Instance::new(
        Problem::Dsr,
        gadget,
        k,
        pick(&inst.source),
        pick(&inst.target),
    )
    .expect("independent endpoints give dominating endpoints");
    Ok((
        dsr,
        GadgetMap {
            clique_vertex,
            forcer_sets,
            guard_sets,
        },
    ))
}

/// Projects a gadget sequence back to the input graph.
///
/// Consecutive `k`-sets `D_a`, `D_b` differ by moving one clique's choice
/// from `p` to `q`; the projected sequence removes `v_p` and then adds
/// `v_q`. Round trips through a `(k+1)`-set that return to the same `k`-set
/// are dropped.
pub fn map_sequence_back(
    gm: &GadgetMap,
    seq: &ReconfSequence,
) -> Result<ReconfSequence, HardnessError> {
    let k = gm.k();
    let mut projected: Vec<VertexSet> = Vec::new();
    for (index, d) in seq.sets.iter().enumerate() {
        if d.len() != k {
            continue;
        }
        let mut per_clique: Vec<Option<usize>> = vec![None; k];
        for &x in d {
            let shape = |detail: String| HardnessError::NotGadgetShape { index, detail };
            let (i, p) = gm
                .locate(x)
                .ok_or_else(|| shape(format!("vertex {x} is outside the cliques")))?;
            if per_clique[i].replace(p).is_some() {
                return Err(shape(format!("clique {} is used twice", i + 1)));
            }
        }
        let set: VertexSet = per_clique.iter().flatten().map(|&p| p as Vertex).collect();
        if set.len() != k {
            return Err(HardnessError::NotGadgetShape {
                index,
                detail: "two cliques select the same vertex".into(),
            });
        }
        if let Some(prev) = projected.last() {
            if *prev == set {
                continue;
            }
            let kept: VertexSet = prev.intersection(&set).copied().collect();
            if kept.len() + 1 != k {
                return Err(HardnessError::NotGadgetShape {
                    index,
                    detail: "more than one choice changed".into(),
                });
            }
            projected.push(kept);
        }
        projected.push(set);
    }
    Ok(ReconfSequence::new(projected))
}
