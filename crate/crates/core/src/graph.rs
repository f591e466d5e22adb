//! Simple undirected graphs with stable vertex identities.
//!
//! Vertices are dense `u32` ids assigned at construction time. Deleting a
//! vertex leaves a hole in the id space; ids are never recycled, so a
//! reduction log can always name the vertex it removed.

use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub type Vertex = u32;

/// Canonical vertex set: ascending, duplicate free.
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    /// Indexed by vertex id; `None` marks a deleted id.
    adj: Vec<Option<Vec<Vertex>>>,
    n: usize,
    m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyResult {
    pub degeneracy: usize,
    /// Peeling order: each vertex has at most `degeneracy` neighbors after it.
    pub order: Vec<Vertex>,
}

impl Graph {
    /// Edgeless graph on ids `0..n`.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Some(Vec::new()); n],
            n,
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::UnknownVertex(x));
                }
            }
            let nu = g.adj[u as usize]
                .as_mut()
                .expect("fresh graph has no holes");
            if nu.contains(&v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            nu.push(v);
            g.adj[v as usize]
                .as_mut()
                .expect("fresh graph has no holes")
                .push(u);
            g.m += 1;
        }
        for list in g.adj.iter_mut().flatten() {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Number of live vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// One past the largest id ever assigned, deleted or not.
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    /// True when the live ids are exactly `0..n`.
    pub fn is_dense(&self) -> bool {
        self.n == self.adj.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        matches!(self.adj.get(v as usize), Some(Some(_)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_some())
            .map(|(i, _)| i as Vertex)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adj[u as usize]
                .as_ref()
                .into_iter()
                .flatten()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Sorted open neighborhood.
    pub fn neighbors(&self, v: Vertex) -> Result<&[Vertex], GraphError> {
        match self.adj.get(v as usize) {
            Some(Some(list)) => Ok(list),
            _ => Err(GraphError::UnknownVertex(v)),
        }
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.neighbors(v).map(<[Vertex]>::len)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u)
            .map(|nu| nu.binary_search(&v).is_ok())
            .unwrap_or(false)
    }

    /// `N[v]` in ascending order.
    pub fn closed_neighborhood(&self, v: Vertex) -> Result<Vec<Vertex>, GraphError> {
        let open = self.neighbors(v)?;
        let mut out = Vec::with_capacity(open.len() + 1);
        let pos = open.partition_point(|&u| u < v);
        out.extend_from_slice(&open[..pos]);
        out.push(v);
        out.extend_from_slice(&open[pos..]);
        Ok(out)
    }

    /// `N[v]` as a bitset over the id space.
    pub fn closed_neighborhood_mask(&self, v: Vertex) -> Result<FixedBitSet, GraphError> {
        let mut mask = FixedBitSet::with_capacity(self.id_bound());
        mask.insert(v as usize);
        for &u in self.neighbors(v)? {
            mask.insert(u as usize);
        }
        Ok(mask)
    }

    /// Bitset of all live vertices.
    pub fn vertex_mask(&self) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.id_bound());
        for v in self.vertices() {
            mask.insert(v as usize);
        }
        mask
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().flatten().map(Vec::len).max().unwrap_or(0)
    }

    /// Copy of the graph without `v`; surviving ids are unchanged.
    pub fn delete_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_in_place(v)?;
        Ok(g)
    }

    /// Copy of the graph without every vertex of `vs`.
    pub fn delete_vertices<'a, I>(&self, vs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = &'a Vertex>,
    {
        let mut g = self.clone();
        for &v in vs {
            g.remove_in_place(v)?;
        }
        Ok(g)
    }

    fn remove_in_place(&mut self, v: Vertex) -> Result<(), GraphError> {
        let nbrs = self
            .adj
            .get_mut(v as usize)
            .and_then(Option::take)
            .ok_or(GraphError::UnknownVertex(v))?;
        for u in &nbrs {
            let list = self.adj[*u as usize]
                .as_mut()
                .expect("adjacency is symmetric");
            let pos = list.binary_search(&v).expect("adjacency is symmetric");
            list.remove(pos);
        }
        self.n -= 1;
        self.m -= nbrs.len();
        Ok(())
    }

    /// Checks symmetry, loop freedom, sortedness and the cached counts.
    pub fn is_well_formed(&self) -> bool {
        let mut degree_sum = 0;
        let mut live = 0;
        for (i, entry) in self.adj.iter().enumerate() {
            let Some(list) = entry else { continue };
            live += 1;
            degree_sum += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &u in list {
                if u as usize == i || !self.has_edge(u, i as Vertex) {
                    return false;
                }
            }
        }
        live == self.n && degree_sum == 2 * self.m
    }

    /// Min-degree peeling. Ties go to the smallest id.
    pub fn degeneracy_order(&self) -> DegeneracyResult {
        let mut degree: Vec<usize> = self
            .adj
            .iter()
            .map(|a| a.as_ref().map_or(0, Vec::len))
            .collect();
        let mut queue: BTreeSet<(usize, Vertex)> =
            self.vertices().map(|v| (degree[v as usize], v)).collect();
        let mut removed = vec![false; self.id_bound()];
        let mut order = Vec::with_capacity(self.n);
        let mut d = 0;
        while let Some((deg, v)) = queue.pop_first() {
            d = d.max(deg);
            removed[v as usize] = true;
            order.push(v);
            for &u in self.adj[v as usize]
                .as_ref()
                .expect("queued vertices are live")
            {
                if !removed[u as usize] {
                    let du = &mut degree[u as usize];
                    queue.remove(&(*du, u));
                    *du -= 1;
                    queue.insert((*du, u));
                }
            }
        }
        DegeneracyResult {
            degeneracy: d,
            order,
        }
    }

    /// Whether `K_{d,d}` occurs as a (not necessarily induced) subgraph.
    ///
    /// Exhaustive over `d`-subsets of one side; meant for small graphs.
    pub fn contains_biclique(&self, d: usize) -> bool {
        assert!(d >= 1, "biclique size must be positive");
        let candidates: Vec<Vertex> = self
            .vertices()
            .filter(|&v| self.adj[v as usize].as_ref().is_some_and(|a| a.len() >= d))
            .collect();
        if candidates.len() < 2 * d {
            return false;
        }
        let all = self.vertex_mask();
        let mut chosen = Vec::with_capacity(d);
        self.biclique_search(&candidates, 0, &all, d, &mut chosen)
    }

    fn biclique_search(
        &self,
        candidates: &[Vertex],
        start: usize,
        common: &FixedBitSet,
        d: usize,
        chosen: &mut Vec<Vertex>,
    ) -> bool {
        if chosen.len() == d {
            return common.count_ones(..) >= d;
        }
        for i in start..candidates.len() {
            if candidates.len() - i < d - chosen.len() {
                break;
            }
            let v = candidates[i];
            let mut next = FixedBitSet::with_capacity(self.id_bound());
            for &u in self.adj[v as usize].as_ref().expect("candidate is live") {
                next.insert(u as usize);
            }
            next.intersect_with(common);
            if next.count_ones(..) < d {
                continue;
            }
            chosen.push(v);
            if self.biclique_search(candidates, i + 1, &next, d, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Radius-`r` ball around `v`, as a sorted list.
    pub fn ball(&self, v: Vertex, r: usize) -> Result<Vec<Vertex>, GraphError> {
        self.neighbors(v)?;
        let mut dist = vec![usize::MAX; self.id_bound()];
        dist[v as usize] = 0;
        let mut queue = VecDeque::from([v]);
        let mut out = vec![v];
        while let Some(x) = queue.pop_front() {
            if dist[x as usize] == r {
                continue;
            }
            for &y in self.adj[x as usize]
                .as_ref()
                .expect("reached vertices are live")
            {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}
