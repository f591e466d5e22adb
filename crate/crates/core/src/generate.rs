//! Seeded random instances.
//!
//! All generators use ChaCha8 seeded from a `u64`, so the same seed gives the
//! same output on every platform.

use itertools::Itertools;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::is_feasible;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::{Instance, Problem};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graph of degeneracy at most `d`: vertex `i` joins `min(d, i)` distinct
/// earlier vertices chosen uniformly.
pub fn gen_random_degenerate(n: usize, d: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut edges = Vec::with_capacity(n * d);
    for v in 1..n {
        let picks = index::sample(&mut rng, v, d.min(v));
        for u in picks.into_iter().sorted() {
            edges.push((u as Vertex, v as Vertex));
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are simple")
}

/// Randomized greedy independent set of size `k`, or `None`.
fn sample_independent(g: &Graph, k: usize, rng: &mut ChaCha8Rng) -> Option<VertexSet> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.shuffle(rng);
    let mut set = VertexSet::new();
    for v in order {
        if set.len() == k {
            break;
        }
        let free = g
            .neighbors(v)
            .expect("vertex from the graph")
            .iter()
            .all(|u| !set.contains(u));
        if free {
            set.insert(v);
        }
    }
    (set.len() == k).then_some(set)
}

/// ISR instance with two independent `k`-sets sampled by randomized greedy.
///
/// Gives up after `100·n` sampling attempts. Nothing is promised about
/// whether the planted instance is a yes- or a no-instance.
pub fn plant_isr_instance(g: &Graph, k: usize, seed: u64) -> Option<Instance> {
    let mut rng = rng(seed);
    let mut attempts = 100 * g.n().max(1);
    let mut draw = |rng: &mut ChaCha8Rng| {
        while attempts > 0 {
            attempts -= 1;
            if let Some(s) = sample_independent(g, k, rng) {
                return Some(s);
            }
        }
        None
    };
    let source = draw(&mut rng)?;
    let target = draw(&mut rng)?;
    Instance::new(Problem::Isr, g.clone(), k, source, target).ok()
}

/// Every dominating set of size exactly `k`, in lexicographic order.
pub fn dominating_sets_of_size(g: &Graph, k: usize) -> Vec<VertexSet> {
    g.vertices()
        .combinations(k)
        .map(|c| c.into_iter().collect::<VertexSet>())
        .filter(|s| is_feasible(g, Problem::Dsr, s))
        .collect()
}

/// DSR instance whose endpoints are drawn uniformly from the enumerated
/// dominating `k`-sets; `None` if there are none.
pub fn plant_dsr_instance(g: &Graph, k: usize, seed: u64) -> Option<Instance> {
    let mut rng = rng(seed);
    let all = dominating_sets_of_size(g, k);
    if all.is_empty() {
        return None;
    }
    let source = all[rng.random_range(0..all.len())].clone();
    let target = all[rng.random_range(0..all.len())].clone();
    Instance::new(Problem::Dsr, g.clone(), k, source, target).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn single_vertex() {
        let g = gen_random_degenerate(1, 3, 0);
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn d_one_gives_forest() {
        let g = gen_random_degenerate(10, 1, 42);
        assert!(g.degeneracy_order().degeneracy <= 1);
        assert_eq!(g.m(), 9);
    }

    #[test]
    fn edge_count_matches_attachment_rule() {
        let g = gen_random_degenerate(50, 2, 7);
        assert!(g.m() <= 100);
        // vertex 1 gets one edge, every later vertex two
        assert_eq!(g.m(), 1 + 2 * 48);
        assert!(g.is_well_formed());
    }

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(
            gen_random_degenerate(30, 3, 5),
            gen_random_degenerate(30, 3, 5)
        );
        assert_ne!(
            gen_random_degenerate(30, 3, 5),
            gen_random_degenerate(30, 3, 6)
        );
    }

    #[test]
    fn planting_fails_without_room() {
        assert!(plant_isr_instance(&complete(2), 2, 0).is_none());
    }

    #[test]
    fn planting_in_edgeless_graph() {
        let inst = plant_isr_instance(&Graph::empty(5), 2, 3).unwrap();
        assert_eq!(inst.source.len(), 2);
        assert_eq!(inst.target.len(), 2);
    }

    #[test]
    fn planted_path_endpoints_are_independent_pairs() {
        // Brute force: the independent 2-sets of P_4 (0-indexed).
        let p4 = path(4);
        let independent: Vec<VertexSet> = p4
            .vertices()
            .combinations(2)
            .map(|c| c.into_iter().collect::<VertexSet>())
            .filter(|s| is_feasible(&p4, Problem::Isr, s))
            .collect();
        assert_eq!(
            independent,
            vec![
                VertexSet::from([0, 2]),
                VertexSet::from([0, 3]),
                VertexSet::from([1, 3])
            ]
        );
        for seed in 0..20 {
            let inst = plant_isr_instance(&p4, 2, seed).unwrap();
            assert!(independent.contains(&inst.source));
            assert!(independent.contains(&inst.target));
        }
    }

    #[test]
    fn dominating_sets_of_a_star() {
        let sets = dominating_sets_of_size(&star(3), 1);
        assert_eq!(sets, vec![VertexSet::from([0])]);
        let inst = plant_dsr_instance(&star(3), 1, 9).unwrap();
        assert_eq!(inst.source, VertexSet::from([0]));
        assert!(plant_dsr_instance(&path(5), 1, 0).is_none());
    }
}
