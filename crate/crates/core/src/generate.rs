//! Seeded random series-parallel instance generation.
//!
//! Instances are grown from a single edge by two structure-preserving moves:
//! subdividing an edge (series) and adding a two-edge detour across an edge
//! (parallel). Several such two-terminal blocks can then be glued at shared
//! cut vertices, which exercises graphs whose biconnected components are
//! two-terminal series-parallel without being two-terminal as a whole.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::graph::{VertexId, WeightedGraph};

#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    /// Probability of a series step; the rest are parallel steps.
    pub series_bias: f64,
    /// Max number of parallel detours layered directly across one edge.
    pub max_parallel: usize,
    /// Glue several blocks at cut vertices instead of one biconnected body.
    pub glue: bool,
    /// Upper bound on the number of glued blocks.
    pub max_blocks: usize,
    /// Weights are drawn uniformly from `1..=max_weight`.
    pub max_weight: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            series_bias: 0.5,
            max_parallel: 3,
            glue: true,
            max_blocks: 4,
            max_weight: 1,
        }
    }
}

fn next_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn below(rng: &mut ChaCha8Rng, k: usize) -> usize {
    debug_assert!(k > 0);
    (rng.next_u64() % k as u64) as usize
}

/// Grows one two-terminal block with exactly `size >= 2` vertices, appending
/// fresh vertex ids from `alloc_from`. `anchor` becomes the block's first
/// vertex. Returns the edges and the number of fresh ids consumed.
fn grow_block(
    rng: &mut ChaCha8Rng,
    cfg: &GeneratorConfig,
    anchor: VertexId,
    alloc_from: VertexId,
    size: usize,
) -> (Vec<(VertexId, VertexId)>, usize) {
    debug_assert!(size >= 2);
    let mut fresh = alloc_from;
    let first_new = fresh;
    fresh += 1;
    let mut edges: Vec<(VertexId, VertexId)> = vec![(anchor, first_new)];
    // Count of detours layered directly on a given edge slot.
    let mut stacked: Vec<usize> = vec![0];
    for _ in 0..size - 2 {
        let idx = below(rng, edges.len());
        let (u, v) = edges[idx];
        let series = next_f64(rng) < cfg.series_bias || stacked[idx] >= cfg.max_parallel;
        let x = fresh;
        fresh += 1;
        if series {
            edges[idx] = (u, x);
            stacked[idx] = 0;
            edges.push((x, v));
            stacked.push(0);
        } else {
            stacked[idx] += 1;
            edges.push((u, x));
            stacked.push(0);
            edges.push((x, v));
            stacked.push(0);
        }
    }
    (edges, fresh - alloc_from)
}

/// Deterministically generates a connected series-parallel graph with
/// exactly `target_n >= 2` vertices.
pub fn generate_series_parallel(
    seed: u64,
    target_n: usize,
    cfg: &GeneratorConfig,
) -> WeightedGraph {
    assert!(target_n >= 2, "need at least two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Block sizes: the first block spends its whole size, later blocks share
    // one vertex with the existing graph and spend size - 1 fresh ids.
    let mut sizes: Vec<usize> = Vec::new();
    if cfg.glue && cfg.max_blocks > 1 && target_n >= 4 {
        let first = 2 + below(&mut rng, target_n - 1);
        sizes.push(first);
        let mut left = target_n - first;
        while left > 0 && sizes.len() < cfg.max_blocks {
            let s = 2 + below(&mut rng, left);
            sizes.push(s);
            left -= s - 1;
        }
        if left > 0 {
            *sizes.last_mut().unwrap() += left;
        }
    } else {
        sizes.push(target_n);
    }

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut total = 0usize;
    for (bi, &size) in sizes.iter().enumerate() {
        if bi == 0 {
            let (mut block, used) = grow_block(&mut rng, cfg, 0, 1, size);
            debug_assert_eq!(used + 1, size);
            edges.append(&mut block);
            total = size;
        } else {
            let anchor = below(&mut rng, total);
            let (mut block, used) = grow_block(&mut rng, cfg, anchor, total, size);
            debug_assert_eq!(used, size - 1);
            edges.append(&mut block);
            total += size - 1;
        }
    }
    debug_assert_eq!(total, target_n);

    let weighted: Vec<(VertexId, VertexId, u64)> = edges
        .into_iter()
        .map(|(u, v)| {
            let w = if cfg.max_weight > 1 {
                1 + below(&mut rng, cfg.max_weight as usize) as u64
            } else {
                1
            };
            (u, v, w)
        })
        .collect();
    WeightedGraph::new(target_n, &weighted).expect("generator emits a simple graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognize::is_series_parallel;

    #[test]
    fn smallest_instance_is_a_single_edge() {
        let g = generate_series_parallel(1, 2, &GeneratorConfig::default());
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn outputs_are_connected_series_parallel_and_sized() {
        let cfg = GeneratorConfig::default();
        for seed in 0..60 {
            let n = 2 + (seed as usize * 7) % 39;
            let g = generate_series_parallel(seed, n, &cfg);
            assert_eq!(g.vertex_count(), n, "seed {seed}");
            assert!(g.is_connected(), "seed {seed}");
            assert!(is_series_parallel(&g).is_series_parallel(), "seed {seed}");
        }
    }

    #[test]
    fn same_seed_same_graph() {
        let cfg = GeneratorConfig::default();
        let a = generate_series_parallel(42, 30, &cfg);
        let b = generate_series_parallel(42, 30, &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn no_k4_minor_in_seeded_outputs() {
        let cfg = GeneratorConfig::default();
        for seed in 0..200 {
            let n = 2 + (seed as usize) % 15;
            let g = generate_series_parallel(seed, n, &cfg);
            assert!(!crate::oracle::has_k4_minor(&g), "seed {seed}");
        }
    }
}
