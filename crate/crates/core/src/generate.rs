//! Seeded random layer generators (ER, Watts-Strogatz, random
//! geometric) for experiments and test instances.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::LayerGraph;

/// Erdos-Renyi graph G(n, p) with unit edge weights.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> LayerGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j, 1.0));
            }
        }
    }
    LayerGraph::new(n, edges).expect("generated edges are canonical")
}

/// Watts-Strogatz ring with `k` nearest neighbors per side and rewiring
/// probability `beta`.
pub fn watts_strogatz(n: usize, k: usize, beta: f64, seed: u64) -> LayerGraph {
    assert!(k >= 1 && 2 * k < n, "ring lattice needs 1 <= k < n/2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for t in 1..=k {
            let j = (i + t) % n;
            adjacency[i][j] = true;
            adjacency[j][i] = true;
        }
    }
    for i in 0..n {
        for t in 1..=k {
            let j = (i + t) % n;
            if rng.random::<f64>() < beta {
                // Rewire (i, j) to a fresh target.
                let candidates: Vec<usize> = (0..n)
                    .filter(|&v| v != i && !adjacency[i][v])
                    .collect();
                if candidates.is_empty() {
                    continue;
                }
                let target = candidates[rng.random_range(0..candidates.len())];
                adjacency[i][j] = false;
                adjacency[j][i] = false;
                adjacency[i][target] = true;
                adjacency[target][i] = true;
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if adjacency[i][j] {
                edges.push((i, j, 1.0));
            }
        }
    }
    LayerGraph::new(n, edges).expect("generated edges are canonical")
}

/// Random geometric graph on the unit square: uniform points, edges
/// between pairs within `radius`.
pub fn random_geometric(n: usize, radius: f64, seed: u64) -> LayerGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
        .collect();
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let dx = points[i].0 - points[j].0;
            let dy = points[i].1 - points[j].1;
            if dx * dx + dy * dy <= r2 {
                edges.push((i, j, 1.0));
            }
        }
    }
    LayerGraph::new(n, edges).expect("generated edges are canonical")
}

/// First connected geometric graph along a deterministic seed sequence.
pub fn connected_geometric(n: usize, radius: f64, seed: u64) -> LayerGraph {
    for attempt in 0..1000 {
        let layer = random_geometric(n, radius, seed.wrapping_add(attempt));
        if layer.is_connected() {
            return layer;
        }
    }
    panic!("no connected geometric graph within 1000 seeds; radius {radius} too small for n = {n}")
}

/// First connected ER graph along a deterministic seed sequence.
pub fn connected_erdos_renyi(n: usize, p: f64, seed: u64) -> LayerGraph {
    for attempt in 0..1000 {
        let layer = erdos_renyi(n, p, seed.wrapping_add(attempt));
        if layer.is_connected() {
            return layer;
        }
    }
    panic!("no connected ER graph within 1000 seeds; p {p} too small for n = {n}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(erdos_renyi(12, 0.4, 7), erdos_renyi(12, 0.4, 7));
        assert_eq!(
            random_geometric(12, 0.5, 7),
            random_geometric(12, 0.5, 7)
        );
        assert_eq!(
            watts_strogatz(12, 2, 0.3, 7),
            watts_strogatz(12, 2, 0.3, 7)
        );
    }

    #[test]
    fn connected_variants_are_connected() {
        assert!(connected_geometric(20, 0.35, 3).is_connected());
        assert!(connected_erdos_renyi(20, 0.2, 3).is_connected());
    }

    #[test]
    fn watts_strogatz_keeps_degree_budget() {
        let g = watts_strogatz(16, 2, 0.2, 11);
        // Rewiring preserves the edge count of the ring lattice.
        assert_eq!(g.edges().len(), 16 * 2);
    }
}
