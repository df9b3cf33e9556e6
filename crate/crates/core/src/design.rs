//! Structure design tools: first-order perturbation predictions past a
//! transition and greedy interlink placement.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{
    build_supra_laplacian, GraphError, MultilayerNetwork, LayerGraph, WeightAssignment,
};
use crate::matrix::{norm, Matrix};
use crate::spectra::{self, SpectraError};

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("base eigenvector must be unit norm, got |x0| = {0}")]
    NotUnitNorm(f64),
    #[error("perturbation matrix must be symmetric with zero row sums (defect {0:e})")]
    BadPerturbation(f64),
    #[error("requested {requested} interlinks but only {available} admissible pairs exist")]
    ExhaustedPairs { requested: usize, available: usize },
    #[error("edge weight w0 must be positive when r > 0, got {0}")]
    NonpositiveWeight(f64),
    #[error("average Laplacian requires equal layer sizes, got {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Base eigenpair plus a budget perturbation direction.
#[derive(Clone, Debug)]
pub struct PerturbationInput {
    pub base_eigenvalue: f64,
    pub base_eigenvector: Vec<f64>,
    /// Laplacian increment built from the interlink increment `W'`.
    pub perturbation: Matrix,
    pub epsilon: f64,
    pub base_budget: f64,
    pub budget_increment: f64,
}

impl PerturbationInput {
    pub fn new(
        base_eigenvalue: f64,
        base_eigenvector: Vec<f64>,
        perturbation: Matrix,
        epsilon: f64,
        base_budget: f64,
        budget_increment: f64,
    ) -> Result<Self, DesignError> {
        let len = norm(&base_eigenvector);
        if (len - 1.0).abs() > 1e-10 {
            return Err(DesignError::NotUnitNorm(len));
        }
        let mut defect = perturbation.asymmetry();
        for i in 0..perturbation.order() {
            let row_sum: f64 = perturbation.row(i).iter().sum();
            defect = defect.max(row_sum.abs());
        }
        if defect > 1e-9 * 1.0f64.max(perturbation.max_abs()) {
            return Err(DesignError::BadPerturbation(defect));
        }
        Ok(PerturbationInput {
            base_eigenvalue,
            base_eigenvector,
            perturbation,
            epsilon,
            base_budget,
            budget_increment,
        })
    }
}

/// Laplacian increment `[diag(W' 1_m), -W'; -W'^T, diag(W'^T 1_n)]` for
/// an interlink weight increment.
pub fn perturbation_from_weights(
    n: usize,
    m: usize,
    wprime: &BTreeMap<(usize, usize), f64>,
) -> Matrix {
    let mut l = Matrix::zeros(n + m);
    for (&(i, j), &w) in wprime {
        let gj = n + j;
        l[(i, i)] += w;
        l[(gj, gj)] += w;
        l[(i, gj)] -= w;
        l[(gj, i)] -= w;
    }
    l
}

/// First-order eigenvalue increment `x0^T L' x0 / |x0|^2`.
pub fn rayleigh_increment(input: &PerturbationInput) -> f64 {
    let x = &input.base_eigenvector;
    input.perturbation.quadratic_form(x) / crate::matrix::dot(x, x)
}

/// Which layer's Fiedler vector drives the post-threshold increment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerSide {
    Layer1,
    Layer2,
}

/// Post-threshold connectivity increment from a layer Fiedler vector
/// and the per-node totals of the weight increment: the quadratic form
/// of `diag` of the relevant totals of `W'`.
pub fn post_threshold_increment(
    fiedler_vec: &[f64],
    wprime: &BTreeMap<(usize, usize), f64>,
    side: LayerSide,
) -> f64 {
    debug_assert!((norm(fiedler_vec) - 1.0).abs() < 1e-8);
    let mut totals = vec![0.0; fiedler_vec.len()];
    for (&(i, j), &w) in wprime {
        let idx = match side {
            LayerSide::Layer1 => i,
            LayerSide::Layer2 => j,
        };
        totals[idx] += w;
    }
    fiedler_vec
        .iter()
        .zip(&totals)
        .map(|(v, t)| v * v * t)
        .sum()
}

/// Greedy interlink placement plan.
#[derive(Clone, Debug)]
pub struct GreedyPlan {
    /// Edges in the order they were added.
    pub added_edges: Vec<(usize, usize)>,
    /// Weight of every added edge.
    pub w0: f64,
    /// Algebraic connectivity after each addition.
    pub lambda2_trace: Vec<f64>,
}

/// Adds `r` interlinks one at a time, picking the admissible pair with
/// the largest Fiedler score `(v_i - v_j)^2` of the current
/// supra-Laplacian; degenerate clusters use the cluster-averaged
/// projector instead of a single vector. Ties break lexicographically.
pub fn greedy_interlinks(
    network: &MultilayerNetwork,
    r: usize,
    w0: f64,
) -> Result<GreedyPlan, DesignError> {
    let candidates = network.pattern().pairs();
    if r > candidates.len() {
        return Err(DesignError::ExhaustedPairs {
            requested: r,
            available: candidates.len(),
        });
    }
    if r > 0 && w0 <= 0.0 {
        return Err(DesignError::NonpositiveWeight(w0));
    }

    let n = network.n();
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(r);
    let mut used = vec![false; candidates.len()];
    let mut trace = Vec::with_capacity(r);

    for _ in 0..r {
        let weights: BTreeMap<(usize, usize), f64> =
            chosen.iter().map(|&p| (p, w0)).collect();
        let assignment = WeightAssignment::new(weights, w0 * chosen.len() as f64)?;
        let supra = build_supra_laplacian(network, &assignment)?;
        let spectrum = spectra::full_spectrum(supra.matrix())?;
        let cluster = spectrum.fiedler_cluster(spectrum.cluster_tolerance());
        let q = cluster.len().max(1) as f64;

        let mut best_idx = None;
        let mut best_score = f64::NEG_INFINITY;
        for (idx, &(i, j)) in candidates.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let mut score = 0.0;
            for &k in &cluster {
                let v = spectrum.eigenvector(k);
                let d = v[i] - v[n + j];
                score += d * d / q;
            }
            if score > best_score {
                best_score = score;
                best_idx = Some(idx);
            }
        }
        let idx = best_idx.expect("r <= available pairs leaves a candidate");
        used[idx] = true;
        chosen.push(candidates[idx]);

        let weights: BTreeMap<(usize, usize), f64> =
            chosen.iter().map(|&p| (p, w0)).collect();
        let assignment = WeightAssignment::new(weights, w0 * chosen.len() as f64)?;
        let supra = build_supra_laplacian(network, &assignment)?;
        let spectrum = spectra::full_spectrum(supra.matrix())?;
        trace.push(spectrum.lambda2());
    }

    Ok(GreedyPlan {
        added_edges: chosen,
        w0,
        lambda2_trace: trace,
    })
}

/// The one-to-one super-diffusion discriminator: true iff the average
/// Laplacian `(L1 + L2)/2` beats both layers' connectivities.
pub fn average_laplacian_condition(
    layer1: &LayerGraph,
    layer2: &LayerGraph,
) -> Result<bool, DesignError> {
    if layer1.node_count() != layer2.node_count() {
        return Err(DesignError::SizeMismatch(
            layer1.node_count(),
            layer2.node_count(),
        ));
    }
    let mut average = layer1.laplacian();
    average.add_scaled(&layer2.laplacian(), 1.0);
    average.scale(0.5);
    let l2_avg = spectra::fiedler(&average)?.lambda2;
    let l21 = spectra::fiedler(&layer1.laplacian())?.lambda2;
    let l22 = spectra::fiedler(&layer2.laplacian())?.lambda2;
    Ok(l2_avg > l21.max(l22))
}
