//! Dual solution recovery and the graph-embedding view.
//!
//! The dual of the budgeted connectivity maximization is, after the
//! Gram substitution `X = U^T U`, a realization problem: place one
//! point per node with barycenter at the origin and unit total squared
//! norm so that `c nu + sum of intralayer squared distances` is
//! minimized, where `nu` caps every admissible interlayer squared
//! distance. Any such placement certifies an upper bound on the
//! achievable connectivity (weak duality); at the optimum the bound is
//! tight and the placement is supported on the lambda_2 eigencluster.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{GraphError, MultilayerNetwork};
use crate::matrix::{dot, norm, solve_linear, Matrix};
use crate::opt::{project_simplex, OptimizationResult};
use crate::spectra::{self, SpectraError, Spectrum};

/// Largest eigencluster the recovery will work with.
pub const MAX_CLUSTER: usize = 6;

/// Relative agreement demanded between the recovered dual objective and
/// the primal optimum.
pub const OBJECTIVE_TOL_REL: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error("lambda_2 eigencluster of size {0} exceeds the recovery cap of {MAX_CLUSTER}")]
    ClusterTooLarge(usize),
    #[error("dual objective {objective} deviates from lambda_2 = {lambda2} beyond tolerance")]
    DualityGapTooLarge { objective: f64, lambda2: f64 },
    #[error("scaling requires a positive connectivity, got {0}")]
    ZeroLambda(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Dual matrix, its Gram coordinates, and the interlink distance cap.
#[derive(Clone, Debug)]
pub struct EmbeddingSolution {
    /// One point per node, `N x d` with `d` = cluster size used.
    pub coordinates: Vec<Vec<f64>>,
    /// Interlink squared-distance cap (`nu = -xi >= 0`).
    pub nu: f64,
    /// Dense PSD dual matrix `X = U^T U`, trace one, `X 1 = 0`.
    pub dual_matrix: Matrix,
    /// `c nu + sum of weighted intralayer squared distances`.
    pub objective: f64,
}

/// Embedding and weights rescaled by `c lambda_2`.
#[derive(Clone, Debug)]
pub struct ScaledEmbedding {
    pub coordinates: Vec<Vec<f64>>,
    pub weights: BTreeMap<(usize, usize), f64>,
    pub mu_hat: f64,
    /// Largest per-interlink constraint value; feasible scalings stay
    /// at or below one.
    pub max_link_constraint: f64,
}

/// One failed embedding check.
#[derive(Clone, Debug, PartialEq)]
pub enum EmbedViolation {
    Centering { norm: f64 },
    Normalization { total: f64 },
    NotPsd { min_eigenvalue: f64 },
    Trace { trace: f64 },
    KernelComponent { norm: f64 },
    LinkDistance { pair: (usize, usize), distance2: f64, nu: f64 },
    Objective { objective: f64, lambda2: f64 },
    Slackness { pair: (usize, usize), distance2: f64, nu: f64 },
}

#[derive(Clone, Debug, Default)]
pub struct EmbeddingReport {
    pub violations: Vec<EmbedViolation>,
}

impl EmbeddingReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Working data for the restricted dual: an orthonormal basis of the
/// candidate eigenspace (orthogonal to the all-ones direction), the
/// per-pair coordinate differences, and the intralayer Gram matrix.
struct DualContext {
    basis: Vec<Vec<f64>>,
    pair_diffs: Vec<Vec<f64>>,
    intra: Matrix,
}

fn dual_context(
    network: &MultilayerNetwork,
    spectrum: &Spectrum,
    window: f64,
    cap: usize,
    enrich: bool,
) -> Option<DualContext> {
    let total = network.total_nodes();
    if spectrum.order() < 2 || total < 2 {
        return None;
    }
    let tol = spectrum.cluster_tolerance().max(window);
    let mut candidates = spectrum.fiedler_cluster(tol);
    if enrich {
        // Offer a few vectors beyond the strict cluster: the dual
        // optimum may live on an eigenspace the iterate has not
        // coalesced yet, and spurious directions cost nothing (their
        // S-weight can be zero).
        let floor = 3.min(spectrum.order().saturating_sub(1));
        let mut next = candidates.last().map(|&k| k + 1).unwrap_or(1);
        while candidates.len() < floor && next < spectrum.order() {
            candidates.push(next);
            next += 1;
        }
    }
    candidates.truncate(cap);

    // Orthogonalize against the all-ones direction and among themselves;
    // the dual constraints demand X 1 = 0 and an orthonormal basis keeps
    // trace(X) = trace(S).
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(candidates.len());
    for &k in &candidates {
        let mut v = spectrum.eigenvector(k).to_vec();
        let mean = v.iter().sum::<f64>() / total as f64;
        v.iter_mut().for_each(|x| *x -= mean);
        for b in &basis {
            let proj = dot(&v, b);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
        }
        let len = norm(&v);
        if len > 1e-10 {
            v.iter_mut().for_each(|x| *x /= len);
            basis.push(v);
        }
    }
    if basis.is_empty() {
        return None;
    }

    let q = basis.len();
    let n = network.n();
    let pairs = network.pattern().pairs();
    let mut pair_diffs = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        let diff: Vec<f64> = basis.iter().map(|b| b[i] - b[n + j]).collect();
        pair_diffs.push(diff);
    }

    let mut intra = Matrix::zeros(q);
    let mut accumulate = |gi: usize, gj: usize, w: f64| {
        let d: Vec<f64> = basis.iter().map(|b| b[gi] - b[gj]).collect();
        for a in 0..q {
            for b in 0..q {
                intra[(a, b)] += w * d[a] * d[b];
            }
        }
    };
    for &(i, j, w) in network.layer1().edges() {
        accumulate(i, j, w);
    }
    for &(i, j, w) in network.layer2().edges() {
        accumulate(n + i, n + j, w);
    }

    Some(DualContext {
        basis,
        pair_diffs,
        intra,
    })
}

/// `(nu, objective)` of a given trace-one PSD coefficient matrix.
fn evaluate(ctx: &DualContext, c: f64, s: &Matrix) -> (f64, f64) {
    let mut nu = 0.0f64;
    for d in &ctx.pair_diffs {
        let sd = s.matvec(d);
        nu = nu.max(dot(&sd, d));
    }
    let mut intra = 0.0;
    let q = s.order();
    for a in 0..q {
        for b in 0..q {
            intra += ctx.intra[(a, b)] * s[(a, b)];
        }
    }
    (nu, c * nu + intra)
}

/// Projection onto `{S symmetric PSD, trace(S) = 1}`.
fn project_spectraplex(s: &Matrix) -> Matrix {
    let q = s.order();
    if q == 1 {
        let mut out = Matrix::zeros(1);
        out[(0, 0)] = 1.0;
        return out;
    }
    let spectrum = spectra::full_spectrum(s).expect("S is symmetric by construction");
    let mut eigs: Vec<f64> = spectrum.eigenvalues().to_vec();
    project_simplex(&mut eigs, 1.0);
    let mut out = Matrix::zeros(q);
    for (k, &lam) in eigs.iter().enumerate() {
        if lam == 0.0 {
            continue;
        }
        let v = spectrum.eigenvector(k);
        for a in 0..q {
            for b in 0..q {
                out[(a, b)] += lam * v[a] * v[b];
            }
        }
    }
    out
}

/// Least-squares polish: equalize the scores of the active pairs.
///
/// At a primal-dual optimum every pair carrying weight has its squared
/// embedding distance exactly at `nu`, so the optimal `S` solves the
/// linear system `<d_p d_p^T, S> = nu` (active p), `trace(S) = 1`. The
/// least-squares solution, projected back onto the spectraplex, is an
/// excellent candidate near convergence.
fn polish_candidate(ctx: &DualContext, active: &[usize]) -> Option<Matrix> {
    let q = ctx.basis.len();
    if active.is_empty() {
        return None;
    }
    // Unknowns: the q(q+1)/2 entries of S (upper triangle) and nu.
    let unknowns = q * (q + 1) / 2 + 1;
    let rows = active.len() + 1;
    let mut design = vec![vec![0.0; unknowns]; rows];
    let mut rhs = vec![0.0; rows];
    for (r, &p) in active.iter().enumerate() {
        let d = &ctx.pair_diffs[p];
        let mut c = 0;
        for a in 0..q {
            for b in a..q {
                let factor = if a == b { d[a] * d[b] } else { 2.0 * d[a] * d[b] };
                design[r][c] = factor;
                c += 1;
            }
        }
        design[r][unknowns - 1] = -1.0;
    }
    {
        let r = rows - 1;
        let mut c = 0;
        for a in 0..q {
            for b in a..q {
                design[r][c] = if a == b { 1.0 } else { 0.0 };
                c += 1;
            }
        }
        rhs[r] = 1.0;
    }

    // Normal equations with a tiny ridge; the system is at most 22x22.
    let mut ata = Matrix::zeros(unknowns);
    let mut atb = vec![0.0; unknowns];
    for (row, &b) in design.iter().zip(&rhs) {
        for i in 0..unknowns {
            atb[i] += row[i] * b;
            for j in 0..unknowns {
                ata[(i, j)] += row[i] * row[j];
            }
        }
    }
    for i in 0..unknowns {
        ata[(i, i)] += 1e-12;
    }
    let x = solve_linear(&ata, &atb)?;
    let mut s = Matrix::zeros(q);
    let mut c = 0;
    for a in 0..q {
        for b in a..q {
            s[(a, b)] = x[c];
            s[(b, a)] = x[c];
            c += 1;
        }
    }
    Some(project_spectraplex(&s))
}

/// Minimizes `c max_p <d_p d_p^T, S> + <A, S>` over the spectraplex.
/// Returns `(S, nu, objective)` for the best iterate seen.
fn minimize_dual(
    ctx: &DualContext,
    c: f64,
    active: Option<&[usize]>,
    descent_iters: usize,
) -> (Matrix, f64, f64) {
    let q = ctx.basis.len();
    let mut best_s = Matrix::identity(q);
    best_s.scale(1.0 / q as f64);
    let (mut best_nu, mut best_obj) = evaluate(ctx, c, &best_s);

    let consider = |s: Matrix, best_s: &mut Matrix, best_nu: &mut f64, best_obj: &mut f64| {
        let (nu, obj) = evaluate(ctx, c, &s);
        if obj < *best_obj {
            *best_s = s;
            *best_nu = nu;
            *best_obj = obj;
        }
    };

    for k in 0..q {
        let mut s = Matrix::zeros(q);
        s[(k, k)] = 1.0;
        consider(s, &mut best_s, &mut best_nu, &mut best_obj);
    }
    if let Some(active) = active {
        if let Some(s) = polish_candidate(ctx, active) {
            consider(s, &mut best_s, &mut best_nu, &mut best_obj);
        }
    }

    if q == 1 || descent_iters == 0 {
        return (best_s, best_nu, best_obj);
    }

    // Projected subgradient descent from the best candidate so far.
    let mut s = best_s.clone();
    let scale: f64 = {
        let max_d2 = ctx
            .pair_diffs
            .iter()
            .map(|d| dot(d, d))
            .fold(0.0f64, f64::max);
        (c * max_d2 + ctx.intra.max_abs()).max(1e-9)
    };
    for t in 1..=descent_iters {
        // Subgradient: c d* d*^T + A at the lexicographically first
        // maximizing pair.
        let mut arg = 0usize;
        let mut top = f64::NEG_INFINITY;
        for (p, d) in ctx.pair_diffs.iter().enumerate() {
            let val = dot(&s.matvec(d), d);
            if val > top {
                top = val;
                arg = p;
            }
        }
        let mut g = ctx.intra.clone();
        let d = &ctx.pair_diffs[arg];
        for a in 0..q {
            for b in 0..q {
                g[(a, b)] += c * d[a] * d[b];
            }
        }
        let step = 1.0 / (scale * (t as f64).sqrt());
        let mut next = s.clone();
        next.add_scaled(&g, -step);
        s = project_spectraplex(&next);
        consider(s.clone(), &mut best_s, &mut best_nu, &mut best_obj);
    }
    (best_s, best_nu, best_obj)
}

/// A dual-feasible point evaluated against the admissible pairs.
pub(crate) struct DualCertificate {
    /// Valid upper bound on the maximum connectivity at this budget.
    pub upper: f64,
    /// Per-pair scores `<X, B_ij>` of the certifying dual matrix; the
    /// certificate-aligned supergradient of the primal.
    pub pair_scores: Vec<f64>,
}

/// Dual certificate at budget `c` from eigenvectors within `widening`
/// of the current lambda_2: a valid upper bound plus the dual matrix's
/// per-pair scores. `weights` (pattern-aligned), when given, guide the
/// active-set polish.
pub(crate) fn dual_certificate(
    network: &MultilayerNetwork,
    c: f64,
    spectrum: &Spectrum,
    widening: f64,
    weights: Option<&[f64]>,
) -> Option<DualCertificate> {
    let ctx = dual_context(network, spectrum, widening, MAX_CLUSTER, true)?;
    let active = weights.map(active_pairs);
    let iters = 60 * ctx.basis.len();
    let (s, _, obj) = minimize_dual(&ctx, c, active.as_deref(), iters);
    let pair_scores = ctx
        .pair_diffs
        .iter()
        .map(|d| dot(&s.matvec(d), d))
        .collect();
    Some(DualCertificate {
        upper: obj,
        pair_scores,
    })
}

fn active_pairs(weights: &[f64]) -> Vec<usize> {
    let total: f64 = weights.iter().sum();
    let tol = 1e-10 * 1.0f64.max(total);
    weights
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > tol)
        .map(|(p, _)| p)
        .collect()
}

/// Recovers the dual matrix, coordinates and objective from a converged
/// optimization result.
pub fn recover_embedding(
    network: &MultilayerNetwork,
    result: &OptimizationResult,
) -> Result<EmbeddingSolution, EmbedError> {
    let supra = crate::graph::build_supra_laplacian(network, &result.assignment)?;
    let spectrum = spectra::full_spectrum(supra.matrix())?;
    let cluster = spectrum.fiedler_cluster(spectrum.cluster_tolerance());
    if cluster.len() > MAX_CLUSTER {
        return Err(EmbedError::ClusterTooLarge(cluster.len()));
    }
    let ctx = dual_context(network, &spectrum, 0.0, MAX_CLUSTER, false)
        .expect("networks with at least two nodes admit a dual basis");
    let c = result.assignment.budget();
    let values = crate::opt::values_from_assignment(network.pattern(), &result.assignment);
    let active = active_pairs(&values);
    let q = ctx.basis.len();
    let (s, nu, objective) = minimize_dual(&ctx, c, Some(&active), 200 * q);

    let lambda2 = result.lambda2_star;
    if (objective - lambda2).abs() > OBJECTIVE_TOL_REL * 1.0f64.max(lambda2.abs()) {
        return Err(EmbedError::DualityGapTooLarge { objective, lambda2 });
    }

    // Coordinates: rows of S^{1/2} V^T, one point per node.
    let s_spec = spectra::full_spectrum(&s)?;
    let total = network.total_nodes();
    let mut coordinates = vec![vec![0.0; q]; total];
    for axis in 0..q {
        let lam = s_spec.eigenvalues()[axis].max(0.0);
        let root = lam.sqrt();
        if root == 0.0 {
            continue;
        }
        let sv = s_spec.eigenvector(axis);
        for (node, coord) in coordinates.iter_mut().enumerate() {
            let mut proj = 0.0;
            for (k, b) in ctx.basis.iter().enumerate() {
                proj += sv[k] * b[node];
            }
            coord[axis] = root * proj;
        }
    }

    let mut dual_matrix = Matrix::zeros(total);
    for i in 0..total {
        for j in 0..total {
            dual_matrix[(i, j)] = dot(&coordinates[i], &coordinates[j]);
        }
    }

    Ok(EmbeddingSolution {
        coordinates,
        nu,
        dual_matrix,
        objective,
    })
}

/// Checks the dual constraints of a candidate embedding and the
/// complementary-slackness condition against the optimized weights.
/// Violations are listed, not raised.
pub fn verify_embedding(
    network: &MultilayerNetwork,
    result: &OptimizationResult,
    solution: &EmbeddingSolution,
) -> EmbeddingReport {
    let mut violations = Vec::new();
    let total = network.total_nodes();
    let n = network.n();
    let c = result.assignment.budget();
    let d = solution
        .coordinates
        .first()
        .map(|p| p.len())
        .unwrap_or(0);

    let mut centroid = vec![0.0; d];
    let mut total_norm2 = 0.0;
    for point in &solution.coordinates {
        for (acc, &x) in centroid.iter_mut().zip(point) {
            *acc += x;
        }
        total_norm2 += dot(point, point);
    }
    let centroid_norm = norm(&centroid);
    if centroid_norm > 1e-8 {
        violations.push(EmbedViolation::Centering {
            norm: centroid_norm,
        });
    }
    if (total_norm2 - 1.0).abs() > 1e-8 {
        violations.push(EmbedViolation::Normalization { total: total_norm2 });
    }

    match spectra::full_spectrum(&solution.dual_matrix) {
        Ok(spec) => {
            let min_eig = spec.eigenvalues()[0];
            if min_eig < -1e-8 {
                violations.push(EmbedViolation::NotPsd {
                    min_eigenvalue: min_eig,
                });
            }
        }
        Err(_) => violations.push(EmbedViolation::NotPsd {
            min_eigenvalue: f64::NAN,
        }),
    }
    let trace = solution.dual_matrix.trace();
    if (trace - 1.0).abs() > 1e-8 {
        violations.push(EmbedViolation::Trace { trace });
    }
    let ones = vec![1.0; total];
    let kernel_norm = norm(&solution.dual_matrix.matvec(&ones));
    if kernel_norm > 1e-8 {
        violations.push(EmbedViolation::KernelComponent { norm: kernel_norm });
    }

    for &(i, j) in network.pattern().pairs() {
        let distance2 = squared_distance(&solution.coordinates[i], &solution.coordinates[n + j]);
        if distance2 > solution.nu + 1e-8 {
            violations.push(EmbedViolation::LinkDistance {
                pair: (i, j),
                distance2,
                nu: solution.nu,
            });
        }
    }

    let lambda2 = result.lambda2_star;
    if (solution.objective - lambda2).abs() > OBJECTIVE_TOL_REL * 1.0f64.max(lambda2.abs()) {
        violations.push(EmbedViolation::Objective {
            objective: solution.objective,
            lambda2,
        });
    }

    let weight_floor = 1e-8 * 1.0f64.max(c);
    for (&(i, j), &w) in result.assignment.iter() {
        if w <= weight_floor {
            continue;
        }
        let distance2 = squared_distance(&solution.coordinates[i], &solution.coordinates[n + j]);
        if (distance2 - solution.nu).abs() > 1e-6 {
            violations.push(EmbedViolation::Slackness {
                pair: (i, j),
                distance2,
                nu: solution.nu,
            });
        }
    }

    EmbeddingReport { violations }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Numerical rank of the dual matrix at tolerance `tol`; bounded by the
/// Fiedler multiplicity of the optimized supra-Laplacian.
pub fn embedding_dimension(solution: &EmbeddingSolution, tol: f64) -> usize {
    match spectra::full_spectrum(&solution.dual_matrix) {
        Ok(spec) => spec.eigenvalues().iter().filter(|&&l| l > tol).count(),
        Err(_) => 0,
    }
}

/// Rescales the embedding and weights by `c lambda_2` (the form whose
/// per-interlink constraints are capped at one).
pub fn scale_solution(
    network: &MultilayerNetwork,
    result: &OptimizationResult,
    solution: &EmbeddingSolution,
) -> Result<ScaledEmbedding, EmbedError> {
    let lambda2 = result.lambda2_star;
    if lambda2 <= 0.0 {
        return Err(EmbedError::ZeroLambda(lambda2));
    }
    let c = result.assignment.budget();
    let root = lambda2.sqrt();
    let coordinates: Vec<Vec<f64>> = solution
        .coordinates
        .iter()
        .map(|p| p.iter().map(|x| x / root).collect())
        .collect();
    let weights: BTreeMap<(usize, usize), f64> = result
        .assignment
        .iter()
        .map(|(&pair, &w)| (pair, w / (c * lambda2)))
        .collect();

    let n = network.n();
    let mut intra = 0.0;
    for &(i, j, w) in network.layer1().edges() {
        intra += w * squared_distance(&coordinates[i], &coordinates[j]);
    }
    for &(i, j, w) in network.layer2().edges() {
        intra += w * squared_distance(&coordinates[n + i], &coordinates[n + j]);
    }
    let mut max_link_constraint = f64::NEG_INFINITY;
    for &(i, j) in network.pattern().pairs() {
        let d2 = squared_distance(&coordinates[i], &coordinates[n + j]);
        max_link_constraint = max_link_constraint.max(c * d2 + intra);
    }

    Ok(ScaledEmbedding {
        coordinates,
        weights,
        mu_hat: result.mu / (c * lambda2),
        max_link_constraint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{InterlayerPattern, LayerGraph, MultilayerNetwork};
    use crate::opt::{maximize_lambda2, SolverOptions};

    fn k2() -> LayerGraph {
        LayerGraph::new(2, vec![(0, 1, 1.0)]).unwrap()
    }

    fn two_k2_all_pairs() -> MultilayerNetwork {
        MultilayerNetwork::new(k2(), k2(), InterlayerPattern::all_pairs(2, 2)).unwrap()
    }

    #[test]
    fn clumped_embedding_below_threshold() {
        // c* = 4 for two K2 layers all-pairs; at c = 1 the embedding
        // clumps each layer at +/- m h with h = 1/sqrt(nm(n+m)).
        let network = two_k2_all_pairs();
        let result = maximize_lambda2(&network, 1.0, &SolverOptions::default()).unwrap();
        let solution = recover_embedding(&network, &result).unwrap();
        let h = 1.0 / ((2.0 * 2.0 * 4.0) as f64).sqrt();
        assert_eq!(solution.coordinates[0].len(), 1);
        let sign = solution.coordinates[0][0].signum();
        for i in 0..2 {
            assert!((solution.coordinates[i][0] - sign * 2.0 * h).abs() < 1e-9);
        }
        for i in 2..4 {
            assert!((solution.coordinates[i][0] + sign * 2.0 * h).abs() < 1e-9);
        }
        assert!((solution.objective - result.lambda2_star).abs() < 1e-9);
        assert_eq!(embedding_dimension(&solution, 1e-9), 1);
        assert!(verify_embedding(&network, &result, &solution).is_ok());
    }

    #[test]
    fn translated_coordinates_violate_centering() {
        let network = two_k2_all_pairs();
        let result = maximize_lambda2(&network, 1.0, &SolverOptions::default()).unwrap();
        let mut solution = recover_embedding(&network, &result).unwrap();
        for point in &mut solution.coordinates {
            point[0] += 0.25;
        }
        let report = verify_embedding(&network, &result, &solution);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, EmbedViolation::Centering { .. })));
    }

    #[test]
    fn scaled_solution_invariants() {
        let network = two_k2_all_pairs();
        let result = maximize_lambda2(&network, 1.0, &SolverOptions::default()).unwrap();
        let solution = recover_embedding(&network, &result).unwrap();
        let scaled = scale_solution(&network, &result, &solution).unwrap();
        let lambda2 = result.lambda2_star;
        let weight_sum: f64 = scaled.weights.values().sum();
        assert!((weight_sum - 1.0 / lambda2).abs() < 1e-6);
        let norm2: f64 = scaled.coordinates.iter().map(|p| dot(p, p)).sum();
        assert!((norm2 - 1.0 / lambda2).abs() < 1e-6);
        assert!(scaled.max_link_constraint <= 1.0 + 1e-8);
    }

    #[test]
    fn zero_lambda_rejected() {
        let network = two_k2_all_pairs();
        let result = maximize_lambda2(&network, 0.0, &SolverOptions::default()).unwrap();
        // Build a degenerate solution by hand; scaling must refuse.
        let solution = EmbeddingSolution {
            coordinates: vec![vec![0.0]; 4],
            nu: 0.0,
            dual_matrix: Matrix::zeros(4),
            objective: 0.0,
        };
        assert!(matches!(
            scale_solution(&network, &result, &solution),
            Err(EmbedError::ZeroLambda(_))
        ));
        assert_eq!(embedding_dimension(&solution, 1e-12), 0);
    }
}
