//! Analytic results: the budget upper bound, regularity feasibility,
//! uniform all-pairs spectra, transition thresholds with case
//! classification, super-diffusion windows, and the layer-Fiedler
//! upper bounds.

use thiserror::Error;

use crate::flow::MaxFlow;
use crate::graph::{GraphError, InterlayerPattern, WeightAssignment};
use crate::matrix::norm;
use crate::spectra::{FiedlerData, Spectrum};

/// Specific connectivities closer than this are treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Row/column-sum tolerance for regularity witnesses: `1e-9 * max(1, c)`.
pub const REGULARITY_TOL_REL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum ClosedFormError {
    #[error("degenerate case: specific connectivities {0} and {1} coincide")]
    DegenerateCase(f64, f64),
    #[error("layer algebraic connectivity must be positive, got {0}")]
    VanishingConnectivity(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which branch geometry the uniform all-pairs connectivity curve follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    /// Two transitions: the bound branch, then the weaker-layer branch,
    /// then the stronger-layer branch.
    Case1,
    /// One transition onto the layer-1 branch.
    Case2,
    /// One transition onto the layer-2 branch.
    Case3,
    /// Equal specific connectivities; not classified.
    Degenerate,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseLabel::Case1 => "case1",
            CaseLabel::Case2 => "case2",
            CaseLabel::Case3 => "case3",
            CaseLabel::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// Transition budgets of the uniform all-pairs connectivity curve.
#[derive(Clone, Debug)]
pub struct ThresholdReport {
    pub case_label: CaseLabel,
    pub c_star: f64,
    /// Second transition; present only for [`CaseLabel::Case1`].
    pub c_star_star: Option<f64>,
    /// Text tags naming the formulas that produced the numbers.
    pub formulas_used: Vec<String>,
}

/// Outcome of the regularity feasibility check.
#[derive(Clone, Debug)]
pub struct RegularityWitness {
    pub feasible: bool,
    /// A nonnegative assignment with row sums `c/n` and column sums `c/m`,
    /// supported on the admissible set, when one exists.
    pub weights: Option<WeightAssignment>,
}

/// Super-diffusion achievability below the first transition.
#[derive(Clone, Debug)]
pub struct SuperdiffusionReport {
    pub condition_holds: bool,
    pub case_label: CaseLabel,
    /// The three chained quantities `(left, middle, right)`; the condition
    /// holds iff `left < middle < right` strictly.
    pub inequality_values: (f64, f64, f64),
}

/// Budget upper bound `(1/n + 1/m) c` on the maximum algebraic
/// connectivity, independent of the interconnection pattern.
pub fn upper_bound_f(n: usize, m: usize, c: f64) -> f64 {
    (1.0 / n as f64 + 1.0 / m as f64) * c
}

/// Decides feasibility of nonnegative weights on the admissible set with
/// row sums `c/n` and column sums `c/m`, and produces a witness when
/// feasible.
///
/// Scale-invariance makes the test exact: supplies are `m` units per
/// layer-1 node and demands `n` units per layer-2 node, so feasibility
/// reduces to an integer max-flow saturating `n * m` units.
pub fn regularity_witness(
    pattern: &InterlayerPattern,
    n: usize,
    m: usize,
    c: f64,
) -> RegularityWitness {
    if c == 0.0 {
        return RegularityWitness {
            feasible: true,
            weights: Some(WeightAssignment::zero()),
        };
    }
    if pattern.is_empty() || n == 0 || m == 0 {
        return RegularityWitness {
            feasible: false,
            weights: None,
        };
    }

    // Uniform weights are the preferred witness when they happen to be
    // regular (all-pairs, k-to-k, one-to-one).
    if let Ok(uniform) = WeightAssignment::uniform(pattern, c) {
        if is_regular(&uniform, n, m, c) {
            return RegularityWitness {
                feasible: true,
                weights: Some(uniform),
            };
        }
    }

    let source = 0;
    let sink = n + m + 1;
    let mut flow = MaxFlow::new(n + m + 2);
    for i in 0..n {
        flow.add_edge(source, 1 + i, m as i64);
    }
    let total = (n * m) as i64;
    let mut handles = Vec::with_capacity(pattern.len());
    for &(i, j) in pattern.pairs() {
        handles.push(((i, j), flow.add_edge(1 + i, 1 + n + j, total)));
    }
    for j in 0..m {
        flow.add_edge(1 + n + j, sink, n as i64);
    }
    if flow.max_flow(source, sink) != total {
        return RegularityWitness {
            feasible: false,
            weights: None,
        };
    }
    let unit = c / total as f64;
    let mut weights = std::collections::BTreeMap::new();
    for (pair, handle) in handles {
        let f = flow.flow_on(handle, total);
        if f > 0 {
            weights.insert(pair, f as f64 * unit);
        }
    }
    let sum: f64 = weights.values().sum();
    let assignment = WeightAssignment::new(weights, sum)
        .expect("max-flow witness weights are nonnegative and sum to their budget");
    RegularityWitness {
        feasible: true,
        weights: Some(assignment),
    }
}

/// True when the assignment has row sums `c/n` and column sums `c/m`
/// within `1e-9 * max(1, c)`.
pub fn is_regular(assignment: &WeightAssignment, n: usize, m: usize, c: f64) -> bool {
    let (rows, cols) = assignment.node_totals(n, m);
    let tol = REGULARITY_TOL_REL * 1.0f64.max(c.abs());
    let row_target = c / n as f64;
    let col_target = c / m as f64;
    rows.iter().all(|&r| (r - row_target).abs() <= tol)
        && cols.iter().all(|&r| (r - col_target).abs() <= tol)
}

/// Full spectrum of the supra-Laplacian under uniform all-pairs weights:
/// `{0} U {lambda_i^(1) + c/n} U {lambda_j^(2) + c/m} U {(1/n + 1/m) c}`,
/// with the matching eigenvectors, sorted ascending.
pub fn uniform_allpairs_spectrum(
    spec1: &Spectrum,
    spec2: &Spectrum,
    n: usize,
    m: usize,
    c: f64,
) -> Spectrum {
    let total = n + m;
    let mut pairs: Vec<(f64, Vec<f64>)> = Vec::with_capacity(total);

    let kernel = vec![1.0 / (total as f64).sqrt(); total];
    pairs.push((0.0, kernel));

    // The lifted layer eigenvectors must be orthogonal to the ones
    // vector; for disconnected layers the kernel basis may not come out
    // 1-aligned, so realign it here (a no-op for connected layers).
    let align = |v: &[f64]| -> Vec<f64> {
        let len = v.len() as f64;
        let mean = v.iter().sum::<f64>() / len;
        if mean.abs() < 1e-12 {
            return v.to_vec();
        }
        let shifted: Vec<f64> = v.iter().map(|x| x - mean).collect();
        let norm = shifted.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-9 {
            return v.to_vec();
        }
        shifted.iter().map(|x| x / norm).collect()
    };

    for k in 1..n {
        let mut v = vec![0.0; total];
        v[..n].copy_from_slice(&align(spec1.eigenvector(k)));
        pairs.push((spec1.eigenvalues()[k] + c / n as f64, v));
    }
    for k in 1..m {
        let mut v = vec![0.0; total];
        v[n..].copy_from_slice(&align(spec2.eigenvector(k)));
        pairs.push((spec2.eigenvalues()[k] + c / m as f64, v));
    }

    let h = 1.0 / ((n * m * total) as f64).sqrt();
    let mut balanced = vec![m as f64 * h; total];
    for entry in balanced.iter_mut().skip(n) {
        *entry = -(n as f64) * h;
    }
    pairs.push((upper_bound_f(n, m, c), balanced));

    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (eigenvalues, vectors) = pairs.into_iter().unzip();
    Spectrum::from_parts(eigenvalues, vectors)
}

/// Algebraic connectivity under uniform all-pairs weights:
/// `min((1/n + 1/m) c, l21 + c/n, l22 + c/m)`.
pub fn uniform_lambda2(l21: f64, l22: f64, n: usize, m: usize, c: f64) -> f64 {
    upper_bound_f(n, m, c)
        .min(l21 + c / n as f64)
        .min(l22 + c / m as f64)
}

/// Transition thresholds of the uniform all-pairs curve.
///
/// The classification follows the branch geometry of the three lines in
/// [`uniform_lambda2`]. The conventional cases assume layer 1 holds the
/// larger specific connectivity; when the roles are reversed with
/// `m > n` the two-transition geometry reappears with the layers
/// swapped and is reported as `Case1` with the mirrored formulas.
pub fn thresholds_allpairs(
    l21: f64,
    l22: f64,
    n: usize,
    m: usize,
) -> Result<ThresholdReport, ClosedFormError> {
    if l21 <= 0.0 {
        return Err(ClosedFormError::VanishingConnectivity(l21));
    }
    if l22 <= 0.0 {
        return Err(ClosedFormError::VanishingConnectivity(l22));
    }
    let (nf, mf) = (n as f64, m as f64);
    let s1 = l21 / nf;
    let s2 = l22 / mf;
    if (s1 - s2).abs() <= DEGENERACY_TOL {
        return Err(ClosedFormError::DegenerateCase(s1, s2));
    }

    if s1 > s2 {
        // Bound branch meets the layer-2 branch first.
        let c_star = nf * l22;
        if n > m {
            let c_star_star = (l21 - l22) / (1.0 / mf - 1.0 / nf);
            Ok(ThresholdReport {
                case_label: CaseLabel::Case1,
                c_star,
                c_star_star: Some(c_star_star),
                formulas_used: vec![
                    "c* = n l2(2)".into(),
                    "c** = (1/m - 1/n)^-1 (l2(1) - l2(2))".into(),
                ],
            })
        } else {
            Ok(ThresholdReport {
                case_label: CaseLabel::Case3,
                c_star,
                c_star_star: None,
                formulas_used: vec!["c* = n l2(2)".into()],
            })
        }
    } else {
        // Bound branch meets the layer-1 branch first.
        let c_star = mf * l21;
        if m > n {
            let c_star_star = (l22 - l21) / (1.0 / nf - 1.0 / mf);
            Ok(ThresholdReport {
                case_label: CaseLabel::Case1,
                c_star,
                c_star_star: Some(c_star_star),
                formulas_used: vec![
                    "c* = m l2(1)".into(),
                    "c** = (1/n - 1/m)^-1 (l2(2) - l2(1))".into(),
                ],
            })
        } else {
            Ok(ThresholdReport {
                case_label: CaseLabel::Case2,
                c_star,
                c_star_star: None,
                formulas_used: vec!["c* = m l2(1)".into()],
            })
        }
    }
}

/// Whether super-diffusion is achievable at some budget `c <= c*`.
///
/// Strict inequalities on exact computed reals: the window is open and
/// its boundary is excluded.
pub fn superdiffusion_window(l21: f64, l22: f64, n: usize, m: usize) -> SuperdiffusionReport {
    let (nf, mf) = (n as f64, m as f64);
    let s1 = l21 / nf;
    let s2 = l22 / mf;
    let degenerate = (s1 - s2).abs() <= DEGENERACY_TOL;
    if degenerate || s1 > s2 {
        // Cases 1 and 3 share the chain l22/m < l21/n < (1/n + 1/m) l22.
        let right = (1.0 / nf + 1.0 / mf) * l22;
        let label = if degenerate {
            CaseLabel::Degenerate
        } else if n > m {
            CaseLabel::Case1
        } else {
            CaseLabel::Case3
        };
        SuperdiffusionReport {
            condition_holds: !degenerate && s2 < s1 && s1 < right,
            case_label: label,
            inequality_values: (s2, s1, right),
        }
    } else {
        // Case 2 chain: l21/n < l22/m < (1/n + 1/m) l21.
        let right = (1.0 / nf + 1.0 / mf) * l21;
        let label = if m > n { CaseLabel::Case1 } else { CaseLabel::Case2 };
        SuperdiffusionReport {
            condition_holds: s1 < s2 && s2 < right,
            case_label: label,
            inequality_values: (s1, s2, right),
        }
    }
}

/// Strict upper bounds on `lambda_2(L)` built from each layer's Fiedler
/// pair and the per-node interlayer weight totals:
/// `(l2(1) + u^T diag(W 1_m) u, l2(2) + v^T diag(W^T 1_n) v)`.
pub fn layer_fiedler_bounds(
    fiedler1: &FiedlerData,
    fiedler2: &FiedlerData,
    assignment: &WeightAssignment,
    n: usize,
    m: usize,
) -> (f64, f64) {
    debug_assert!((norm(&fiedler1.vector) - 1.0).abs() < 1e-8);
    debug_assert!((norm(&fiedler2.vector) - 1.0).abs() < 1e-8);
    let (rows, cols) = assignment.node_totals(n, m);
    let bound1 = fiedler1.lambda2
        + fiedler1
            .vector
            .iter()
            .zip(&rows)
            .map(|(u, r)| u * u * r)
            .sum::<f64>();
    let bound2 = fiedler2.lambda2
        + fiedler2
            .vector
            .iter()
            .zip(&cols)
            .map(|(v, t)| v * v * t)
            .sum::<f64>();
    (bound1, bound2)
}

/// Bracket `[n l2_min / 2, n l2_min]` on the transition threshold of a
/// k-to-k interconnection with `n = m`; the upper end is attained at
/// `k = n` (all-pairs).
pub fn ktok_threshold_bounds(l2_min: f64, n: usize) -> (f64, f64) {
    let upper = n as f64 * l2_min;
    (0.5 * upper, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::InterlayerPattern;

    #[test]
    fn upper_bound_examples() {
        assert!((upper_bound_f(30, 15, 10.0) - 1.0).abs() < 1e-15);
        assert_eq!(upper_bound_f(30, 15, 0.0), 0.0);
        // One-to-one setting n = m: bound reduces to 2c/n.
        let n = 12;
        let c = 3.7;
        assert!((upper_bound_f(n, n, c) - 2.0 * c / n as f64).abs() < 1e-15);
    }

    #[test]
    fn uniform_lambda2_examples() {
        // Linear branch of the two-transition geometry.
        let got = uniform_lambda2(0.6798, 0.0712, 30, 15, 1.0);
        assert!((got - 0.1).abs() < 1e-12);
        assert_eq!(uniform_lambda2(0.5, 0.5, 4, 4, 0.0), 0.0);
        // n = m reduces to min(2c/n, min(l21, l22) + c/n).
        let (l21, l22, n, c) = (0.9f64, 0.4, 10usize, 3.0);
        let want = (2.0 * c / n as f64).min(l21.min(l22) + c / n as f64);
        assert!((uniform_lambda2(l21, l22, n, n, c) - want).abs() < 1e-15);
    }

    #[test]
    fn threshold_cases_from_branch_geometry() {
        // Two-transition case: n > m with layer 1 holding the larger
        // specific connectivity.
        let r = thresholds_allpairs(0.6798, 0.0712, 30, 15).unwrap();
        assert_eq!(r.case_label, CaseLabel::Case1);
        assert!((r.c_star - 30.0 * 0.0712).abs() < 1e-12);
        let want = (0.6798 - 0.0712) / (1.0 / 15.0 - 1.0 / 30.0);
        assert!((r.c_star_star.unwrap() - want).abs() < 1e-12);

        let r = thresholds_allpairs(0.9123, 0.6546, 30, 10).unwrap();
        assert_eq!(r.case_label, CaseLabel::Case2);
        assert!((r.c_star - 10.0 * 0.9123).abs() < 1e-12);
        assert!(r.c_star_star.is_none());

        let r = thresholds_allpairs(1.3902, 0.4766, 20, 30).unwrap();
        assert_eq!(r.case_label, CaseLabel::Case3);
        assert!((r.c_star - 20.0 * 0.4766).abs() < 1e-12);
        assert!(r.c_star_star.is_none());

        // Mirrored two-transition geometry: swapping the layers of the
        // first example must swap the formulas, not lose a transition.
        let r = thresholds_allpairs(0.0712, 0.6798, 15, 30).unwrap();
        assert_eq!(r.case_label, CaseLabel::Case1);
        assert!((r.c_star - 30.0 * 0.0712).abs() < 1e-12);
        assert!(r.c_star_star.is_some());

        // n = m special case: c* = n min(l21, l22).
        let r = thresholds_allpairs(0.9, 0.4, 10, 10).unwrap();
        assert!((r.c_star - 10.0 * 0.4).abs() < 1e-12);
        assert!(r.c_star_star.is_none());
    }

    #[test]
    fn degenerate_specific_connectivity_is_an_error() {
        let err = thresholds_allpairs(0.5, 0.25, 30, 15).unwrap_err();
        assert!(matches!(err, ClosedFormError::DegenerateCase(_, _)));
    }

    #[test]
    fn superdiffusion_examples() {
        // Two-transition instance from the Case-1 family: window closed.
        let r = superdiffusion_window(0.6798, 0.0712, 30, 15);
        assert!(!r.condition_holds);
        assert_eq!(r.case_label, CaseLabel::Case1);
        let (left, middle, right) = r.inequality_values;
        assert!(left < middle && middle > right);

        // Closer connectivities: window open.
        let r = superdiffusion_window(0.25, 0.1, 30, 15);
        assert!(r.condition_holds);
        let (left, middle, right) = r.inequality_values;
        assert!((left - 0.1 / 15.0).abs() < 1e-12);
        assert!((middle - 0.25 / 30.0).abs() < 1e-12);
        assert!((right - 0.1 * 0.1).abs() < 1e-12);

        // Boundary: equal terms violate strictness.
        let r = superdiffusion_window(0.7, 0.7, 9, 9);
        assert!(!r.condition_holds);
        assert_eq!(r.case_label, CaseLabel::Degenerate);
    }

    #[test]
    fn regularity_witness_uniform_patterns() {
        let p = InterlayerPattern::k_to_k(6, 6, 2).unwrap();
        let w = regularity_witness(&p, 6, 6, 3.0);
        assert!(w.feasible);
        let a = w.weights.unwrap();
        for (_, &v) in a.iter() {
            assert!((v - 3.0 / 12.0).abs() < 1e-12);
        }

        let p = InterlayerPattern::one_to_one(5, 5).unwrap();
        let w = regularity_witness(&p, 5, 5, 2.0);
        let a = w.weights.unwrap();
        for (_, &v) in a.iter() {
            assert!((v - 0.4).abs() < 1e-12);
        }
    }

    #[test]
    fn star_pattern_is_infeasible() {
        // One layer-1 node carries every admissible pair.
        let pairs = (0..4).map(|j| (0usize, j)).collect();
        let p = InterlayerPattern::explicit(pairs, 3, 4).unwrap();
        let w = regularity_witness(&p, 3, 4, 1.0);
        assert!(!w.feasible);
        // Zero budget stays trivially feasible.
        assert!(regularity_witness(&p, 3, 4, 0.0).feasible);
    }

    #[test]
    fn max_flow_witness_on_irregular_admissible_set() {
        // A non-uniform-capable pattern that still supports regularity:
        // 2x2 with three pairs. Rows need c/2 each, columns c/2 each;
        // weights (0,0)=c/2, (1,1)=c/2 works but uniform does not.
        let p = InterlayerPattern::explicit(vec![(0, 0), (0, 1), (1, 1)], 2, 2).unwrap();
        let w = regularity_witness(&p, 2, 2, 1.0);
        assert!(w.feasible);
        let a = w.weights.unwrap();
        assert!(is_regular(&a, 2, 2, 1.0));
        assert!(a.iter().all(|(pair, _)| p.contains(*pair)));
    }

    #[test]
    fn ktok_bracket() {
        assert_eq!(ktok_threshold_bounds(2.0, 2), (2.0, 4.0));
        assert_eq!(ktok_threshold_bounds(0.0, 7), (0.0, 0.0));
    }
}
