//! Deterministic dense symmetric eigensolver and derived spectral data.
//!
//! The decomposition is a straight port of the classic EISPACK pair
//! `tred2` (Householder reduction to tridiagonal form, accumulating the
//! transformations) and `tql2` (implicit-shift QL), the same route the
//! Algol/Fortran handbooks and Jama take. It is free of restarts and
//! randomness: identical input bits give identical output bits, which
//! is what lets downstream reports be reproduced byte for byte.

use thiserror::Error;

use crate::graph::LayerGraph;
use crate::matrix::Matrix;

/// Relative clustering tolerance for eigenvalue multiplicity counting.
pub const CLUSTER_TOL_REL: f64 = 1e-6;

/// Entries below this magnitude are ignored when fixing eigenvector signs.
pub const SIGN_TOL: f64 = 1e-9;

const MAX_QL_SWEEPS: usize = 50;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("QL iteration failed to converge for eigenvalue index {index} after {sweeps} sweeps")]
    ConvergenceFailure { index: usize, sweeps: usize },
    #[error("matrix is not symmetric: max off-diagonal mismatch {0:e}")]
    NotSymmetric(f64),
}

/// Full eigendecomposition of a symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector paired with `eigenvalues[k]`.
    vectors: Vec<Vec<f64>>,
}

impl Spectrum {
    /// Assembles a spectrum from precomputed eigenpairs (analytic spectra).
    pub(crate) fn from_parts(eigenvalues: Vec<f64>, vectors: Vec<Vec<f64>>) -> Self {
        debug_assert_eq!(eigenvalues.len(), vectors.len());
        Spectrum {
            eigenvalues,
            vectors,
        }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Second-smallest eigenvalue (zero for matrices of order < 2).
    pub fn lambda2(&self) -> f64 {
        if self.eigenvalues.len() > 1 {
            self.eigenvalues[1]
        } else {
            0.0
        }
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().unwrap_or(&0.0)
    }

    /// Absolute clustering tolerance for this spectrum.
    pub fn cluster_tolerance(&self) -> f64 {
        CLUSTER_TOL_REL * 1.0f64.max(self.lambda_max().abs())
    }

    /// Indices of the eigenvalues clustered with the second smallest,
    /// i.e. the lambda_2 eigencluster. The kernel index 0 is excluded.
    pub fn fiedler_cluster(&self, tol: f64) -> Vec<usize> {
        if self.eigenvalues.len() < 2 {
            return Vec::new();
        }
        let lambda2 = self.eigenvalues[1];
        (1..self.eigenvalues.len())
            .filter(|&k| (self.eigenvalues[k] - lambda2).abs() <= tol)
            .collect()
    }
}

/// Algebraic connectivity and its eigenvector.
#[derive(Clone, Debug)]
pub struct FiedlerData {
    pub lambda2: f64,
    /// Unit eigenvector for `lambda2`, sign-fixed so that the first
    /// component larger than `SIGN_TOL` in magnitude is positive.
    pub vector: Vec<f64>,
    /// Number of eigenvalues (beyond the very first) within
    /// `cluster_tolerance` of `lambda2`.
    pub multiplicity: usize,
    pub cluster_tolerance: f64,
}

/// Eigendecomposition entry point.
///
/// Errors with [`SpectraError::NotSymmetric`] when the input deviates
/// from symmetry by more than `1e-9 * max|entry|`.
pub fn full_spectrum(matrix: &Matrix) -> Result<Spectrum, SpectraError> {
    let skew = matrix.asymmetry();
    if skew > 1e-9 * 1.0f64.max(matrix.max_abs()) {
        return Err(SpectraError::NotSymmetric(skew));
    }
    let n = matrix.order();
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: Vec::new(),
            vectors: Vec::new(),
        });
    }
    let mut v = matrix.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut v, &mut d, &mut e);
    tql2(&mut v, &mut d, &mut e)?;
    let mut vectors = Vec::with_capacity(n);
    for k in 0..n {
        let mut col = v.column(k);
        fix_sign(&mut col);
        vectors.push(col);
    }
    Ok(Spectrum {
        eigenvalues: d,
        vectors,
    })
}

/// Fiedler value, vector and multiplicity of a Laplacian-like matrix.
pub fn fiedler(matrix: &Matrix) -> Result<FiedlerData, SpectraError> {
    let spectrum = full_spectrum(matrix)?;
    Ok(fiedler_from_spectrum(&spectrum))
}

pub fn fiedler_from_spectrum(spectrum: &Spectrum) -> FiedlerData {
    let tol = spectrum.cluster_tolerance();
    let cluster = spectrum.fiedler_cluster(tol);
    FiedlerData {
        lambda2: spectrum.lambda2(),
        vector: spectrum.eigenvector(1).to_vec(),
        multiplicity: cluster.len(),
        cluster_tolerance: tol,
    }
}

/// Algebraic connectivity of a layer divided by its node count.
pub fn specific_connectivity(layer: &LayerGraph) -> Result<f64, SpectraError> {
    let data = fiedler(&layer.laplacian())?;
    Ok(data.lambda2 / layer.node_count() as f64)
}

fn fix_sign(v: &mut [f64]) {
    for &x in v.iter() {
        if x.abs() > SIGN_TOL {
            if x < 0.0 {
                for y in v.iter_mut() {
                    *y = -*y;
                }
            }
            return;
        }
    }
}

/// Householder reduction of `v` to tridiagonal form. On return `d`
/// holds the diagonal, `e` the subdiagonal (in `e[1..]`), and `v` the
/// accumulated orthogonal transformation.
fn tred2(v: &mut Matrix, d: &mut [f64], e: &mut [f64]) {
    let n = v.order();
    for j in 0..n {
        d[j] = v[(n - 1, j)];
    }

    for i in (1..n).rev() {
        // Scale to avoid under/overflow.
        let mut scale = 0.0;
        let mut h = 0.0;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
                v[(j, i)] = 0.0;
            }
        } else {
            // Generate Householder vector.
            for item in d.iter_mut().take(i) {
                *item /= scale;
                h += *item * *item;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }

            // Apply similarity transformation to remaining columns.
            for j in 0..i {
                f = d[j];
                v[(j, i)] = f;
                g = e[j] + v[(j, j)] * f;
                for k in j + 1..i {
                    g += v[(k, j)] * d[k];
                    e[k] += v[(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    // Accumulate transformations.
    for i in 0..n.saturating_sub(1) {
        v[(n - 1, i)] = v[(i, i)];
        v[(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for (k, item) in d.iter_mut().enumerate().take(i + 1) {
                *item = v[(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[(k, i + 1)] * v[(k, j)];
                }
                for k in 0..=i {
                    v[(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1, j)];
        v[(n - 1, j)] = 0.0;
    }
    v[(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL on the tridiagonal form, accumulating into `v`.
/// Sorts the eigenpairs ascending before returning.
fn tql2(v: &mut Matrix, d: &mut [f64], e: &mut [f64]) -> Result<(), SpectraError> {
    let n = v.order();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = 2.0f64.powi(-52);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_QL_SWEEPS {
                    return Err(SpectraError::ConvergenceFailure {
                        index: l,
                        sweeps: MAX_QL_SWEEPS,
                    });
                }

                // Implicit shift.
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                // QL sweep.
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[(k, i + 1)];
                        v[(k, i + 1)] = s * v[(k, i)] + c * h;
                        v[(k, i)] = c * v[(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    // Ascending selection sort, moving eigenvectors along.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in i + 1..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d[k] = d[i];
            d[i] = p;
            for j in 0..n {
                v.swap((j, i), (j, k));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LayerGraph;
    use crate::matrix::dot;

    fn path_laplacian(n: usize) -> Matrix {
        let edges = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
        LayerGraph::new(n, edges).unwrap().laplacian()
    }

    #[test]
    fn k2_spectrum() {
        let l = LayerGraph::new(2, vec![(0, 1, 1.0)]).unwrap().laplacian();
        let s = full_spectrum(&l).unwrap();
        assert!((s.eigenvalues()[0]).abs() < 1e-12);
        assert!((s.eigenvalues()[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn p3_spectrum_is_known_closed_form() {
        let s = full_spectrum(&path_laplacian(3)).unwrap();
        let expect = [0.0, 1.0, 3.0];
        for (got, want) in s.eigenvalues().iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn p3_fiedler_vector_and_sign_convention() {
        let data = fiedler(&path_laplacian(3)).unwrap();
        assert!((data.lambda2 - 1.0).abs() < 1e-12);
        let want = [1.0 / 2f64.sqrt(), 0.0, -1.0 / 2f64.sqrt()];
        for (got, want) in data.vector.iter().zip(want) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        assert_eq!(data.multiplicity, 1);
    }

    #[test]
    fn disconnected_union_has_zero_lambda2() {
        // Two disjoint K2s inside one 4-node layer.
        let l = LayerGraph::new(4, vec![(0, 1, 1.0), (2, 3, 1.0)])
            .unwrap()
            .laplacian();
        let data = fiedler(&l).unwrap();
        assert!(data.lambda2.abs() < 1e-12);
    }

    #[test]
    fn specific_connectivity_of_complete_graphs_is_unity() {
        for n in [2usize, 3, 5, 8] {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    edges.push((i, j, 1.0));
                }
            }
            let layer = LayerGraph::new(n, edges).unwrap();
            let s = specific_connectivity(&layer).unwrap();
            assert!((s - 1.0).abs() < 1e-10, "K{n}: {s}");
        }
        let p3 = LayerGraph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert!((specific_connectivity(&p3).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn decomposition_reconstructs_matrix_and_is_orthonormal() {
        // Fixed pseudo-random symmetric matrix.
        let n = 12;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut a = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let x = rng();
                a[(i, j)] = x;
                a[(j, i)] = x;
            }
        }
        let s = full_spectrum(&a).unwrap();
        // Residuals A v = lambda v.
        for k in 0..n {
            let v = s.eigenvector(k);
            let av = a.matvec(v);
            for i in 0..n {
                assert!(
                    (av[i] - s.eigenvalues()[k] * v[i]).abs() < 1e-9,
                    "residual at ({k},{i})"
                );
            }
        }
        // Orthonormality.
        for p in 0..n {
            for q in 0..n {
                let want = if p == q { 1.0 } else { 0.0 };
                let got = dot(s.eigenvector(p), s.eigenvector(q));
                assert!((got - want).abs() < 1e-10);
            }
        }
        // Trace identity.
        let sum: f64 = s.eigenvalues().iter().sum();
        assert!((sum - a.trace()).abs() < 1e-9 * 1.0f64.max(a.trace().abs()));
    }

    #[test]
    fn determinism_bit_identical() {
        let l = path_laplacian(9);
        let a = full_spectrum(&l).unwrap();
        let b = full_spectrum(&l).unwrap();
        for k in 0..9 {
            assert_eq!(a.eigenvalues()[k].to_bits(), b.eigenvalues()[k].to_bits());
            for i in 0..9 {
                assert_eq!(
                    a.eigenvector(k)[i].to_bits(),
                    b.eigenvector(k)[i].to_bits()
                );
            }
        }
    }

    #[test]
    fn rejects_asymmetric_input() {
        let mut a = Matrix::identity(3);
        a[(0, 1)] = 0.5;
        assert!(matches!(
            full_spectrum(&a),
            Err(SpectraError::NotSymmetric(_))
        ));
    }
}
