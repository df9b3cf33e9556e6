//! Diffusion dynamics `dX/dt = -L X` under a supra-Laplacian.
//!
//! States are propagated spectrally, `X(t) = sum_k e^{-lambda_k t}
//! (v_k^T X0) v_k`, so trajectories are exact to eigensolver precision
//! and no step-size tuning enters the picture.

use thiserror::Error;

use crate::graph::SupraLaplacian;
use crate::matrix::dot;
use crate::spectra::{self, SpectraError};

#[derive(Debug, Error)]
pub enum DiffusionError {
    #[error("times must be ascending and start at 0")]
    BadTimes,
    #[error("initial state length {got} does not match the network order {want}")]
    StateLength { got: usize, want: usize },
    #[error("trajectory is already at consensus; no decay rate to estimate")]
    DegenerateTrajectory,
    #[error("need at least {need} samples in the asymptotic regime, found {found}")]
    TooFewSamples { need: usize, found: usize },
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Sampled solution of the diffusion initial-value problem.
#[derive(Clone, Debug)]
pub struct DiffusionTrajectory {
    pub times: Vec<f64>,
    /// `states[s]` is the node-value vector at `times[s]`.
    pub states: Vec<Vec<f64>>,
    pub initial_state: Vec<f64>,
    /// Largest Laplacian eigenvalue; fixes the asymptotic-regime cutoff
    /// for rate estimation.
    pub fastest_mode_rate: f64,
}

impl DiffusionTrajectory {
    /// Euclidean distance from consensus at sample `s`.
    pub fn residual(&self, s: usize) -> f64 {
        let state = &self.states[s];
        let mean = state.iter().sum::<f64>() / state.len() as f64;
        state
            .iter()
            .map(|x| (x - mean) * (x - mean))
            .sum::<f64>()
            .sqrt()
    }
}

/// Evolves `X0` under `dX/dt = -L X`, sampling at `times` (ascending,
/// starting at 0).
pub fn simulate(
    laplacian: &SupraLaplacian,
    initial_state: &[f64],
    times: &[f64],
) -> Result<DiffusionTrajectory, DiffusionError> {
    if times.is_empty() || times[0] != 0.0 || times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DiffusionError::BadTimes);
    }
    let total = laplacian.order();
    if initial_state.len() != total {
        return Err(DiffusionError::StateLength {
            got: initial_state.len(),
            want: total,
        });
    }
    let spectrum = spectra::full_spectrum(laplacian.matrix())?;
    let coefficients: Vec<f64> = (0..total)
        .map(|k| dot(spectrum.eigenvector(k), initial_state))
        .collect();

    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let mut state = vec![0.0; total];
        for k in 0..total {
            let factor = coefficients[k] * (-spectrum.eigenvalues()[k] * t).exp();
            if factor == 0.0 {
                continue;
            }
            let v = spectrum.eigenvector(k);
            for (x, &vk) in state.iter_mut().zip(v) {
                *x += factor * vk;
            }
        }
        states.push(state);
    }

    Ok(DiffusionTrajectory {
        times: times.to_vec(),
        states,
        initial_state: initial_state.to_vec(),
        fastest_mode_rate: spectrum.lambda_max(),
    })
}

/// Decay rate of the distance to consensus, from a least-squares fit of
/// `log  |X(t) - mean|` over the asymptotic tail. The tail is the last
/// half of the samples taken after the fastest mode has decayed by a
/// factor of 1e3.
pub fn estimate_rate(trajectory: &DiffusionTrajectory) -> Result<f64, DiffusionError> {
    let r0 = trajectory.residual(0);
    let scale = trajectory
        .initial_state
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if r0 <= 1e-12 * 1.0f64.max(scale) {
        return Err(DiffusionError::DegenerateTrajectory);
    }

    let cutoff = if trajectory.fastest_mode_rate > 0.0 {
        (1e3f64).ln() / trajectory.fastest_mode_rate
    } else {
        0.0
    };
    let eligible: Vec<(f64, f64)> = trajectory
        .times
        .iter()
        .enumerate()
        .filter(|&(_, &t)| t >= cutoff)
        .map(|(s, &t)| (t, trajectory.residual(s)))
        .filter(|&(_, r)| r > 1e-300)
        .collect();
    let window = if eligible.len() >= 6 {
        &eligible[eligible.len() / 2..]
    } else {
        &eligible[..]
    };
    if window.len() < 3 {
        return Err(DiffusionError::TooFewSamples {
            need: 3,
            found: window.len(),
        });
    }

    // Least-squares slope of log r over t.
    let k = window.len() as f64;
    let mean_t: f64 = window.iter().map(|(t, _)| t).sum::<f64>() / k;
    let mean_log: f64 = window.iter().map(|(_, r)| r.ln()).sum::<f64>() / k;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(t, r) in window {
        num += (t - mean_t) * (r.ln() - mean_log);
        den += (t - mean_t) * (t - mean_t);
    }
    if den == 0.0 {
        return Err(DiffusionError::TooFewSamples {
            need: 3,
            found: window.len(),
        });
    }
    Ok(-num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        build_supra_laplacian, InterlayerPattern, LayerGraph, MultilayerNetwork, WeightAssignment,
    };
    use crate::spectra::full_spectrum;

    fn coupled_network() -> SupraLaplacian {
        let k2 = LayerGraph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let network = MultilayerNetwork::new(
            k2.clone(),
            k2,
            InterlayerPattern::all_pairs(2, 2),
        )
        .unwrap();
        let a = WeightAssignment::uniform(network.pattern(), 1.0).unwrap();
        build_supra_laplacian(&network, &a).unwrap()
    }

    #[test]
    fn constant_state_stays_put() {
        let l = coupled_network();
        let times: Vec<f64> = (0..10).map(|k| k as f64 * 0.3).collect();
        let traj = simulate(&l, &[1.0; 4], &times).unwrap();
        for state in &traj.states {
            for &x in state {
                assert!((x - 1.0).abs() < 1e-12);
            }
        }
        assert!(matches!(
            estimate_rate(&traj),
            Err(DiffusionError::DegenerateTrajectory)
        ));
    }

    #[test]
    fn fiedler_mode_decays_at_lambda2() {
        let l = coupled_network();
        let spectrum = full_spectrum(l.matrix()).unwrap();
        let lambda2 = spectrum.lambda2();
        let x0 = spectrum.eigenvector(1).to_vec();
        let times: Vec<f64> = (0..60).map(|k| k as f64 * 0.2).collect();
        let traj = simulate(&l, &x0, &times).unwrap();
        // Single-mode decay: residual is exactly e^{-lambda2 t}.
        for (s, &t) in traj.times.iter().enumerate() {
            let want = (-lambda2 * t).exp();
            if want > 1e-12 {
                assert!((traj.residual(s) - want).abs() < 1e-9 * want.max(1e-9));
            }
        }
        let rate = estimate_rate(&traj).unwrap();
        assert!((rate - lambda2).abs() < 1e-6, "rate {rate} vs {lambda2}");
    }

    #[test]
    fn mass_is_conserved() {
        let l = coupled_network();
        let x0 = [0.9, -0.3, 0.4, 0.05];
        let times: Vec<f64> = (0..40).map(|k| k as f64 * 0.25).collect();
        let traj = simulate(&l, &x0, &times).unwrap();
        let mass0: f64 = x0.iter().sum();
        for state in &traj.states {
            let mass: f64 = state.iter().sum();
            assert!((mass - mass0).abs() < 1e-8);
        }
        // Monotone energy.
        for s in 1..traj.times.len() {
            assert!(traj.residual(s) <= traj.residual(s - 1) + 1e-12);
        }
    }

    #[test]
    fn bad_times_rejected() {
        let l = coupled_network();
        assert!(matches!(
            simulate(&l, &[0.0; 4], &[0.1, 0.2]),
            Err(DiffusionError::BadTimes)
        ));
        assert!(matches!(
            simulate(&l, &[0.0; 4], &[0.0, 0.2, 0.2]),
            Err(DiffusionError::BadTimes)
        ));
        assert!(matches!(
            simulate(&l, &[0.0; 3], &[0.0, 0.2]),
            Err(DiffusionError::StateLength { .. })
        ));
    }
}
