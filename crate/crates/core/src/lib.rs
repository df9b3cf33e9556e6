//! Maximizing the algebraic connectivity of two-layer networks.
//!
//! Given two weighted graph layers and an admissible set of cross-layer
//! pairs, this crate allocates a total interlayer weight budget `c` to
//! maximize the second-smallest eigenvalue of the supra-Laplacian. It
//! covers the closed-form regime (regular weights attain the bound
//! `(1/n + 1/m) c` below a transition budget), a certified iterative
//! solver with a primal-dual gap for everything past the transition,
//! recovery of the dual graph embedding, transition-threshold analysis,
//! greedy interlink placement, and diffusion simulation.
//!
//! Entry points:
//! - [`graph`]: layers, interconnection patterns, weight assignments,
//!   supra-Laplacian assembly.
//! - [`spectra`]: deterministic dense symmetric eigensolver.
//! - [`closed_form`]: bounds, thresholds, regularity, super-diffusion.
//! - [`opt`]: budgeted weight optimization with duality certificates.
//! - [`embed`]: dual solution and graph-embedding recovery.
//! - [`design`]: perturbation predictions and greedy interlink plans.
//! - [`diffusion`]: consensus dynamics under the supra-Laplacian.
//! - [`generate`]: random layer generators for experiments and tests.

#![forbid(unsafe_code)]
// Indexed loops are the house style for the dense numeric kernels here.
#![allow(clippy::needless_range_loop)]

pub mod closed_form;
pub mod design;
pub mod diffusion;
pub mod embed;
mod flow;
pub mod generate;
pub mod graph;
pub mod matrix;
pub mod opt;
pub mod spectra;

pub use closed_form::{
    ktok_threshold_bounds, layer_fiedler_bounds, regularity_witness, superdiffusion_window,
    thresholds_allpairs, uniform_allpairs_spectrum, uniform_lambda2, upper_bound_f, CaseLabel,
    RegularityWitness, SuperdiffusionReport, ThresholdReport,
};
pub use design::{
    average_laplacian_condition, greedy_interlinks, post_threshold_increment, rayleigh_increment,
    GreedyPlan, LayerSide, PerturbationInput,
};
pub use diffusion::{estimate_rate, simulate, DiffusionTrajectory};
pub use embed::{
    embedding_dimension, recover_embedding, scale_solution, verify_embedding, EmbeddingSolution,
    ScaledEmbedding,
};
pub use graph::{
    build_supra_laplacian, validate_assignment, InterlayerPattern, LayerGraph, MultilayerNetwork,
    PatternKind, SupraLaplacian, WeightAssignment,
};
pub use matrix::Matrix;
pub use opt::{
    analytic_optimum, detect_threshold_numeric, maximize_lambda2, oracle_grid_optimum,
    sweep_budget, Mode, OptimizationResult, SolverOptions, SweepOutcome,
};
pub use spectra::{fiedler, full_spectrum, specific_connectivity, FiedlerData, Spectrum};
