//! ADHM description of `Hilb^n(C^2)` (and of framed torsion-free sheaves of
//! rank `r` on `P²`) as a hyper-Kähler quotient, with exact and numerical
//! checks of its ingredients.

mod data;
mod fixed;
mod flow;
mod json;
mod monad;
mod morse;
mod stability;
mod tangent;

use thiserror::Error;

pub use data::{adjoint, frobenius, AdhmData, AdhmScalar, GaussianRational, C64};
pub use fixed::{fixed_point_data, FixedPoint, TorusWeights};
pub use flow::{
    kempf_ness_flow, level_residual, max_relative_gap, power_traces, random_gl,
    random_stable_data, unitary_invariants, FlowOptions, FlowResult,
};
pub use json::AdhmJson;
pub use monad::{check_complex, expand_tau_sigma, monad_maps, ComplexCheck, MonadMaps};
pub use morse::{morse_index_numeric, tangent_weight_spaces, MorseReport, DEFAULT_EPS};
pub use stability::{invariant_closure_dim, stability_check, ColumnRank, STABILITY_RANK_TOL};
pub use tangent::{tangent_dimension, TangentReport, DEFAULT_RANK_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdhmError {
    #[error("{name} has shape {got:?}, expected {expected:?}")]
    Shape {
        name: &'static str,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("flow cannot converge: datum unstable")]
    Unstable,
    #[error("complex moment map is nonzero (‖μ_C‖ = {0:e})")]
    ComplexMomentNonzero(f64),
    #[error("not on the level set: ‖μ_C‖ = {mu_c:e}, ‖μ_R + ζ_R‖ = {mu_r:e}")]
    NotOnLevelSet { mu_c: f64, mu_r: f64 },
    #[error("ill-conditioned rank decision: singular value {value:e} within 10x of tolerance {tol:e}")]
    IllConditionedRank { value: f64, tol: f64 },
    #[error("choose different eps: {eps} pairs to zero with tangent weight {weight:?}")]
    NonGenericEps { eps: f64, weight: (i32, i32) },
    #[error("invalid options: {0}")]
    InvalidOptions(String),
    #[error("could not sample stable data in {0} attempts")]
    SamplingFailed(usize),
    #[error("degenerate linearization: {0}")]
    Degenerate(String),
    #[error("malformed ADHM JSON: {0}")]
    Json(String),
}
