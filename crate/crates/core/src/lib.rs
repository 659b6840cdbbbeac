//! Structural risk minimisation for kernel smoothers of a linear oscillator's
//! impulse response.
//!
//! The crate compares a data-driven squared-exponential kernel with a
//! physics-informed SDOF kernel. Each kernel family forms a nested structure
//! of smoothers; capacity is estimated by effective degrees of freedom, each
//! candidate's expected risk is bounded with a VC bound, and the candidate
//! (and family) with the smallest guaranteed risk is selected.
//!
//! The numerical modules are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix `f64`, which is what the experiment runner and file
//! formats use.

// `!(x > 0)` is the NaN-rejecting form of validation used throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod experiment;
pub mod format;
pub mod io;
pub mod kernels;
pub mod oscillator;
pub mod risk;
pub mod scalar;
pub mod smoother;
pub mod srm;

pub use error::{Error, Result};
pub use experiment::{
    edf_stability, run_experiment, run_iteration, sdof_edf_stability, summarize, BoxStats, BoxplotSummary,
    CapacitySpread, ExperimentConfig, IterationRecord, Metric,
};
pub use kernels::{cross_vector, gram, kernel_eval, KernelFamily};
pub use oscillator::{generate_training_set, impulse_response, SamplingPlan};
pub use risk::{
    empirical_risk, realized_confidence, vc_bound_general, vc_bound_reduced, BoundConfig, DeltaRule,
};
pub use scalar::Real;
pub use smoother::{effective_dof, fit, predict, SpectralCache};
pub use srm::{
    build_sdof_grid, build_se_grid, compare_structures, default_sdof_grid, default_se_grid, srm_select,
    srm_select_with, GridSettings, SdofGridSettings, SdofScale, SeGridSettings,
};

pub type OscillatorParams = oscillator::OscillatorParams<f64>;
pub type TrainingSet = oscillator::TrainingSet<f64>;
pub type KernelSpec = kernels::KernelSpec<f64>;
pub type GramMatrix = kernels::GramMatrix<f64>;
pub type FittedSmoother = smoother::FittedSmoother<f64>;
pub type UnitSpectrum = smoother::UnitSpectrum<f64>;
pub type RiskReport = risk::RiskReport<f64>;
pub type StructureGrid = srm::StructureGrid<f64>;
pub type SelectionResult = srm::SelectionResult<f64>;

/// Single-precision aliases.
pub mod f32 {
    pub type OscillatorParams = crate::oscillator::OscillatorParams<f32>;
    pub type TrainingSet = crate::oscillator::TrainingSet<f32>;
    pub type KernelSpec = crate::kernels::KernelSpec<f32>;
    pub type FittedSmoother = crate::smoother::FittedSmoother<f32>;
    pub type RiskReport = crate::risk::RiskReport<f32>;
    pub type SelectionResult = crate::srm::SelectionResult<f32>;
}
