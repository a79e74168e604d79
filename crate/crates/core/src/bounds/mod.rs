//! Birationality bounds: scenarios, the `xi` engine, the `beta` sequence,
//! the preset catalog and the assembled thresholds.

pub mod beta;
pub mod engine;
pub mod presets;
pub mod scenario;
pub mod theorems;

pub use beta::{beta_sequence, BetaSequence};
pub use engine::{
    alpha_of, condition_iv, condition_v, default_m_hi, first_firing_m, min_birational_m, prop_b_check, refine_step,
    refine_xi, run_schedule, starting_xi, xi_seed_asymptotic, BoundResult, Criterion, TraceStep,
};
pub use presets::{preset, theorem_44, PresetId};
pub use scenario::Scenario;
pub use theorems::{certified_threshold, corollary_pipeline, main_pipeline};
