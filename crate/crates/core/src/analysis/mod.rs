//! Interference decompositions, fallacy detection and the derived analyses.

mod decomposition;
mod fallacy;
mod regime;
mod sweep;
mod uncertainty;

pub use decomposition::{
    decompose_density, decompose_first_question, decompose_total_probability,
    mixed_state_total_probability, DecompositionResult, DIAGONAL_TOL,
};
pub use fallacy::{
    analyze_density, analyze_pure, fallacy_inequalities, fallacy_report, fallacy_report_density,
    underextension_density, underextension_estimate, FallacyAnalysis, FallacyReport, Margins,
    Underextension, FALLACY_GUARD, POLE_TOL,
};
pub use regime::{classify_regime, RegimeBands, RegimeClass};
pub use sweep::{sweep_cell, sweep_fallacy_map, RangeSpec, SweepCell, SweepMap};
pub use uncertainty::{uncertainty_sum_minimum, UncertaintyMinimum};
