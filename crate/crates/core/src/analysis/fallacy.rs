//! Conjunction-fallacy detection.
//!
//! The conjunction `a1 and b1` is read as the ordered chain `P(a1 -> b1) =
//! P(a1) P(b1|a1)`. A fallacy on `b` means `P(b1)` falls below that chain, which
//! no classical model and no `a`-diagonal mixture allows. A reverse fallacy means
//! a positive interference term pushes `P(b1)` above its classical value.

use super::decomposition::{
    decompose_density, decompose_first_question, decompose_total_probability, DecompositionResult,
};
use crate::error::{Error, Result};
use crate::observables::{conditional_probability, Outcome, Question};
use crate::qstate::{MixedState, PureState};

/// Strict-inequality guard band for fallacy flags.
pub const FALLACY_GUARD: f64 = 1e-12;
/// Distance from a tan/cotan pole at which the closed-form inequalities refuse to answer.
pub const POLE_TOL: f64 = 1e-9;

/// Signed `threshold - probability` gaps behind each flag.
///
/// Fallacy margins use the conjunction threshold; reverse margins use the
/// classical two-path value, so they equal minus the interference term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margins {
    pub fallacy_b: f64,
    pub fallacy_a: f64,
    pub reverse_b: f64,
    pub reverse_a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FallacyReport {
    /// `P(b1) < P(a1) P(b1|a1)`
    pub fallacy_on_b: bool,
    /// `P(a1) < P(b1) P(a1|b1)`
    pub fallacy_on_a: bool,
    pub reverse_on_b: bool,
    pub reverse_on_a: bool,
    pub margins: Margins,
}

impl FallacyReport {
    /// `b1` side from `(P(b1), conjunction threshold, interference)` and the same for `a1`.
    fn from_sides(
        b: &DecompositionResult,
        threshold_b: f64,
        a: &DecompositionResult,
        threshold_a: f64,
    ) -> Self {
        let side = |d: &DecompositionResult, threshold: f64| {
            let fallacy = d.total < threshold - FALLACY_GUARD;
            let reverse = d.total > threshold + FALLACY_GUARD && d.interference > FALLACY_GUARD;
            (fallacy, reverse)
        };
        let (fallacy_on_b, reverse_on_b) = side(b, threshold_b);
        let (fallacy_on_a, reverse_on_a) = side(a, threshold_a);
        Self {
            fallacy_on_b,
            fallacy_on_a,
            reverse_on_b,
            reverse_on_a,
            margins: Margins {
                fallacy_b: threshold_b - b.total,
                fallacy_a: threshold_a - a.total,
                reverse_b: b.classical_part - b.total,
                reverse_a: a.classical_part - a.total,
            },
        }
    }
}

/// Both decompositions plus the report for one preparation and question pair.
#[derive(Debug, Clone, PartialEq)]
pub struct FallacyAnalysis {
    /// `P(b1)` expanded over the answers to `a`.
    pub on_b: DecompositionResult,
    /// `P(a1)` expanded over the answers to `b`.
    pub on_a: DecompositionResult,
    pub report: FallacyReport,
}

impl FallacyAnalysis {
    fn assemble(
        on_b: DecompositionResult,
        on_a: DecompositionResult,
        a: &Question,
        b: &Question,
    ) -> Self {
        let agree = conditional_probability(a, Outcome::One, b, Outcome::One);
        let report =
            FallacyReport::from_sides(&on_b, on_a.total * agree, &on_a, on_b.total * agree);
        Self { on_b, on_a, report }
    }

    pub fn p_a1(&self) -> f64 {
        self.on_a.total
    }

    pub fn p_b1(&self) -> f64 {
        self.on_b.total
    }
}

/// Full analysis of a pure preparation.
pub fn analyze_pure(s: &PureState, a: &Question, b: &Question) -> FallacyAnalysis {
    FallacyAnalysis::assemble(
        decompose_total_probability(s, a, b, Outcome::One),
        decompose_first_question(s, a, b, Outcome::One),
        a,
        b,
    )
}

/// Full analysis of a density matrix, interference taken as the remainder over
/// the classical part.
pub fn analyze_density(rho: &MixedState, a: &Question, b: &Question) -> FallacyAnalysis {
    FallacyAnalysis::assemble(
        decompose_density(rho, a, b, Outcome::One),
        decompose_density(rho, b, a, Outcome::One),
        a,
        b,
    )
}

pub fn fallacy_report(s: &PureState, a: &Question, b: &Question) -> FallacyReport {
    analyze_pure(s, a, b).report
}

pub fn fallacy_report_density(rho: &MixedState, a: &Question, b: &Question) -> FallacyReport {
    analyze_density(rho, a, b).report
}

/// Closed-form fallacy conditions for real amplitudes `(cos theta_a, sin theta_a)`
/// and a real rotation `theta`:
///
/// - on `b`: `1 + 2 tan(theta_a) cot(theta) < 0`
/// - on `a`: `1 - 2 tan(theta_a + theta) cot(theta) < 0`
///
/// Returns `(b side, a side)`.
pub fn fallacy_inequalities(theta_a: f64, theta: f64) -> Result<(bool, bool)> {
    if !theta_a.is_finite() || !theta.is_finite() {
        return Err(Error::Validation("angles must be finite".into()));
    }
    let beta = theta_a + theta;
    let poles = [
        ("tan(theta_a)", theta_a.cos()),
        ("cot(theta)", theta.sin()),
        ("tan(theta_a + theta)", beta.cos()),
    ];
    if let Some((name, _)) = poles.iter().find(|(_, d)| d.abs() < POLE_TOL) {
        return Err(Error::Singular(format!(
            "{name} is at a pole (theta_a = {theta_a}, theta = {theta})"
        )));
    }
    let cot = theta.cos() / theta.sin();
    let on_b = 1.0 + 2.0 * theta_a.tan() * cot < 0.0;
    let on_a = 1.0 - 2.0 * beta.tan() * cot < 0.0;
    Ok((on_b, on_a))
}

/// Order-ambiguity interval for `mu(A and B)` and the implied `mu(A or B)` range
/// from inclusion-exclusion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Underextension {
    pub mu_a: f64,
    pub mu_b: f64,
    /// `P(a1 -> b1)`
    pub a_then_b: f64,
    /// `P(b1 -> a1)`
    pub b_then_a: f64,
    pub low: f64,
    pub high: f64,
    pub or_low: f64,
    pub or_high: f64,
    /// `or_high` below `mu_a` or below `mu_b`.
    pub underextension: bool,
}

pub fn underextension_estimate(s: &PureState, a: &Question, b: &Question) -> Underextension {
    underextension_density(&s.density(), a, b)
}

pub fn underextension_density(rho: &MixedState, a: &Question, b: &Question) -> Underextension {
    use crate::measurement::{consecutive_probability, outcome_probability, OutcomeStep};
    let a1 = OutcomeStep::new(a, Outcome::One);
    let b1 = OutcomeStep::new(b, Outcome::One);
    let a_then_b = consecutive_probability(rho, &[a1, b1]).expect("non-empty chain");
    let b_then_a = consecutive_probability(rho, &[b1, a1]).expect("non-empty chain");
    let mu_a = outcome_probability(rho, a, Outcome::One);
    let mu_b = outcome_probability(rho, b, Outcome::One);
    let (low, high) = (a_then_b.min(b_then_a), a_then_b.max(b_then_a));
    let or_low = mu_a + mu_b - high;
    let or_high = mu_a + mu_b - low;
    Underextension {
        mu_a,
        mu_b,
        a_then_b,
        b_then_a,
        low,
        high,
        or_low,
        or_high,
        underextension: or_high < mu_a || or_high < mu_b,
    }
}
