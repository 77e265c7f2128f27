//! Rasterized fallacy map over `(theta, theta_a)` at fixed `phi`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::decomposition::DecompositionResult;
use super::fallacy::{analyze_pure, FallacyReport};
use super::regime::{classify_regime, RegimeClass};
use crate::error::{Error, Result};
use crate::observables::{BasisRelation, Question};
use crate::qstate::PureState;

/// Inclusive linear grid `start, ..., end` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    start: f64,
    end: f64,
    steps: usize,
}

impl RangeSpec {
    pub fn new(start: f64, end: f64, steps: usize) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::Validation(format!(
                "range bounds must be finite, got {start}:{end}"
            )));
        }
        if steps < 2 {
            return Err(Error::Validation(format!(
                "range needs at least 2 steps, got {steps}"
            )));
        }
        Ok(Self { start, end, steps })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn value(&self, k: usize) -> f64 {
        if k + 1 == self.steps {
            return self.end;
        }
        self.start + (self.end - self.start) * k as f64 / (self.steps - 1) as f64
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|k| self.value(k))
    }
}

impl fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{:?}:{}", self.start, self.end, self.steps)
    }
}

impl FromStr for RangeSpec {
    type Err = Error;

    /// `START:END:STEPS`; bounds accept the same number syntax as `.qx` angles.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, end, steps] = parts.as_slice() else {
            return Err(Error::Validation(format!(
                "range `{s}` must have the form START:END:STEPS"
            )));
        };
        let bound = |text: &str| {
            crate::dsl::parse_angle(text)
                .map_err(|msg| Error::Validation(format!("range `{s}`: {msg}")))
        };
        let steps = steps.trim().parse::<usize>().map_err(|_| {
            Error::Validation(format!("range `{s}`: `{steps}` is not a step count"))
        })?;
        RangeSpec::new(bound(start)?, bound(end)?, steps)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub theta: f64,
    pub theta_a: f64,
    pub phi: f64,
    /// `P(b1)` over the answers to `a`.
    pub on_b: DecompositionResult,
    /// `P(a1)` over the answers to `b`.
    pub on_a: DecompositionResult,
    pub report: FallacyReport,
    pub regime: RegimeClass,
}

/// Row-major raster: `theta` varies slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepMap {
    pub theta: RangeSpec,
    pub theta_a: RangeSpec,
    pub phi: f64,
    pub cells: Vec<SweepCell>,
}

impl SweepMap {
    pub fn rows(&self) -> impl Iterator<Item = &[SweepCell]> {
        self.cells.chunks(self.theta_a.steps())
    }

    pub fn cell(&self, theta_index: usize, theta_a_index: usize) -> &SweepCell {
        &self.cells[theta_index * self.theta_a.steps() + theta_a_index]
    }
}

/// One cell: the real state `(cos theta_a, sin theta_a)` in the basis of `A`
/// against the question related to `A` by `(theta, phi)`.
pub fn sweep_cell(theta: f64, theta_a: f64, phi: f64) -> Result<SweepCell> {
    let a = Question::reference("A");
    let b = Question::new("B", BasisRelation::new(theta, phi)?);
    let s = PureState::from_angles(theta_a, 0.0)?;
    let analysis = analyze_pure(&s, &a, &b);
    Ok(SweepCell {
        theta,
        theta_a,
        phi,
        on_b: analysis.on_b,
        on_a: analysis.on_a,
        report: analysis.report,
        regime: classify_regime(theta),
    })
}

pub fn sweep_fallacy_map(
    theta_grid: &RangeSpec,
    theta_a_grid: &RangeSpec,
    phi: f64,
) -> Result<SweepMap> {
    if !phi.is_finite() {
        return Err(Error::Validation(format!("phi must be finite, got {phi}")));
    }
    let n_a = theta_a_grid.steps();
    let cells = (0..theta_grid.steps() * n_a)
        .into_par_iter()
        .map(|k| sweep_cell(theta_grid.value(k / n_a), theta_a_grid.value(k % n_a), phi))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepMap {
        theta: *theta_grid,
        theta_a: *theta_a_grid,
        phi,
        cells,
    })
}
