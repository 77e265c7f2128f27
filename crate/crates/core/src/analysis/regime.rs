//! Correlation regime of a question pair from its relative angle.

use std::f64::consts::{FRAC_PI_8, PI};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeClass {
    Correlated,
    Uncorrelated,
    Anticorrelated,
    Intermediate,
}

impl RegimeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeClass::Correlated => "correlated",
            RegimeClass::Uncorrelated => "uncorrelated",
            RegimeClass::Anticorrelated => "anticorrelated",
            RegimeClass::Intermediate => "intermediate",
        }
    }
}

impl fmt::Display for RegimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Upper edges of the bands on the folded angle in `[0, pi/2]`.
///
/// An angle equal to an edge belongs to the lower class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeBands {
    pub correlated_max: f64,
    pub uncorrelated_min: f64,
    pub uncorrelated_max: f64,
    pub anticorrelated_min: f64,
}

impl Default for RegimeBands {
    fn default() -> Self {
        Self {
            correlated_max: FRAC_PI_8,
            uncorrelated_min: FRAC_PI_8,
            uncorrelated_max: 3.0 * FRAC_PI_8,
            anticorrelated_min: 3.0 * FRAC_PI_8,
        }
    }
}

impl RegimeBands {
    pub fn classify(&self, theta: f64) -> RegimeClass {
        let t = theta.rem_euclid(PI);
        // pi - theta is the same pair of bases as -theta
        let folded = t.min(PI - t);
        if folded <= self.correlated_max {
            RegimeClass::Correlated
        } else if folded > self.uncorrelated_min && folded <= self.uncorrelated_max {
            RegimeClass::Uncorrelated
        } else if folded > self.anticorrelated_min {
            RegimeClass::Anticorrelated
        } else {
            RegimeClass::Intermediate
        }
    }
}

pub fn classify_regime(theta: f64) -> RegimeClass {
    RegimeBands::default().classify(theta)
}
