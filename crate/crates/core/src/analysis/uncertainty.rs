//! Grid search for the smallest variance sum of two questions over pure states.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::measurement::variance;
use crate::observables::Question;
use crate::qstate::PureState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyMinimum {
    /// Smallest grid value of `var(a) + var(b)`; an upper bound on the true minimum.
    pub minimum: f64,
    /// Polar angle of the minimizing state in the eigenbasis of `a`.
    pub theta_s: f64,
    /// Relative phase of the minimizing state in the eigenbasis of `a`.
    pub phi_s: f64,
}

/// Searches `theta_s = k pi / steps`, `phi_s = l 2 pi / steps` for
/// `k, l in 0..steps`, states written in the eigenbasis of `a`.
pub fn uncertainty_sum_minimum(
    a: &Question,
    b: &Question,
    grid_steps: usize,
) -> Result<UncertaintyMinimum> {
    if grid_steps < 8 {
        return Err(Error::Validation(format!(
            "uncertainty grid needs at least 8 steps, got {grid_steps}"
        )));
    }
    let mut best = UncertaintyMinimum {
        minimum: f64::INFINITY,
        theta_s: 0.0,
        phi_s: 0.0,
    };
    for k in 0..grid_steps {
        let theta_s = k as f64 * PI / grid_steps as f64;
        for l in 0..grid_steps {
            let phi_s = l as f64 * TAU / grid_steps as f64;
            let local = PureState::from_angles(theta_s, phi_s)?;
            let rho = a.from_coordinates(&local).density();
            let sum = variance(&rho, a) + variance(&rho, b);
            if sum < best.minimum {
                best = UncertaintyMinimum {
                    minimum: sum,
                    theta_s,
                    phi_s,
                };
            }
        }
    }
    Ok(best)
}
