//! Independent reference computations used for cross-validation.
//!
//! Nothing here calls into the arithmetic of `observables`, `measurement` or
//! `analysis`; complex numbers are plain `(re, im)` tuples.

use crate::error::{Error, Result};
use crate::observables::BasisRelation;
use crate::qstate::PureState;

type C = (f64, f64);

fn add(x: C, y: C) -> C {
    (x.0 + y.0, x.1 + y.1)
}

fn sub(x: C, y: C) -> C {
    (x.0 - y.0, x.1 - y.1)
}

fn mul(x: C, y: C) -> C {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

fn scale(x: C, k: f64) -> C {
    (x.0 * k, x.1 * k)
}

fn cis(angle: f64) -> C {
    (angle.cos(), angle.sin())
}

fn abs2(x: C) -> f64 {
    x.0 * x.0 + x.1 * x.1
}

/// `|beta_j|^2` where
/// `beta_0 = alpha0 cos(theta) - alpha1 sin(theta) e^{-i phi}` and
/// `beta_1 = alpha0 sin(theta) e^{i phi} + alpha1 cos(theta)`, expanded term by term.
pub fn brute_force_outcome_probability(s: &PureState, rel: &BasisRelation, j: usize) -> f64 {
    let a0 = (s.amp0().re, s.amp0().im);
    let a1 = (s.amp1().re, s.amp1().im);
    let (theta, phi) = (rel.theta(), rel.phi());
    let coefficient = if j == 0 {
        sub(
            scale(a0, theta.cos()),
            mul(scale(a1, theta.sin()), cis(-phi)),
        )
    } else {
        add(
            mul(scale(a0, theta.sin()), cis(phi)),
            scale(a1, theta.cos()),
        )
    };
    abs2(coefficient)
}

/// Classical law of total probability `P(b1) = P(a0) P(b1|a0) + P(a1) P(b1|a1)`.
pub fn classical_total_probability(
    p_a1: f64,
    cond_b1_given_a0: f64,
    cond_b1_given_a1: f64,
) -> Result<f64> {
    for (name, v) in [
        ("p_a1", p_a1),
        ("P(b1|a0)", cond_b1_given_a0),
        ("P(b1|a1)", cond_b1_given_a1),
    ] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Validation(format!(
                "{name} = {v} is not a probability"
            )));
        }
    }
    let total = (1.0 - p_a1) * cond_b1_given_a0 + p_a1 * cond_b1_given_a1;
    debug_assert!(total >= p_a1 * cond_b1_given_a1);
    Ok(total)
}
