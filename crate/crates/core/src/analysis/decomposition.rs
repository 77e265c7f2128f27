//! Law-of-total-probability decompositions with their interference terms.

use crate::error::{Error, Result};
use crate::measurement::{outcome_probability, raw_outcome_probability};
use crate::observables::{change_basis, conditional_probability, Outcome, Question};
use crate::qstate::{Complex, MixedState, PureState};

/// Off-diagonal magnitude below which a state counts as diagonal in a basis.
pub const DIAGONAL_TOL: f64 = 1e-12;

/// `total = classical_part + interference` for one answer to one question.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    pub total: f64,
    pub classical_part: f64,
    pub interference: f64,
    pub target_question: Question,
    pub target_outcome: Outcome,
}

fn outcome_sign(j: Outcome) -> f64 {
    match j {
        Outcome::Zero => -1.0,
        Outcome::One => 1.0,
    }
}

/// Two-path sum `sum_i P(a_i) P(b_j | a_i)`.
fn classical_sum(p_a: [f64; 2], a: &Question, b: &Question, j: Outcome) -> f64 {
    Outcome::BOTH
        .iter()
        .map(|&i| p_a[i.index()] * conditional_probability(a, i, b, j))
        .sum()
}

/// Expands `P(b_j)` over the answers to `a`.
///
/// With `alpha` the components of `s` in the eigenbasis of `a` and `(theta, phi)`
/// the relation from `a` to `b`, the interference term is
/// `+-Re[alpha0 alpha1* sin(2 theta) e^{i phi}]` (plus for `j = 1`). The total is
/// computed independently as the Born probability of `b_j`.
pub fn decompose_total_probability(
    s: &PureState,
    a: &Question,
    b: &Question,
    j: Outcome,
) -> DecompositionResult {
    let alpha = a.coordinates(s);
    let rel = a.relation_to(b);
    let p_a = [alpha.amp0().norm_sqr(), alpha.amp1().norm_sqr()];
    let classical_part = classical_sum(p_a, a, b, j);
    let phase = Complex::from_polar((2.0 * rel.theta()).sin(), rel.phi());
    let interference = outcome_sign(j) * (alpha.amp0() * alpha.amp1().conj() * phase).re;
    DecompositionResult {
        total: outcome_probability(&s.density(), b, j),
        classical_part,
        interference,
        target_question: b.clone(),
        target_outcome: j,
    }
}

/// Expands `P(a_j)` over the answers to `b`, written with the components
/// `beta` of `s` in the eigenbasis of `b`:
/// `P(a_1) = P(b_0) P(a_1|b_0) + P(b_1) P(a_1|b_1) - Re[beta0 beta1* sin(2 theta) e^{i phi}]`,
/// where `(theta, phi)` is still the relation from `a` to `b`.
pub fn decompose_first_question(
    s: &PureState,
    a: &Question,
    b: &Question,
    j: Outcome,
) -> DecompositionResult {
    let alpha = a.coordinates(s);
    let rel = a.relation_to(b);
    let beta = change_basis(&alpha, &rel);
    let p_b = [beta.amp0().norm_sqr(), beta.amp1().norm_sqr()];
    let classical_part = classical_sum(p_b, b, a, j);
    let phase = Complex::from_polar((2.0 * rel.theta()).sin(), rel.phi());
    let interference = -outcome_sign(j) * (beta.amp0() * beta.amp1().conj() * phase).re;
    DecompositionResult {
        total: outcome_probability(&s.density(), a, j),
        classical_part,
        interference,
        target_question: a.clone(),
        target_outcome: j,
    }
}

/// Density-matrix form: classical part from the diagonal of `rho` in the basis of
/// `a`, interference as the remainder.
pub fn decompose_density(
    rho: &MixedState,
    a: &Question,
    b: &Question,
    j: Outcome,
) -> DecompositionResult {
    let p_a = [
        raw_outcome_probability(rho, a, Outcome::Zero),
        raw_outcome_probability(rho, a, Outcome::One),
    ];
    let classical_part = classical_sum(p_a, a, b, j);
    let total = outcome_probability(rho, b, j);
    DecompositionResult {
        total,
        classical_part,
        interference: total - classical_part,
        target_question: b.clone(),
        target_outcome: j,
    }
}

/// `P(b_j)` for a state that is an incoherent mixture of the eigenvectors of `a`.
///
/// Such states obey the classical law of total probability, so the result is the
/// two-path sum.
pub fn mixed_state_total_probability(
    rho: &MixedState,
    a: &Question,
    b: &Question,
    j: Outcome,
) -> Result<f64> {
    let (a0, a1) = a.eigenvectors();
    let off = rho.element(&a0, &a1).norm();
    if off > DIAGONAL_TOL {
        return Err(Error::Precondition(format!(
            "state is not diagonal in the basis of `{}` (off-diagonal magnitude {off:e})",
            a.name()
        )));
    }
    let p_a = [rho.expectation(&a0), rho.expectation(&a1)];
    Ok(classical_sum(p_a, a, b, j).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::BasisRelation;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

    fn pair(theta: f64, phi: f64) -> (Question, Question) {
        (
            Question::reference("A"),
            Question::new("B", BasisRelation::new(theta, phi).unwrap()),
        )
    }

    /// Literal expansion of P(b1) = |alpha0 sin(theta) e^{i phi} + alpha1 cos(theta)|^2
    /// into its three terms, for real amplitudes and phi = 0.
    fn expanded(theta_a: f64, theta: f64) -> (f64, f64, f64) {
        let (a0, a1) = (theta_a.cos(), theta_a.sin());
        let classical = a0 * a0 * theta.sin().powi(2) + a1 * a1 * theta.cos().powi(2);
        let cross = 2.0 * a0 * a1 * theta.sin() * theta.cos();
        (
            (a0 * theta.sin() + a1 * theta.cos()).powi(2),
            classical,
            cross,
        )
    }

    #[test]
    fn pinned_fallacy_point() {
        let (a, b) = pair(0.2, 0.0);
        let s = PureState::from_angles(1.8, 0.0).unwrap();
        let d = decompose_total_probability(&s, &a, &b, Outcome::One);
        let (total, classical, cross) = expanded(1.8, 0.2);
        assert_abs_diff_eq!(d.total, total, epsilon = 1e-12);
        assert_abs_diff_eq!(d.classical_part, classical, epsilon = 1e-12);
        assert_abs_diff_eq!(d.interference, cross, epsilon = 1e-12);
        assert_abs_diff_eq!(d.total, 0.8267, epsilon = 1e-3);
        assert_abs_diff_eq!(d.classical_part, 0.9130, epsilon = 1e-4);
        assert_abs_diff_eq!(d.interference, -0.0862, epsilon = 1e-4);
    }

    #[test]
    fn reverse_point() {
        let (a, b) = pair(FRAC_PI_6, 0.0);
        let s = PureState::from_angles(FRAC_PI_3, 0.0).unwrap();
        let d = decompose_total_probability(&s, &a, &b, Outcome::One);
        assert_abs_diff_eq!(d.total, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.classical_part, 0.625, epsilon = 1e-12);
        assert_abs_diff_eq!(d.interference, 0.375, epsilon = 1e-12);
    }

    #[test]
    fn commuting_pair_has_no_interference() {
        let (a, b) = pair(0.0, 1.3);
        let s = PureState::from_angles(0.9, 0.4).unwrap();
        for j in Outcome::BOTH {
            let d = decompose_total_probability(&s, &a, &b, j);
            assert_eq!(d.interference, 0.0);
            assert_abs_diff_eq!(d.total, d.classical_part, epsilon = 1e-15);
        }
    }

    #[test]
    fn first_question_form_matches_swapped_roles() {
        let (a, b) = pair(0.7, 1.9);
        let s = PureState::from_angles(2.3, 0.6).unwrap();
        for j in Outcome::BOTH {
            let beta_form = decompose_first_question(&s, &a, &b, j);
            let swapped = decompose_total_probability(&s, &b, &a, j);
            assert_abs_diff_eq!(
                beta_form.classical_part,
                swapped.classical_part,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                beta_form.interference,
                swapped.interference,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                beta_form.total,
                beta_form.classical_part + beta_form.interference,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn density_form_agrees_for_pure_states() {
        let (a, b) = pair(1.1, 0.8);
        let s = PureState::from_angles(0.4, 2.2).unwrap();
        let pure = decompose_total_probability(&s, &a, &b, Outcome::One);
        let dens = decompose_density(&s.density(), &a, &b, Outcome::One);
        assert_abs_diff_eq!(pure.interference, dens.interference, epsilon = 1e-12);
    }

    #[test]
    fn mixed_state_examples() {
        let (a, b) = pair(0.2, 0.0);
        let p1 = 1.8f64.sin().powi(2);
        let rho = MixedState::diagonal_in(&PureState::basis(0), &PureState::basis(1), p1).unwrap();
        let p = mixed_state_total_probability(&rho, &a, &b, Outcome::One).unwrap();
        assert_abs_diff_eq!(p, 0.9130, epsilon = 1e-4);
        assert_abs_diff_eq!(
            p,
            outcome_probability(&rho, &b, Outcome::One),
            epsilon = 1e-12
        );

        let p = mixed_state_total_probability(&MixedState::maximally_mixed(), &a, &b, Outcome::One)
            .unwrap();
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-15);

        let p = mixed_state_total_probability(&PureState::basis(0).density(), &a, &b, Outcome::One)
            .unwrap();
        assert_abs_diff_eq!(p, 0.2f64.sin().powi(2), epsilon = 1e-15);

        let coherent = PureState::from_angles(1.8, 0.0).unwrap().density();
        assert!(matches!(
            mixed_state_total_probability(&coherent, &a, &b, Outcome::One),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn non_reference_first_question() {
        let r = Question::reference("R");
        let a = Question::derived("A", &r, BasisRelation::new(0.5, 0.3).unwrap());
        let b = Question::derived("B", &a, BasisRelation::new(0.2, 0.0).unwrap());
        let s = a.from_coordinates(&PureState::from_angles(1.8, 0.0).unwrap());
        let d = decompose_total_probability(&s, &a, &b, Outcome::One);
        assert_abs_diff_eq!(d.total, 2.0f64.sin().powi(2), epsilon = 1e-12);
        assert_abs_diff_eq!(d.classical_part + d.interference, d.total, epsilon = 1e-12);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn identity_holds(ta in -7.0f64..7.0, pa in -7.0f64..7.0, t in -7.0f64..7.0, p in -7.0f64..7.0) {
                let (a, b) = pair(t, p);
                let s = PureState::from_angles(ta, pa).unwrap();
                for j in Outcome::BOTH {
                    let d = decompose_total_probability(&s, &a, &b, j);
                    prop_assert!((d.total - d.classical_part - d.interference).abs() < 1e-12);
                    prop_assert!((0.0..=1.0).contains(&d.classical_part));
                    let e = decompose_first_question(&s, &a, &b, j);
                    prop_assert!((e.total - e.classical_part - e.interference).abs() < 1e-12);
                }
            }

            #[test]
            fn interference_largest_at_real_phases(ta in 0.01f64..3.1, t in 0.01f64..3.1, p in 0.0f64..std::f64::consts::TAU) {
                let (a, b0) = pair(t, 0.0);
                let (_, bp) = pair(t, p);
                let (_, bq) = pair(t, std::f64::consts::FRAC_PI_2);
                let s = PureState::from_angles(ta, 0.0).unwrap();
                let i0 = decompose_total_probability(&s, &a, &b0, Outcome::One).interference.abs();
                let ip = decompose_total_probability(&s, &a, &bp, Outcome::One).interference.abs();
                let iq = decompose_total_probability(&s, &a, &bq, Outcome::One).interference.abs();
                prop_assert!(ip <= i0 + 1e-15);
                prop_assert!(iq < 1e-15);
            }
        }
    }
}
