//! Born-rule measurement: outcome probabilities, collapse, ordered answer chains
//! and stochastic answering.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::observables::{conditional_probability, Outcome, Question};
use crate::qstate::{Complex, MixedState};

/// Slack admitted around `[0, 1]` before a probability is considered invalid.
pub const PROBABILITY_TOL: f64 = 1e-12;

/// The random stream used for every stochastic operation.
///
/// `ChaCha8Rng::seed_from_u64(seed)`; each answer consumes one `f64` uniform on `[0, 1)`.
pub type AnswerStream = ChaCha8Rng;

pub fn answer_stream(seed: u64) -> AnswerStream {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One answered question in an ordered chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeStep<'a> {
    pub question: &'a Question,
    pub outcome: Outcome,
}

impl<'a> OutcomeStep<'a> {
    pub fn new(question: &'a Question, outcome: Outcome) -> Self {
        Self { question, outcome }
    }
}

fn clamp_probability(p: f64) -> f64 {
    debug_assert!(
        (-PROBABILITY_TOL..=1.0 + PROBABILITY_TOL).contains(&p),
        "probability {p} outside [0, 1]"
    );
    p.clamp(0.0, 1.0)
}

/// `Tr(rho |q_i><q_i|)` without clamping.
pub(crate) fn raw_outcome_probability(rho: &MixedState, q: &Question, i: Outcome) -> f64 {
    rho.expectation(&q.eigenvector(i))
}

/// Probability of answering `i` to `q` from `rho`.
pub fn outcome_probability(rho: &MixedState, q: &Question, i: Outcome) -> f64 {
    clamp_probability(raw_outcome_probability(rho, q, i))
}

fn trace_product(x: &[[Complex; 2]; 2], y: &[[Complex; 2]; 2]) -> Complex {
    x[0][0] * y[0][0] + x[0][1] * y[1][0] + x[1][0] * y[0][1] + x[1][1] * y[1][1]
}

/// `<Q> = Tr(rho Q)`; equals `P(q = 1)` for 0/1 eigenvalues.
pub fn mean_value(rho: &MixedState, q: &Question) -> f64 {
    trace_product(&rho.matrix(), &q.operator()).re
}

/// `<Q^2> - <Q>^2`, which is `P(1) P(0)` for a projector.
pub fn variance(rho: &MixedState, q: &Question) -> f64 {
    let op = q.operator();
    let mut square = [[Complex::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            square[r][c] = op[r][0] * op[0][c] + op[r][1] * op[1][c];
        }
    }
    let mean = mean_value(rho, q);
    (trace_product(&rho.matrix(), &square).re - mean * mean).max(0.0)
}

/// State after the answer `i` to `q` has been observed: `|q_i><q_i|`.
pub fn collapse(rho: &MixedState, q: &Question, i: Outcome) -> Result<MixedState> {
    if raw_outcome_probability(rho, q, i) <= PROBABILITY_TOL {
        return Err(Error::ImpossibleOutcome {
            question: q.name().to_string(),
            outcome: i.bit(),
        });
    }
    Ok(q.eigenvector(i).density())
}

/// `P(step_1 -> step_2 -> ...)`, the product of Born probabilities along the chain
/// of collapsed states.
///
/// A zero-probability intermediate step makes the whole chain 0.
pub fn consecutive_probability(rho: &MixedState, steps: &[OutcomeStep<'_>]) -> Result<f64> {
    let (first, rest) = steps
        .split_first()
        .ok_or_else(|| Error::Validation("answer sequence is empty".into()))?;
    let mut p = raw_outcome_probability(rho, first.question, first.outcome);
    let mut previous = first;
    for step in rest {
        // after collapse the state is the previous eigenvector
        p *= conditional_probability(
            previous.question,
            previous.outcome,
            step.question,
            step.outcome,
        );
        previous = step;
    }
    Ok(clamp_probability(p))
}

/// Probability that asking `first`, `second`, then `first` again changes the
/// answer to `first`, starting from an eigenstate of `first`.
///
/// Equal to `sin^2(2 theta) / 2` for relative angle `theta`.
pub fn ordering_flip_probability(first: &Question, second: &Question) -> f64 {
    let start = Outcome::Zero;
    Outcome::BOTH
        .iter()
        .map(|&j| {
            conditional_probability(first, start, second, j)
                * conditional_probability(second, j, first, start.flipped())
        })
        .sum()
}

/// Draws an answer to `q` and returns it with the collapsed state.
///
/// Consumes exactly one uniform variate; the answer is 1 iff the variate is
/// below `P(1)`.
pub fn sample_answer<R: Rng + ?Sized>(
    state: &MixedState,
    q: &Question,
    rng: &mut R,
) -> (Outcome, MixedState) {
    let p1 = outcome_probability(state, q, Outcome::One);
    let u: f64 = rng.random();
    let outcome = Outcome::from_bit(u < p1);
    (outcome, q.eigenvector(outcome).density())
}
