//! Qubit model of bounded-rationality judgments.
//!
//! Opinion states are single-qubit pure states or density matrices, questions are
//! two-outcome observables with eigenvalues 0 and 1, and conjunction-fallacy effects
//! show up as the interference term that breaks the law of total probability for
//! non-commuting question pairs.
//!
//! - [`qstate`]: pure and mixed opinion states.
//! - [`observables`]: questions, basis relations and conditional probabilities.
//! - [`measurement`]: Born probabilities, collapse, ordered answer chains, sampling.
//! - [`analysis`]: interference decompositions, fallacy detection, sweeps.
//! - [`oracle`]: independent reference computations for cross-checking.
//! - [`population`]: agent mixtures and Monte Carlo answer frequencies.
//! - [`dsl`]: the `.qx` experiment-description language.
//! - [`cli`]: the command-line front end.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod measurement;
pub mod observables;
pub mod oracle;
pub mod population;
pub mod qstate;

pub use error::{Error, Result};
pub use observables::{BasisRelation, Outcome, Question};
pub use qstate::{Complex, MixedState, PureState};
