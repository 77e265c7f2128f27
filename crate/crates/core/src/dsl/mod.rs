//! The `.qx` experiment-description language.
//!
//! One directive per line, `#` starts a comment:
//!
//! ```text
//! question A
//! question B from A theta=0.2 [phi=0]
//! state s pure basis=A theta_a=1.8 [phi_a=0]
//! state m mixed basis=A p1=0.9484
//! population p = 0.85*s + 0.15*m
//! task fallacy state=s pair=A,B
//! task sequence state=s order=A,B,A
//! task sweep pair=A,B theta=0.01:3.13:64 theta_a=0.01:3.13:64 [phi=0]
//! task simulate population=p pair=A,B agents=100000 seed=7
//! task underextension state=s pair=A,B
//! task uncertainty pair=A,B steps=256
//! ```
//!
//! Numbers are decimals or pi fractions (`pi`, `pi/4`, `3pi/4`, `-2*pi/3`).
//! Angles are radians unless suffixed with `deg`.

mod number;
mod parser;
mod printer;

use std::fmt;

use crate::analysis::RangeSpec;
use crate::error::{Error, Result};
use crate::observables::{BasisRelation, Question};
use crate::population::{PopulationComponent, PopulationSpec, Preparation};
use crate::qstate::{MixedState, PureState};

pub use number::{parse_angle, parse_float};
pub use parser::parse;
pub use printer::print;

/// File extension of experiment files.
pub const EXTENSION: &str = "qx";

#[derive(Debug, Clone, PartialEq)]
pub struct QuestionDecl {
    pub name: String,
    /// `None` for a question in the reference basis.
    pub parent: Option<String>,
    pub theta: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateKind {
    Pure {
        theta_a: f64,
        phi_a: f64,
    },
    /// Diagonal mixture with weight `p1` on the outcome-1 eigenvector.
    Mixed {
        p1: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateDecl {
    pub name: String,
    pub basis: String,
    pub kind: StateKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationTerm {
    pub fraction: f64,
    pub state: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationDecl {
    pub name: String,
    pub terms: Vec<PopulationTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuestionPair {
    pub first: String,
    pub second: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    Fallacy,
    Sequence,
    Sweep,
    Simulate,
    Underextension,
    Uncertainty,
}

impl TaskKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TaskKind::Fallacy => "fallacy",
            TaskKind::Sequence => "sequence",
            TaskKind::Sweep => "sweep",
            TaskKind::Simulate => "simulate",
            TaskKind::Underextension => "underextension",
            TaskKind::Uncertainty => "uncertainty",
        }
    }

    fn from_keyword(word: &str) -> Option<Self> {
        [
            TaskKind::Fallacy,
            TaskKind::Sequence,
            TaskKind::Sweep,
            TaskKind::Simulate,
            TaskKind::Underextension,
            TaskKind::Uncertainty,
        ]
        .into_iter()
        .find(|k| k.as_str() == word)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Fallacy {
        state: String,
        pair: QuestionPair,
    },
    Sequence {
        state: String,
        order: Vec<String>,
    },
    Sweep {
        pair: QuestionPair,
        theta: RangeSpec,
        theta_a: RangeSpec,
        phi: f64,
    },
    Simulate {
        population: String,
        pair: QuestionPair,
        agents: u64,
        seed: u64,
    },
    Underextension {
        state: String,
        pair: QuestionPair,
    },
    Uncertainty {
        pair: QuestionPair,
        steps: usize,
    },
}

impl Task {
    pub fn kind(&self) -> TaskKind {
        match self {
            Task::Fallacy { .. } => TaskKind::Fallacy,
            Task::Sequence { .. } => TaskKind::Sequence,
            Task::Sweep { .. } => TaskKind::Sweep,
            Task::Simulate { .. } => TaskKind::Simulate,
            Task::Underextension { .. } => TaskKind::Underextension,
            Task::Uncertainty { .. } => TaskKind::Uncertainty,
        }
    }
}

/// A parsed experiment file. Every reference resolves to an earlier declaration.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentSpec {
    pub questions: Vec<QuestionDecl>,
    pub states: Vec<StateDecl>,
    pub populations: Vec<PopulationDecl>,
    pub tasks: Vec<Task>,
}

fn unresolved(kind: &str, name: &str) -> Error {
    Error::Validation(format!("unknown {kind} `{name}`"))
}

impl ExperimentSpec {
    pub fn question(&self, name: &str) -> Result<Question> {
        let decl = self
            .questions
            .iter()
            .find(|q| q.name == name)
            .ok_or_else(|| unresolved("question", name))?;
        let relation = BasisRelation::new(decl.theta, decl.phi)?;
        match &decl.parent {
            None => Ok(Question::reference(name)),
            Some(parent) => Ok(Question::derived(name, &self.question(parent)?, relation)),
        }
    }

    pub fn questions_of(&self, pair: &QuestionPair) -> Result<(Question, Question)> {
        Ok((self.question(&pair.first)?, self.question(&pair.second)?))
    }

    pub fn preparation(&self, name: &str) -> Result<Preparation> {
        let decl = self
            .states
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| unresolved("state", name))?;
        let basis = self.question(&decl.basis)?;
        match decl.kind {
            StateKind::Pure { theta_a, phi_a } => {
                let local = PureState::from_angles(theta_a, phi_a)?;
                Ok(Preparation::Pure(basis.from_coordinates(&local)))
            }
            StateKind::Mixed { p1 } => {
                let (v0, v1) = basis.eigenvectors();
                Ok(Preparation::Mixed(MixedState::diagonal_in(&v0, &v1, p1)?))
            }
        }
    }

    pub fn population(&self, name: &str) -> Result<PopulationSpec> {
        let decl = self
            .populations
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| unresolved("population", name))?;
        let components = decl
            .terms
            .iter()
            .map(|t| {
                Ok(PopulationComponent {
                    fraction: t.fraction,
                    preparation: self.preparation(&t.state)?,
                    label: t.state.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PopulationSpec::new(components)
    }
}

/// A diagnostic pointing at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub snippet: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )?;
        writeln!(f, "  {}", self.snippet)?;
        write!(f, "  {}^", " ".repeat(self.column.saturating_sub(1)))
    }
}

impl std::error::Error for ParseError {}
