//! Heterogeneous agent populations and their answer statistics.
//!
//! A population is a weighted list of preparations. Each agent is drawn from one
//! component and answers the question pair in both orders, each order on a fresh
//! copy of its preparation.

use crate::analysis::fallacy_report_density;
use crate::error::{ensure_finite, Error, Result};
use crate::measurement::{answer_stream, sample_answer};
use crate::observables::{Outcome, Question};
use crate::qstate::{MixedState, PureState, WEIGHT_SUM_TOL};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preparation {
    Pure(PureState),
    Mixed(MixedState),
}

impl Preparation {
    pub fn density(&self) -> MixedState {
        match self {
            Preparation::Pure(s) => s.density(),
            Preparation::Mixed(rho) => *rho,
        }
    }
}

impl From<PureState> for Preparation {
    fn from(s: PureState) -> Self {
        Preparation::Pure(s)
    }
}

impl From<MixedState> for Preparation {
    fn from(rho: MixedState) -> Self {
        Preparation::Mixed(rho)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationComponent {
    pub fraction: f64,
    pub preparation: Preparation,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationSpec {
    components: Vec<PopulationComponent>,
}

impl PopulationSpec {
    pub fn new(components: Vec<PopulationComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Validation("population has no components".into()));
        }
        let mut total = 0.0;
        for c in &components {
            let f = ensure_finite("population fraction", c.fraction)?;
            if f < 0.0 {
                return Err(Error::Validation(format!(
                    "component `{}` has negative fraction {f}",
                    c.label
                )));
            }
            total += f;
        }
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::Validation(format!(
                "population fractions sum to {total}, expected 1"
            )));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[PopulationComponent] {
        &self.components
    }

    /// Index of the component selected by a uniform variate.
    fn pick(&self, u: f64) -> usize {
        let mut cumulative = 0.0;
        for (k, c) in self.components.iter().enumerate() {
            cumulative += c.fraction;
            if u < cumulative {
                return k;
            }
        }
        // rounding left u above the last edge
        self.components
            .iter()
            .rposition(|c| c.fraction > 0.0)
            .unwrap_or(self.components.len() - 1)
    }
}

/// Fraction of agents whose preparation shows the conjunction fallacy on `b`.
pub fn predicted_fallacy_rate(pop: &PopulationSpec, a: &Question, b: &Question) -> f64 {
    pop.components
        .iter()
        .filter(|c| fallacy_report_density(&c.preparation.density(), a, b).fallacy_on_b)
        .map(|c| c.fraction)
        .sum()
}

/// Counts and frequencies from one simulated population.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalTable {
    pub agents: u64,
    pub seed: u64,
    /// First answer of the `a, b` order equal to 1.
    pub count_a1: u64,
    /// First answer of the `b, a` order equal to 1.
    pub count_b1: u64,
    pub count_a1_then_b1: u64,
    pub count_b1_then_a1: u64,
    /// Agents drawn from each component, in component order.
    pub component_counts: Vec<u64>,
}

impl EmpiricalTable {
    fn frequency(&self, count: u64) -> f64 {
        count as f64 / self.agents as f64
    }

    pub fn p_a1(&self) -> f64 {
        self.frequency(self.count_a1)
    }

    pub fn p_b1(&self) -> f64 {
        self.frequency(self.count_b1)
    }

    pub fn p_a1_then_b1(&self) -> f64 {
        self.frequency(self.count_a1_then_b1)
    }

    pub fn p_b1_then_a1(&self) -> f64 {
        self.frequency(self.count_b1_then_a1)
    }
}

/// Seeded Monte Carlo over `n_agents` agents.
///
/// Stream consumption per agent: one variate for the component, then `a`, `b`
/// on one copy, then `b`, `a` on another.
pub fn simulate_population(
    pop: &PopulationSpec,
    a: &Question,
    b: &Question,
    n_agents: u64,
    seed: u64,
) -> Result<EmpiricalTable> {
    if n_agents == 0 {
        return Err(Error::Validation(
            "simulation needs at least one agent".into(),
        ));
    }
    let mut rng = answer_stream(seed);
    let densities: Vec<MixedState> = pop
        .components
        .iter()
        .map(|c| c.preparation.density())
        .collect();
    let mut table = EmpiricalTable {
        agents: n_agents,
        seed,
        count_a1: 0,
        count_b1: 0,
        count_a1_then_b1: 0,
        count_b1_then_a1: 0,
        component_counts: vec![0; densities.len()],
    };
    for _ in 0..n_agents {
        let k = pop.pick(rng.random());
        table.component_counts[k] += 1;
        let rho = &densities[k];

        let (first, after) = sample_answer(rho, a, &mut rng);
        let (second, _) = sample_answer(&after, b, &mut rng);
        if first == Outcome::One {
            table.count_a1 += 1;
            if second == Outcome::One {
                table.count_a1_then_b1 += 1;
            }
        }

        let (first, after) = sample_answer(rho, b, &mut rng);
        let (second, _) = sample_answer(&after, a, &mut rng);
        if first == Outcome::One {
            table.count_b1 += 1;
            if second == Outcome::One {
                table.count_b1_then_a1 += 1;
            }
        }
    }
    Ok(table)
}
