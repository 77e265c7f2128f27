//! CSV sections for each task kind.

use crate::analysis::{
    analyze_density, sweep_fallacy_map, uncertainty_sum_minimum, underextension_density,
    FallacyReport, SweepMap,
};
use crate::dsl::{ExperimentSpec, QuestionPair, Task};
use crate::error::{Error, Result};
use crate::measurement::{consecutive_probability, OutcomeStep};
use crate::observables::{Outcome, Question};
use crate::population::{predicted_fallacy_rate, simulate_population};

pub const SWEEP_HEADER: [&str; 14] = [
    "theta",
    "theta_a",
    "phi",
    "p_a1",
    "p_b1",
    "classical_b1",
    "interference_b1",
    "classical_a1",
    "interference_a1",
    "fallacy_b",
    "fallacy_a",
    "reverse_b",
    "reverse_a",
    "regime",
];

const FALLACY_HEADER: [&str; 20] = [
    "state",
    "a",
    "b",
    "p_a1",
    "p_b1",
    "classical_b1",
    "interference_b1",
    "classical_a1",
    "interference_a1",
    "a_then_b",
    "b_then_a",
    "fallacy_b",
    "fallacy_a",
    "reverse_b",
    "reverse_a",
    "margin_fallacy_b",
    "margin_fallacy_a",
    "margin_reverse_b",
    "margin_reverse_a",
    "regime",
];

const SEQUENCE_HEADER: [&str; 4] = ["state", "order", "outcomes", "probability"];

const SIMULATE_HEADER: [&str; 15] = [
    "population",
    "a",
    "b",
    "agents",
    "seed",
    "components",
    "predicted_fallacy_rate",
    "count_a1",
    "count_b1",
    "count_a1_then_b1",
    "count_b1_then_a1",
    "p_a1",
    "p_b1",
    "p_a1_then_b1",
    "p_b1_then_a1",
];

const UNDEREXTENSION_HEADER: [&str; 12] = [
    "state",
    "a",
    "b",
    "mu_a",
    "mu_b",
    "a_then_b",
    "b_then_a",
    "low",
    "high",
    "or_low",
    "or_high",
    "underextension",
];

const UNCERTAINTY_HEADER: [&str; 6] = ["a", "b", "steps", "minimum", "theta_s", "phi_s"];

/// 17 significant digits, enough to reparse the exact value.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn flag(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

fn flags(r: &FallacyReport) -> [String; 4] {
    [
        flag(r.fallacy_on_b),
        flag(r.fallacy_on_a),
        flag(r.reverse_on_b),
        flag(r.reverse_on_a),
    ]
}

/// A header and its rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn write_csv(&self, out: &mut Vec<u8>) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()
    }
}

/// Concatenates sections, a blank line between consecutive ones.
pub fn render(sections: &[Section]) -> Vec<u8> {
    let mut out = Vec::new();
    for (k, s) in sections.iter().enumerate() {
        if k > 0 {
            out.push(b'\n');
        }
        s.write_csv(&mut out).expect("writing to memory");
    }
    out
}

pub fn sweep_section(map: &SweepMap) -> Section {
    let mut section = Section::new(&SWEEP_HEADER);
    for c in &map.cells {
        let mut row = vec![
            float(c.theta),
            float(c.theta_a),
            float(c.phi),
            float(c.on_a.total),
            float(c.on_b.total),
            float(c.on_b.classical_part),
            float(c.on_b.interference),
            float(c.on_a.classical_part),
            float(c.on_a.interference),
        ];
        row.extend(flags(&c.report));
        row.push(c.regime.as_str().to_string());
        section.rows.push(row);
    }
    section
}

fn both_ones(rho: &crate::qstate::MixedState, first: &Question, second: &Question) -> Result<f64> {
    consecutive_probability(
        rho,
        &[
            OutcomeStep::new(first, Outcome::One),
            OutcomeStep::new(second, Outcome::One),
        ],
    )
}

fn pair_names(pair: &QuestionPair) -> [String; 2] {
    [pair.first.clone(), pair.second.clone()]
}

/// Runs one task. `seed` replaces the seed of simulate tasks when given.
pub fn task_section(
    spec: &ExperimentSpec,
    task: &Task,
    seed: Option<u64>,
    agents: Option<u64>,
) -> Result<Section> {
    match task {
        Task::Fallacy { state, pair } => {
            let (a, b) = spec.questions_of(pair)?;
            let rho = spec.preparation(state)?.density();
            let fa = analyze_density(&rho, &a, &b);
            let m = fa.report.margins;
            let mut row = vec![state.clone()];
            row.extend(pair_names(pair));
            row.extend(
                [
                    fa.p_a1(),
                    fa.p_b1(),
                    fa.on_b.classical_part,
                    fa.on_b.interference,
                    fa.on_a.classical_part,
                    fa.on_a.interference,
                    both_ones(&rho, &a, &b)?,
                    both_ones(&rho, &b, &a)?,
                ]
                .map(float),
            );
            row.extend(flags(&fa.report));
            row.extend([m.fallacy_b, m.fallacy_a, m.reverse_b, m.reverse_a].map(float));
            row.push(
                crate::analysis::classify_regime(a.relation_to(&b).theta())
                    .as_str()
                    .to_string(),
            );
            let mut section = Section::new(&FALLACY_HEADER);
            section.rows.push(row);
            Ok(section)
        }
        Task::Sequence { state, order } => {
            let rho = spec.preparation(state)?.density();
            let questions = order
                .iter()
                .map(|name| spec.question(name))
                .collect::<Result<Vec<_>>>()?;
            let n = questions.len();
            let mut section = Section::new(&SEQUENCE_HEADER);
            for code in 0..(1u64 << n) {
                let outcomes: Vec<Outcome> = (0..n)
                    .map(|k| Outcome::from_bit(code >> (n - 1 - k) & 1 == 1))
                    .collect();
                let steps: Vec<OutcomeStep<'_>> = questions
                    .iter()
                    .zip(&outcomes)
                    .map(|(q, &o)| OutcomeStep::new(q, o))
                    .collect();
                let bits: String = outcomes.iter().map(|o| o.to_string()).collect();
                section.rows.push(vec![
                    state.clone(),
                    order.join(" "),
                    bits,
                    float(consecutive_probability(&rho, &steps)?),
                ]);
            }
            Ok(section)
        }
        Task::Sweep {
            theta,
            theta_a,
            phi,
            ..
        } => Ok(sweep_section(&sweep_fallacy_map(theta, theta_a, *phi)?)),
        Task::Simulate {
            population,
            pair,
            agents: declared_agents,
            seed: declared_seed,
        } => {
            let (a, b) = spec.questions_of(pair)?;
            let pop = spec.population(population)?;
            let n = agents.unwrap_or(*declared_agents);
            let seed = seed.unwrap_or(*declared_seed);
            let t = simulate_population(&pop, &a, &b, n, seed)?;
            let components = pop
                .components()
                .iter()
                .zip(&t.component_counts)
                .map(|(c, k)| format!("{}:{k}", c.label))
                .collect::<Vec<_>>()
                .join(" ");
            let mut row = vec![population.clone()];
            row.extend(pair_names(pair));
            row.extend([n.to_string(), seed.to_string(), components]);
            row.push(float(predicted_fallacy_rate(&pop, &a, &b)));
            row.extend(
                [
                    t.count_a1,
                    t.count_b1,
                    t.count_a1_then_b1,
                    t.count_b1_then_a1,
                ]
                .map(|c| c.to_string()),
            );
            row.extend([t.p_a1(), t.p_b1(), t.p_a1_then_b1(), t.p_b1_then_a1()].map(float));
            let mut section = Section::new(&SIMULATE_HEADER);
            section.rows.push(row);
            Ok(section)
        }
        Task::Underextension { state, pair } => {
            let (a, b) = spec.questions_of(pair)?;
            let u = underextension_density(&spec.preparation(state)?.density(), &a, &b);
            let mut row = vec![state.clone()];
            row.extend(pair_names(pair));
            row.extend(
                [
                    u.mu_a, u.mu_b, u.a_then_b, u.b_then_a, u.low, u.high, u.or_low, u.or_high,
                ]
                .map(float),
            );
            row.push(flag(u.underextension));
            let mut section = Section::new(&UNDEREXTENSION_HEADER);
            section.rows.push(row);
            Ok(section)
        }
        Task::Uncertainty { pair, steps } => {
            let (a, b) = spec.questions_of(pair)?;
            let m = uncertainty_sum_minimum(&a, &b, *steps)?;
            let mut row = pair_names(pair).to_vec();
            row.push(steps.to_string());
            row.extend([m.minimum, m.theta_s, m.phi_s].map(float));
            let mut section = Section::new(&UNCERTAINTY_HEADER);
            section.rows.push(row);
            Ok(section)
        }
    }
}

/// Runs every task in declaration order.
pub fn run_spec(spec: &ExperimentSpec, seed: Option<u64>) -> Result<Vec<Section>> {
    spec.tasks
        .iter()
        .map(|t| task_section(spec, t, seed, None))
        .collect()
}

/// Runs only the simulate tasks, with overridden size and seed.
pub fn simulate_spec(spec: &ExperimentSpec, agents: u64, seed: u64) -> Result<Vec<Section>> {
    let sections: Vec<Section> = spec
        .tasks
        .iter()
        .filter(|t| matches!(t, Task::Simulate { .. }))
        .map(|t| task_section(spec, t, Some(seed), Some(agents)))
        .collect::<Result<_>>()?;
    if sections.is_empty() {
        return Err(Error::Validation("file declares no simulate task".into()));
    }
    Ok(sections)
}
