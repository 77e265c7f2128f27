use std::fmt::Write;

use super::{ExperimentSpec, QuestionPair, StateKind, Task};

fn pair(p: &QuestionPair) -> String {
    format!("{},{}", p.first, p.second)
}

/// Canonical text for `spec`; parsing it back yields an equal spec.
///
/// Floats use the shortest representation that round-trips exactly.
pub fn print(spec: &ExperimentSpec) -> String {
    let mut out = String::new();
    for q in &spec.questions {
        match &q.parent {
            None => writeln!(out, "question {}", q.name),
            Some(parent) if q.phi == 0.0 && q.phi.is_sign_positive() => {
                writeln!(
                    out,
                    "question {} from {} theta={:?}",
                    q.name, parent, q.theta
                )
            }
            Some(parent) => writeln!(
                out,
                "question {} from {} theta={:?} phi={:?}",
                q.name, parent, q.theta, q.phi
            ),
        }
        .expect("writing to a String");
    }
    for s in &spec.states {
        match s.kind {
            StateKind::Pure { theta_a, phi_a } => {
                write!(
                    out,
                    "state {} pure basis={} theta_a={:?}",
                    s.name, s.basis, theta_a
                )
                .unwrap();
                if phi_a != 0.0 || phi_a.is_sign_negative() {
                    write!(out, " phi_a={phi_a:?}").unwrap();
                }
                out.push('\n');
            }
            StateKind::Mixed { p1 } => {
                writeln!(out, "state {} mixed basis={} p1={:?}", s.name, s.basis, p1).unwrap();
            }
        }
    }
    for p in &spec.populations {
        let terms: Vec<String> = p
            .terms
            .iter()
            .map(|t| format!("{:?}*{}", t.fraction, t.state))
            .collect();
        writeln!(out, "population {} = {}", p.name, terms.join(" + ")).unwrap();
    }
    for task in &spec.tasks {
        let line = match task {
            Task::Fallacy { state, pair: p } => format!("state={state} pair={}", pair(p)),
            Task::Underextension { state, pair: p } => format!("state={state} pair={}", pair(p)),
            Task::Sequence { state, order } => format!("state={state} order={}", order.join(",")),
            Task::Sweep {
                pair: p,
                theta,
                theta_a,
                phi,
            } => format!(
                "pair={} theta={theta} theta_a={theta_a} phi={phi:?}",
                pair(p)
            ),
            Task::Simulate {
                population,
                pair: p,
                agents,
                seed,
            } => format!(
                "population={population} pair={} agents={agents} seed={seed}",
                pair(p)
            ),
            Task::Uncertainty { pair: p, steps } => format!("pair={} steps={steps}", pair(p)),
        };
        writeln!(out, "task {} {line}", task.kind().as_str()).unwrap();
    }
    out
}
