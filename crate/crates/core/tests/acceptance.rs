//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, PI};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use qcog::analysis::{
    analyze_density, analyze_pure, decompose_total_probability, fallacy_inequalities, sweep_cell,
    sweep_fallacy_map, uncertainty_sum_minimum, RangeSpec, SweepCell,
};
use qcog::dsl::{parse, print};
use qcog::measurement::{
    answer_stream, consecutive_probability, outcome_probability, sample_answer, OutcomeStep,
};
use qcog::oracle::{brute_force_outcome_probability, classical_total_probability};
use qcog::population::{
    predicted_fallacy_rate, simulate_population, PopulationComponent, PopulationSpec,
};
use qcog::{BasisRelation, MixedState, Outcome, PureState, Question};
use rand::Rng;

struct Verdict {
    id: &'static str,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn verdict(id: &'static str, name: &'static str, pass: bool, detail: String) -> Verdict {
    Verdict {
        id,
        name,
        pass,
        detail,
    }
}

fn pair(theta: f64, phi: f64) -> (Question, Question) {
    (
        Question::reference("A"),
        Question::new("B", BasisRelation::new(theta, phi).unwrap()),
    )
}

fn real(theta_a: f64) -> PureState {
    PureState::from_angles(theta_a, 0.0).unwrap()
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn decomposition_identity() -> Vec<Verdict> {
    let start = Instant::now();
    let mut rng = answer_stream(1);
    let mut worst_identity = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for _ in 0..10_000 {
        let mut draw = || rng.random::<f64>() * 2.0 * PI;
        let (theta_a, phi_a, theta, phi) = (draw(), draw(), draw(), draw());
        let rel = BasisRelation::new(theta, phi).unwrap();
        let s = PureState::from_angles(theta_a, phi_a).unwrap();
        let (a, b) = (Question::reference("A"), Question::new("B", rel));
        for j in Outcome::BOTH {
            let d = decompose_total_probability(&s, &a, &b, j);
            worst_identity =
                worst_identity.max((d.total - d.classical_part - d.interference).abs());
            worst_oracle = worst_oracle
                .max((d.total - brute_force_outcome_probability(&s, &rel, j.index())).abs());
        }
    }
    let elapsed = start.elapsed();
    vec![verdict(
        "1",
        "decomposition identity",
        worst_identity < 1e-12 && worst_oracle < 1e-12 && elapsed < Duration::from_secs(5),
        format!("max |total-(classical+interference)| = {worst_identity:.1e}, max |total-oracle| = {worst_oracle:.1e}, {elapsed:.2?}"),
    )]
}

fn mixed_classicality() -> Vec<Verdict> {
    let mut rng = answer_stream(2);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..10_000 {
        let p1 = rng.random::<f64>();
        let (a, b) = pair(
            rng.random::<f64>() * 2.0 * PI,
            rng.random::<f64>() * 2.0 * PI,
        );
        let rho = MixedState::diagonal_in(&PureState::basis(0), &PureState::basis(1), p1).unwrap();
        let p_b1 = outcome_probability(&rho, &b, Outcome::One);
        let joint = consecutive_probability(
            &rho,
            &[
                OutcomeStep::new(&a, Outcome::One),
                OutcomeStep::new(&b, Outcome::One),
            ],
        )
        .unwrap();
        worst = worst.min(p_b1 - joint);
        if p_b1 < joint - 1e-12 {
            violations += 1;
        }
    }
    vec![verdict(
        "2",
        "mixed-state classicality",
        violations == 0,
        format!(
            "{violations} violations in 10^4 mixtures, min P(b1) - P(a1)P(b1|a1) = {worst:.3e}"
        ),
    )]
}

fn pinned_point() -> Vec<Verdict> {
    let (a, b) = pair(0.2, 0.0);
    let s = real(1.8);
    let fa = analyze_pure(&s, &a, &b);
    let rel = BasisRelation::new(0.2, 0.0).unwrap();
    let oracle_total = brute_force_outcome_probability(&s, &rel, 1);
    let p_a1 = 1.8f64.sin().powi(2);
    let oracle_classical =
        classical_total_probability(p_a1, 0.2f64.sin().powi(2), 0.2f64.cos().powi(2)).unwrap();
    let pass = within(fa.p_b1(), 0.8267, 1e-3)
        && within(fa.on_b.classical_part, 0.9130, 1e-3)
        && within(fa.on_b.interference, -0.0862, 1e-3)
        && fa.report.fallacy_on_b
        && !fa.report.fallacy_on_a
        && within(fa.p_b1(), oracle_total, 1e-12)
        && within(fa.on_b.classical_part, oracle_classical, 1e-12);
    vec![verdict(
        "3",
        "pinned fallacy point",
        pass,
        format!(
            "P(b1) = {:.6}, classical = {:.6}, interference = {:.6}, fallacy_on_b = {}, fallacy_on_a = {}",
            fa.p_b1(),
            fa.on_b.classical_part,
            fa.on_b.interference,
            fa.report.fallacy_on_b,
            fa.report.fallacy_on_a
        ),
    )]
}

fn reverse_point() -> Vec<Verdict> {
    let (a, b) = pair(FRAC_PI_6, 0.0);
    let fa = analyze_pure(&real(FRAC_PI_3), &a, &b);
    vec![verdict(
        "4",
        "reverse-fallacy point",
        within(fa.p_b1(), 1.0, 1e-9)
            && within(fa.on_b.interference, 0.375, 1e-9)
            && fa.report.reverse_on_b,
        format!(
            "P(b1) = {:.12}, interference = {:.12}, reverse_on_b = {}",
            fa.p_b1(),
            fa.on_b.interference,
            fa.report.reverse_on_b
        ),
    )]
}

fn raster(steps: usize) -> RangeSpec {
    RangeSpec::new(0.0, PI, steps).unwrap()
}

fn inequality_equivalence() -> Vec<Verdict> {
    let start = Instant::now();
    let map = sweep_fallacy_map(&raster(256), &raster(256), 0.0).unwrap();
    let (mut compared, mut skipped, mut mismatched) = (0, 0, 0);
    for cell in &map.cells {
        let near_pole = cell.theta_a.cos().abs() < 1e-6
            || cell.theta.sin().abs() < 1e-6
            || (cell.theta_a + cell.theta).cos().abs() < 1e-6;
        if near_pole {
            skipped += 1;
            continue;
        }
        compared += 1;
        let closed = fallacy_inequalities(cell.theta_a, cell.theta).unwrap();
        if closed != (cell.report.fallacy_on_b, cell.report.fallacy_on_a) {
            mismatched += 1;
        }
    }
    let elapsed = start.elapsed();
    vec![verdict(
        "5",
        "inequality/direct equivalence",
        mismatched == 0 && elapsed < Duration::from_secs(10),
        format!("{compared} cells compared, {skipped} pole cells skipped, {mismatched} mismatches, {elapsed:.2?}"),
    )]
}

fn both(cell: &SweepCell) -> bool {
    cell.report.fallacy_on_b && cell.report.fallacy_on_a
}

fn regime_claims() -> Vec<Verdict> {
    let map = sweep_fallacy_map(&raster(256), &raster(256), 0.0).unwrap();
    let total_both = map.cells.iter().filter(|c| both(c)).count();

    let low_columns = map
        .cells
        .iter()
        .filter(|c| c.theta < FRAC_PI_8 && both(c))
        .count();
    let a = verdict(
        "6a",
        "both-true cells in some theta < pi/8 column",
        low_columns > 0,
        format!(
            "{low_columns} such cells; {total_both} both-true cells in the whole 256x256 raster \
             (P(b1) < P(a1)cos^2 <= P(a1) < P(b1)cos^2 <= P(b1) is contradictory)"
        ),
    );

    let mut near_half_pi = map
        .cells
        .iter()
        .filter(|c| (c.theta - FRAC_PI_2).abs() <= 1e-3 && both(c))
        .count();
    let mut direct = 0;
    for theta in [
        FRAC_PI_2 - 1e-3,
        FRAC_PI_2 - 5e-4,
        FRAC_PI_2,
        FRAC_PI_2 + 5e-4,
        FRAC_PI_2 + 1e-3,
    ] {
        for theta_a in raster(256).values() {
            direct += 1;
            if both(&sweep_cell(theta, theta_a, 0.0).unwrap()) {
                near_half_pi += 1;
            }
        }
    }
    let b = verdict(
        "6b",
        "no both-true cell within 1e-3 of theta = pi/2",
        near_half_pi == 0,
        format!("{near_half_pi} both-true cells (raster plus {direct} direct evaluations)"),
    );

    let mut probed = 0;
    let mut hits = 0;
    let mut flags = (0, 0);
    for k in 0..=2000 {
        let theta_a = 1.58 + 0.2 * k as f64 / 2000.0;
        let cell = sweep_cell(FRAC_PI_4, theta_a, 0.0).unwrap();
        probed += 1;
        flags.0 += cell.report.fallacy_on_b as usize;
        flags.1 += cell.report.fallacy_on_a as usize;
        if both(&cell) {
            hits += 1;
        }
    }
    let c = verdict(
        "6c",
        "both-true cells at theta = pi/4 near theta_a = 1.68",
        hits > 0,
        format!(
            "{hits} of {probed} points in theta_a in [1.58, 1.78] are both-true \
             (fallacy_on_b at {}, fallacy_on_a at {})",
            flags.0, flags.1
        ),
    );
    vec![a, b, c]
}

fn bayes_gap() -> Vec<Verdict> {
    let (a, b) = pair(0.2, 0.0);
    let rho = real(1.8).density();
    let ab = consecutive_probability(
        &rho,
        &[
            OutcomeStep::new(&a, Outcome::One),
            OutcomeStep::new(&b, Outcome::One),
        ],
    )
    .unwrap();
    let ba = consecutive_probability(
        &rho,
        &[
            OutcomeStep::new(&b, Outcome::One),
            OutcomeStep::new(&a, Outcome::One),
        ],
    )
    .unwrap();
    let gap = (ab - ba).abs();
    vec![verdict(
        "7",
        "Bayes violation",
        within(gap, 0.1169, 1e-3),
        format!("P(a1->b1) = {ab:.6}, P(b1->a1) = {ba:.6}, gap = {gap:.6}"),
    )]
}

fn collapse_repetition() -> Vec<Verdict> {
    let mut rng = answer_stream(8);
    let mut changed = 0;
    for _ in 0..10_000 {
        let s = PureState::from_angles(rng.random::<f64>() * PI, rng.random::<f64>() * 2.0 * PI)
            .unwrap();
        let (_, q) = pair(rng.random::<f64>() * PI, rng.random::<f64>() * 2.0 * PI);
        let (first, after) = sample_answer(&s.density(), &q, &mut rng);
        let (second, _) = sample_answer(&after, &q, &mut rng);
        changed += (first != second) as usize;
    }
    vec![verdict(
        "8",
        "collapse repetition",
        changed == 0,
        format!("{changed} of 10^4 repeated askings changed answer"),
    )]
}

fn ordering_effect() -> Vec<Verdict> {
    let n = 100_000u64;
    let mut details = Vec::new();
    let mut pass = true;
    for (theta, seed) in [(0.2, 90), (FRAC_PI_4, 91)] {
        let (a, b) = pair(theta, 0.0);
        let analytic = qcog::measurement::ordering_flip_probability(&a, &b);
        let start = PureState::basis(0).density();
        let mut rng = answer_stream(seed);
        let mut flips = 0u64;
        for _ in 0..n {
            let (_, mid) = sample_answer(&start, &b, &mut rng);
            let (last, _) = sample_answer(&mid, &a, &mut rng);
            flips += (last == Outcome::One) as u64;
        }
        let p = flips as f64 / n as f64;
        let sigma = (analytic * (1.0 - analytic) / n as f64).sqrt();
        let closed = (2.0 * theta).sin().powi(2) / 2.0;
        pass &= within(p, analytic, 3.0 * sigma) && within(analytic, closed, 1e-12);
        if theta == 0.2 {
            pass &= within(analytic, 0.0758, 0.0036);
        }
        details.push(format!(
            "theta = {theta:.4}: analytic {analytic:.5}, MC {p:.5} (3 sigma = {:.5})",
            3.0 * sigma
        ));
    }
    vec![verdict("9", "ordering effect", pass, details.join("; "))]
}

fn uncertainty_sum() -> Vec<Verdict> {
    let (a, b) = pair(FRAC_PI_4, 0.0);
    let quarter = uncertainty_sum_minimum(&a, &b, 256).unwrap().minimum;
    let (a, c) = pair(0.2, 0.0);
    let small = uncertainty_sum_minimum(&a, &c, 256).unwrap().minimum;
    vec![verdict(
        "10",
        "uncertainty sum",
        within(quarter, 0.25, 1e-6) && within(small, (1.0 - 0.4f64.cos()) / 4.0, 1e-3),
        format!(
            "theta = pi/4: {quarter:.9}; theta = 0.2: {small:.6} (closed form {:.6})",
            (1.0 - 0.4f64.cos()) / 4.0
        ),
    )]
}

fn population_linearity() -> Vec<Verdict> {
    let (a, b) = pair(0.2, 0.0);
    let s = real(1.8);
    let mixed = MixedState::diagonal_in(
        &PureState::basis(0),
        &PureState::basis(1),
        1.8f64.sin().powi(2),
    )
    .unwrap();
    let pop = PopulationSpec::new(vec![
        PopulationComponent {
            fraction: 0.85,
            preparation: s.into(),
            label: "pure".into(),
        },
        PopulationComponent {
            fraction: 0.15,
            preparation: mixed.into(),
            label: "mixed".into(),
        },
    ])
    .unwrap();
    let rate = predicted_fallacy_rate(&pop, &a, &b);
    let n = 100_000;
    let table = simulate_population(&pop, &a, &b, n, 11).unwrap();
    let expected =
        0.85 * analyze_pure(&s, &a, &b).p_b1() + 0.15 * analyze_density(&mixed, &a, &b).p_b1();
    let sigma = (expected * (1.0 - expected) / n as f64).sqrt();
    vec![verdict(
        "11",
        "population linearity",
        rate == 0.85 && within(table.p_b1(), expected, 3.0 * sigma),
        format!(
            "predicted rate = {rate}, simulated P(b1) = {:.5}, expected {expected:.5} +/- {:.5}",
            table.p_b1(),
            3.0 * sigma
        ),
    )]
}

fn golden_files() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            (
                p.display().to_string(),
                std::fs::read_to_string(&p).unwrap(),
            )
        })
        .collect()
}

fn dsl_corpus() -> Vec<Verdict> {
    let files = golden_files();
    let mut round_trips = 0;
    let (mut cases, mut correct) = (0, 0);
    for (_, text) in &files {
        if let Ok(spec) = parse(text) {
            round_trips += (parse(&print(&spec)).as_ref() == Ok(&spec)) as usize;
        }
        let lines: Vec<&str> = text.lines().collect();
        for (k, line) in lines.iter().enumerate() {
            if line.split('#').next().unwrap().trim().is_empty() {
                continue;
            }
            let mut mutants = vec![format!("bogus{}", line.trim_start())];
            if let Some(tok) = line.split_whitespace().find(|t| {
                t.contains('=')
                    && t.split('=')
                        .nth(1)
                        .is_some_and(|v| v.starts_with(|c: char| c.is_ascii_digit()))
            }) {
                mutants.push(line.replacen(tok, &format!("{tok}e"), 1));
            }
            for mutant in mutants {
                cases += 1;
                let mut mutated = lines.clone();
                mutated[k] = &mutant;
                if let Err(errors) = parse(&mutated.join("\n")) {
                    correct += (errors[0].line == k + 1) as usize;
                }
            }
        }
    }
    vec![verdict(
        "12",
        "DSL round trip and diagnostics",
        files.len() >= 10 && round_trips == files.len() && cases > 0 && correct == cases,
        format!("{round_trips}/{} files round-trip; {correct}/{cases} injected errors on the right line", files.len()),
    )]
}

fn determinism() -> Vec<Verdict> {
    let file = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/everything.qx");
    let file = file.to_str().unwrap();
    let run = |seed: &str| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_qcog"))
            .args(["run", file, "--seed", seed])
            .output()
            .unwrap();
        (out.status.code(), out.stdout)
    };
    let (first, second) = (run("2024"), run("2024"));
    vec![verdict(
        "13",
        "determinism",
        first.0 == Some(0) && first == second && !first.1.is_empty(),
        format!(
            "two runs with seed 2024: {} bytes each, identical = {}",
            first.1.len(),
            first == second
        ),
    )]
}

fn main() {
    let criteria: [fn() -> Vec<Verdict>; 13] = [
        decomposition_identity,
        mixed_classicality,
        pinned_point,
        reverse_point,
        inequality_equivalence,
        regime_claims,
        bayes_gap,
        collapse_repetition,
        ordering_effect,
        uncertainty_sum,
        population_linearity,
        dsl_corpus,
        determinism,
    ];
    let mut failed = 0;
    let mut total = 0;
    for (k, criterion) in criteria.into_iter().enumerate() {
        let verdicts = std::panic::catch_unwind(criterion).unwrap_or_else(|_| {
            vec![verdict(
                "?",
                "criterion panicked",
                false,
                format!("criterion {}", k + 1),
            )]
        });
        for v in verdicts {
            total += 1;
            failed += !v.pass as usize;
            println!(
                "[{}] {} {}: {}",
                if v.pass { "PASS" } else { "FAIL" },
                v.id,
                v.name,
                v.detail
            );
        }
    }
    println!("acceptance: {} passed, {failed} failed", total - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
