use std::collections::{HashMap, HashSet};

use super::number::{parse_angle, parse_float};
use super::{
    ExperimentSpec, ParseError, PopulationDecl, PopulationTerm, QuestionDecl, QuestionPair,
    StateDecl, StateKind, Task, TaskKind,
};
use crate::analysis::RangeSpec;
use crate::qstate::WEIGHT_SUM_TOL;

/// Longest `task sequence` order accepted; the output has `2^n` rows.
pub const MAX_SEQUENCE_LEN: usize = 16;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    /// 1-based character column.
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (true, Some((b, c))) => {
                tokens.push(Token {
                    text: &line[b..byte],
                    column: c + 1,
                });
                start = None;
            }
            (false, None) => start = Some((byte, col)),
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &line[b..],
            column: c + 1,
        });
    }
    tokens
}

fn is_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Namespaces of names declared so far.
#[derive(Default)]
struct Scope {
    questions: HashSet<String>,
    states: HashSet<String>,
    populations: HashSet<String>,
}

#[derive(Clone, Copy)]
enum Namespace {
    Question,
    State,
    Population,
}

impl Namespace {
    fn label(self) -> &'static str {
        match self {
            Namespace::Question => "question",
            Namespace::State => "state",
            Namespace::Population => "population",
        }
    }
}

impl Scope {
    fn set(&mut self, ns: Namespace) -> &mut HashSet<String> {
        match ns {
            Namespace::Question => &mut self.questions,
            Namespace::State => &mut self.states,
            Namespace::Population => &mut self.populations,
        }
    }
}

struct LineContext<'a> {
    number: usize,
    text: &'a str,
    errors: Vec<ParseError>,
}

impl<'a> LineContext<'a> {
    fn error(&mut self, column: usize, message: impl Into<String>) {
        self.errors.push(ParseError {
            line: self.number,
            column,
            message: message.into(),
            snippet: self.text.to_string(),
        });
    }

    fn end_column(&self) -> usize {
        self.text.chars().count().max(1)
    }
}

/// `key=value` arguments of one line.
struct Arguments<'a> {
    values: HashMap<&'a str, Token<'a>>,
    directive_column: usize,
}

impl<'a> Arguments<'a> {
    fn collect(
        ctx: &mut LineContext<'_>,
        tokens: &[Token<'a>],
        allowed: &[&str],
        directive_column: usize,
    ) -> Self {
        let mut values = HashMap::new();
        for tok in tokens {
            let Some((key, value)) = tok.text.split_once('=') else {
                ctx.error(
                    tok.column,
                    format!("expected key=value, found `{}`", tok.text),
                );
                continue;
            };
            if !allowed.contains(&key) {
                ctx.error(
                    tok.column,
                    format!(
                        "unknown argument `{key}` (expected one of: {})",
                        allowed.join(", ")
                    ),
                );
                continue;
            }
            let value_token = Token {
                text: value,
                column: tok.column + key.chars().count() + 1,
            };
            if values.insert(key, value_token).is_some() {
                ctx.error(tok.column, format!("argument `{key}` given twice"));
            }
        }
        Self {
            values,
            directive_column,
        }
    }

    fn required(&self, ctx: &mut LineContext<'_>, key: &str) -> Option<Token<'a>> {
        let found = self.values.get(key).copied();
        if found.is_none() {
            ctx.error(self.directive_column, format!("missing argument `{key}`"));
        }
        found
    }

    fn optional(&self, key: &str) -> Option<Token<'a>> {
        self.values.get(key).copied()
    }
}

struct Parser {
    scope: Scope,
    spec: ExperimentSpec,
}

impl Parser {
    fn new() -> Self {
        Self {
            scope: Scope::default(),
            spec: ExperimentSpec::default(),
        }
    }

    /// Registers a new name; reports duplicates and bad identifiers.
    fn declare(&mut self, ctx: &mut LineContext<'_>, ns: Namespace, tok: Token<'_>) -> bool {
        if !is_identifier(tok.text) {
            ctx.error(
                tok.column,
                format!("`{}` is not a valid {} name", tok.text, ns.label()),
            );
            return false;
        }
        if !self.scope.set(ns).insert(tok.text.to_string()) {
            ctx.error(
                tok.column,
                format!("duplicate {} name `{}`", ns.label(), tok.text),
            );
            return false;
        }
        true
    }

    fn resolve(
        &mut self,
        ctx: &mut LineContext<'_>,
        ns: Namespace,
        text: &str,
        column: usize,
    ) -> Option<String> {
        if self.scope.set(ns).contains(text) {
            Some(text.to_string())
        } else {
            ctx.error(
                column,
                format!("unresolved reference to {} `{text}`", ns.label()),
            );
            None
        }
    }

    fn names(
        &mut self,
        ctx: &mut LineContext<'_>,
        ns: Namespace,
        tok: Token<'_>,
    ) -> Option<Vec<String>> {
        let mut column = tok.column;
        let mut out = Some(Vec::new());
        for part in tok.text.split(',') {
            match self.resolve(ctx, ns, part, column) {
                Some(name) => {
                    if let Some(v) = out.as_mut() {
                        v.push(name);
                    }
                }
                None => out = None,
            }
            column += part.chars().count() + 1;
        }
        out
    }

    fn pair(&mut self, ctx: &mut LineContext<'_>, tok: Token<'_>) -> Option<QuestionPair> {
        if tok.text.split(',').count() != 2 {
            ctx.error(
                tok.column,
                format!("pair needs exactly two questions, found `{}`", tok.text),
            );
            return None;
        }
        let mut names = self.names(ctx, Namespace::Question, tok)?;
        let second = names.pop()?;
        let first = names.pop()?;
        Some(QuestionPair { first, second })
    }

    fn line(&mut self, ctx: &mut LineContext<'_>, tokens: &[Token<'_>]) {
        let Some(head) = tokens.first() else { return };
        match head.text {
            "question" => self.question(ctx, tokens),
            "state" => self.state(ctx, tokens),
            "population" => self.population(ctx, tokens),
            "task" => self.task(ctx, tokens),
            other => ctx.error(
                head.column,
                format!(
                    "unknown directive `{other}` (expected question, state, population or task)"
                ),
            ),
        }
    }

    fn question(&mut self, ctx: &mut LineContext<'_>, tokens: &[Token<'_>]) {
        let Some(&name) = tokens.get(1) else {
            ctx.error(ctx.end_column(), "missing question name");
            return;
        };
        let declared = self.declare(ctx, Namespace::Question, name);
        if tokens.len() == 2 {
            if declared {
                self.spec.questions.push(QuestionDecl {
                    name: name.text.to_string(),
                    parent: None,
                    theta: 0.0,
                    phi: 0.0,
                });
            }
            return;
        }
        let Some(from) = tokens.get(2).filter(|t| t.text == "from") else {
            ctx.error(
                tokens[2].column,
                format!("expected `from`, found `{}`", tokens[2].text),
            );
            return;
        };
        let Some(&parent_tok) = tokens.get(3) else {
            ctx.error(from.column + 4, "missing parent question after `from`");
            return;
        };
        let parent = if parent_tok.text.contains('=') {
            ctx.error(parent_tok.column, "missing parent question after `from`");
            None
        } else {
            self.resolve(ctx, Namespace::Question, parent_tok.text, parent_tok.column)
        };
        let args = Arguments::collect(ctx, &tokens[4..], &["theta", "phi"], tokens[0].column);
        let theta = args.required(ctx, "theta").and_then(|t| angle(ctx, t));
        let phi = match args.optional("phi") {
            Some(t) => angle(ctx, t),
            None => Some(0.0),
        };
        if let (true, Some(parent), Some(theta), Some(phi)) = (declared, parent, theta, phi) {
            self.spec.questions.push(QuestionDecl {
                name: name.text.to_string(),
                parent: Some(parent),
                theta,
                phi,
            });
        }
    }

    fn state(&mut self, ctx: &mut LineContext<'_>, tokens: &[Token<'_>]) {
        let (Some(&name), Some(&kind)) = (tokens.get(1), tokens.get(2)) else {
            ctx.error(ctx.end_column(), "expected `state NAME pure|mixed ...`");
            return;
        };
        let declared = self.declare(ctx, Namespace::State, name);
        let rest = &tokens[3..];
        let parsed = match kind.text {
            "pure" => {
                let args =
                    Arguments::collect(ctx, rest, &["basis", "theta_a", "phi_a"], tokens[0].column);
                let basis = self.basis(ctx, &args);
                let theta_a = args.required(ctx, "theta_a").and_then(|t| angle(ctx, t));
                let phi_a = match args.optional("phi_a") {
                    Some(t) => angle(ctx, t),
                    None => Some(0.0),
                };
                match (basis, theta_a, phi_a) {
                    (Some(b), Some(theta_a), Some(phi_a)) => {
                        Some((b, StateKind::Pure { theta_a, phi_a }))
                    }
                    _ => None,
                }
            }
            "mixed" => {
                let args = Arguments::collect(ctx, rest, &["basis", "p1"], tokens[0].column);
                let basis = self.basis(ctx, &args);
                let p1 = args.required(ctx, "p1").and_then(|t| probability(ctx, t));
                match (basis, p1) {
                    (Some(b), Some(p1)) => Some((b, StateKind::Mixed { p1 })),
                    _ => None,
                }
            }
            other => {
                ctx.error(
                    kind.column,
                    format!("unknown state kind `{other}` (expected pure or mixed)"),
                );
                None
            }
        };
        if let (true, Some((basis, kind))) = (declared, parsed) {
            self.spec.states.push(StateDecl {
                name: name.text.to_string(),
                basis,
                kind,
            });
        }
    }

    fn basis(&mut self, ctx: &mut LineContext<'_>, args: &Arguments<'_>) -> Option<String> {
        let tok = args.required(ctx, "basis")?;
        self.resolve(ctx, Namespace::Question, tok.text, tok.column)
    }

    fn population(&mut self, ctx: &mut LineContext<'_>, tokens: &[Token<'_>]) {
        let Some(&name) = tokens.get(1) else {
            ctx.error(ctx.end_column(), "missing population name");
            return;
        };
        let declared = self.declare(ctx, Namespace::Population, name);
        let Some(eq) = tokens.get(2).filter(|t| t.text == "=") else {
            let column = tokens.get(2).map_or(ctx.end_column(), |t| t.column);
            ctx.error(column, "expected `=` after population name");
            return;
        };
        // everything after `=`, split on `+`
        let byte_start = ctx
            .text
            .char_indices()
            .nth(eq.column)
            .map_or(ctx.text.len(), |(b, _)| b);
        let body = &ctx.text[byte_start..];
        let mut column = eq.column + 1;
        let mut terms = Some(Vec::new());
        let mut total = 0.0;
        let first_column = column;
        if body.trim().is_empty() {
            ctx.error(ctx.end_column(), "population has no components");
            return;
        }
        for raw in body.split('+') {
            let lead = raw.chars().take_while(|c| c.is_whitespace()).count();
            let text = raw.trim();
            let term_column = column + lead;
            column += raw.chars().count() + 1;
            let Some((fraction_text, state)) = text.rsplit_once('*') else {
                ctx.error(
                    term_column,
                    format!("expected FRACTION*STATE, found `{text}`"),
                );
                terms = None;
                continue;
            };
            let fraction = match parse_float(fraction_text) {
                Ok(f) if f >= 0.0 => Some(f),
                Ok(f) => {
                    ctx.error(term_column, format!("fraction {f} is negative"));
                    None
                }
                Err(msg) => {
                    ctx.error(term_column, msg);
                    None
                }
            };
            let state_column = term_column + fraction_text.chars().count() + 1;
            let state = self.resolve(ctx, Namespace::State, state, state_column);
            match (fraction, state) {
                (Some(fraction), Some(state)) => {
                    total += fraction;
                    if let Some(v) = terms.as_mut() {
                        v.push(PopulationTerm { fraction, state });
                    }
                }
                _ => terms = None,
            }
        }
        let Some(terms) = terms else { return };
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            ctx.error(
                first_column,
                format!("population fractions sum to {total}, expected 1"),
            );
            return;
        }
        if declared {
            self.spec.populations.push(PopulationDecl {
                name: name.text.to_string(),
                terms,
            });
        }
    }

    fn task(&mut self, ctx: &mut LineContext<'_>, tokens: &[Token<'_>]) {
        let Some(&kind_tok) = tokens.get(1) else {
            ctx.error(ctx.end_column(), "missing task kind");
            return;
        };
        let Some(kind) = TaskKind::from_keyword(kind_tok.text) else {
            ctx.error(
                kind_tok.column,
                format!(
                    "unknown task `{}` (expected fallacy, sequence, sweep, simulate, underextension or uncertainty)",
                    kind_tok.text
                ),
            );
            return;
        };
        let rest = &tokens[2..];
        let at = kind_tok.column;
        let task = match kind {
            TaskKind::Fallacy | TaskKind::Underextension => {
                let args = Arguments::collect(ctx, rest, &["state", "pair"], at);
                let state = self.named(ctx, &args, "state", Namespace::State);
                let pair = args.required(ctx, "pair").and_then(|t| self.pair(ctx, t));
                match (state, pair) {
                    (Some(state), Some(pair)) if kind == TaskKind::Fallacy => {
                        Some(Task::Fallacy { state, pair })
                    }
                    (Some(state), Some(pair)) => Some(Task::Underextension { state, pair }),
                    _ => None,
                }
            }
            TaskKind::Sequence => {
                let args = Arguments::collect(ctx, rest, &["state", "order"], at);
                let state = self.named(ctx, &args, "state", Namespace::State);
                let order = args.required(ctx, "order").and_then(|t| {
                    let n = t.text.split(',').count();
                    if !(2..=MAX_SEQUENCE_LEN).contains(&n) {
                        ctx.error(
                            t.column,
                            format!(
                                "order needs between 2 and {MAX_SEQUENCE_LEN} questions, found {n}"
                            ),
                        );
                        return None;
                    }
                    self.names(ctx, Namespace::Question, t)
                });
                match (state, order) {
                    (Some(state), Some(order)) => Some(Task::Sequence { state, order }),
                    _ => None,
                }
            }
            TaskKind::Sweep => {
                let args = Arguments::collect(ctx, rest, &["pair", "theta", "theta_a", "phi"], at);
                let pair = args.required(ctx, "pair").and_then(|t| self.pair(ctx, t));
                let theta = args.required(ctx, "theta").and_then(|t| range(ctx, t));
                let theta_a = args.required(ctx, "theta_a").and_then(|t| range(ctx, t));
                let phi = match args.optional("phi") {
                    Some(t) => angle(ctx, t),
                    None => Some(0.0),
                };
                match (pair, theta, theta_a, phi) {
                    (Some(pair), Some(theta), Some(theta_a), Some(phi)) => Some(Task::Sweep {
                        pair,
                        theta,
                        theta_a,
                        phi,
                    }),
                    _ => None,
                }
            }
            TaskKind::Simulate => {
                let args =
                    Arguments::collect(ctx, rest, &["population", "pair", "agents", "seed"], at);
                let population = self.named(ctx, &args, "population", Namespace::Population);
                let pair = args.required(ctx, "pair").and_then(|t| self.pair(ctx, t));
                let agents = args
                    .required(ctx, "agents")
                    .and_then(|t| integer(ctx, t, 1));
                let seed = args.required(ctx, "seed").and_then(|t| integer(ctx, t, 0));
                match (population, pair, agents, seed) {
                    (Some(population), Some(pair), Some(agents), Some(seed)) => {
                        Some(Task::Simulate {
                            population,
                            pair,
                            agents,
                            seed,
                        })
                    }
                    _ => None,
                }
            }
            TaskKind::Uncertainty => {
                let args = Arguments::collect(ctx, rest, &["pair", "steps"], at);
                let pair = args.required(ctx, "pair").and_then(|t| self.pair(ctx, t));
                let steps = args.required(ctx, "steps").and_then(|t| integer(ctx, t, 8));
                match (pair, steps) {
                    (Some(pair), Some(steps)) => Some(Task::Uncertainty {
                        pair,
                        steps: steps as usize,
                    }),
                    _ => None,
                }
            }
        };
        if let Some(task) = task {
            self.spec.tasks.push(task);
        }
    }

    fn named(
        &mut self,
        ctx: &mut LineContext<'_>,
        args: &Arguments<'_>,
        key: &str,
        ns: Namespace,
    ) -> Option<String> {
        let tok = args.required(ctx, key)?;
        self.resolve(ctx, ns, tok.text, tok.column)
    }
}

fn angle(ctx: &mut LineContext<'_>, tok: Token<'_>) -> Option<f64> {
    parse_angle(tok.text)
        .map_err(|msg| ctx.error(tok.column, msg))
        .ok()
}

fn probability(ctx: &mut LineContext<'_>, tok: Token<'_>) -> Option<f64> {
    match parse_float(tok.text) {
        Ok(p) if (0.0..=1.0).contains(&p) => Some(p),
        Ok(p) => {
            ctx.error(tok.column, format!("{p} is not a probability"));
            None
        }
        Err(msg) => {
            ctx.error(tok.column, msg);
            None
        }
    }
}

fn integer(ctx: &mut LineContext<'_>, tok: Token<'_>, min: u64) -> Option<u64> {
    match tok.text.parse::<u64>() {
        Ok(v) if v >= min => Some(v),
        Ok(v) => {
            ctx.error(tok.column, format!("value {v} is below the minimum {min}"));
            None
        }
        Err(_) => {
            ctx.error(tok.column, format!("malformed integer `{}`", tok.text));
            None
        }
    }
}

fn range(ctx: &mut LineContext<'_>, tok: Token<'_>) -> Option<RangeSpec> {
    tok.text
        .parse::<RangeSpec>()
        .map_err(|e| ctx.error(tok.column, e.to_string()))
        .ok()
}

/// Parses a whole document, collecting every error.
pub fn parse(text: &str) -> Result<ExperimentSpec, Vec<ParseError>> {
    let mut parser = Parser::new();
    let mut errors = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let content = raw.split_once('#').map_or(raw, |(code, _)| code);
        let tokens = tokenize(content);
        if tokens.is_empty() {
            continue;
        }
        let mut ctx = LineContext {
            number: index + 1,
            text: raw,
            errors: Vec::new(),
        };
        parser.line(&mut ctx, &tokens);
        errors.append(&mut ctx.errors);
    }
    if errors.is_empty() {
        Ok(parser.spec)
    } else {
        Err(errors)
    }
}
