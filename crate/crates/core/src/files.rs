//! TOML definition files for linguistic variables, quantifier sets, automata
//! and numeric series. Every rejection names the offending line.
//!
//! Variable file (a single variable at top level, or several `[[variables]]`):
//!
//! ```toml
//! name = "SALARY"
//! universe = [15, 50]
//! terms = [
//!   { word = "low", knots = [[15, 1], [20, 1], [25, 0]] },
//! ]
//! ```
//!
//! Automaton file:
//!
//! ```toml
//! states = ["q1", "q2"]
//! inputs = ["a"]
//! outputs = ["u", "v"]
//! initial = "q1"          # optional
//! final = ["q2"]          # optional
//!
//! [delta]
//! a = [[0.5, 0.9], [0.3, 0.0]]
//!
//! [lambda]
//! a = [[0.7, 0.2], [0.4, 0.9]]
//! ```

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::lfa::{Condition, Lfa};
use crate::matrix::DegreeMatrix;
use crate::membership::PiecewiseLinear;
use crate::quantifier::{QuantifierIssue, QuantifierVariable};
use crate::variable::{LinguisticVariable, Term};

struct Source<'a> {
    label: &'a str,
    text: &'a str,
}

impl Source<'_> {
    fn line(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())].matches('\n').count() + 1
    }

    fn error<T>(&self, spanned: &Spanned<T>, message: impl Into<String>) -> Error {
        Error::File {
            path: self.label.to_string(),
            line: self.line(spanned.span().start),
            message: message.into(),
        }
    }

    fn syntax(&self, e: toml::de::Error) -> Error {
        Error::File {
            path: self.label.to_string(),
            line: e.span().map_or(1, |s| self.line(s.start)),
            message: e.message().trim().to_string(),
        }
    }
}

pub(crate) fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Unreadable {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

type KnotList = Spanned<Vec<Spanned<Vec<f64>>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    word: Spanned<String>,
    knots: KnotList,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariable {
    name: Spanned<String>,
    universe: Spanned<Vec<f64>>,
    terms: Spanned<Vec<RawTerm>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariableFile {
    name: Option<Spanned<String>>,
    universe: Option<Spanned<Vec<f64>>>,
    terms: Option<Spanned<Vec<RawTerm>>>,
    variables: Option<Spanned<Vec<RawVariable>>>,
}

fn build_variable(src: &Source, raw: RawVariable) -> Result<LinguisticVariable> {
    if raw.universe.get_ref().len() != 2 {
        return Err(src.error(&raw.universe, "universe must be written as [lo, hi]"));
    }
    let (lo, hi) = (raw.universe.get_ref()[0], raw.universe.get_ref()[1]);
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(src.error(&raw.universe, format!("universe [{lo}, {hi}] is not a proper interval")));
    }
    if raw.terms.get_ref().is_empty() {
        return Err(src.error(&raw.terms, "term set is empty"));
    }
    let mut seen = HashSet::new();
    let mut terms = Vec::new();
    for raw_term in raw.terms.get_ref() {
        let word = raw_term.word.get_ref().trim();
        if word.is_empty() {
            return Err(src.error(&raw_term.word, "empty word"));
        }
        if !seen.insert(word.to_string()) {
            return Err(src.error(&raw_term.word, format!("word `{word}` appears twice")));
        }
        let mut knots = Vec::new();
        for knot in raw_term.knots.get_ref() {
            let &[x, y] = knot.get_ref().as_slice() else {
                return Err(src.error(knot, format!("knot of `{word}` must be written as [x, y]")));
            };
            if x < lo || x > hi {
                return Err(src.error(
                    knot,
                    format!("knot x = {x} of `{word}` lies outside the universe [{lo}, {hi}]"),
                ));
            }
            if !(0.0..=1.0).contains(&y) {
                return Err(src.error(knot, format!("knot degree {y} of `{word}` is outside [0, 1]")));
            }
            knots.push((x, y));
        }
        let meaning = PiecewiseLinear::new(knots).map_err(|e| src.error(&raw_term.knots, format!("`{word}`: {e}")))?;
        terms.push(Term {
            word: word.to_string(),
            meaning,
        });
    }
    LinguisticVariable::new(raw.name.get_ref().trim(), (lo, hi), terms).map_err(|e| src.error(&raw.name, e.to_string()))
}

/// Variables of a definition file, in file order.
pub fn parse_variables(text: &str, label: &str) -> Result<Vec<LinguisticVariable>> {
    let src = Source { label, text };
    let raw: RawVariableFile = toml::from_str(text).map_err(|e| src.syntax(e))?;
    let missing = |field: &str| Error::File {
        path: label.to_string(),
        line: 1,
        message: format!("missing field `{field}`"),
    };
    let variables = match raw.variables {
        Some(list) => {
            if let Some(name) = &raw.name {
                return Err(src.error(name, "top-level variable fields cannot be combined with [[variables]]"));
            }
            if list.get_ref().is_empty() {
                return Err(src.error(&list, "no variables defined"));
            }
            let list = list.into_inner();
            let mut names = HashSet::new();
            let mut out = Vec::new();
            for raw_var in list {
                let name = raw_var.name.clone();
                let variable = build_variable(&src, raw_var)?;
                if !names.insert(variable.name().to_string()) {
                    return Err(src.error(&name, format!("variable `{}` defined twice", variable.name())));
                }
                out.push(variable);
            }
            out
        }
        None => vec![build_variable(
            &src,
            RawVariable {
                name: raw.name.ok_or_else(|| missing("name"))?,
                universe: raw.universe.ok_or_else(|| missing("universe"))?,
                terms: raw.terms.ok_or_else(|| missing("terms"))?,
            },
        )?],
    };
    Ok(variables)
}

pub fn load_variables(path: impl AsRef<Path>) -> Result<Vec<LinguisticVariable>> {
    let path = path.as_ref();
    parse_variables(&read(path)?, &path.display().to_string())
}

/// A single-variable file whose term order is the quantifier order. Rejects
/// universes other than [0, 1] and any symmetry or coverage defect.
pub fn parse_quantifiers(text: &str, label: &str) -> Result<QuantifierVariable> {
    let src = Source { label, text };
    let raw: RawVariableFile = toml::from_str(text).map_err(|e| src.syntax(e))?;
    let universe_span = raw.universe.clone();
    let term_spans: Vec<(String, KnotList)> = raw
        .terms
        .as_ref()
        .map(|t| {
            t.get_ref()
                .iter()
                .map(|rt| (rt.word.get_ref().trim().to_string(), rt.knots.clone()))
                .collect()
        })
        .unwrap_or_default();

    let mut variables = parse_variables(text, label)?;
    if variables.len() != 1 {
        return Err(Error::File {
            path: label.to_string(),
            line: 1,
            message: "a quantifier file defines exactly one variable".into(),
        });
    }
    let base = variables.remove(0);
    let quantifiers = QuantifierVariable::new(base).map_err(|e| match &universe_span {
        Some(span) => src.error(span, e.to_string()),
        None => Error::File {
            path: label.to_string(),
            line: 1,
            message: e.to_string(),
        },
    })?;
    let issues = quantifiers.validate();
    if let Some(first) = issues.first() {
        let (message, anchor) = match first {
            QuantifierIssue::Symmetry {
                word,
                antonym,
                x,
                degree,
                mirrored,
            } => (
                format!("`{word}` at {x} has degree {degree} but its antonym `{antonym}` at {} has {mirrored}", 1.0 - x),
                term_spans.iter().find(|(w, _)| w == word).map(|(_, s)| s.span().start),
            ),
            QuantifierIssue::Uncovered { x } => (
                format!("no quantifier covers {x}"),
                universe_span.as_ref().map(|s| s.span().start),
            ),
        };
        return Err(Error::File {
            path: label.to_string(),
            line: anchor.map_or(1, |o| src.line(o)),
            message: format!("{message} ({} issue(s) in total)", issues.len()),
        });
    }
    Ok(quantifiers)
}

pub fn load_quantifiers(path: impl AsRef<Path>) -> Result<QuantifierVariable> {
    let path = path.as_ref();
    parse_quantifiers(&read(path)?, &path.display().to_string())
}

type RawMatrix = Spanned<Vec<Spanned<Vec<f64>>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLfa {
    states: Spanned<Vec<String>>,
    inputs: Spanned<Vec<String>>,
    outputs: Spanned<Vec<String>>,
    delta: Spanned<BTreeMap<String, RawMatrix>>,
    lambda: Spanned<BTreeMap<String, RawMatrix>>,
    initial: Option<Spanned<String>>,
    #[serde(rename = "final")]
    finals: Option<Spanned<Vec<String>>>,
}

fn build_matrix(src: &Source, raw: &RawMatrix, what: &str, rows: usize, cols: usize) -> Result<DegreeMatrix> {
    if raw.get_ref().len() != rows {
        return Err(src.error(raw, format!("{what} has {} rows, expected {rows}", raw.get_ref().len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in raw.get_ref().iter().enumerate() {
        if row.get_ref().len() != cols {
            return Err(src.error(
                row,
                format!("{what} row {} has {} entries, expected {cols}", i + 1, row.get_ref().len()),
            ));
        }
        for (j, &v) in row.get_ref().iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(src.error(row, format!("{what} entry ({}, {}) = {v} is outside [0, 1]", i + 1, j + 1)));
            }
        }
        data.extend(row.get_ref());
    }
    DegreeMatrix::new(rows, cols, data).map_err(|e| src.error(raw, e.to_string()))
}

fn check_names(src: &Source, names: &Spanned<Vec<String>>, kind: &str) -> Result<()> {
    if names.get_ref().is_empty() {
        return Err(src.error(names, format!("{kind} list is empty")));
    }
    let mut seen = HashSet::new();
    for name in names.get_ref() {
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(src.error(names, format!("{kind} `{name}` must be non-empty without whitespace")));
        }
        if !seen.insert(name) {
            return Err(src.error(names, format!("duplicate {kind} `{name}`")));
        }
    }
    Ok(())
}

/// Parses and fully validates an automaton, including both well-formedness conditions.
pub fn parse_lfa(text: &str, label: &str) -> Result<Lfa> {
    let src = Source { label, text };
    let raw: RawLfa = toml::from_str(text).map_err(|e| src.syntax(e))?;
    check_names(&src, &raw.states, "state")?;
    check_names(&src, &raw.inputs, "input")?;
    check_names(&src, &raw.outputs, "output")?;
    let (n, l) = (raw.states.get_ref().len(), raw.outputs.get_ref().len());

    for (table, name) in [(&raw.delta, "delta"), (&raw.lambda, "lambda")] {
        for (symbol, matrix) in table.get_ref() {
            if !raw.inputs.get_ref().contains(symbol) {
                return Err(src.error(matrix, format!("{name} given for unknown input `{symbol}`")));
            }
        }
    }
    let mut delta = Vec::new();
    let mut lambda = Vec::new();
    for symbol in raw.inputs.get_ref() {
        let d = raw
            .delta
            .get_ref()
            .get(symbol)
            .ok_or_else(|| src.error(&raw.delta, format!("missing delta matrix for input `{symbol}`")))?;
        let g = raw
            .lambda
            .get_ref()
            .get(symbol)
            .ok_or_else(|| src.error(&raw.lambda, format!("missing lambda matrix for input `{symbol}`")))?;
        delta.push(build_matrix(&src, d, &format!("delta `{symbol}`"), n, n)?);
        lambda.push(build_matrix(&src, g, &format!("lambda `{symbol}`"), n, l)?);
    }

    let mut lfa = Lfa::new(
        raw.states.get_ref().clone(),
        raw.inputs.get_ref().clone(),
        raw.outputs.get_ref().clone(),
        delta,
        lambda,
    )
    .map_err(|e| src.error(&raw.states, e.to_string()))?;
    if let Some(initial) = &raw.initial {
        lfa = lfa.with_initial(initial.get_ref()).map_err(|e| src.error(initial, e.to_string()))?;
    }
    if let Some(finals) = &raw.finals {
        lfa = lfa.with_finals(finals.get_ref()).map_err(|e| src.error(finals, e.to_string()))?;
    }

    let violations = lfa.validate();
    if let Some(first) = violations.first() {
        let table = match first.condition {
            Condition::TransitionWithoutOutput => &raw.lambda,
            Condition::OutputWithoutTransition => &raw.delta,
        };
        let anchor = table.get_ref().get(&first.input).map_or(table.span().start, |m| m.span().start);
        let listed: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Error::File {
            path: label.to_string(),
            line: src.line(anchor),
            message: listed.join("; "),
        });
    }
    Ok(lfa)
}

pub fn load_lfa(path: impl AsRef<Path>) -> Result<Lfa> {
    let path = path.as_ref();
    parse_lfa(&read(path)?, &path.display().to_string())
}

/// One real per line; `#` starts a comment.
pub fn parse_series(text: &str, label: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let value: f64 = content.parse().map_err(|_| Error::File {
            path: label.to_string(),
            line: i + 1,
            message: format!("`{content}` is not a number"),
        })?;
        if !value.is_finite() {
            return Err(Error::File {
                path: label.to_string(),
                line: i + 1,
                message: format!("`{content}` is not finite"),
            });
        }
        values.push(value);
    }
    Ok(values)
}

pub fn load_series(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    parse_series(&read(path)?, &path.display().to_string())
}
