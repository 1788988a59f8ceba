//! The `lingua-fa` subcommands as functions from arguments to rendered output.
//!
//! Degrees and probabilities are printed with six decimals. Exit codes:
//! 0 success, 1 domain or validation error, 2 usage error, 3 negative
//! equivalence verdict.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::equivalence::{machines_equivalent, Side};
use crate::error::Error;
use crate::files::{load_lfa, load_quantifiers, load_series, load_variables};
use crate::formula::{parse_formula, Parsed, WordDistributions};
use crate::lfa::Lfa;
use crate::mass::{mass_assignment, MassAssignment};
use crate::matrix::DegreeMatrix;
use crate::variable::{LinguisticDescription, LinguisticVariable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_EQUIVALENT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Domain(_) => EXIT_DOMAIN,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Domain(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

pub type CommandResult = std::result::Result<Outcome, Failure>;

/// Runs a command and folds failures into an outcome with a diagnostic.
pub fn finish(result: CommandResult) -> Outcome {
    result.unwrap_or_else(|f| Outcome {
        stdout: String::new(),
        stderr: format!("error: {}\n", f.message()),
        code: f.code(),
    })
}

fn select_variable(vars: Vec<LinguisticVariable>, name: Option<&str>) -> Result<LinguisticVariable, Failure> {
    match name {
        Some(name) => vars
            .into_iter()
            .find(|v| v.name() == name)
            .ok_or_else(|| Failure::Usage(format!("no variable named `{name}` in the file"))),
        None if vars.len() == 1 => Ok(vars.into_iter().next().expect("one variable")),
        None => Err(Failure::Usage(format!(
            "the file defines {} variables; choose one with --var",
            vars.len()
        ))),
    }
}

fn render_masses(out: &mut String, masses: &MassAssignment) {
    out.push_str("mass assignment:\n");
    for line in masses.render(6) {
        let _ = writeln!(out, "  {line}");
    }
}

fn render_probabilities(out: &mut String, des: &LinguisticDescription, masses: &MassAssignment) {
    match masses.least_prejudiced() {
        Ok(probs) => {
            out.push_str("probabilities:\n");
            for (word, p) in des.words().iter().zip(probs) {
                let _ = writeln!(out, "  {word}: {p:.6}");
            }
        }
        Err(_) => {
            let _ = writeln!(
                out,
                "probabilities: undefined (subnormal description, largest grade {:.6})",
                des.max_grade()
            );
        }
    }
}

fn header(out: &mut String, variable: &LinguisticVariable, value: f64, des: &LinguisticDescription) {
    let _ = writeln!(out, "{}({value})", variable.name());
    let _ = writeln!(out, "description: {}", des.render(6));
}

pub fn describe(vars: &Path, var: Option<&str>, value: f64) -> CommandResult {
    let variable = select_variable(load_variables(vars)?, var)?;
    let des = variable.describe(value)?;
    let masses = mass_assignment(&des);
    let mut out = String::new();
    header(&mut out, &variable, value, &des);
    render_masses(&mut out, &masses);
    render_probabilities(&mut out, &des, &masses);
    Ok(Outcome::ok(out))
}

pub fn mass(vars: &Path, var: Option<&str>, value: f64) -> CommandResult {
    let variable = select_variable(load_variables(vars)?, var)?;
    let des = variable.describe(value)?;
    let mut out = String::new();
    header(&mut out, &variable, value, &des);
    render_masses(&mut out, &mass_assignment(&des));
    Ok(Outcome::ok(out))
}

pub fn prob(vars: &Path, var: Option<&str>, value: f64, word: Option<&str>) -> CommandResult {
    let variable = select_variable(load_variables(vars)?, var)?;
    let des = variable.describe(value)?;
    let probs = mass_assignment(&des).least_prejudiced()?;
    let mut out = String::new();
    match word {
        Some(word) => {
            let i = variable.position(word).ok_or_else(|| {
                usage(Error::UnknownWord {
                    variable: variable.name().to_string(),
                    word: word.to_string(),
                })
            })?;
            let _ = writeln!(out, "Pr({word} | des({value})) = {:.6}", probs[i]);
        }
        None => {
            for (w, p) in des.words().iter().zip(probs) {
                let _ = writeln!(out, "Pr({w} | des({value})) = {p:.6}");
            }
        }
    }
    Ok(Outcome::ok(out))
}

pub fn quantify(quantifiers: &Path, p: f64) -> CommandResult {
    let q = load_quantifiers(quantifiers)?;
    let des = q.quantify(p)?;
    Ok(Outcome::ok(format!("{p:.6}: {}\n", des.render(6))))
}

/// `--value VAR=x` arguments.
pub fn parse_assignments(raw: &[String]) -> Result<HashMap<String, f64>, Failure> {
    let mut values = HashMap::new();
    for item in raw {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected VAR=value, got `{item}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("`{}` is not a number", value.trim())))?;
        values.insert(name.trim().to_string(), value);
    }
    Ok(values)
}

pub fn formula(vars: &Path, text: &str, values: &[String], quantifiers: Option<&Path>) -> CommandResult {
    let catalog: HashMap<String, LinguisticVariable> = load_variables(vars)?
        .into_iter()
        .map(|v| (v.name().to_string(), v))
        .collect();
    let parsed = parse_formula(text).map_err(usage)?;
    let values = parse_assignments(values)?;
    let atoms: Vec<_> = match &parsed {
        Parsed::Formula(f) => f.atoms().into_iter().cloned().collect(),
        Parsed::Conditional(c) => c.head().atoms().into_iter().chain(c.body().atoms()).cloned().collect(),
    };
    let mut needed = HashMap::new();
    for atom in &atoms {
        if !catalog.contains_key(&atom.variable) {
            return Err(usage(Error::UnknownVariable(atom.variable.clone())));
        }
        let value = values
            .get(&atom.variable)
            .ok_or_else(|| usage(Error::MissingValue(atom.variable.clone())))?;
        needed.insert(atom.variable.clone(), *value);
    }
    let distributions = WordDistributions::from_values(&needed, &catalog)?;
    let p = match &parsed {
        Parsed::Formula(f) => distributions.probability(f),
        Parsed::Conditional(c) => distributions.conditional(c),
    }
    .map_err(|e| match e {
        Error::UnknownWord { .. } => usage(e),
        other => Failure::Domain(other),
    })?;
    let mut out = String::new();
    let _ = writeln!(out, "formula: {parsed}");
    let _ = writeln!(out, "probability: {p:.6}");
    if let Some(path) = quantifiers {
        let q = load_quantifiers(path)?;
        let _ = writeln!(out, "quantified: {}", q.quantify(p.clamp(0.0, 1.0))?.render(6));
    }
    Ok(Outcome::ok(out))
}

fn render_matrix(out: &mut String, lfa: &Lfa, matrix: &DegreeMatrix) {
    for (i, state) in lfa.states().iter().enumerate() {
        let row: Vec<String> = matrix.row(i).iter().map(|v| format!("{v:.6}")).collect();
        let _ = writeln!(out, "{state}: {}", row.join(" "));
    }
}

fn word_label(text: &str) -> String {
    if text.is_empty() {
        "ε".to_string()
    } else {
        text.to_string()
    }
}

fn start_state(lfa: &Lfa, from: Option<&str>) -> Result<usize, Failure> {
    match from {
        Some(name) => lfa.state_index(name).map_err(usage),
        None => Ok(lfa.initial().unwrap_or(0)),
    }
}

fn render_outputs(out: &mut String, lfa: &Lfa, q: usize, x: &[usize], limit: usize) -> Result<(), Failure> {
    let outputs = lfa.run_outputs(q, x, limit).map_err(|e| match e {
        Error::LengthLimit { .. } => usage(e),
        other => Failure::Domain(other),
    })?;
    let mut rows: Vec<(String, f64)> = outputs
        .into_iter()
        .map(|(y, d)| (word_label(&lfa.render_output(&y)), d))
        .collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let _ = writeln!(out, "outputs from {}:", lfa.states()[q]);
    for (y, d) in rows {
        let _ = writeln!(out, "{y} {d:.6}");
    }
    Ok(())
}

pub fn run(lfa: &Path, from: Option<&str>, input: &str, outputs: bool, max_len: usize) -> CommandResult {
    let lfa = load_lfa(lfa)?;
    let q = start_state(&lfa, from)?;
    let x = lfa.input_word(input).map_err(usage)?;
    let mut out = String::new();
    let _ = writeln!(out, "delta*({}):", word_label(&lfa.render_input(&x)));
    render_matrix(&mut out, &lfa, &lfa.delta_star(&x)?);
    if outputs {
        render_outputs(&mut out, &lfa, q, &x, max_len)?;
    }
    Ok(Outcome::ok(out))
}

pub fn equiv(first: &Path, second: &Path, k: Option<usize>, horizon: Option<usize>) -> CommandResult {
    let m1 = load_lfa(first)?;
    let m2 = load_lfa(second)?;
    let verdict = machines_equivalent(&m1, &m2, horizon, k)?;
    if verdict.related {
        return Ok(Outcome::ok(format!("{verdict}\n")));
    }
    let mut out = String::from("not equivalent");
    if let Some(w) = &verdict.witness {
        let _ = write!(out, "; witness {}", w.render(&m1));
    }
    out.push('\n');
    if let Some((side, q)) = verdict.unmatched {
        let (machine, name) = match side {
            Side::First => ("first", &m1.states()[q]),
            Side::Second => ("second", &m2.states()[q]),
        };
        let _ = writeln!(out, "state {name} of the {machine} machine has no equivalent partner");
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        code: EXIT_NOT_EQUIVALENT,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenMode {
    Argmax,
    Fuzzy,
}

pub fn lingrun(lfa: &Path, vars: &Path, series: &Path, var: Option<&str>, mode: TokenMode) -> CommandResult {
    let lfa = load_lfa(lfa)?;
    let variable = select_variable(load_variables(vars)?, var)?;
    let values = load_series(series)?;
    if let Some(word) = variable.words().into_iter().find(|w| lfa.input_index(w).is_err()) {
        return Err(Failure::Domain(Error::AlphabetMismatch(format!(
            "word `{word}` of `{}` is not an input symbol of the automaton",
            variable.name()
        ))));
    }
    let descriptions = values
        .iter()
        .map(|&v| variable.describe(v))
        .collect::<Result<Vec<_>, _>>()?;

    let mut out = String::new();
    let mut stderr = String::new();
    if values.is_empty() {
        stderr.push_str("warning: empty series; the result is the identity matrix\n");
    }
    match mode {
        TokenMode::Argmax => {
            let mut tokens = Vec::new();
            for (des, value) in descriptions.iter().zip(&values) {
                if des.max_grade() <= 0.0 {
                    return Err(Failure::Domain(Error::InvalidVariable {
                        variable: variable.name().to_string(),
                        reason: format!("value {value} has no word with positive grade"),
                    }));
                }
                tokens.push(des.words()[des.argmax()].clone());
            }
            let x: Vec<usize> = tokens.iter().map(|w| lfa.input_index(w)).collect::<Result<_, _>>()?;
            let _ = writeln!(out, "tokens: {}", word_label(&tokens.join(" ")));
            let _ = writeln!(out, "delta*({}):", word_label(&lfa.render_input(&x)));
            render_matrix(&mut out, &lfa, &lfa.delta_star(&x)?);
        }
        TokenMode::Fuzzy => {
            let mut acc = DegreeMatrix::identity(lfa.states().len());
            for des in &descriptions {
                let step = lfa.fuzzified_step_matrix(des.iter())?;
                acc = acc.compose(&step)?;
            }
            let _ = writeln!(out, "fuzzy run over {} value(s):", values.len());
            render_matrix(&mut out, &lfa, &acc);
        }
    }
    Ok(Outcome {
        stdout: out,
        stderr,
        code: EXIT_OK,
    })
}

/// Validates a variable, quantifier or automaton file; the kind is inferred
/// from the presence of a `states` key unless `quantifier` is set.
pub fn validate(path: &Path, quantifier: bool) -> CommandResult {
    let text = crate::files::read(path)?;
    let label = path.display().to_string();
    if quantifier {
        let q = crate::files::parse_quantifiers(&text, &label)?;
        return Ok(Outcome::ok(format!(
            "valid quantifier set {} ({} words)\n",
            q.base().name(),
            q.len()
        )));
    }
    let is_lfa = text
        .parse::<toml::Table>()
        .map(|t| t.contains_key("states"))
        .unwrap_or(false);
    if is_lfa {
        let lfa = crate::files::parse_lfa(&text, &label)?;
        return Ok(Outcome::ok(format!(
            "valid automaton ({} states, {} inputs, {} outputs)\n",
            lfa.states().len(),
            lfa.inputs().len(),
            lfa.outputs().len()
        )));
    }
    let vars = crate::files::parse_variables(&text, &label)?;
    let mut out = String::new();
    for v in vars {
        let _ = writeln!(out, "valid linguistic variable {} ({} terms)", v.name(), v.terms().len());
    }
    Ok(Outcome::ok(out))
}
