//! Linguistic finite automata `(Q, Σ, Δ, δ, λ)` with degree-valued
//! transitions `δ(q, x, p) = θ_qp(x)` and outputs `λ(q, x, y) = π_qy(x)`.
//!
//! Words are slices of symbol indices into the input or output alphabet; the
//! empty slice is ε. `δ*` of a word is the max-min product of its letter
//! matrices and `λ*` follows the recursion
//!
//! ```text
//! λ*(q, ε, ε)     = 1
//! λ*(q, x·a, y·b) = λ*(q, x, y) ∧ ∨_r [δ*(q, x, r) ∧ λ(r, a, b)]
//! ```
//!
//! which is 0 whenever `|x| ≠ |y|`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::DegreeMatrix;

/// Default cap on `|x|` for [`Lfa::run_outputs`].
pub const DEFAULT_OUTPUT_LENGTH_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Some transition is positive but every output degree is zero.
    TransitionWithoutOutput,
    /// Some output is positive but every transition degree is zero.
    OutputWithoutTransition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub state: String,
    pub input: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.condition {
            Condition::TransitionWithoutOutput => write!(
                f,
                "condition (1) violated at ({}, {}): positive transition but no positive output",
                self.state, self.input
            ),
            Condition::OutputWithoutTransition => write!(
                f,
                "condition (2) violated at ({}, {}): positive output but no positive transition",
                self.state, self.input
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lfa {
    states: Vec<String>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    delta: Vec<DegreeMatrix>,
    lambda: Vec<DegreeMatrix>,
    initial: Option<usize>,
    finals: Vec<usize>,
}

fn check_names(kind: &str, names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::InvalidAutomaton(format!("{kind} list is empty")));
    }
    let mut seen = HashSet::new();
    for name in names {
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidAutomaton(format!(
                "{kind} name `{name}` must be non-empty without whitespace"
            )));
        }
        if !seen.insert(name) {
            return Err(Error::InvalidAutomaton(format!("duplicate {kind} `{name}`")));
        }
    }
    Ok(())
}

impl Lfa {
    /// `delta[s]` is the `n×n` matrix of input symbol `s`, `lambda[s]` the `n×ℓ` one.
    pub fn new(
        states: Vec<String>,
        inputs: Vec<String>,
        outputs: Vec<String>,
        delta: Vec<DegreeMatrix>,
        lambda: Vec<DegreeMatrix>,
    ) -> Result<Self> {
        check_names("state", &states)?;
        check_names("input", &inputs)?;
        check_names("output", &outputs)?;
        let (n, m, l) = (states.len(), inputs.len(), outputs.len());
        if delta.len() != m || lambda.len() != m {
            return Err(Error::Dimension(format!(
                "expected one delta and one lambda matrix per input symbol ({m}), got {} and {}",
                delta.len(),
                lambda.len()
            )));
        }
        for (s, name) in inputs.iter().enumerate() {
            if (delta[s].rows(), delta[s].cols()) != (n, n) {
                return Err(Error::Dimension(format!(
                    "delta `{name}` is {}x{}, expected {n}x{n}",
                    delta[s].rows(),
                    delta[s].cols()
                )));
            }
            if (lambda[s].rows(), lambda[s].cols()) != (n, l) {
                return Err(Error::Dimension(format!(
                    "lambda `{name}` is {}x{}, expected {n}x{l}",
                    lambda[s].rows(),
                    lambda[s].cols()
                )));
            }
        }
        Ok(Self {
            states,
            inputs,
            outputs,
            delta,
            lambda,
            initial: None,
            finals: Vec::new(),
        })
    }

    pub fn with_initial(mut self, state: &str) -> Result<Self> {
        self.initial = Some(self.state_index(state)?);
        Ok(self)
    }

    pub fn with_finals(mut self, states: &[String]) -> Result<Self> {
        self.finals = states.iter().map(|s| self.state_index(s)).collect::<Result<_>>()?;
        Ok(self)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    pub fn finals(&self) -> &[usize] {
        &self.finals
    }

    pub fn delta(&self, symbol: usize) -> &DegreeMatrix {
        &self.delta[symbol]
    }

    pub fn lambda(&self, symbol: usize) -> &DegreeMatrix {
        &self.lambda[symbol]
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn input_index(&self, name: &str) -> Result<usize> {
        self.inputs
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn output_index(&self, name: &str) -> Result<usize> {
        self.outputs
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// Whitespace-separated input symbols; the empty string is ε.
    pub fn input_word(&self, text: &str) -> Result<Vec<usize>> {
        text.split_whitespace().map(|s| self.input_index(s)).collect()
    }

    pub fn output_word(&self, text: &str) -> Result<Vec<usize>> {
        text.split_whitespace().map(|s| self.output_index(s)).collect()
    }

    pub fn render_input(&self, word: &[usize]) -> String {
        word.iter().map(|&s| self.inputs[s].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn render_output(&self, word: &[usize]) -> String {
        word.iter().map(|&s| self.outputs[s].as_str()).collect::<Vec<_>>().join(" ")
    }

    fn check_input(&self, x: &[usize]) -> Result<()> {
        match x.iter().find(|&&s| s >= self.inputs.len()) {
            Some(s) => Err(Error::UnknownSymbol(format!("input #{s}"))),
            None => Ok(()),
        }
    }

    fn check_output(&self, y: &[usize]) -> Result<()> {
        match y.iter().find(|&&s| s >= self.outputs.len()) {
            Some(s) => Err(Error::UnknownSymbol(format!("output #{s}"))),
            None => Ok(()),
        }
    }

    fn check_state(&self, q: usize) -> Result<()> {
        if q < self.states.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(format!("#{q}")))
        }
    }

    /// Every `(q, x)` pair that breaks one of the two well-formedness conditions.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (s, input) in self.inputs.iter().enumerate() {
            for (q, state) in self.states.iter().enumerate() {
                let moves = self.delta[s].row(q).iter().any(|&d| d > 0.0);
                let emits = self.lambda[s].row(q).iter().any(|&d| d > 0.0);
                let condition = match (moves, emits) {
                    (true, false) => Condition::TransitionWithoutOutput,
                    (false, true) => Condition::OutputWithoutTransition,
                    _ => continue,
                };
                out.push(Violation {
                    condition,
                    state: state.clone(),
                    input: input.clone(),
                });
            }
        }
        out
    }

    /// `δ*(x)`: identity for ε, otherwise the max-min product of letter matrices.
    pub fn delta_star(&self, x: &[usize]) -> Result<DegreeMatrix> {
        self.check_input(x)?;
        let mut acc = DegreeMatrix::identity(self.states.len());
        for &s in x {
            acc = acc.compose(&self.delta[s])?;
        }
        Ok(acc)
    }

    /// Single entry `δ*(q_i, x, q_j)`.
    pub fn delta_star_degree(&self, from: usize, x: &[usize], to: usize) -> Result<f64> {
        self.check_state(from)?;
        self.check_state(to)?;
        self.check_input(x)?;
        let mut row = unit_row(self.states.len(), from);
        for &s in x {
            row = DegreeMatrix::compose_row(&row, &self.delta[s]);
        }
        Ok(row[to])
    }

    pub fn lambda_star(&self, q: usize, x: &[usize], y: &[usize]) -> Result<f64> {
        self.check_state(q)?;
        self.check_input(x)?;
        self.check_output(y)?;
        if x.len() != y.len() {
            return Ok(0.0);
        }
        let mut degree = 1.0;
        let mut reach = unit_row(self.states.len(), q);
        for (&a, &b) in x.iter().zip(y) {
            let step = reach
                .iter()
                .enumerate()
                .map(|(r, &d)| d.min(self.lambda[a].get(r, b)))
                .fold(0.0, f64::max);
            degree = f64::min(degree, step);
            if degree == 0.0 {
                return Ok(0.0);
            }
            reach = DegreeMatrix::compose_row(&reach, &self.delta[a]);
        }
        Ok(degree)
    }

    /// Every output word `y` with `λ*(q, x, y) > 0`, keyed by output symbol indices.
    pub fn run_outputs(&self, q: usize, x: &[usize], limit: usize) -> Result<BTreeMap<Vec<usize>, f64>> {
        self.check_state(q)?;
        self.check_input(x)?;
        if x.len() > limit {
            return Err(Error::LengthLimit { len: x.len(), limit });
        }
        let mut out = BTreeMap::new();
        if x.is_empty() {
            out.insert(Vec::new(), 1.0);
            return Ok(out);
        }
        let mut y = Vec::with_capacity(x.len());
        self.collect_outputs(x, unit_row(self.states.len(), q), &mut y, &mut out);
        Ok(out)
    }

    /// Depth-first over output prefixes; `reach` is already capped by the prefix degree.
    fn collect_outputs(&self, x: &[usize], reach: Vec<f64>, y: &mut Vec<usize>, out: &mut BTreeMap<Vec<usize>, f64>) {
        let depth = y.len();
        let a = x[depth];
        for b in 0..self.outputs.len() {
            let (degree, next) = self.advance(&reach, a, b);
            if degree == 0.0 {
                continue;
            }
            y.push(b);
            if depth + 1 == x.len() {
                out.insert(y.clone(), degree);
            } else {
                self.collect_outputs(x, next, y, out);
            }
            y.pop();
        }
    }

    /// One step of `λ*` on a capped reach vector `min(λ*(q,x,y), δ*(q,x,·))`.
    ///
    /// Returns the degree `λ*(q, x·a, y·b)` and the capped reach vector for
    /// the extended pair. Future degrees depend only on the capped vector.
    pub(crate) fn advance(&self, reach: &[f64], a: usize, b: usize) -> (f64, Vec<f64>) {
        let degree = reach
            .iter()
            .enumerate()
            .map(|(r, &d)| d.min(self.lambda[a].get(r, b)))
            .fold(0.0, f64::max);
        let mut next = DegreeMatrix::compose_row(reach, &self.delta[a]);
        for v in &mut next {
            *v = v.min(degree);
        }
        (degree, next)
    }

    /// `max_s min(weight(s), δ(s))`: one fuzzy step where each input symbol
    /// applies to the degree given by `weights`. Unlisted symbols weigh 0.
    pub fn fuzzified_step_matrix<'a, I>(&self, weights: I) -> Result<DegreeMatrix>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let n = self.states.len();
        let mut acc = DegreeMatrix::zeros(n, n);
        for (symbol, weight) in weights {
            let s = self.input_index(symbol)?;
            if !(0.0..=1.0).contains(&weight) {
                return Err(Error::InvalidDegree {
                    location: format!("weight of `{symbol}`"),
                    value: weight,
                });
            }
            acc = acc.join(&self.delta[s].cap(weight))?;
        }
        Ok(acc)
    }

    /// Distinct degrees appearing in δ and λ.
    pub fn degrees(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .delta
            .iter()
            .chain(&self.lambda)
            .flat_map(|m| m.entries().iter().copied())
            .collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    }
}

pub(crate) fn unit_row(n: usize, q: usize) -> Vec<f64> {
    let mut row = vec![0.0; n];
    row[q] = 1.0;
    row
}
