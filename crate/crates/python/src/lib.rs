//! Python bindings for `lingua_fa`.
//!
//! Variables, descriptions, formulas, automata and equivalence checks are
//! exposed as thin wrappers; every library error surfaces as `LinguaError`.

use std::collections::{BTreeMap, HashMap};

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::lingua_fa as lingua;
use lingua::files;
use lingua::{DegreeMatrix, Lfa, LinguisticDescription, LinguisticVariable, PiecewiseLinear, Term};

create_exception!(lingua_fa, LinguaError, PyValueError);

fn wrap<T>(result: lingua::Result<T>) -> PyResult<T> {
    result.map_err(|e| LinguaError::new_err(e.to_string()))
}

#[pyclass(name = "Variable", module = "lingua_fa", frozen, from_py_object)]
#[derive(Clone)]
struct PyVariable {
    inner: LinguisticVariable,
}

#[pymethods]
impl PyVariable {
    /// `terms` maps each word to its membership knots `[(x, degree), ...]`, in order.
    #[new]
    fn new(name: &str, universe: (f64, f64), terms: Vec<(String, Vec<(f64, f64)>)>) -> PyResult<Self> {
        let terms = terms
            .into_iter()
            .map(|(word, knots)| {
                Ok(Term {
                    word,
                    meaning: wrap(PiecewiseLinear::new(knots))?,
                })
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self {
            inner: wrap(LinguisticVariable::new(name, universe, terms))?,
        })
    }

    /// Every variable defined in a TOML file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Vec<Self>> {
        Ok(wrap(files::load_variables(path))?
            .into_iter()
            .map(|inner| Self { inner })
            .collect())
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn universe(&self) -> (f64, f64) {
        self.inner.universe()
    }

    #[getter]
    fn words(&self) -> Vec<String> {
        self.inner.words()
    }

    fn membership(&self, word: &str, x: f64) -> PyResult<f64> {
        Ok(wrap(self.inner.meaning(word))?.eval(x))
    }

    fn describe(&self, x: f64) -> PyResult<PyDescription> {
        Ok(PyDescription {
            inner: wrap(self.inner.describe(x))?,
        })
    }

    fn __repr__(&self) -> String {
        let (lo, hi) = self.inner.universe();
        format!("Variable({:?}, [{lo}, {hi}], {:?})", self.inner.name(), self.inner.words())
    }
}

#[pyclass(name = "Description", module = "lingua_fa", frozen)]
struct PyDescription {
    inner: LinguisticDescription,
}

#[pymethods]
impl PyDescription {
    /// Description from explicit grades, e.g. `{"small": 1.0, "medium": 0.5}`.
    #[staticmethod]
    fn from_grades(variable: &str, words: Vec<String>, grades: HashMap<String, f64>) -> PyResult<Self> {
        let pairs: Vec<(&str, f64)> = grades.iter().map(|(w, &g)| (w.as_str(), g)).collect();
        Ok(Self {
            inner: wrap(LinguisticDescription::from_grades(variable, words, pairs))?,
        })
    }

    /// Grades from ballots: each word's share of the ballots that include it.
    #[staticmethod]
    fn from_votes(variable: &str, words: Vec<String>, ballots: Vec<Vec<String>>) -> PyResult<Self> {
        Ok(Self {
            inner: wrap(lingua::VotingRecord::new(ballots).semantics(variable, &words))?,
        })
    }

    #[getter]
    fn variable(&self) -> &str {
        self.inner.variable()
    }

    #[getter]
    fn words(&self) -> Vec<String> {
        self.inner.words().to_vec()
    }

    #[getter]
    fn grades(&self) -> Vec<f64> {
        self.inner.grades().to_vec()
    }

    fn grade(&self, word: &str) -> PyResult<f64> {
        wrap(self.inner.grade(word))
    }

    /// Focal sets from smallest to largest, as `(words, mass)` pairs.
    fn masses(&self) -> Vec<(Vec<String>, f64)> {
        let masses = lingua::mass_assignment(&self.inner);
        masses
            .focal_elements()
            .iter()
            .map(|e| {
                let words = masses.member_words(e).into_iter().map(String::from).collect();
                (words, e.mass)
            })
            .collect()
    }

    /// Mass left on the empty set, `1 - max grade`.
    fn residual(&self) -> f64 {
        lingua::mass_assignment(&self.inner).residual()
    }

    /// Least-prejudiced word probabilities.
    fn probabilities(&self) -> PyResult<BTreeMap<String, f64>> {
        let probs = wrap(lingua::mass_assignment(&self.inner).least_prejudiced())?;
        Ok(self.inner.words().iter().cloned().zip(probs).collect())
    }

    fn probability(&self, word: &str) -> PyResult<f64> {
        wrap(lingua::word_probability(word, &self.inner))
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(name = "QuantifierSet", module = "lingua_fa", frozen)]
struct PyQuantifierSet {
    inner: lingua::QuantifierVariable,
}

#[pymethods]
impl PyQuantifierSet {
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: wrap(files::load_quantifiers(path))?,
        })
    }

    #[getter]
    fn words(&self) -> Vec<String> {
        self.inner.base().words()
    }

    fn antonym(&self, word: &str) -> PyResult<String> {
        wrap(self.inner.antonym(word)).map(String::from)
    }

    fn quantify(&self, p: f64) -> PyResult<PyDescription> {
        Ok(PyDescription {
            inner: wrap(self.inner.quantify(p))?,
        })
    }
}

/// Probability of a formula such as `"((SIZE=small) | (SIZE=medium))"` or a
/// conditional `"((SIZE=small) ? (WEIGHT=light))"`, given one value per variable.
#[pyfunction]
fn evaluate(formula: &str, values: HashMap<String, f64>, variables: Vec<PyVariable>) -> PyResult<f64> {
    let catalog: HashMap<String, LinguisticVariable> = variables
        .into_iter()
        .map(|v| (v.inner.name().to_string(), v.inner))
        .collect();
    match wrap(lingua::parse_formula(formula))? {
        lingua::Parsed::Formula(f) => wrap(lingua::eval_formula(&f, &values, &catalog)),
        lingua::Parsed::Conditional(c) => wrap(lingua::eval_conditional(&c, &values, &catalog)),
    }
}

fn matrices(symbols: &[String], mut tables: HashMap<String, Vec<Vec<f64>>>, what: &str) -> PyResult<Vec<DegreeMatrix>> {
    let matrices = symbols
        .iter()
        .map(|s| {
            let rows = tables
                .remove(s)
                .ok_or_else(|| LinguaError::new_err(format!("{what} has no table for symbol `{s}`")))?;
            wrap(DegreeMatrix::from_rows(rows))
        })
        .collect::<PyResult<Vec<_>>>()?;
    if let Some(extra) = tables.keys().next() {
        return Err(LinguaError::new_err(format!("{what} names unknown symbol `{extra}`")));
    }
    Ok(matrices)
}

#[pyclass(name = "Lfa", module = "lingua_fa", frozen)]
struct PyLfa {
    inner: Lfa,
}

#[pymethods]
impl PyLfa {
    /// `delta[a]` is the n×n transition matrix of symbol `a`, `lam[a]` the
    /// n×|outputs| output matrix. Both well-formedness conditions are enforced.
    #[new]
    #[pyo3(signature = (states, inputs, outputs, delta, lam, initial=None))]
    fn new(
        states: Vec<String>,
        inputs: Vec<String>,
        outputs: Vec<String>,
        delta: HashMap<String, Vec<Vec<f64>>>,
        lam: HashMap<String, Vec<Vec<f64>>>,
        initial: Option<&str>,
    ) -> PyResult<Self> {
        let delta = matrices(&inputs, delta, "delta")?;
        let lambda = matrices(&inputs, lam, "lambda")?;
        let mut lfa = wrap(Lfa::new(states, inputs, outputs, delta, lambda))?;
        if let Some(q) = initial {
            lfa = wrap(lfa.with_initial(q))?;
        }
        if let Some(v) = lfa.validate().first() {
            return Err(LinguaError::new_err(v.to_string()));
        }
        Ok(Self { inner: lfa })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: wrap(files::load_lfa(path))?,
        })
    }

    #[getter]
    fn states(&self) -> Vec<String> {
        self.inner.states().to_vec()
    }

    #[getter]
    fn inputs(&self) -> Vec<String> {
        self.inner.inputs().to_vec()
    }

    #[getter]
    fn outputs(&self) -> Vec<String> {
        self.inner.outputs().to_vec()
    }

    /// δ* of a space-separated input word as a list of rows.
    fn delta_star(&self, x: &str) -> PyResult<Vec<Vec<f64>>> {
        let word = wrap(self.inner.input_word(x))?;
        Ok(wrap(self.inner.delta_star(&word))?.to_rows())
    }

    fn lambda_star(&self, state: &str, x: &str, y: &str) -> PyResult<f64> {
        let q = wrap(self.inner.state_index(state))?;
        let x = wrap(self.inner.input_word(x))?;
        let y = wrap(self.inner.output_word(y))?;
        wrap(self.inner.lambda_star(q, &x, &y))
    }

    /// Every output word with a positive λ* degree from `state` on input `x`.
    #[pyo3(signature = (state, x, limit=lingua::lfa::DEFAULT_OUTPUT_LENGTH_LIMIT))]
    fn run_outputs(&self, state: &str, x: &str, limit: usize) -> PyResult<BTreeMap<String, f64>> {
        let q = wrap(self.inner.state_index(state))?;
        let x = wrap(self.inner.input_word(x))?;
        Ok(wrap(self.inner.run_outputs(q, &x, limit))?
            .into_iter()
            .map(|(y, d)| (self.inner.render_output(&y), d))
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Lfa(states={:?}, inputs={:?}, outputs={:?})",
            self.inner.states(),
            self.inner.inputs(),
            self.inner.outputs()
        )
    }
}

/// `(related, witness)` for two states; the witness is `"x=… y=… d1 vs d2"` or None.
#[pyfunction]
#[pyo3(signature = (m1, q1, m2, q2, k=None))]
fn states_equivalent(m1: &PyLfa, q1: &str, m2: &PyLfa, q2: &str, k: Option<usize>) -> PyResult<(bool, Option<String>)> {
    let p = wrap(m1.inner.state_index(q1))?;
    let q = wrap(m2.inner.state_index(q2))?;
    let verdict = match k {
        Some(k) => wrap(lingua::k_equivalent(&m1.inner, p, &m2.inner, q, k))?,
        None => wrap(lingua::equivalent_states(&m1.inner, p, &m2.inner, q, None))?,
    };
    Ok((verdict.related, verdict.witness.map(|w| w.render(&m1.inner))))
}

/// `(related, horizon, witness)` for two machines.
#[pyfunction]
#[pyo3(signature = (m1, m2, horizon=None, k=None))]
fn machines_equivalent(
    m1: &PyLfa,
    m2: &PyLfa,
    horizon: Option<usize>,
    k: Option<usize>,
) -> PyResult<(bool, usize, Option<String>)> {
    let verdict = wrap(lingua::machines_equivalent(&m1.inner, &m2.inner, horizon, k))?;
    Ok((verdict.related, verdict.horizon, verdict.witness.map(|w| w.render(&m1.inner))))
}

/// Classes of `≡_k` as lists of state names.
#[pyfunction]
fn partition(m: &PyLfa, k: usize) -> PyResult<Vec<Vec<String>>> {
    let classes = wrap(lingua::partition_by_k_equivalence(&m.inner, k))?;
    Ok(classes
        .into_iter()
        .map(|c| c.into_iter().map(|q| m.inner.states()[q].clone()).collect())
        .collect())
}

#[pymodule]
fn lingua_fa(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LinguaError", m.py().get_type::<LinguaError>())?;
    m.add_class::<PyVariable>()?;
    m.add_class::<PyDescription>()?;
    m.add_class::<PyQuantifierSet>()?;
    m.add_class::<PyLfa>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(states_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(machines_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(partition, m)?)?;
    Ok(())
}
