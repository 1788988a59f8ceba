//! Linguistic formulas over atoms `(L=w)`, conditional formulas `(H ? B)` and
//! their probabilities.
//!
//! Surface syntax is fully parenthesized ASCII:
//!
//! ```text
//! (SIZE=small)                      atom
//! (!F)                              negation      (also ¬)
//! (F & G)                           conjunction   (also ∧)
//! (F | G)                           disjunction   (also ∨)
//! (H ? B)                           conditional, outermost level only
//! ```
//!
//! Each variable is modelled as drawing exactly one word from its term set,
//! with the least-prejudiced distribution of its linguistic description.
//! Distinct variables are independent and an atom is the event "the drawn
//! word for L is w". Conjunctions of two different words of one variable are
//! therefore impossible events.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::mass::mass_assignment;
use crate::variable::LinguisticVariable;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub variable: String,
    pub word: String,
}

impl Atom {
    pub fn new(variable: impl Into<String>, word: impl Into<String>) -> Self {
        Self {
            variable: variable.into(),
            word: word.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(variable: impl Into<String>, word: impl Into<String>) -> Self {
        Formula::Atom(Atom::new(variable, word))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::Atom(a) => out.push(a),
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Truth value under a complete word choice per variable.
    pub fn holds(&self, chosen: &dyn Fn(&str) -> Option<String>) -> bool {
        match self {
            Formula::Atom(a) => chosen(&a.variable).as_deref() == Some(a.word.as_str()),
            Formula::Not(f) => !f.holds(chosen),
            Formula::And(a, b) => a.holds(chosen) && b.holds(chosen),
            Formula::Or(a, b) => a.holds(chosen) || b.holds(chosen),
        }
    }

    /// Rendering with ¬, ∧ and ∨.
    pub fn unicode(&self) -> String {
        match self {
            Formula::Atom(a) => format!("({}={})", a.variable, a.word),
            Formula::Not(f) => format!("(¬{})", f.unicode()),
            Formula::And(a, b) => format!("({} ∧ {})", a.unicode(), b.unicode()),
            Formula::Or(a, b) => format!("({} ∨ {})", a.unicode(), b.unicode()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "({}={})", a.variable, a.word),
            Formula::Not(g) => write!(f, "(!{g})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

/// `(H | B)` where the head is an atom or a negated atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConditionalFormula {
    head: Formula,
    body: Formula,
}

impl ConditionalFormula {
    pub fn new(head: Formula, body: Formula) -> Result<Self> {
        if !is_literal(&head) {
            return Err(Error::CompoundHead { column: 1 });
        }
        Ok(Self { head, body })
    }

    pub fn head(&self) -> &Formula {
        &self.head
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    /// Display form with a conditioning bar. Not parseable back, since `|`
    /// reads as disjunction.
    pub fn unicode(&self) -> String {
        format!("({} | {})", self.head.unicode(), self.body.unicode())
    }
}

impl fmt::Display for ConditionalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ? {})", self.head, self.body)
    }
}

fn is_literal(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) => true,
        Formula::Not(inner) => matches!(**inner, Formula::Atom(_)),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Formula(Formula),
    Conditional(ConditionalFormula),
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Formula(g) => g.fmt(f),
            Parsed::Conditional(c) => c.fmt(f),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Parsed> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    parser.skip_ws();
    let parsed = parser.expr(true)?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(parsed)
}

const RESERVED: &[char] = &['(', ')', '=', '!', '&', '|', '?', '¬', '∧', '∨'];

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.expr(false)? {
            Parsed::Formula(f) => Ok(f),
            Parsed::Conditional(_) => unreachable!("nested conditionals are rejected by expr"),
        }
    }

    fn expr(&mut self, top: bool) -> Result<Parsed> {
        self.expect('(')?;
        self.skip_ws();
        match self.peek() {
            Some('!' | '¬') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.formula()?;
                self.expect(')')?;
                Ok(Parsed::Formula(Formula::not(inner)))
            }
            Some('(') => {
                let left_column = self.pos + 1;
                let left = self.formula()?;
                self.skip_ws();
                let op = self.peek().ok_or_else(|| self.error("expected an operator"))?;
                let op_pos = self.pos;
                self.pos += 1;
                self.skip_ws();
                let right = self.formula()?;
                self.expect(')')?;
                match op {
                    '&' | '∧' => Ok(Parsed::Formula(Formula::and(left, right))),
                    '|' | '∨' => Ok(Parsed::Formula(Formula::or(left, right))),
                    '?' if !top => Err(Error::Syntax {
                        column: op_pos + 1,
                        message: "a conditional may only appear at the outermost level".into(),
                    }),
                    '?' if !is_literal(&left) => Err(Error::CompoundHead { column: left_column }),
                    '?' => Ok(Parsed::Conditional(ConditionalFormula { head: left, body: right })),
                    _ => Err(Error::Syntax {
                        column: op_pos + 1,
                        message: format!("expected `&`, `|` or `?`, found `{op}`"),
                    }),
                }
            }
            _ => {
                let variable = self.name('=')?;
                self.expect('=')?;
                let word = self.name(')')?;
                self.expect(')')?;
                Ok(Parsed::Formula(Formula::atom(variable, word)))
            }
        }
    }

    /// Reads up to `stop`; inner spaces are kept so words like `very good` work.
    fn name(&mut self, stop: char) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == stop || RESERVED.contains(&c) {
                break;
            }
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect::<String>().trim().to_string();
        if name.is_empty() {
            return Err(Error::Syntax {
                column: start + 1,
                message: if stop == '=' {
                    "expected a variable name".into()
                } else {
                    "expected a word".into()
                },
            });
        }
        Ok(name)
    }
}

/// Per-variable word distributions, the sample space of formula evaluation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WordDistributions {
    vars: HashMap<String, Vec<(String, f64)>>,
}

impl WordDistributions {
    /// Least-prejudiced distribution of `describe(L, value)` for every variable with a value.
    pub fn from_values(values: &HashMap<String, f64>, catalog: &HashMap<String, LinguisticVariable>) -> Result<Self> {
        let mut vars = HashMap::new();
        for (name, &value) in values {
            let variable = catalog.get(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            let des = variable.describe(value)?;
            let probs = mass_assignment(&des).least_prejudiced()?;
            vars.insert(name.clone(), des.words().iter().cloned().zip(probs).collect());
        }
        Ok(Self { vars })
    }

    pub fn insert(&mut self, variable: impl Into<String>, distribution: Vec<(String, f64)>) {
        self.vars.insert(variable.into(), distribution);
    }

    pub fn get(&self, variable: &str) -> Option<&[(String, f64)]> {
        self.vars.get(variable).map(Vec::as_slice)
    }

    fn check(&self, f: &Formula) -> Result<()> {
        for atom in f.atoms() {
            let dist = self
                .vars
                .get(&atom.variable)
                .ok_or_else(|| Error::MissingValue(atom.variable.clone()))?;
            if !dist.iter().any(|(w, _)| *w == atom.word) {
                return Err(Error::UnknownWord {
                    variable: atom.variable.clone(),
                    word: atom.word.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn probability(&self, f: &Formula) -> Result<f64> {
        self.check(f)?;
        Ok(self.expand(Reduced::Open(f.clone())))
    }

    pub fn conditional(&self, c: &ConditionalFormula) -> Result<f64> {
        let body = self.probability(&c.body)?;
        if body <= 0.0 {
            return Err(Error::ZeroConditioning);
        }
        let joint = self.probability(&Formula::and(c.head.clone(), c.body.clone()))?;
        Ok(joint / body)
    }

    /// Shannon expansion on one variable at a time, skipping zero-probability words.
    fn expand(&self, f: Reduced) -> f64 {
        match f {
            Reduced::Known(true) => 1.0,
            Reduced::Known(false) => 0.0,
            Reduced::Open(f) => {
                let var = f.atoms()[0].variable.clone();
                self.vars[&var]
                    .iter()
                    .filter(|(_, p)| *p > 0.0)
                    .map(|(word, p)| p * self.expand(restrict(&f, &var, word)))
                    .sum()
            }
        }
    }
}

enum Reduced {
    Known(bool),
    Open(Formula),
}

/// Substitutes the choice `var = word` and folds constants.
fn restrict(f: &Formula, var: &str, word: &str) -> Reduced {
    match f {
        Formula::Atom(a) if a.variable == var => Reduced::Known(a.word == word),
        Formula::Atom(_) => Reduced::Open(f.clone()),
        Formula::Not(g) => match restrict(g, var, word) {
            Reduced::Known(b) => Reduced::Known(!b),
            Reduced::Open(g) => Reduced::Open(Formula::not(g)),
        },
        Formula::And(a, b) => match (restrict(a, var, word), restrict(b, var, word)) {
            (Reduced::Known(false), _) | (_, Reduced::Known(false)) => Reduced::Known(false),
            (Reduced::Known(true), other) | (other, Reduced::Known(true)) => other,
            (Reduced::Open(a), Reduced::Open(b)) => Reduced::Open(Formula::and(a, b)),
        },
        Formula::Or(a, b) => match (restrict(a, var, word), restrict(b, var, word)) {
            (Reduced::Known(true), _) | (_, Reduced::Known(true)) => Reduced::Known(true),
            (Reduced::Known(false), other) | (other, Reduced::Known(false)) => other,
            (Reduced::Open(a), Reduced::Open(b)) => Reduced::Open(Formula::or(a, b)),
        },
    }
}

pub fn eval_formula(
    f: &Formula,
    values: &HashMap<String, f64>,
    catalog: &HashMap<String, LinguisticVariable>,
) -> Result<f64> {
    let needed = restrict_values(f, values)?;
    WordDistributions::from_values(&needed, catalog)?.probability(f)
}

pub fn eval_conditional(
    c: &ConditionalFormula,
    values: &HashMap<String, f64>,
    catalog: &HashMap<String, LinguisticVariable>,
) -> Result<f64> {
    let joint = Formula::and(c.head.clone(), c.body.clone());
    let needed = restrict_values(&joint, values)?;
    WordDistributions::from_values(&needed, catalog)?.conditional(c)
}

fn restrict_values(f: &Formula, values: &HashMap<String, f64>) -> Result<HashMap<String, f64>> {
    let mut needed = HashMap::new();
    for atom in f.atoms() {
        let value = values
            .get(&atom.variable)
            .ok_or_else(|| Error::MissingValue(atom.variable.clone()))?;
        needed.insert(atom.variable.clone(), *value);
    }
    Ok(needed)
}
