//! Linguistic variables `(L, T(L), Ω, M)`, linguistic descriptions and the
//! voting model that grounds membership values.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::membership::PiecewiseLinear;

/// A word of the term set together with its meaning.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub word: String,
    pub meaning: PiecewiseLinear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    name: String,
    universe: (f64, f64),
    terms: Vec<Term>,
}

impl LinguisticVariable {
    pub fn new(name: impl Into<String>, universe: (f64, f64), terms: Vec<Term>) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidVariable {
            variable: name.clone(),
            reason,
        };
        let (lo, hi) = universe;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(invalid(format!("universe [{lo}, {hi}] is not a proper interval")));
        }
        if terms.is_empty() {
            return Err(invalid("term set is empty".into()));
        }
        let mut seen = HashSet::new();
        for term in &terms {
            if term.word.trim().is_empty() {
                return Err(invalid("empty word in term set".into()));
            }
            if !seen.insert(term.word.as_str()) {
                return Err(invalid(format!("word `{}` appears twice", term.word)));
            }
            if term.meaning.first_x() < lo || term.meaning.last_x() > hi {
                return Err(invalid(format!(
                    "meaning of `{}` has knots outside the universe [{lo}, {hi}]",
                    term.word
                )));
            }
        }
        Ok(Self {
            name,
            universe,
            terms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> (f64, f64) {
        self.universe
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn words(&self) -> Vec<String> {
        self.terms.iter().map(|t| t.word.clone()).collect()
    }

    pub fn position(&self, word: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.word == word)
    }

    pub fn meaning(&self, word: &str) -> Result<&PiecewiseLinear> {
        self.terms
            .iter()
            .find(|t| t.word == word)
            .map(|t| &t.meaning)
            .ok_or_else(|| Error::UnknownWord {
                variable: self.name.clone(),
                word: word.to_string(),
            })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.universe.0 <= x && x <= self.universe.1
    }

    /// The linguistic description `des_L(x) = Σ_w w / μ_M(w)(x)`.
    pub fn describe(&self, x: f64) -> Result<LinguisticDescription> {
        if !self.contains(x) {
            return Err(Error::OutOfUniverse {
                variable: self.name.clone(),
                value: x,
                lo: self.universe.0,
                hi: self.universe.1,
            });
        }
        Ok(LinguisticDescription {
            variable: self.name.clone(),
            words: self.words(),
            grades: self.terms.iter().map(|t| t.meaning.eval(x)).collect(),
        })
    }
}

/// A fuzzy subset of a term set. Words not listed carry grade 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticDescription {
    variable: String,
    words: Vec<String>,
    grades: Vec<f64>,
}

impl LinguisticDescription {
    /// Builds a description over `words` (in term-set order) from explicit grades.
    pub fn from_grades<'a, I>(variable: impl Into<String>, words: Vec<String>, grades: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let variable = variable.into();
        let mut values = vec![0.0; words.len()];
        for (word, grade) in grades {
            let i = words.iter().position(|w| w == word).ok_or_else(|| Error::UnknownWord {
                variable: variable.clone(),
                word: word.to_string(),
            })?;
            if !(0.0..=1.0).contains(&grade) {
                return Err(Error::InvalidGrade {
                    word: word.to_string(),
                    grade,
                });
            }
            values[i] = grade;
        }
        Ok(Self {
            variable,
            words,
            grades: values,
        })
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn grades(&self) -> &[f64] {
        &self.grades
    }

    pub fn grade(&self, word: &str) -> Result<f64> {
        self.words
            .iter()
            .position(|w| w == word)
            .map(|i| self.grades[i])
            .ok_or_else(|| Error::UnknownWord {
                variable: self.variable.clone(),
                word: word.to_string(),
            })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.words.iter().map(String::as_str).zip(self.grades.iter().copied())
    }

    pub fn max_grade(&self) -> f64 {
        self.grades.iter().copied().fold(0.0, f64::max)
    }

    /// Index of the highest grade; ties go to the earlier word.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &g) in self.grades.iter().enumerate() {
            if g > self.grades[best] {
                best = i;
            }
        }
        best
    }

    /// `small/1 + medium/0.5` style rendering with a fixed number of decimals.
    pub fn render(&self, decimals: usize) -> String {
        let parts: Vec<String> = self
            .iter()
            .filter(|(_, g)| *g > 0.0)
            .map(|(w, g)| format!("{w}/{g:.decimals$}"))
            .collect();
        if parts.is_empty() {
            "∅".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for LinguisticDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .filter(|(_, g)| *g > 0.0)
            .map(|(w, g)| format!("{w}/{g}"))
            .collect();
        if parts.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// The label sets chosen by each voter for one value of the universe.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VotingRecord {
    pub ballots: Vec<Vec<String>>,
}

impl VotingRecord {
    pub fn new(ballots: Vec<Vec<String>>) -> Self {
        Self { ballots }
    }

    /// Grade of each word = share of ballots that include it.
    pub fn semantics(&self, variable: &str, words: &[String]) -> Result<LinguisticDescription> {
        if self.ballots.is_empty() {
            return Err(Error::NoBallots);
        }
        let mut counts = vec![0usize; words.len()];
        for ballot in &self.ballots {
            let mut marked = vec![false; words.len()];
            for word in ballot {
                let i = words.iter().position(|w| w == word).ok_or_else(|| Error::UnknownWord {
                    variable: variable.to_string(),
                    word: word.clone(),
                })?;
                marked[i] = true;
            }
            for (count, hit) in counts.iter_mut().zip(marked) {
                *count += usize::from(hit);
            }
        }
        let total = self.ballots.len() as f64;
        Ok(LinguisticDescription {
            variable: variable.to_string(),
            words: words.to_vec(),
            grades: counts.into_iter().map(|c| c as f64 / total).collect(),
        })
    }
}
