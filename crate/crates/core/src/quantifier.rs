//! Quantifier variables: ordered term sets over `[0, 1]` whose words come in
//! antonym pairs `μ(Q_i)(x) = μ(Q_{n-i+1})(1 - x)`.

use crate::error::{Error, Result};
use crate::variable::{LinguisticDescription, LinguisticVariable};

/// Uniform grid size used by [`QuantifierVariable::validate`].
pub const GRID_POINTS: usize = 1001;
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum QuantifierIssue {
    Symmetry {
        word: String,
        antonym: String,
        x: f64,
        degree: f64,
        mirrored: f64,
    },
    Uncovered {
        x: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantifierVariable {
    base: LinguisticVariable,
}

impl QuantifierVariable {
    /// Wraps `base`; only the universe is checked here, see [`validate`](Self::validate).
    pub fn new(base: LinguisticVariable) -> Result<Self> {
        if base.universe() != (0.0, 1.0) {
            let (lo, hi) = base.universe();
            return Err(Error::InvalidQuantifier(format!(
                "universe of `{}` is [{lo}, {hi}], expected [0, 1]",
                base.name()
            )));
        }
        Ok(Self { base })
    }

    pub fn base(&self) -> &LinguisticVariable {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.terms().len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.terms().is_empty()
    }

    fn antonym_index(&self, i: usize) -> usize {
        self.len() - 1 - i
    }

    pub fn antonym(&self, word: &str) -> Result<&str> {
        let i = self.base.position(word).ok_or_else(|| Error::UnknownWord {
            variable: self.base.name().to_string(),
            word: word.to_string(),
        })?;
        Ok(&self.base.terms()[self.antonym_index(i)].word)
    }

    /// Grid of 1001 uniform points plus every knot and its mirror image.
    fn grid(&self) -> Vec<f64> {
        let mut grid: Vec<f64> = (0..GRID_POINTS)
            .map(|i| i as f64 / (GRID_POINTS - 1) as f64)
            .collect();
        for term in self.base.terms() {
            for &(x, _) in term.meaning.knots() {
                grid.push(x);
                grid.push(1.0 - x);
            }
        }
        grid.retain(|x| (0.0..=1.0).contains(x));
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        grid
    }

    /// Every grid point breaking antonym symmetry or left uncovered. Empty means valid.
    pub fn validate(&self) -> Vec<QuantifierIssue> {
        let terms = self.base.terms();
        let mut issues = Vec::new();
        for x in self.grid() {
            for (i, term) in terms.iter().enumerate() {
                let partner = &terms[self.antonym_index(i)];
                let degree = term.meaning.eval(x);
                let mirrored = partner.meaning.eval(1.0 - x);
                if (degree - mirrored).abs() > SYMMETRY_TOLERANCE {
                    issues.push(QuantifierIssue::Symmetry {
                        word: term.word.clone(),
                        antonym: partner.word.clone(),
                        x,
                        degree,
                        mirrored,
                    });
                }
            }
            if terms.iter().all(|t| t.meaning.eval(x) <= 0.0) {
                issues.push(QuantifierIssue::Uncovered { x });
            }
        }
        issues
    }

    /// Linguistic description of a probability value.
    pub fn quantify(&self, p: f64) -> Result<LinguisticDescription> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        self.base.describe(p)
    }
}
