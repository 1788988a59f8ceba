//! Mass assignments over nested focal sets, the least-prejudiced word
//! distribution and conditional densities on the universe.

use std::fmt;

use crate::error::{Error, Result};
use crate::membership::PiecewiseLinear;
use crate::variable::{LinguisticDescription, LinguisticVariable};

/// Largest grade shortfall still treated as a normalized description.
pub const NORMALIZED_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FocalElement {
    /// Indices into the term set, ascending.
    pub members: Vec<usize>,
    pub mass: f64,
}

/// Focal sets ordered from the smallest (highest grade level) to the largest.
/// Every set contains all sets before it.
#[derive(Debug, Clone, PartialEq)]
pub struct MassAssignment {
    words: Vec<String>,
    focal: Vec<FocalElement>,
    residual: f64,
}

impl MassAssignment {
    pub fn from_description(des: &LinguisticDescription) -> Self {
        let grades = des.grades();
        let mut levels: Vec<f64> = grades.iter().copied().filter(|&g| g > 0.0).collect();
        levels.sort_by(|a, b| b.total_cmp(a));
        levels.dedup();

        let focal = levels
            .iter()
            .enumerate()
            .map(|(i, &level)| {
                let next = levels.get(i + 1).copied().unwrap_or(0.0);
                FocalElement {
                    members: (0..grades.len()).filter(|&w| grades[w] >= level).collect(),
                    mass: level - next,
                }
            })
            .collect();
        Self {
            words: des.words().to_vec(),
            focal,
            residual: 1.0 - levels.first().copied().unwrap_or(0.0),
        }
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn focal_elements(&self) -> &[FocalElement] {
        &self.focal
    }

    /// Mass left on the empty set; zero for normalized descriptions.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn is_normalized(&self) -> bool {
        self.residual <= NORMALIZED_TOLERANCE
    }

    pub fn member_words(&self, element: &FocalElement) -> Vec<&str> {
        element.members.iter().map(|&i| self.words[i].as_str()).collect()
    }

    /// Mass of the focal set holding exactly `words`, or 0.
    pub fn mass_of(&self, words: &[&str]) -> f64 {
        let mut wanted: Vec<usize> = words
            .iter()
            .filter_map(|w| self.words.iter().position(|v| v == w))
            .collect();
        if wanted.len() != words.len() {
            return 0.0;
        }
        wanted.sort_unstable();
        wanted.dedup();
        self.focal
            .iter()
            .find(|e| e.members == wanted)
            .map_or(0.0, |e| e.mass)
    }

    /// Least-prejudiced distribution: each focal mass is split evenly among its words.
    pub fn least_prejudiced(&self) -> Result<Vec<f64>> {
        if !self.is_normalized() {
            return Err(Error::SubnormalDescription {
                max_grade: 1.0 - self.residual,
            });
        }
        let mut probs = vec![0.0; self.words.len()];
        for element in &self.focal {
            let share = element.mass / element.members.len() as f64;
            for &w in &element.members {
                probs[w] += share;
            }
        }
        Ok(probs)
    }

    pub fn render(&self, decimals: usize) -> Vec<String> {
        let mut lines: Vec<String> = self
            .focal
            .iter()
            .map(|e| format!("{{{}}}: {:.decimals$}", self.member_words(e).join(", "), e.mass))
            .collect();
        if self.residual > 0.0 {
            lines.push(format!("{{}}: {:.decimals$}", self.residual));
        }
        lines
    }
}

impl fmt::Display for MassAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .focal
            .iter()
            .map(|e| format!("{{{}}}:{}", self.member_words(e).join(", "), e.mass))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

pub fn mass_assignment(des: &LinguisticDescription) -> MassAssignment {
    MassAssignment::from_description(des)
}

/// `Pr(w | des)` under the least-prejudiced distribution.
pub fn word_probability(word: &str, des: &LinguisticDescription) -> Result<f64> {
    let index = des.words().iter().position(|w| w == word).ok_or_else(|| Error::UnknownWord {
        variable: des.variable().to_string(),
        word: word.to_string(),
    })?;
    Ok(mass_assignment(des).least_prejudiced()?[index])
}

/// Weight shape used as prior on the universe. Only its shape matters since
/// every focal density is normalized.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Prior {
    #[default]
    Uniform,
    Shape(PiecewiseLinear),
}

impl Prior {
    pub fn weight(&self, x: f64) -> f64 {
        match self {
            Prior::Uniform => 1.0,
            Prior::Shape(f) => f.eval(x),
        }
    }

    fn knots(&self) -> &[(f64, f64)] {
        match self {
            Prior::Uniform => &[],
            Prior::Shape(f) => f.knots(),
        }
    }
}

#[derive(Debug, Clone)]
struct Component {
    mass: f64,
    meanings: Vec<PiecewiseLinear>,
    normalizer: f64,
}

/// `p(x | des) = Σ_S mass(S) · p(x | S)` with
/// `p(x | S) ∝ prior(x) · min_{w ∈ S} μ_M(w)(x)` on the universe.
#[derive(Debug, Clone)]
pub struct ConditionalDensity {
    universe: (f64, f64),
    prior: Prior,
    components: Vec<Component>,
}

impl ConditionalDensity {
    pub fn eval(&self, x: f64) -> f64 {
        if x < self.universe.0 || x > self.universe.1 {
            return 0.0;
        }
        self.components
            .iter()
            .map(|c| c.mass * self.prior.weight(x) * min_meaning(&c.meanings, x) / c.normalizer)
            .sum()
    }

    /// Density of the `i`-th focal component alone (unweighted by its mass).
    pub fn component(&self, i: usize, x: f64) -> f64 {
        let c = &self.components[i];
        if x < self.universe.0 || x > self.universe.1 {
            return 0.0;
        }
        self.prior.weight(x) * min_meaning(&c.meanings, x) / c.normalizer
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn universe(&self) -> (f64, f64) {
        self.universe
    }
}

pub fn conditional_density(
    variable: &LinguisticVariable,
    des: &LinguisticDescription,
    prior: Prior,
) -> Result<ConditionalDensity> {
    if des.variable() != variable.name() || des.words() != variable.words().as_slice() {
        return Err(Error::InvalidVariable {
            variable: variable.name().to_string(),
            reason: format!("description belongs to `{}`", des.variable()),
        });
    }
    let masses = mass_assignment(des);
    if !masses.is_normalized() {
        return Err(Error::SubnormalDescription {
            max_grade: des.max_grade(),
        });
    }
    let universe = variable.universe();
    let mut components = Vec::new();
    for element in masses.focal_elements().iter().filter(|e| e.mass > 0.0) {
        let meanings: Vec<PiecewiseLinear> = element
            .members
            .iter()
            .map(|&i| variable.terms()[i].meaning.clone())
            .collect();
        let normalizer = integrate_weighted_min(&meanings, &prior, universe);
        if normalizer <= 0.0 {
            return Err(Error::ZeroNormalizer {
                focal: masses.member_words(element).join(", "),
            });
        }
        components.push(Component {
            mass: element.mass,
            meanings,
            normalizer,
        });
    }
    Ok(ConditionalDensity {
        universe,
        prior,
        components,
    })
}

fn min_meaning(meanings: &[PiecewiseLinear], x: f64) -> f64 {
    meanings.iter().map(|m| m.eval(x)).fold(1.0, f64::min)
}

/// ∫ prior(x) · min_i f_i(x) dx over `[lo, hi]`.
///
/// Splitting at every knot and every pairwise crossing leaves pieces on
/// which the integrand is a product of two linear functions, so Simpson's
/// rule is exact on each piece.
fn integrate_weighted_min(meanings: &[PiecewiseLinear], prior: &Prior, (lo, hi): (f64, f64)) -> f64 {
    let mut cuts: Vec<f64> = vec![lo, hi];
    cuts.extend(
        meanings
            .iter()
            .flat_map(|m| m.knots().iter().map(|k| k.0))
            .chain(prior.knots().iter().map(|k| k.0))
            .filter(|&x| lo < x && x < hi),
    );
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut crossings = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        for (i, f) in meanings.iter().enumerate() {
            for g in &meanings[i + 1..] {
                let da = f.eval(a) - g.eval(a);
                let db = f.eval(b) - g.eval(b);
                if da * db < 0.0 {
                    crossings.push(a + (b - a) * da / (da - db));
                }
            }
        }
    }
    cuts.extend(crossings);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let integrand = |x: f64| prior.weight(x) * min_meaning(meanings, x);
    cuts.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            (b - a) / 6.0 * (integrand(a) + 4.0 * integrand(0.5 * (a + b)) + integrand(b))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variable::Term;

    fn words(ws: &[&str]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    fn salary() -> LinguisticVariable {
        let t = |w: &str, k: &[(f64, f64)]| Term {
            word: w.into(),
            meaning: PiecewiseLinear::new(k.to_vec()).unwrap(),
        };
        LinguisticVariable::new(
            "SALARY",
            (15.0, 50.0),
            vec![
                t("low", &[(15.0, 1.0), (20.0, 1.0), (25.0, 0.0)]),
                t("moderate", &[(17.5, 0.0), (20.0, 1.0), (30.0, 1.0), (32.5, 0.0)]),
                t("good", &[(25.0, 0.0), (30.0, 1.0), (35.0, 1.0), (42.5, 0.0)]),
                t("very good", &[(32.5, 0.0), (35.0, 1.0), (50.0, 1.0)]),
            ],
        )
        .unwrap()
    }

    fn consultant() -> LinguisticDescription {
        LinguisticDescription::from_grades(
            "SALARY",
            words(&["low", "moderate", "good", "very good"]),
            [("low", 0.33), ("moderate", 0.95), ("good", 1.0), ("very good", 0.44)],
        )
        .unwrap()
    }

    #[test]
    fn table_one_masses() {
        let des =
            LinguisticDescription::from_grades("SIZE", words(&["small", "medium", "large"]), [("small", 1.0), ("medium", 0.5)])
                .unwrap();
        let ma = mass_assignment(&des);
        assert_eq!(ma.mass_of(&["small"]), 0.5);
        assert_eq!(ma.mass_of(&["small", "medium"]), 0.5);
        assert_eq!(ma.residual(), 0.0);
        assert_eq!(ma.focal_elements().len(), 2);
    }

    #[test]
    fn consultant_masses() {
        let ma = mass_assignment(&consultant());
        let expect = [
            (vec!["good"], 0.05),
            (vec!["moderate", "good"], 0.51),
            (vec!["moderate", "good", "very good"], 0.11),
            (vec!["low", "moderate", "good", "very good"], 0.33),
        ];
        assert_eq!(ma.focal_elements().len(), 4);
        for (element, (set, mass)) in ma.focal_elements().iter().zip(expect) {
            assert_eq!(ma.member_words(element), set);
            assert!((element.mass - mass).abs() < 1e-9);
        }
    }

    #[test]
    fn single_word_and_ties() {
        let des = LinguisticDescription::from_grades("V", words(&["a", "b", "c"]), [("b", 1.0)]).unwrap();
        assert_eq!(mass_assignment(&des).mass_of(&["b"]), 1.0);
        let tied =
            LinguisticDescription::from_grades("V", words(&["a", "b", "c"]), [("a", 0.4), ("b", 1.0), ("c", 0.4)]).unwrap();
        let ma = mass_assignment(&tied);
        assert_eq!(ma.focal_elements().len(), 2);
        assert!((ma.mass_of(&["a", "b", "c"]) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn subnormal_has_residual_and_refuses_probabilities() {
        let des = LinguisticDescription::from_grades("V", words(&["a", "b"]), [("a", 0.6), ("b", 0.2)]).unwrap();
        let ma = mass_assignment(&des);
        assert!((ma.residual() - 0.4).abs() < 1e-12);
        assert!(matches!(word_probability("a", &des), Err(Error::SubnormalDescription { .. })));
    }

    #[test]
    fn consultant_probability_of_good() {
        let p = word_probability("good", &consultant()).unwrap();
        let expected = 0.05 + 0.51 / 2.0 + 0.11 / 3.0 + 0.33 / 4.0;
        assert!((p - expected).abs() < 1e-9);
    }

    #[test]
    fn crisp_rectangle_density() {
        // Endpoints clamp, so the indicator of [20, 30] needs near-vertical edges.
        let rect = Term {
            word: "w".into(),
            meaning: PiecewiseLinear::new(vec![(20.0 - 1e-9, 0.0), (20.0, 1.0), (30.0, 1.0), (30.0 + 1e-9, 0.0)])
                .unwrap(),
        };
        let v = LinguisticVariable::new("V", (0.0, 50.0), vec![rect]).unwrap();
        let des = v.describe(25.0).unwrap();
        let density = conditional_density(&v, &des, Prior::Uniform).unwrap();
        assert!((density.eval(25.0) - 0.1).abs() < 1e-9);
        assert_eq!(density.eval(10.0), 0.0);
        assert_eq!(density.eval(40.0), 0.0);
    }

    #[test]
    fn zero_normalizer_is_an_error() {
        let t = |w: &str, k: &[(f64, f64)]| Term {
            word: w.into(),
            meaning: PiecewiseLinear::new(k.to_vec()).unwrap(),
        };
        let v = LinguisticVariable::new(
            "V",
            (0.0, 10.0),
            vec![t("a", &[(0.0, 1.0), (2.0, 0.0)]), t("b", &[(5.0, 0.0), (10.0, 1.0)])],
        )
        .unwrap();
        let des = LinguisticDescription::from_grades("V", v.words(), [("a", 1.0), ("b", 1.0)]).unwrap();
        assert!(matches!(
            conditional_density(&v, &des, Prior::Uniform),
            Err(Error::ZeroNormalizer { .. })
        ));
    }

    #[test]
    fn moderate_good_component_at_thirty() {
        let v = salary();
        let des = LinguisticDescription::from_grades("SALARY", v.words(), [("moderate", 1.0), ("good", 1.0)]).unwrap();
        let density = conditional_density(&v, &des, Prior::Uniform).unwrap();
        assert!((density.eval(30.0) - 1.0 / 3.75).abs() < 1e-12);
    }
}
