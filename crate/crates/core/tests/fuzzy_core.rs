mod common;

use common::{data, least_prejudiced_oracle, trapezoid};
use lingua_fa::files::load_variables;
use lingua_fa::{
    conditional_density, mass_assignment, word_probability, LinguisticDescription, LinguisticVariable,
    PiecewiseLinear, Prior, Term, VotingRecord,
};
use proptest::prelude::*;

fn salary() -> LinguisticVariable {
    load_variables(data("salary.toml")).unwrap().remove(0)
}

fn scale() -> LinguisticVariable {
    load_variables(data("size_scale.toml")).unwrap().remove(0)
}

#[test]
fn density_at_thirty_matches_trapezoid_oracle() {
    let var = salary();
    let des = var.describe(30.0).unwrap();
    let density = conditional_density(&var, &des, Prior::Uniform).unwrap();
    let moderate = var.meaning("moderate").unwrap().clone();
    let good = var.meaning("good").unwrap().clone();
    let area = trapezoid(|x| moderate.eval(x).min(good.eval(x)), 15.0, 50.0, 350_000);
    assert!((area - 3.75).abs() < 1e-6);
    assert!((density.eval(30.0) - 1.0 / area).abs() < 1e-6);
    assert!((density.eval(30.0) - 0.266_666_666_666_666_7).abs() < 1e-12);
    assert_eq!(density.eval(14.0), 0.0);
}

#[test]
fn mixture_density_integrates_to_one() {
    let var = salary();
    for x in [18.0, 22.5, 27.0, 31.0, 34.0, 40.0] {
        let des = var.describe(x).unwrap();
        let density = conditional_density(&var, &des, Prior::Uniform).unwrap();
        let total = trapezoid(|t| density.eval(t), 15.0, 50.0, 350_000);
        assert!((total - 1.0).abs() < 1e-6, "x={x} total={total}");
        for i in 0..density.component_count() {
            let part = trapezoid(|t| density.component(i, t), 15.0, 50.0, 350_000);
            assert!((part - 1.0).abs() < 1e-6, "x={x} component {i} total={part}");
        }
    }
}

#[test]
fn shaped_prior_matches_trapezoid_oracle() {
    let var = salary();
    let prior = PiecewiseLinear::new(vec![(15.0, 0.2), (30.0, 1.0), (50.0, 0.1)]).unwrap();
    let des = var.describe(27.0).unwrap();
    let density = conditional_density(&var, &des, Prior::Shape(prior.clone())).unwrap();
    let masses = mass_assignment(&des);
    let expected_at = |x: f64| {
        masses
            .focal_elements()
            .iter()
            .filter(|e| e.mass > 0.0)
            .map(|e| {
                let min = |t: f64| {
                    e.members
                        .iter()
                        .map(|&i| var.terms()[i].meaning.eval(t))
                        .fold(1.0, f64::min)
                        * prior.eval(t)
                };
                e.mass * min(x) / trapezoid(min, 15.0, 50.0, 350_000)
            })
            .sum::<f64>()
    };
    for x in [20.0, 26.0, 28.5, 31.0, 33.0] {
        let want = expected_at(x);
        assert!((density.eval(x) - want).abs() < 1e-6, "x={x}: {} vs {want}", density.eval(x));
    }
}

#[test]
fn medium_probability_follows_piecewise_linear_curve() {
    let var = scale();
    for step in 0..=16 {
        let x = 3.0 + 0.25 * step as f64;
        let want = if x <= 5.0 { (x - 3.0) / 2.0 } else { (7.0 - x) / 2.0 };
        let got = word_probability("medium", &var.describe(x).unwrap()).unwrap();
        assert!((got - want).abs() < 1e-9, "x={x}: {got} vs {want}");
    }
}

#[test]
fn voting_then_masses_reproduce_table() {
    let words: Vec<String> = ["small", "medium", "large"].iter().map(|s| s.to_string()).collect();
    let ballots = (0..10)
        .map(|i| if i % 2 == 0 { vec!["small".to_string(), "medium".to_string()] } else { vec!["small".to_string()] })
        .collect();
    let des = VotingRecord::new(ballots).semantics("SIZE", &words).unwrap();
    assert_eq!(des.grades(), &[1.0, 0.5, 0.0]);
    let masses = mass_assignment(&des);
    assert_eq!(masses.mass_of(&["small"]), 0.5);
    assert_eq!(masses.mass_of(&["small", "medium"]), 0.5);
    assert_eq!(masses.residual(), 0.0);
    assert_eq!(masses.least_prejudiced().unwrap(), vec![0.75, 0.25, 0.0]);
}

#[test]
fn consultant_masses_and_probabilities() {
    let words: Vec<String> = ["low", "moderate", "good", "very good"].iter().map(|s| s.to_string()).collect();
    let grades = [0.33, 0.95, 1.0, 0.44];
    let des = LinguisticDescription::from_grades(
        "SALARY",
        words.clone(),
        words.iter().map(String::as_str).zip(grades),
    )
    .unwrap();
    let masses = mass_assignment(&des);
    let expected = [
        (vec!["good"], 0.05),
        (vec!["moderate", "good"], 0.51),
        (vec!["moderate", "good", "very good"], 0.11),
        (vec!["low", "moderate", "good", "very good"], 0.33),
    ];
    for (set, mass) in expected {
        assert!((masses.mass_of(&set) - mass).abs() < 1e-9, "{set:?}");
    }
    let oracle = least_prejudiced_oracle(&grades);
    for (p, q) in masses.least_prejudiced().unwrap().iter().zip(oracle) {
        assert!((p - q).abs() < 1e-12);
    }
}

fn arb_knots() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.01f64..5.0, 0.0f64..=1.0), 2..7).prop_map(|steps| {
        let mut x = -1.0;
        steps
            .into_iter()
            .map(|(dx, y)| {
                x += dx;
                (x, y)
            })
            .collect()
    })
}

fn arb_grades() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![Just(0.0), Just(1.0), 0.0f64..=1.0, (0u8..=10).prop_map(|k| k as f64 / 10.0)], 1..7)
        .prop_map(|mut g| {
            let top = g.iter().cloned().fold(0.0, f64::max);
            if top < 1.0 {
                let i = g.iter().position(|&v| v == top).unwrap();
                g[i] = 1.0;
            }
            g
        })
}

fn description(grades: &[f64]) -> LinguisticDescription {
    let words: Vec<String> = (0..grades.len()).map(|i| format!("w{i}")).collect();
    let pairs: Vec<(&str, f64)> = words.iter().map(String::as_str).zip(grades.iter().copied()).collect();
    LinguisticDescription::from_grades("V", words.clone(), pairs).unwrap()
}

proptest! {
    #[test]
    fn membership_is_exact_at_knots_and_clamped_outside(knots in arb_knots()) {
        let f = PiecewiseLinear::new(knots.clone()).unwrap();
        for &(x, y) in &knots {
            prop_assert_eq!(f.eval(x), y);
        }
        prop_assert_eq!(f.eval(knots[0].0 - 10.0), knots[0].1);
        prop_assert_eq!(f.eval(knots[knots.len() - 1].0 + 10.0), knots[knots.len() - 1].1);
        for w in knots.windows(2) {
            let mid = f.eval((w[0].0 + w[1].0) / 2.0);
            prop_assert!((mid - (w[0].1 + w[1].1) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn masses_are_nested_and_sum_to_one(grades in arb_grades()) {
        let masses = mass_assignment(&description(&grades));
        let elements = masses.focal_elements();
        let total: f64 = elements.iter().map(|e| e.mass).sum::<f64>() + masses.residual();
        prop_assert!((total - 1.0).abs() < 1e-12);
        for e in elements {
            prop_assert!(e.mass >= 0.0);
        }
        for pair in elements.windows(2) {
            prop_assert!(pair[0].members.iter().all(|m| pair[1].members.contains(m)));
            prop_assert!(pair[0].members.len() < pair[1].members.len());
        }
    }

    #[test]
    fn least_prejudiced_matches_oracle_and_sums_to_one(grades in arb_grades()) {
        let probs = mass_assignment(&description(&grades)).least_prejudiced().unwrap();
        prop_assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for (p, q) in probs.iter().zip(least_prejudiced_oracle(&grades)) {
            prop_assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn probabilities_sum_to_one_across_universe(x in 15.0f64..=50.0) {
        let var = salary();
        let des = var.describe(x).unwrap();
        let total: f64 = var.words().iter().map(|w| word_probability(w, &des).unwrap()).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn argmax_ignores_monotone_rescaling(grades in arb_grades()) {
        let des = description(&grades);
        let squashed: Vec<f64> = grades.iter().map(|g| 0.2 + 0.5 * g.sqrt()).collect();
        prop_assert_eq!(description(&squashed).argmax(), des.argmax());
        let first_top = grades.iter().position(|&g| g == des.max_grade()).unwrap();
        prop_assert_eq!(des.argmax(), first_top);
    }

    #[test]
    fn describe_grades_are_memberships(x in 0.0f64..=10.0) {
        let var = scale();
        let des = var.describe(x).unwrap();
        for Term { word, meaning } in var.terms() {
            prop_assert_eq!(des.grade(word).unwrap(), meaning.eval(x));
        }
    }
}
