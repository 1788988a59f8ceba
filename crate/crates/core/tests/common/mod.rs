//! Test-only generators and brute-force oracles. Nothing here calls the
//! library's δ*/λ*/probability code paths.

#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use lingua_fa::formula::Formula;
use lingua_fa::{DegreeMatrix, Lfa, LinguisticVariable, PiecewiseLinear, Term};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn grid_degree(rng: &mut StdRng) -> f64 {
    rng.random_range(1..=10) as f64 / 10.0
}

/// Sparse row with at least one positive entry.
fn positive_row(rng: &mut StdRng, len: usize) -> Vec<f64> {
    let mut row: Vec<f64> = (0..len)
        .map(|_| if rng.random_bool(0.6) { grid_degree(rng) } else { 0.0 })
        .collect();
    if row.iter().all(|&d| d == 0.0) {
        let i = rng.random_range(0..len);
        row[i] = grid_degree(rng);
    }
    row
}

/// Random machine satisfying both well-formedness conditions, degrees on the 0.1 grid.
pub fn random_machine(rng: &mut StdRng, max_n: usize, max_m: usize, max_l: usize) -> Lfa {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(1..=max_m);
    let l = rng.random_range(1..=max_l);
    random_machine_sized(rng, n, m, l)
}

pub fn random_machine_sized(rng: &mut StdRng, n: usize, m: usize, l: usize) -> Lfa {
    let mut delta = Vec::new();
    let mut lambda = Vec::new();
    for _ in 0..m {
        let mut d = Vec::new();
        let mut g = Vec::new();
        for _ in 0..n {
            if rng.random_bool(0.15) {
                d.push(vec![0.0; n]);
                g.push(vec![0.0; l]);
            } else {
                d.push(positive_row(rng, n));
                g.push(positive_row(rng, l));
            }
        }
        delta.push(DegreeMatrix::from_rows(d).unwrap());
        lambda.push(DegreeMatrix::from_rows(g).unwrap());
    }
    let lfa = Lfa::new(names("q", n), names("a", m), names("y", l), delta, lambda).unwrap();
    assert!(lfa.validate().is_empty());
    lfa
}

/// Same machine with states listed in `order` (new position i holds old state order[i]).
pub fn permute_states(lfa: &Lfa, order: &[usize]) -> Lfa {
    let n = lfa.states().len();
    let l = lfa.outputs().len();
    let mut delta = Vec::new();
    let mut lambda = Vec::new();
    for s in 0..lfa.inputs().len() {
        let d: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| lfa.delta(s).get(order[i], order[j])).collect())
            .collect();
        let g: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..l).map(|b| lfa.lambda(s).get(order[i], b)).collect())
            .collect();
        delta.push(DegreeMatrix::from_rows(d).unwrap());
        lambda.push(DegreeMatrix::from_rows(g).unwrap());
    }
    let states = order.iter().map(|&i| lfa.states()[i].clone()).collect();
    Lfa::new(states, lfa.inputs().to_vec(), lfa.outputs().to_vec(), delta, lambda).unwrap()
}

/// All words over `0..alphabet` of exactly `len` symbols.
pub fn words(alphabet: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn words_up_to(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    (0..=max_len).flat_map(|len| words(alphabet, len)).collect()
}

/// δ*(q_i, x, q_j) as the max over every state sequence of the min step degree.
pub fn delta_star_paths(lfa: &Lfa, from: usize, x: &[usize], to: usize) -> f64 {
    let n = lfa.states().len();
    if x.is_empty() {
        return if from == to { 1.0 } else { 0.0 };
    }
    let mut best: f64 = 0.0;
    for middle in words(n, x.len() - 1) {
        let mut path = vec![from];
        path.extend(middle);
        path.push(to);
        let degree = x
            .iter()
            .enumerate()
            .map(|(t, &s)| lfa.delta(s).get(path[t], path[t + 1]))
            .fold(1.0, f64::min);
        best = best.max(degree);
    }
    best
}

/// λ* by its defining recursion on the last symbol pair, using the path oracle for δ*.
pub fn lambda_star_definition(lfa: &Lfa, q: usize, x: &[usize], y: &[usize]) -> f64 {
    match (x.split_last(), y.split_last()) {
        (None, None) => 1.0,
        (None, Some(_)) | (Some(_), None) => 0.0,
        (Some((&a, xs)), Some((&b, ys))) => {
            let prefix = lambda_star_definition(lfa, q, xs, ys);
            (0..lfa.states().len())
                .map(|r| prefix.min(delta_star_paths(lfa, q, xs, r)).min(lfa.lambda(a).get(r, b)))
                .fold(0.0, f64::max)
        }
    }
}

/// Least-prejudiced distribution computed directly from grades.
pub fn least_prejudiced_oracle(grades: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..grades.len()).filter(|&i| grades[i] > 0.0).collect();
    order.sort_by(|&a, &b| grades[b].total_cmp(&grades[a]));
    let mut probs = vec![0.0; grades.len()];
    // Each drop between consecutive grade levels is shared by the words at or above the level.
    let mut levels: Vec<f64> = order.iter().map(|&i| grades[i]).collect();
    levels.dedup();
    for (k, &level) in levels.iter().enumerate() {
        let next = levels.get(k + 1).copied().unwrap_or(0.0);
        let members: Vec<usize> = (0..grades.len()).filter(|&i| grades[i] >= level).collect();
        for &i in &members {
            probs[i] += (level - next) / members.len() as f64;
        }
    }
    probs
}

/// Probability of `f` by summing over every joint word choice.
pub fn formula_by_enumeration(f: &Formula, dists: &[(String, Vec<(String, f64)>)]) -> f64 {
    let sizes: Vec<usize> = dists.iter().map(|(_, d)| d.len()).collect();
    let mut total = 0.0;
    let mut choice = vec![0usize; dists.len()];
    loop {
        let weight: f64 = choice.iter().enumerate().map(|(v, &w)| dists[v].1[w].1).product();
        let chosen: HashMap<&str, &str> = choice
            .iter()
            .enumerate()
            .map(|(v, &w)| (dists[v].0.as_str(), dists[v].1[w].0.as_str()))
            .collect();
        if truth(f, &chosen) {
            total += weight;
        }
        let mut v = 0;
        loop {
            if v == choice.len() {
                return total;
            }
            choice[v] += 1;
            if choice[v] < sizes[v] {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

fn truth(f: &Formula, chosen: &HashMap<&str, &str>) -> bool {
    match f {
        Formula::Atom(a) => chosen.get(a.variable.as_str()) == Some(&a.word.as_str()),
        Formula::Not(g) => !truth(g, chosen),
        Formula::And(a, b) => truth(a, chosen) && truth(b, chosen),
        Formula::Or(a, b) => truth(a, chosen) || truth(b, chosen),
    }
}

/// Random formula of depth at most `depth` over the given variables and words.
pub fn random_formula(rng: &mut StdRng, vars: &[(String, Vec<String>)], depth: usize) -> Formula {
    if depth == 0 || rng.random_bool(0.25) {
        let (name, words) = &vars[rng.random_range(0..vars.len())];
        return Formula::atom(name.clone(), words[rng.random_range(0..words.len())].clone());
    }
    match rng.random_range(0..3) {
        0 => Formula::not(random_formula(rng, vars, depth - 1)),
        1 => Formula::and(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)),
        _ => Formula::or(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)),
    }
}

/// Variable on [0, 10] with integer knots whose word `forced` has grade 1 at the integer `at`.
pub fn random_variable(rng: &mut StdRng, name: &str, words: usize, forced: usize, at: u32) -> LinguisticVariable {
    let terms = (0..words)
        .map(|i| {
            let knots = if i == forced {
                let mut k = vec![(at as f64, 1.0)];
                if at > 0 {
                    k.insert(0, (at as f64 - 1.0, 0.0));
                }
                if at < 10 {
                    k.push((at as f64 + 1.0, 0.0));
                }
                if k.len() == 1 {
                    k.push((at as f64 - 1.0, 1.0));
                    k.sort_by(|a, b| a.0.total_cmp(&b.0));
                }
                k
            } else {
                let mut xs: Vec<u32> = (0..=10).filter(|_| rng.random_bool(0.3)).collect();
                while xs.len() < 2 {
                    xs = (0..=10).filter(|_| rng.random_bool(0.3)).collect();
                }
                xs.into_iter()
                    .map(|x| (x as f64, rng.random_range(0..=10) as f64 / 10.0))
                    .collect()
            };
            Term {
                word: format!("{name}w{i}"),
                meaning: PiecewiseLinear::new(knots).unwrap(),
            }
        })
        .collect();
    LinguisticVariable::new(name, (0.0, 10.0), terms).unwrap()
}

/// Two variables `A` and `B` with 1 to 4 words each, valued where some word has grade 1,
/// and their least-prejudiced distributions computed from raw grades.
pub struct Case {
    pub catalog: HashMap<String, LinguisticVariable>,
    pub values: HashMap<String, f64>,
    pub dists: Vec<(String, Vec<(String, f64)>)>,
    pub vocab: Vec<(String, Vec<String>)>,
}

pub fn random_case(rng: &mut StdRng) -> Case {
    let mut case = Case {
        catalog: HashMap::new(),
        values: HashMap::new(),
        dists: Vec::new(),
        vocab: Vec::new(),
    };
    for name in ["A", "B"] {
        let words = rng.random_range(1..=4);
        let at = rng.random_range(0..=10);
        let forced = rng.random_range(0..words);
        let var = random_variable(rng, name, words, forced, at);
        let x = at as f64;
        let grades: Vec<f64> = var.terms().iter().map(|t| t.meaning.eval(x)).collect();
        let probs = least_prejudiced_oracle(&grades);
        case.dists.push((name.into(), var.words().into_iter().zip(probs).collect()));
        case.vocab.push((name.into(), var.words()));
        case.values.insert(name.into(), x);
        case.catalog.insert(name.into(), var);
    }
    case
}

/// Trapezoid rule on `steps` equal panels.
pub fn trapezoid(f: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> f64 {
    let h = (hi - lo) / steps as f64;
    let inner: f64 = (1..steps).map(|i| f(lo + i as f64 * h)).sum();
    h * (0.5 * (f(lo) + f(hi)) + inner)
}
