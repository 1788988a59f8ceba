//! State and machine equivalence of linguistic finite automata.
//!
//! Two states are k-equivalent when their `λ*` degrees agree on every input
//! word of length at most k and every output word. [`k_equivalent`] decides
//! this by exhaustive enumeration of `(x, y)` pairs. [`equivalent_states`]
//! answers the same question up to a horizon by exploring the joint space of
//! capped reach vectors: the degree of every extension of `(x, y)` depends
//! only on `min(λ*(q, x, y), δ*(q, x, ·))`, so pairs reaching an already seen
//! configuration need not be expanded again.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lfa::{unit_row, Lfa};

/// Cap on `(x, y)` pairs or configuration steps examined by one check.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Input/output pair on which two states first disagree, with both degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// Input symbols, indexed in the first machine's alphabet.
    pub input: Vec<usize>,
    /// Output symbols, indexed in the first machine's alphabet.
    pub output: Vec<usize>,
    pub left: f64,
    pub right: f64,
}

impl Witness {
    pub fn render(&self, lfa: &Lfa) -> String {
        format!(
            "x={} y={} {:.6} vs {:.6}",
            lfa.render_input(&self.input),
            lfa.render_output(&self.output),
            self.left,
            self.right
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict {
    pub related: bool,
    /// Largest word length compared. For a negative verdict, the witness length.
    pub horizon: usize,
    pub witness: Option<Witness>,
    /// Depth at which the joint exploration stopped producing new
    /// configurations. When set, the positive verdict covers every length.
    pub stable_at: Option<usize>,
}

impl EquivalenceVerdict {
    fn related(horizon: usize, stable_at: Option<usize>) -> Self {
        Self {
            related: true,
            horizon,
            witness: None,
            stable_at,
        }
    }

    fn refuted(witness: Witness) -> Self {
        Self {
            related: false,
            horizon: witness.input.len(),
            witness: Some(witness),
            stable_at: None,
        }
    }
}

/// Index maps from the first machine's alphabets into the second's.
struct Alignment {
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

fn align(m1: &Lfa, m2: &Lfa) -> Result<Alignment> {
    let map = |kind: &str, a: &[String], b: &[String]| -> Result<Vec<usize>> {
        if a.len() != b.len() {
            return Err(Error::AlphabetMismatch(format!(
                "{kind} alphabets have sizes {} and {}",
                a.len(),
                b.len()
            )));
        }
        a.iter()
            .map(|s| {
                b.iter()
                    .position(|t| t == s)
                    .ok_or_else(|| Error::AlphabetMismatch(format!("{kind} symbol `{s}` missing from second machine")))
            })
            .collect()
    };
    Ok(Alignment {
        inputs: map("input", m1.inputs(), m2.inputs())?,
        outputs: map("output", m1.outputs(), m2.outputs())?,
    })
}

fn check_state(m: &Lfa, q: usize) -> Result<()> {
    if q < m.states().len() {
        Ok(())
    } else {
        Err(Error::UnknownState(format!("#{q}")))
    }
}

struct Search<'a> {
    m1: &'a Lfa,
    m2: &'a Lfa,
    align: Alignment,
    k: usize,
    budget: usize,
    examined: usize,
    x: Vec<usize>,
    y: Vec<usize>,
    best: Option<Witness>,
}

impl Search<'_> {
    fn limit(&self) -> usize {
        match &self.best {
            Some(w) => self.k.min(w.input.len() - 1),
            None => self.k,
        }
    }

    fn visit(&mut self, reach1: &[f64], reach2: &[f64]) -> Result<()> {
        let depth = self.x.len();
        for a in 0..self.m1.inputs().len() {
            for b in 0..self.m1.outputs().len() {
                if depth + 1 > self.limit() {
                    return Ok(());
                }
                self.examined += 1;
                if self.examined > self.budget {
                    return Err(Error::BudgetExceeded { budget: self.budget });
                }
                let (d1, next1) = self.m1.advance(reach1, a, b);
                let (d2, next2) = self.m2.advance(reach2, self.align.inputs[a], self.align.outputs[b]);
                self.x.push(a);
                self.y.push(b);
                if d1 != d2 {
                    self.best = Some(Witness {
                        input: self.x.clone(),
                        output: self.y.clone(),
                        left: d1,
                        right: d2,
                    });
                } else if d1 > 0.0 {
                    self.visit(&next1, &next2)?;
                }
                self.x.pop();
                self.y.pop();
            }
        }
        Ok(())
    }
}

/// `q1 ≡_k q2` by enumerating every input word of length ≤ k with every
/// output word of the same length. The witness, if any, is the shortest
/// disagreeing pair, earliest in symbol order.
pub fn k_equivalent(m1: &Lfa, q1: usize, m2: &Lfa, q2: usize, k: usize) -> Result<EquivalenceVerdict> {
    k_equivalent_with_budget(m1, q1, m2, q2, k, DEFAULT_BUDGET)
}

pub fn k_equivalent_with_budget(
    m1: &Lfa,
    q1: usize,
    m2: &Lfa,
    q2: usize,
    k: usize,
    budget: usize,
) -> Result<EquivalenceVerdict> {
    check_state(m1, q1)?;
    check_state(m2, q2)?;
    let mut search = Search {
        m1,
        m2,
        align: align(m1, m2)?,
        k,
        budget,
        examined: 0,
        x: Vec::new(),
        y: Vec::new(),
        best: None,
    };
    search.visit(&unit_row(m1.states().len(), q1), &unit_row(m2.states().len(), q2))?;
    Ok(match search.best {
        Some(w) => EquivalenceVerdict::refuted(w),
        None => EquivalenceVerdict::related(k, None),
    })
}

/// `|Q1| · |Q2| · |D|` with `D` the distinct degrees of both machines.
pub fn default_horizon(m1: &Lfa, m2: &Lfa) -> usize {
    let mut degrees = m1.degrees();
    degrees.extend(m2.degrees());
    degrees.sort_by(f64::total_cmp);
    degrees.dedup();
    m1.states().len() * m2.states().len() * degrees.len().max(1)
}

fn key(a: &[f64], b: &[f64]) -> Vec<u64> {
    a.iter().chain(b).map(|v| (v + 0.0).to_bits()).collect()
}

struct Node {
    reach1: Vec<f64>,
    reach2: Vec<f64>,
    parent: usize,
    label: (usize, usize),
}

/// `q1 ≡ q2` checked on all words up to `horizon` (default [`default_horizon`]).
pub fn equivalent_states(
    m1: &Lfa,
    q1: usize,
    m2: &Lfa,
    q2: usize,
    horizon: Option<usize>,
) -> Result<EquivalenceVerdict> {
    equivalent_states_with_budget(m1, q1, m2, q2, horizon, DEFAULT_BUDGET)
}

pub fn equivalent_states_with_budget(
    m1: &Lfa,
    q1: usize,
    m2: &Lfa,
    q2: usize,
    horizon: Option<usize>,
    budget: usize,
) -> Result<EquivalenceVerdict> {
    check_state(m1, q1)?;
    check_state(m2, q2)?;
    let align = align(m1, m2)?;
    let horizon = horizon.unwrap_or_else(|| default_horizon(m1, m2));

    let root = Node {
        reach1: unit_row(m1.states().len(), q1),
        reach2: unit_row(m2.states().len(), q2),
        parent: usize::MAX,
        label: (0, 0),
    };
    let mut seen = HashSet::new();
    seen.insert(key(&root.reach1, &root.reach2));
    let mut nodes = vec![root];
    let mut frontier = vec![0usize];
    let mut examined = 0usize;

    for depth in 1..=horizon {
        let mut next_frontier = Vec::new();
        for &id in &frontier {
            for a in 0..m1.inputs().len() {
                for b in 0..m1.outputs().len() {
                    examined += 1;
                    if examined > budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    let (d1, next1) = m1.advance(&nodes[id].reach1, a, b);
                    let (d2, next2) = m2.advance(&nodes[id].reach2, align.inputs[a], align.outputs[b]);
                    if d1 != d2 {
                        let (mut input, mut output) = (vec![a], vec![b]);
                        let mut cursor = id;
                        while cursor != 0 {
                            let (pa, pb) = nodes[cursor].label;
                            input.push(pa);
                            output.push(pb);
                            cursor = nodes[cursor].parent;
                        }
                        input.reverse();
                        output.reverse();
                        return Ok(EquivalenceVerdict::refuted(Witness {
                            input,
                            output,
                            left: d1,
                            right: d2,
                        }));
                    }
                    if d1 == 0.0 || !seen.insert(key(&next1, &next2)) {
                        continue;
                    }
                    nodes.push(Node {
                        reach1: next1,
                        reach2: next2,
                        parent: id,
                        label: (a, b),
                    });
                    next_frontier.push(nodes.len() - 1);
                }
            }
        }
        if next_frontier.is_empty() {
            return Ok(EquivalenceVerdict::related(horizon, Some(depth)));
        }
        frontier = next_frontier;
    }
    Ok(EquivalenceVerdict::related(horizon, None))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MachineVerdict {
    pub related: bool,
    pub horizon: usize,
    /// A state with no equivalent partner in the other machine.
    pub unmatched: Option<(Side, usize)>,
    /// Disagreement between the unmatched state and the first state of the
    /// other machine, degrees ordered (first machine, second machine).
    pub witness: Option<Witness>,
}

impl fmt::Display for MachineVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.related {
            write!(f, "equivalent (horizon {})", self.horizon)
        } else {
            write!(f, "not equivalent")
        }
    }
}

/// `M1 ≡ M2` (or `M1 ≡_k M2` when `k` is given): every state of each machine
/// has an equivalent state in the other.
pub fn machines_equivalent(m1: &Lfa, m2: &Lfa, horizon: Option<usize>, k: Option<usize>) -> Result<MachineVerdict> {
    align(m1, m2)?;
    let (n1, n2) = (m1.states().len(), m2.states().len());
    let horizon = k.or(horizon).unwrap_or_else(|| default_horizon(m1, m2));
    let mut table: Vec<Option<EquivalenceVerdict>> = vec![None; n1 * n2];
    let mut verdict = |p: usize, q: usize| -> Result<EquivalenceVerdict> {
        if let Some(v) = &table[p * n2 + q] {
            return Ok(v.clone());
        }
        let v = match k {
            Some(k) => k_equivalent(m1, p, m2, q, k)?,
            None => equivalent_states(m1, p, m2, q, Some(horizon))?,
        };
        table[p * n2 + q] = Some(v.clone());
        Ok(v)
    };

    for p in 0..n1 {
        let mut matched = false;
        for q in 0..n2 {
            if verdict(p, q)?.related {
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(MachineVerdict {
                related: false,
                horizon,
                unmatched: Some((Side::First, p)),
                witness: verdict(p, 0)?.witness,
            });
        }
    }
    for q in 0..n2 {
        let mut matched = false;
        for p in 0..n1 {
            if verdict(p, q)?.related {
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(MachineVerdict {
                related: false,
                horizon,
                unmatched: Some((Side::Second, q)),
                witness: verdict(0, q)?.witness,
            });
        }
    }
    Ok(MachineVerdict {
        related: true,
        horizon,
        unmatched: None,
        witness: None,
    })
}

/// `Q/≡_k` of one machine, each class ascending, classes ordered by least member.
pub fn partition_by_k_equivalence(m: &Lfa, k: usize) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'states: for q in 0..m.states().len() {
        for class in &mut classes {
            if k_equivalent(m, class[0], m, q, k)?.related {
                class.push(q);
                continue 'states;
            }
        }
        classes.push(vec![q]);
    }
    Ok(classes)
}
