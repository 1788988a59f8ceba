//! Linguistic variables, mass assignments, linguistic formulas and linguistic
//! finite automata with max-min semantics.

pub mod commands;
pub mod equivalence;
pub mod error;
pub mod files;
pub mod formula;
pub mod lfa;
pub mod mass;
pub mod matrix;
pub mod membership;
pub mod quantifier;
pub mod variable;

pub use equivalence::{
    equivalent_states, k_equivalent, machines_equivalent, partition_by_k_equivalence, EquivalenceVerdict,
    MachineVerdict, Witness,
};
pub use error::{Error, Result};
pub use formula::{eval_conditional, eval_formula, parse_formula, ConditionalFormula, Formula, Parsed};
pub use lfa::Lfa;
pub use mass::{conditional_density, mass_assignment, word_probability, ConditionalDensity, MassAssignment, Prior};
pub use matrix::{maxmin_compose, DegreeMatrix};
pub use membership::PiecewiseLinear;
pub use quantifier::QuantifierVariable;
pub use variable::{LinguisticDescription, LinguisticVariable, Term, VotingRecord};
