use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lingua_fa::commands::{self, finish, TokenMode};
use lingua_fa::lfa::DEFAULT_OUTPUT_LENGTH_LIMIT;

#[derive(Parser)]
#[command(name = "lingua-fa", version, about = "Linguistic variables and linguistic finite automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a variable, quantifier or automaton definition file
    Validate {
        file: PathBuf,
        /// Treat the file as an ordered quantifier set
        #[arg(long)]
        quantifier: bool,
    },
    /// Linguistic description, mass assignment and word probabilities of a value
    Describe {
        vars: PathBuf,
        #[arg(allow_negative_numbers = true)]
        value: f64,
        #[arg(long)]
        var: Option<String>,
    },
    /// Mass assignment of a value's linguistic description
    Mass {
        vars: PathBuf,
        #[arg(allow_negative_numbers = true)]
        value: f64,
        #[arg(long)]
        var: Option<String>,
    },
    /// Least-prejudiced word probabilities of a value
    Prob {
        vars: PathBuf,
        #[arg(allow_negative_numbers = true)]
        value: f64,
        #[arg(long)]
        var: Option<String>,
        /// Print only this word
        #[arg(long)]
        word: Option<String>,
    },
    /// Describe a probability with a quantifier set
    Quantify {
        quantifiers: PathBuf,
        #[arg(allow_negative_numbers = true)]
        probability: f64,
    },
    /// Probability of a linguistic formula such as "((SIZE=small) | (SIZE=medium))"
    Formula {
        vars: PathBuf,
        formula: String,
        /// Variable value as VAR=x; repeat for several variables
        #[arg(long = "value")]
        values: Vec<String>,
        /// Also describe the probability with this quantifier set
        #[arg(long)]
        quantifiers: Option<PathBuf>,
    },
    /// Word extension δ* of an input word, optionally with the λ* output table
    Run {
        lfa: PathBuf,
        /// Space-separated input symbols; empty for ε
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        input: String,
        /// Start state for --outputs (default: initial state, else the first)
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        outputs: bool,
        /// Longest input accepted with --outputs
        #[arg(long, default_value_t = DEFAULT_OUTPUT_LENGTH_LIMIT)]
        max_len: usize,
    },
    /// Equivalence of two automata
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Check k-equivalence instead
        #[arg(long, conflicts_with = "horizon")]
        k: Option<usize>,
        /// Longest word length compared (default |Q1|·|Q2|·|D|)
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Tokenize a numeric series with a linguistic variable and run it through an automaton
    Lingrun {
        lfa: PathBuf,
        vars: PathBuf,
        series: PathBuf,
        #[arg(long)]
        var: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Argmax)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Argmax,
    Fuzzy,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file, quantifier } => commands::validate(file, *quantifier),
        Command::Describe { vars, value, var } => commands::describe(vars, var.as_deref(), *value),
        Command::Mass { vars, value, var } => commands::mass(vars, var.as_deref(), *value),
        Command::Prob { vars, value, var, word } => commands::prob(vars, var.as_deref(), *value, word.as_deref()),
        Command::Quantify {
            quantifiers,
            probability,
        } => commands::quantify(quantifiers, *probability),
        Command::Formula {
            vars,
            formula,
            values,
            quantifiers,
        } => commands::formula(vars, formula, values, quantifiers.as_deref()),
        Command::Run {
            lfa,
            input,
            from,
            outputs,
            max_len,
        } => commands::run(lfa, from.as_deref(), input, *outputs, *max_len),
        Command::Equiv { first, second, k, horizon } => commands::equiv(first, second, *k, *horizon),
        Command::Lingrun {
            lfa,
            vars,
            series,
            var,
            mode,
        } => {
            let mode = match mode {
                Mode::Argmax => TokenMode::Argmax,
                Mode::Fuzzy => TokenMode::Fuzzy,
            };
            commands::lingrun(lfa, vars, series, var.as_deref(), mode)
        }
    };
    let outcome = finish(result);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
