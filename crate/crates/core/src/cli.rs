//! The `ratexp` command line.
//!
//! [`parse_args`] turns argv into a [`RunConfig`]; [`run`] executes it and
//! returns the exit status with everything that would be printed, so the
//! whole front end can be exercised without a process.
//!
//! Exit status: 0 on success (or a true answer), 1 on a false answer or a
//! mismatch, 2 on usage, parse and validity errors.

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::automaton::WeightedAutomaton;
use crate::derivation::{derive, differential, reconcile};
use crate::derived::{derived_term_automaton, derived_terms, standard_derived_term_automaton};
use crate::error::{Error, Result};
use crate::expr::{parse, parse_inferring_alphabet, Expr};
use crate::monoid::{Alphabet, Monoid};
use crate::semiring::{AnalyticRational, Boolean, Integer, MinPlus, Rational, Semiring};
use crate::series::{denote, denote_in, Basis, TruncatedSeries};
use crate::standard::position_automaton;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// Domain of the star in the rational semiring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RationalStar {
    /// Only `0* = 1`.
    Strict,
    /// `k* = 1/(1-k)` for every `k != 1`.
    Analytic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Standard,
    Derived { keep_initial: bool },
    Terms,
    Eval,
    Series,
    Derive { letter: char },
    Differential,
    Reconcile,
    Witness,
    Equiv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub semiring: String,
    pub rational_star: RationalStar,
    pub alphabet: Option<String>,
    pub alphabet2: Option<String>,
    pub command: Command,
    /// Two for `equiv`, one otherwise.
    pub expressions: Vec<String>,
    /// Only for `eval`.
    pub word: Option<String>,
    pub max_len: usize,
    pub format: Format,
    /// Also check automata against the series computed from the expression.
    pub oracle: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutcome {
    fn ok(stdout: String) -> Self {
        RunOutcome {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        RunOutcome {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ratexp", version, about = "Weighted rational expressions to automata")]
struct Cli {
    /// boolean, int, rational or minplus.
    #[arg(long, global = true, default_value = "int")]
    semiring: String,
    #[arg(long, global = true, value_enum, default_value = "strict")]
    rational_star: RationalStar,
    /// Letters of the (first) free monoid, comma separated. Inferred from
    /// the expression when absent.
    #[arg(long, global = true)]
    alphabet: Option<String>,
    /// Letters of the second component of a product monoid.
    #[arg(long, global = true)]
    alphabet2: Option<String>,
    #[arg(long, global = true, default_value_t = 6)]
    max_len: usize,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, global = true)]
    oracle: bool,
    /// Read the expression(s) from a file, one per line, instead of argv.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Print the position automaton.
    Standard { expr: Option<String> },
    /// Print the derived-term automaton.
    Derived {
        expr: Option<String>,
        /// Keep the initial state apart (the standard derived-term automaton).
        #[arg(long)]
        keep_initial: bool,
    },
    /// List the derived terms, one per line.
    Terms { expr: Option<String> },
    /// Print the coefficient of a word: `eval EXPR WORD`.
    #[command(arg_required_else_help = true)]
    Eval {
        #[arg(num_args = 1..=2)]
        args: Vec<String>,
    },
    /// Print the series up to `--max-len`.
    Series { expr: Option<String> },
    /// Print the derivation with respect to a letter.
    Derive {
        expr: Option<String>,
        #[arg(long)]
        letter: char,
    },
    /// Print the differential, one `weight<TAB>label<TAB>term` line per monomial.
    Differential { expr: Option<String> },
    /// Check derivation against the differential for every letter.
    Reconcile { expr: Option<String> },
    /// Print the transfer matrix from the position automaton to the
    /// derived-term automaton, and whether it is a conjugacy.
    Witness { expr: Option<String> },
    /// Compare two expressions on every element up to `--max-len`.
    Equiv {
        #[arg(num_args = 0..=2)]
        exprs: Vec<String>,
    },
}

/// Parses argv (program name first). `--help` and `--version` come back as
/// an outcome with status 0.
pub fn parse_args<I, T>(args: I) -> std::result::Result<RunConfig, RunOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| {
        let status = if e.use_stderr() { 2 } else { 0 };
        let text = e.render().to_string();
        if status == 0 {
            RunOutcome::ok(text)
        } else {
            RunOutcome {
                status,
                stdout: String::new(),
                stderr: text,
            }
        }
    })?;
    let mut from_file = match &cli.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| RunOutcome::usage(format!("cannot read {}: {e}", path.display())))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect(),
        None => Vec::new(),
    };
    let mut word = None;
    let (command, mut positional) = match cli.command {
        CliCommand::Standard { expr } => (Command::Standard, expr.into_iter().collect()),
        CliCommand::Derived { expr, keep_initial } => {
            (Command::Derived { keep_initial }, expr.into_iter().collect())
        }
        CliCommand::Terms { expr } => (Command::Terms, expr.into_iter().collect()),
        CliCommand::Eval { mut args } => {
            word = args.pop();
            (Command::Eval, args)
        }
        CliCommand::Series { expr } => (Command::Series, expr.into_iter().collect()),
        CliCommand::Derive { expr, letter } => (Command::Derive { letter }, expr.into_iter().collect()),
        CliCommand::Differential { expr } => (Command::Differential, expr.into_iter().collect()),
        CliCommand::Reconcile { expr } => (Command::Reconcile, expr.into_iter().collect()),
        CliCommand::Witness { expr } => (Command::Witness, expr.into_iter().collect()),
        CliCommand::Equiv { exprs } => (Command::Equiv, exprs),
    };
    from_file.append(&mut positional);
    let wanted = if command == Command::Equiv { 2 } else { 1 };
    if from_file.len() != wanted {
        return Err(RunOutcome::usage(format!(
            "expected {wanted} expression(s) from argv or --file, got {}",
            from_file.len()
        )));
    }
    Ok(RunConfig {
        semiring: cli.semiring,
        rational_star: cli.rational_star,
        alphabet: cli.alphabet,
        alphabet2: cli.alphabet2,
        command,
        expressions: from_file,
        word,
        max_len: cli.max_len,
        format: cli.format,
        oracle: cli.oracle,
    })
}

/// Runs one command.
pub fn run(config: &RunConfig) -> RunOutcome {
    let result = match (config.semiring.as_str(), config.rational_star) {
        ("boolean", _) => run_in::<Boolean>(config),
        ("int", _) => run_in::<Integer>(config),
        ("rational", RationalStar::Strict) => run_in::<Rational>(config),
        ("rational", RationalStar::Analytic) => run_in::<AnalyticRational>(config),
        ("minplus", _) => run_in::<MinPlus>(config),
        (other, _) => {
            return RunOutcome::usage(format!(
                "unknown semiring {other}; expected boolean, int, rational or minplus"
            ))
        }
    };
    result.unwrap_or_else(|e| RunOutcome::usage(e.to_string()))
}

fn monoid_and_expressions<S: Semiring>(config: &RunConfig) -> Result<(Monoid, Vec<Expr<S>>)> {
    let monoid = match (&config.alphabet, &config.alphabet2) {
        (Some(a), Some(b)) => Monoid::Product(Alphabet::parse(a)?, Alphabet::parse(b)?),
        (Some(a), None) => Monoid::Free(Alphabet::parse(a)?),
        (None, Some(_)) => {
            return Err(Error::Unsupported("--alphabet2 needs --alphabet".into()));
        }
        (None, None) => infer_monoid::<S>(config)?,
    };
    let exprs = config
        .expressions
        .iter()
        .map(|t| parse(t, &monoid))
        .collect::<Result<Vec<_>>>()?;
    for e in &exprs {
        e.validate()?;
    }
    Ok((monoid, exprs))
}

/// The free monoid over every letter of the expressions and of the word.
fn infer_monoid<S: Semiring>(config: &RunConfig) -> Result<Monoid> {
    let mut letters = Vec::new();
    for text in &config.expressions {
        let (_, m) = parse_inferring_alphabet::<S>(text)?;
        if let Monoid::Free(a) = m {
            letters.extend_from_slice(a.letters());
        }
    }
    if let Some(w) = &config.word {
        letters.extend(w.chars().filter(|c| crate::monoid::is_letter(*c)));
    }
    letters.sort_unstable();
    letters.dedup();
    Ok(Monoid::Free(Alphabet::new(letters)?))
}

fn render<S: Semiring>(a: &WeightedAutomaton<S>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&a.to_json()).expect("serialisable");
            s.push('\n');
            s
        }
        Format::Dot => a.to_dot(),
        Format::Text => a.to_text(),
    }
}

/// With `--oracle`, compares the automaton with the series of `e`.
fn oracle_check<S: Semiring>(
    config: &RunConfig,
    e: &Expr<S>,
    monoid: &Monoid,
    a: &WeightedAutomaton<S>,
    mut out: RunOutcome,
) -> Result<RunOutcome> {
    if !config.oracle {
        return Ok(out);
    }
    let basis = Basis::new(monoid, config.max_len);
    let expected = denote_in(e, &basis)?;
    match expected.first_difference(&a.behaviour_in(&basis)) {
        None => {
            writeln!(out.stderr, "oracle: agrees up to length {}", config.max_len).unwrap();
        }
        Some(m) => {
            writeln!(
                out.stderr,
                "oracle: mismatch at {m}: expression gives {}, automaton gives {}",
                expected.coefficient(&m).cloned().unwrap_or_else(S::zero),
                a.coefficient(&m)
            )
            .unwrap();
            out.status = 1;
        }
    }
    Ok(out)
}

fn letters(monoid: &Monoid) -> Result<Vec<char>> {
    match monoid {
        Monoid::Free(a) => Ok(a.letters().to_vec()),
        Monoid::Product(..) => Err(Error::Unsupported(
            "derivation is only defined over a free monoid".into(),
        )),
    }
}

fn run_in<S: Semiring>(config: &RunConfig) -> Result<RunOutcome> {
    let (monoid, exprs) = monoid_and_expressions::<S>(config)?;
    let e = &exprs[0];
    match &config.command {
        Command::Standard => {
            let s = position_automaton(e, &monoid)?.into_automaton();
            oracle_check(config, e, &monoid, &s, RunOutcome::ok(render(&s, config.format)))
        }
        Command::Derived { keep_initial } => {
            let d = if *keep_initial {
                standard_derived_term_automaton(e, &monoid)?
            } else {
                derived_term_automaton(e, &monoid)?
            };
            let a = d.automaton();
            oracle_check(config, e, &monoid, a, RunOutcome::ok(render(a, config.format)))
        }
        Command::Terms => {
            let mut out = String::new();
            for t in derived_terms(e) {
                writeln!(out, "{t}").unwrap();
            }
            Ok(RunOutcome::ok(out))
        }
        Command::Eval => {
            let word = config.word.as_deref().unwrap_or("");
            let m = monoid.parse_element(word)?;
            let d = derived_term_automaton(e, &monoid)?;
            let k = d.automaton().coefficient(&m);
            let mut out = RunOutcome::ok(format!("{k}\n"));
            if config.oracle {
                let expected = denote(e, &monoid, m.len())?;
                let expected = expected.coefficient(&m).cloned().unwrap_or_else(S::zero);
                if expected == k {
                    out.stderr.push_str("oracle: agrees\n");
                } else {
                    writeln!(out.stderr, "oracle: mismatch, expression gives {expected}").unwrap();
                    out.status = 1;
                }
            }
            Ok(out)
        }
        Command::Series => Ok(RunOutcome::ok(denote(e, &monoid, config.max_len)?.to_string())),
        Command::Derive { letter } => {
            letters(&monoid)?;
            Ok(RunOutcome::ok(derive(e, *letter)?.to_string()))
        }
        Command::Differential => {
            let mut out = String::new();
            for (h, p) in differential(e)? {
                for (m, k) in p.terms() {
                    writeln!(out, "{k}\t{m}\t{h}").unwrap();
                }
            }
            Ok(RunOutcome::ok(out))
        }
        Command::Reconcile => {
            let mut out = RunOutcome::ok(String::new());
            for a in letters(&monoid)? {
                let ok = reconcile(e, a)?;
                writeln!(out.stdout, "{a}\t{}", if ok { "ok" } else { "mismatch" }).unwrap();
                if !ok {
                    out.status = 1;
                }
            }
            Ok(out)
        }
        Command::Witness => witness(config, e, &monoid),
        Command::Equiv => {
            let basis = Basis::new(&monoid, config.max_len);
            let s1 = denote_in(e, &basis)?;
            let s2 = denote_in(&exprs[1], &basis)?;
            Ok(equiv_outcome(&s1, &s2, config.max_len))
        }
    }
}

fn equiv_outcome<S: Semiring>(s1: &TruncatedSeries<S>, s2: &TruncatedSeries<S>, n: usize) -> RunOutcome {
    match s1.first_difference(s2) {
        None => RunOutcome::ok(format!("equivalent up to length {n}\n")),
        Some(m) => RunOutcome {
            status: 1,
            stdout: format!(
                "differ at {m}: {} and {}\n",
                s1.coefficient(&m).cloned().unwrap_or_else(S::zero),
                s2.coefficient(&m).cloned().unwrap_or_else(S::zero)
            ),
            stderr: String::new(),
        },
    }
}

fn witness<S: Semiring>(config: &RunConfig, e: &Expr<S>, monoid: &Monoid) -> Result<RunOutcome> {
    let s = position_automaton(e, monoid)?.into_automaton();
    let d = derived_term_automaton(e, monoid)?;
    let x = d.transfer();
    let conjugate = s.is_conjugate(d.automaton(), x)?;
    let names = |a: &WeightedAutomaton<S>| a.labels().iter().map(ToString::to_string).collect::<Vec<_>>();
    let stdout = match config.format {
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..x.rows())
                .map(|i| x.row(i).iter().map(ToString::to_string).collect())
                .collect();
            let v = serde_json::json!({
                "from": names(&s),
                "to": names(d.automaton()),
                "transfer": rows,
                "conjugate": conjugate,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serialisable"))
        }
        Format::Dot | Format::Text => {
            let mut out = String::new();
            writeln!(out, "from: {}", names(&s).join(" | ")).unwrap();
            writeln!(out, "to: {}", names(d.automaton()).join(" | ")).unwrap();
            write!(out, "{x}").unwrap();
            writeln!(out, "conjugate: {conjugate}").unwrap();
            out
        }
    };
    Ok(RunOutcome {
        status: if conjugate { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}
