//! Subcommands of the `mauto` binary. Each returns the text to print and an exit code.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use crate::automaton::{language_agreement, Acceptance, RunBounds, RunMode, Verdict};
use crate::constructions::{extract_embedding, schreier_construct, verify_main_theorem};
use crate::format::{format_automaton, parse_automaton, parse_pda, parse_scenario, AutomatonFile, Scenario};
use crate::gallery;
use crate::report::{Report, Status};

#[derive(Debug, Parser)]
#[command(name = "mauto", version, about = "Blind register automata over monoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct BoundArgs {
    /// Longest word checked.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_len: Option<u64>,
    /// Largest register size explored in path searches and nondeterministic runs.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_register_size: Option<u64>,
    /// Largest coset table built by the Schreier construction.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_cosets: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an automaton, pda or scenario file.
    Validate { file: PathBuf },
    /// Run a word through an automaton and print the configuration trace.
    Run {
        file: PathBuf,
        /// Input word; empty or `e` for the empty word.
        #[arg(default_value = "")]
        word: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Compare an automaton's language with a scenario's word problem.
    Agree {
        file: PathBuf,
        scenario: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Build the Schreier coset automaton for a scenario.
    Schreier {
        scenario: PathBuf,
        /// Write the automaton here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Recover the subgroup and embedding from a deterministic automaton.
    Extract {
        file: PathBuf,
        scenario: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Construct, check and extract again for a scenario.
    Theorem {
        scenario: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Run a named demonstration.
    Gallery {
        #[arg(value_parser = gallery::DEMOS)]
        name: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

/// What a command prints and how it exits.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn report(r: &Report) -> Self {
        Output { stdout: r.to_string(), stderr: String::new(), code: r.outcome().exit_code() }
    }
}

/// Exit code for unreadable or invalid input.
pub const ERROR_EXIT: i32 = 3;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_automaton(path: &Path) -> anyhow::Result<AutomatonFile> {
    parse_automaton(&read(path)?).with_context(|| path.display().to_string())
}

fn load_scenario(path: &Path, bounds: &BoundArgs) -> anyhow::Result<Scenario> {
    let mut s = parse_scenario(&read(path)?).with_context(|| path.display().to_string())?;
    if let Some(n) = bounds.max_len {
        s.max_len = n as usize;
    }
    if let Some(n) = bounds.max_register_size {
        s.max_register_size = n as usize;
    }
    if let Some(n) = bounds.max_cosets {
        s.max_cosets = n as usize;
    }
    Ok(s)
}

fn run_bounds(bounds: &BoundArgs) -> RunBounds {
    let mut b = RunBounds::default();
    if let Some(n) = bounds.max_register_size {
        b.max_register_size = n as usize;
    }
    b
}

pub fn execute(cmd: &Command) -> anyhow::Result<Output> {
    match cmd {
        Command::Validate { file } => validate(file),
        Command::Run { file, word, bounds } => run(file, word, bounds),
        Command::Agree { file, scenario, bounds } => agree(file, scenario, bounds),
        Command::Schreier { scenario, out, bounds } => schreier(scenario, out.as_deref(), bounds),
        Command::Extract { file, scenario, bounds } => extract(file, scenario, bounds),
        Command::Theorem { scenario, bounds } => {
            let s = load_scenario(scenario, bounds)?;
            let rep = verify_main_theorem(&s.embedding_spec()?, &s.theorem_bounds())?;
            Ok(Output::report(&rep.to_report(s.group.alphabet())))
        }
        Command::Gallery { name, bounds } => {
            let default = match name.as_str() {
                "dyck-2" => 14,
                "anbn" => 12,
                n if n.starts_with("refuter") => 8,
                _ => 10,
            };
            let len = bounds.max_len.map_or(default, |n| n as usize);
            Ok(Output::report(&gallery::demo(name, len)?))
        }
    }
}

fn validate(file: &Path) -> anyhow::Result<Output> {
    let text = read(file)?;
    let header = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let summary = match header {
        "scenario" => {
            let s = parse_scenario(&text).with_context(|| file.display().to_string())?;
            let spec = s.embedding_spec().with_context(|| file.display().to_string())?;
            format!("OK, scenario, {} letters, subgroup {}", spec.group().alphabet().len(), s.subgroup)
        }
        "pda" => format!("OK, pda, {} states", parse_pda(&text).with_context(|| file.display().to_string())?.states),
        _ => {
            let f = parse_automaton(&text).with_context(|| file.display().to_string())?;
            let kind = if f.deterministic().is_some() { "deterministic" } else { "nondeterministic" };
            format!("OK, {kind}, {} states", f.automaton().state_count())
        }
    };
    Ok(Output { stdout: summary + "\n", ..Output::default() })
}

fn run(file: &Path, word: &str, bounds: &BoundArgs) -> anyhow::Result<Output> {
    let f = load_automaton(file)?;
    let a = f.automaton();
    let w = a.alphabet().parse_word(word)?;
    let m = a.monoid();
    let mut out = String::new();
    if let Some(d) = f.deterministic() {
        let outcome = d.run(&w)?;
        for (i, c) in outcome.trace.iter().enumerate() {
            out += &format!("{i:>4} q{} {}\n", c.state, m.format_element(&c.register));
        }
        let reg = m.format_element(&outcome.last().register);
        let (line, code) = match outcome.verdict {
            Verdict::Accepted => (format!("ACCEPT register={reg}"), 0),
            Verdict::Rejected(why) => (format!("REJECT {why} {reg}"), 1),
        };
        out += &line;
        out.push('\n');
        return Ok(Output { stdout: out, code, ..Output::default() });
    }
    let r = a.run_nondeterministic(&w, &run_bounds(bounds))?;
    for c in r.frontier() {
        out += &format!("     q{} {}\n", c.state, m.format_element(&c.register));
    }
    let verdict = r.acceptance();
    let code = match verdict {
        Acceptance::Accepted => 0,
        Acceptance::Rejected => 1,
        Acceptance::Unknown => 2,
    };
    out += &format!("{verdict} configurations={}{}\n", r.frontier().len(), if r.truncated { " truncated" } else { "" });
    Ok(Output { stdout: out, code, ..Output::default() })
}

fn agree(file: &Path, scenario: &Path, bounds: &BoundArgs) -> anyhow::Result<Output> {
    let f = load_automaton(file)?;
    let s = load_scenario(scenario, bounds)?;
    let h = &s.group;
    let a = f.automaton().with_alphabet(h.alphabet().alphabet())?;
    let mode = if f.deterministic().is_some() {
        RunMode::Deterministic
    } else {
        RunMode::Nondeterministic(run_bounds(bounds))
    };
    let rep = language_agreement(&a, |w| h.in_word_problem(w).expect("shared alphabet"), s.max_len, mode)?;
    let mut r = Report::new(format!("agreement up to length {}", s.max_len));
    r.check(
        rep.disagreements.is_empty(),
        "disagreements",
        format!("{} of {} words", rep.disagreements.len(), rep.words),
    );
    for d in rep.disagreements.iter().take(5) {
        r.info(
            "counterexample",
            format!("{} automaton={} word-problem={}", h.alphabet().format_word(&d.word), d.automaton, d.expected),
        );
    }
    if !rep.unknown.is_empty() {
        r.push(Status::Inconclusive, "unknown", format!("{} words hit the run bounds", rep.unknown.len()));
    }
    Ok(Output::report(&r))
}

fn schreier(scenario: &Path, out: Option<&Path>, bounds: &BoundArgs) -> anyhow::Result<Output> {
    let s = load_scenario(scenario, bounds)?;
    let a = schreier_construct(&s.embedding_spec()?, s.max_cosets)?;
    let text = format_automaton(a.automaton(), true);
    let mut r = Report::new("schreier construction");
    r.check(
        a.is_complete(),
        "construction",
        format!("{} states, {} edges", a.automaton().state_count(), a.automaton().edges().len()),
    );
    match out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            r.info("written", path.display().to_string());
            Ok(Output::report(&r))
        }
        // The automaton goes to stdout so it can be piped; the report goes to stderr.
        None => Ok(Output { stdout: text, stderr: r.to_string(), code: r.outcome().exit_code() }),
    }
}

fn extract(file: &Path, scenario: &Path, bounds: &BoundArgs) -> anyhow::Result<Output> {
    let f = load_automaton(file)?;
    let Some(d) = f.deterministic() else {
        bail!("{}: extraction needs a `dautomaton` file", file.display());
    };
    let s = load_scenario(scenario, bounds)?;
    let rep = extract_embedding(d, &s.group, &s.extraction_bounds())?;
    Ok(Output::report(&rep.to_report(s.group.alphabet())))
}
