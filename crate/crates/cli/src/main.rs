use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fgring::corpus;
use fgring::runner::{self, render_machine, render_text, Report, RunOptions};
use fgring::scenario::{parse_scenario, GroupDecl, Scenario};
use fgring_core::magnus::TruncatedSeries;
use fgring_core::parse::WordParser;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Output {
    Text,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "fgring", version, about = "Group-ring ideal membership workbench for free groups")]
struct Cli {
    /// Scenario file supplying the group and subgroups for ad-hoc commands.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Truncation degree (default 6 for membership searches).
    #[arg(short, long, global = true)]
    degree: Option<usize>,
    /// Radius of generator balls used by searches.
    #[arg(short = 'L', long, global = true)]
    radius: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Rank of the free group when no scenario is given; generators are x1..xN.
    #[arg(long, global = true, default_value_t = 3)]
    rank: usize,
    /// Include per-task wall-clock times in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Magnus expansion of a word, truncated at the given degree.
    Expand { word: String },
    /// Decide whether w - 1 lies in an ideal expression such as "R F R".
    Member { word: String, ideal: String },
    /// Compare A meet B with a right-hand side ideal.
    Identity { a: String, b: String, rhs: String },
    /// Evaluate a quadratic functor, e.g. `functor lambda2 Z/2 + Z`.
    Functor {
        kind: String,
        #[arg(required = true, num_args = 1..)]
        group: Vec<String>,
    },
    /// Integral homology of a finitely generated abelian group.
    Homology {
        #[arg(required = true, num_args = 1..)]
        group: Vec<String>,
    },
    /// Cocycle checks for a finite permutation quotient, e.g.
    /// `cocycle "finite_perm degree 3 { x1 -> (1 2), x2 -> (1 2 3) }"`.
    Cocycle { quotient: String },
    /// Run a bundled suite, or the tasks of the --scenario file.
    Suite { name: Option<String> },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn base_scenario(cli: &Cli) -> Result<(Scenario, String), String> {
    match &cli.scenario {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {}", p.display(), e))?;
            let s = parse_scenario(&text).map_err(|e| format!("{}: {}", p.display(), e))?;
            Ok((s, p.display().to_string()))
        }
        None => {
            let names = (1..=cli.rank).map(|i| format!("x{}", i)).collect();
            let group = GroupDecl { name: "F".into(), rank: cli.rank, names };
            Ok((Scenario { group: Some(group), ..Scenario::default() }, "adhoc".into()))
        }
    }
}

fn task_line(cmd: &Command) -> Option<String> {
    Some(match cmd {
        Command::Member { word, ideal } => format!("task member {} in {}", word, ideal),
        Command::Identity { a, b, rhs } => format!("task identity {} meet {} equals {}", a, b, rhs),
        Command::Functor { kind, group } => format!("task functor {} {}", kind, group.join(" ")),
        Command::Homology { group } => format!("task homology {}", group.join(" ")),
        Command::Cocycle { quotient } => format!("task cocycle {}", quotient),
        Command::Expand { .. } | Command::Suite { .. } => return None,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (base, name) = match base_scenario(&cli) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    let opts = RunOptions { jobs: cli.jobs.max(1), seed: cli.seed, degree: cli.degree, radius: cli.radius };

    if let Command::Expand { word } = &cli.command {
        let names = base.group.as_ref().map_or(Vec::new(), |g| g.names.clone());
        let w = match WordParser::new(&names).word(word) {
            Ok(w) => w,
            Err(e) => return fail(e),
        };
        let d = cli.degree.unwrap_or(4);
        let s = TruncatedSeries::expand(&w, names.len(), d);
        println!("{}", s);
        match s.sub(&TruncatedSeries::one(names.len(), d)).min_degree() {
            Some(k) => println!("min_degree: {}", k),
            None => println!("min_degree: > {}", d),
        }
        return ExitCode::SUCCESS;
    }

    let mut line = task_line(&cli.command);
    let default_degree = match cli.command {
        Command::Identity { .. } => Some(4),
        Command::Homology { .. } => Some(2),
        _ => None,
    };
    let degree_suffix = default_degree.map(|d| cli.degree.unwrap_or(d));
    if let (Some(l), Some(d)) = (&mut line, degree_suffix) {
        l.push_str(&format!(" degree {}", d));
    }
    let jobs: Vec<(Scenario, String)> = match (line, &cli.command) {
        (Some(l), _) => match base.with_task(&l) {
            Ok(s) => vec![(s, name)],
            Err(e) => return fail(e),
        },
        (None, Command::Suite { name: None }) if cli.scenario.is_some() => vec![(base, name)],
        (None, Command::Suite { name }) => match corpus::expand(name.as_deref().unwrap_or("full")) {
            Ok(v) => v.into_iter().map(|(n, s)| (s, n.to_string())).collect(),
            Err(e) => return fail(e),
        },
        (None, _) => unreachable!("expand is handled above"),
    };
    let mut reports = Vec::new();
    for (scenario, name) in &jobs {
        match runner::run(scenario, name, opts) {
            Ok(r) => reports.push(r),
            Err(e) => return fail(e),
        }
    }
    match cli.output {
        Output::Text => print!("{}", render_text(&reports, cli.timings)),
        Output::Machine => print!("{}", render_machine(&reports, cli.timings)),
    }
    if reports.iter().any(Report::failed) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
