use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nars_operant::lab::Task;
use nars_operant::shell::{batch_run, summary_csv, BatchError, BatchRequest, Session, SessionConfig};

#[derive(Parser)]
#[command(name = "nars-operant", version, about = "Sensorimotor reasoner and operant-conditioning lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one of the operant tasks over one or more seeds.
    Run(RunArgs),
    /// Read Narsese lines from stdin (or a file) and print the engine's output.
    Shell(ShellArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Task id: 1 simple discrimination, 2 changing contingencies,
    /// 3 conditional discrimination.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    task: u8,
    /// Single seed.
    #[arg(long, conflicts_with = "seeds")]
    seed: Option<u64>,
    /// Inclusive seed range, e.g. `0..9`.
    #[arg(long, value_parser = parse_seed_range)]
    seeds: Option<RangeInclusive<u64>>,
    /// Output directory for CSVs and transcripts.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Engine parameter override, `key=value`; repeatable. Parameters set by
    /// the task's configuration block take precedence.
    #[arg(long = "config", value_parser = parse_key_value)]
    config: Vec<(String, String)>,
}

#[derive(Args)]
struct ShellArgs {
    /// Read input from this file instead of stdin.
    script: Option<PathBuf>,
    /// Session parameter, `key=value`; repeatable.
    #[arg(long = "config", value_parser = parse_key_value)]
    config: Vec<(String, String)>,
}

fn parse_seed_range(text: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{text}`"))?;
    let lo: u64 = lo.parse().map_err(|_| format!("bad seed `{lo}`"))?;
    let hi: u64 = hi
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad seed `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty seed range `{text}`"));
    }
    Ok(lo..=hi)
}

fn parse_key_value(text: &str) -> Result<(String, String), String> {
    text.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected `key=value`, got `{text}`"))
}

fn session_config(pairs: &[(String, String)]) -> Result<SessionConfig, BatchError> {
    let mut config = SessionConfig::default();
    for (k, v) in pairs {
        config.set(k, v)?;
    }
    config.validate()?;
    Ok(config)
}

fn run(args: RunArgs) -> Result<(), BatchError> {
    let config = session_config(&args.config)?;
    let seeds: Vec<u64> = match (args.seed, args.seeds) {
        (Some(seed), _) => vec![seed],
        (None, Some(range)) => range.collect(),
        (None, None) => vec![0],
    };
    let request = BatchRequest {
        task: Task::try_from(args.task)?,
        seeds,
        out_dir: args.out,
        config: config.engine,
    };
    let metrics = batch_run(&request)?;
    print!("{}", summary_csv(&metrics));
    Ok(())
}

fn shell(args: ShellArgs) -> Result<(), BatchError> {
    let mut session = Session::new(session_config(&args.config)?)?;
    let input: Box<dyn BufRead> = match &args.script {
        Some(path) => Box::new(BufReader::new(File::open(path)?)),
        None => Box::new(io::stdin().lock()),
    };
    let mut stdout = io::stdout().lock();
    for line in input.lines() {
        for out in session.exec_line(&line?) {
            writeln!(stdout, "{out}")?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Shell(args) => shell(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nars-operant: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
