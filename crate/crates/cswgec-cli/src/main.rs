//! `cswgec`: build, measure, corrupt, and score code-switched GEC datasets
//! from the command line. Subcommands stream line-delimited text or JSONL
//! records so they compose under ordinary shell pipes.

mod cmd;
mod config;
mod http;
mod io;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use config::FileConfig;

/// Exit 1: the invocation itself is wrong. Exit 2: the inputs are. Exit 3:
/// an external service failed or was out of reach.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Service(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Service(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Service(m) => f.write_str(m),
        }
    }
}

/// Shorthand for wrapping module errors that signal bad input data.
pub fn data_err<E: fmt::Display>(e: E) -> CliError {
    CliError::Data(e.to_string())
}

#[derive(Parser)]
#[command(name = "cswgec", version, about = "Code-switched GEC dataset toolkit")]
struct Cli {
    /// TOML settings file; values set there override the matching flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tokenize sentences and tag each token's language.
    Tag(cmd::text::TagArgs),
    /// Report code-switching metrics over a corpus.
    Metrics(cmd::text::MetricsArgs),
    /// Generate code-switched sentences by prompting a chat LLM.
    GenLlm(cmd::generate::GenLlmArgs),
    /// Generate code-switched sentences by translating one parse subtree.
    GenTranslate(cmd::generate::GenTranslateArgs),
    /// Generate code-switched sentences by splicing aligned constituents.
    GenParallel(cmd::generate::GenParallelArgs),
    /// Plant grammatical errors into correct sentences.
    Corrupt(cmd::edits::CorruptArgs),
    /// Convert corruption records or parallel lines to M2 blocks.
    ExtractEdits(cmd::edits::ExtractEditsArgs),
    /// Score hypothesis edits against reference M2.
    Score(cmd::edits::ScoreArgs),
    /// Turn tag probability matrices into corrected sentences.
    Decode(cmd::edits::DecodeArgs),
    /// Tune decoder confidence and threshold on a dev set.
    GridSearch(cmd::edits::GridSearchArgs),
    /// Build a training stage from a manifest and source corpora.
    Assemble(cmd::data::AssembleArgs),
    /// Drop records whose pairs appear in other corpora.
    Dedup(cmd::data::DedupArgs),
    /// Split records into train and validation sets.
    Split(cmd::data::SplitArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Tag(args) => cmd::text::tag(args, &config),
        Command::Metrics(args) => cmd::text::metrics(args, &config),
        Command::GenLlm(args) => cmd::generate::gen_llm(args, &config),
        Command::GenTranslate(args) => cmd::generate::gen_translate(args, &config),
        Command::GenParallel(args) => cmd::generate::gen_parallel(args, &config),
        Command::Corrupt(args) => cmd::edits::corrupt(args, &config),
        Command::ExtractEdits(args) => cmd::edits::extract_edits(args, &config),
        Command::Score(args) => cmd::edits::score(args, &config),
        Command::Decode(args) => cmd::edits::decode(args, &config),
        Command::GridSearch(args) => cmd::edits::grid_search(args, &config),
        Command::Assemble(args) => cmd::data::assemble(args, &config),
        Command::Dedup(args) => cmd::data::dedup(args, &config),
        Command::Split(args) => cmd::data::split(args, &config),
    }
}

fn main() -> ExitCode {
    // Rust ignores SIGPIPE, which turns a closed downstream pipe into a
    // println panic. Restore the default so `cswgec ... | head` ends quietly.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    // clap exits 2 on usage errors by default; the contract here is 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cswgec: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
