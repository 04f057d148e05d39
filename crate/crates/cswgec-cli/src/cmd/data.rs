use std::path::Path;

use clap::Args;
use cswgec_core::pipeline::{
    assemble_stage, dedup as dedup_corpus, ingest, ingest_str, manifest_contributions,
    render_contributions, split as split_records, write_records, Corpus, IngestFormat, Ratio,
    StageManifest,
};

use super::maybe_shuffle;
use crate::config::FileConfig;
use crate::io::{read_input, write_output};
use crate::{data_err, CliError};

fn parse_format(config: &FileConfig, flag: &str) -> Result<IngestFormat, CliError> {
    let name = FileConfig::pick(&config.format, &Some(flag.to_string()), String::new());
    name.parse().map_err(CliError::Usage)
}

#[derive(Args)]
pub struct AssembleArgs {
    /// Stage manifest TOML.
    #[arg(long)]
    pub manifest: String,
    /// Source corpus as NAME=PATH, repeatable. With none given, only the
    /// contribution table implied by the manifest counts is printed.
    #[arg(long = "corpus", value_name = "NAME=PATH")]
    pub corpora: Vec<String>,
    /// Corpus file shape: records | lines | m2.
    #[arg(long, default_value = "records")]
    pub format: String,
    #[arg(long)]
    pub out_train: Option<String>,
    #[arg(long)]
    pub out_val: Option<String>,
}

pub fn assemble(args: AssembleArgs, config: &FileConfig) -> Result<(), CliError> {
    let manifest = StageManifest::from_toml(&read_input(&args.manifest)?).map_err(data_err)?;
    if args.corpora.is_empty() {
        if args.out_train.is_some() || args.out_val.is_some() {
            return Err(CliError::Usage(
                "writing train/val output requires --corpus sources".to_string(),
            ));
        }
        let rows = manifest_contributions(&manifest).map_err(data_err)?;
        print!("{}", render_contributions(&rows));
        return Ok(());
    }
    let format = parse_format(config, &args.format)?;
    let mut corpora: Vec<Corpus> = Vec::new();
    for spec in &args.corpora {
        let (name, path) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--corpus takes NAME=PATH, got {spec:?}")))?;
        let mut corpus = ingest(Path::new(path), format).map_err(data_err)?;
        corpus.id = name.to_string();
        corpora.push(corpus);
    }
    let stage = assemble_stage(&manifest, &corpora).map_err(data_err)?;
    print!("{}", render_contributions(&stage.contributions));
    for warning in &stage.warnings {
        eprintln!("warning: {warning}");
    }
    if let Some(path) = &args.out_train {
        write_output(path, &write_records(&stage.train))?;
    }
    if let Some(path) = &args.out_val {
        write_output(path, &write_records(&stage.val))?;
    }
    eprintln!("train {} | val {}", stage.train.len(), stage.val.len());
    Ok(())
}

#[derive(Args)]
pub struct DedupArgs {
    /// Records to filter, JSONL per --format; - for stdin.
    #[arg(default_value = "-")]
    pub input: String,
    /// Corpus whose pairs are removed from the input; repeatable.
    #[arg(long, required = true)]
    pub against: Vec<String>,
    #[arg(long, default_value = "records")]
    pub format: String,
    #[arg(short, long, default_value = "-")]
    pub output: String,
    #[arg(long)]
    pub shuffle: bool,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn dedup(args: DedupArgs, config: &FileConfig) -> Result<(), CliError> {
    let format = parse_format(config, &args.format)?;
    let seed = config.seed(args.seed);
    let mut corpus = ingest_str(&read_input(&args.input)?, format, "input").map_err(data_err)?;
    let mut removed = 0;
    for path in &args.against {
        let against = ingest(Path::new(path), format).map_err(data_err)?;
        let (kept, n) = dedup_corpus(&corpus, &against);
        corpus = kept;
        removed += n;
    }
    maybe_shuffle(&mut corpus.records, args.shuffle, seed);
    write_output(&args.output, &write_records(&corpus.records))?;
    eprintln!("kept {} | removed {removed}", corpus.records.len());
    Ok(())
}

#[derive(Args)]
pub struct SplitArgs {
    /// Records to split, JSONL per --format; - for stdin.
    #[arg(default_value = "-")]
    pub input: String,
    /// Train:val ratio.
    #[arg(long, default_value = "19:1")]
    pub ratio: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out_train: String,
    #[arg(long)]
    pub out_val: String,
    #[arg(long, default_value = "records")]
    pub format: String,
}

pub fn split(args: SplitArgs, config: &FileConfig) -> Result<(), CliError> {
    let format = parse_format(config, &args.format)?;
    let ratio: Ratio = FileConfig::pick(&config.ratio, &Some(args.ratio.clone()), String::new())
        .parse()
        .map_err(|e| CliError::Usage(format!("{e}")))?;
    let seed = config.seed(args.seed);
    let corpus = ingest_str(&read_input(&args.input)?, format, "input").map_err(data_err)?;
    let outcome = split_records(&corpus.records, ratio, seed);
    for warning in &outcome.warnings {
        eprintln!("warning: {warning}");
    }
    write_output(&args.out_train, &write_records(&outcome.train))?;
    write_output(&args.out_val, &write_records(&outcome.val))?;
    eprintln!("train {} | val {}", outcome.train.len(), outcome.val.len());
    Ok(())
}
