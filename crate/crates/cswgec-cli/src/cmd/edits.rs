use clap::Args;
use cswgec_core::corrupt::{corrupt_corpus, CorruptConfig, CorruptionRecord};
use cswgec_core::decode::{
    decode as decode_matrix, grid_search as search_grid, read_matrices, GridItem, InferenceParams,
    ParamGrid, TagVocab,
};
use cswgec_core::evaluate::m2::{parse_m2, score_m2, write_block};
use cswgec_core::evaluate::{align_edits, classify_all, ScoreMode};
use cswgec_core::TaggedUtterance;

use super::{maybe_shuffle, resolve_hint};
use crate::config::FileConfig;
use crate::io::{jsonl, lines, read_input, write_output};
use crate::{data_err, CliError};

#[derive(Args)]
pub struct CorruptArgs {
    /// Correct sentences, one per line; - for stdin.
    #[arg(default_value = "-")]
    pub input: String,
    #[arg(short, long, default_value = "-")]
    pub output: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub pair_hint: Option<String>,
    #[arg(long)]
    pub shuffle: bool,
}

pub fn corrupt(args: CorruptArgs, config: &FileConfig) -> Result<(), CliError> {
    let seed = config.seed(args.seed);
    let hint = resolve_hint(config, &args.pair_hint)?;
    let corpus: Vec<TaggedUtterance> = lines(&read_input(&args.input)?)
        .iter()
        .map(|l| TaggedUtterance::from_text(l, hint))
        .collect();
    let (records, stats) = corrupt_corpus(&corpus, &CorruptConfig { seed, pair_hint: hint });
    let mut out: Vec<String> = records
        .iter()
        .map(|r| serde_json::to_string(r).expect("corruption records serialize"))
        .collect();
    maybe_shuffle(&mut out, args.shuffle, seed);
    write_output(&args.output, &jsonl(&out))?;
    eprint!("{}", stats.render());
    Ok(())
}

#[derive(Args)]
pub struct ExtractEditsArgs {
    /// Corruption records (JSONL) or "source<TAB>target" lines; - for stdin.
    #[arg(default_value = "-")]
    pub input: String,
    #[arg(short, long, default_value = "-")]
    pub output: String,
    /// Input shape: records | lines.
    #[arg(long, default_value = "records")]
    pub format: String,
    #[arg(long)]
    pub shuffle: bool,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn extract_edits(args: ExtractEditsArgs, config: &FileConfig) -> Result<(), CliError> {
    let format = FileConfig::pick(&config.format, &Some(args.format.clone()), String::new());
    let seed = config.seed(args.seed);
    let text = read_input(&args.input)?;
    let mut blocks = Vec::new();
    match format.as_str() {
        "records" => {
            for (i, line) in lines(&text).iter().enumerate() {
                let record: CorruptionRecord = serde_json::from_str(line)
                    .map_err(|e| CliError::Data(format!("record on line {}: {e}", i + 1)))?;
                blocks.push(write_block(&record.corrupted, &record.edits, 0));
            }
        }
        "lines" => {
            for line in lines(&text) {
                let (source, target) = line.split_once('\t').unwrap_or((line.as_str(), line.as_str()));
                let source: Vec<String> = source.split_whitespace().map(str::to_string).collect();
                let target: Vec<String> = target.split_whitespace().map(str::to_string).collect();
                let mut edits = align_edits(&source, &target);
                classify_all(&source, &mut edits);
                blocks.push(write_block(&source, &edits, 0));
            }
        }
        other => return Err(CliError::Usage(format!("format {other:?}, expected records|lines"))),
    }
    maybe_shuffle(&mut blocks, args.shuffle, seed);
    let rendered: String = blocks.iter().map(|b| format!("{b}\n")).collect();
    write_output(&args.output, &rendered)
}

fn parse_mode(s: &str) -> Result<ScoreMode, CliError> {
    match s {
        "span" => Ok(ScoreMode::SpanOnly),
        "replacement" => Ok(ScoreMode::SpanAndReplacement),
        other => Err(CliError::Usage(format!("mode {other:?}, expected span|replacement"))),
    }
}

#[derive(Args)]
pub struct ScoreArgs {
    /// Hypothesis M2 file.
    #[arg(long)]
    pub hyp: String,
    /// Reference M2 file.
    #[arg(long = "ref")]
    pub reference: String,
    /// Edit match: span (offsets only) | replacement (offsets and text).
    #[arg(long, default_value = "replacement")]
    pub mode: String,
}

pub fn score(args: ScoreArgs, _config: &FileConfig) -> Result<(), CliError> {
    let mode = parse_mode(&args.mode)?;
    let hyp = parse_m2(&read_input(&args.hyp)?).map_err(data_err)?;
    let reference = parse_m2(&read_input(&args.reference)?).map_err(data_err)?;
    let report = score_m2(&hyp, &reference, mode).map_err(data_err)?;
    print!("{}", report.render());
    Ok(())
}

fn load_vocab(path: &Option<String>) -> Result<TagVocab, CliError> {
    match path {
        Some(p) => TagVocab::parse(&read_input(p)?).map_err(data_err),
        None => Ok(TagVocab::standard()),
    }
}

#[derive(Args)]
pub struct DecodeArgs {
    /// Tag probability matrices, JSONL; - for stdin.
    #[arg(default_value = "-")]
    pub matrices: String,
    /// Tag vocabulary file; the built-in vocabulary when omitted.
    #[arg(long)]
    pub vocab: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    pub additional_confidence: f64,
    #[arg(long, default_value_t = 0.0)]
    pub min_error_probability: f64,
    #[arg(long, default_value_t = 4)]
    pub max_iterations: usize,
    /// Write per-sentence decode traces as JSONL.
    #[arg(long)]
    pub trace: Option<String>,
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

pub fn decode(args: DecodeArgs, _config: &FileConfig) -> Result<(), CliError> {
    let vocab = load_vocab(&args.vocab)?;
    let matrices = read_matrices(&read_input(&args.matrices)?).map_err(data_err)?;
    let params = InferenceParams {
        additional_confidence: args.additional_confidence,
        min_error_probability: args.min_error_probability,
        max_iterations: args.max_iterations,
    };
    let mut sentences = Vec::new();
    let mut traces = Vec::new();
    for (i, matrix) in matrices.iter().enumerate() {
        let outcome = decode_matrix(matrix, &vocab, &params)
            .map_err(|e| CliError::Data(format!("matrix {}: {e}", i + 1)))?;
        sentences.push(outcome.tokens.join(" "));
        if args.trace.is_some() {
            traces.push(serde_json::to_string(&outcome).expect("decode outcomes serialize"));
        }
    }
    if let Some(path) = &args.trace {
        write_output(path, &jsonl(&traces))?;
    }
    write_output(&args.output, &jsonl(&sentences))
}

fn grid_steps(to: f64, by: f64) -> Result<Vec<f64>, CliError> {
    if !by.is_finite() || !to.is_finite() || by <= 0.0 || to < 0.0 {
        return Err(CliError::Usage(format!("bad grid range: max {to}, step {by}")));
    }
    let n = (to / by).round() as usize;
    Ok((0..=n).map(|i| i as f64 * by).collect())
}

#[derive(Args)]
pub struct GridSearchArgs {
    /// Dev-set tag probability matrices, JSONL.
    #[arg(long)]
    pub matrices: String,
    #[arg(long)]
    pub vocab: Option<String>,
    /// Reference M2, one block per matrix over the same tokens.
    #[arg(long = "ref")]
    pub reference: String,
    #[arg(long, default_value_t = 0.5)]
    pub ac_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub ac_step: f64,
    #[arg(long, default_value_t = 0.9)]
    pub mep_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub mep_step: f64,
    #[arg(long, default_value_t = 1)]
    pub max_iterations: usize,
    /// Write every grid point's corpus score as JSONL.
    #[arg(long)]
    pub surface: Option<String>,
}

pub fn grid_search(args: GridSearchArgs, _config: &FileConfig) -> Result<(), CliError> {
    let vocab = load_vocab(&args.vocab)?;
    let matrices = read_matrices(&read_input(&args.matrices)?).map_err(data_err)?;
    let blocks = parse_m2(&read_input(&args.reference)?).map_err(data_err)?;
    if matrices.len() != blocks.len() {
        return Err(CliError::Data(format!(
            "{} matrices but {} reference blocks",
            matrices.len(),
            blocks.len()
        )));
    }
    let mut items = Vec::new();
    for (i, (matrix, block)) in matrices.into_iter().zip(&blocks).enumerate() {
        if matrix.tokens != block.source {
            return Err(CliError::Data(format!(
                "sentence {}: matrix tokens differ from the reference source",
                i + 1
            )));
        }
        items.push(GridItem { matrix, reference: block.annotator_edits(0) });
    }
    let grid = ParamGrid {
        additional_confidence: grid_steps(args.ac_max, args.ac_step)?,
        min_error_probability: grid_steps(args.mep_max, args.mep_step)?,
    };
    let result = search_grid(&items, &vocab, &grid, args.max_iterations).map_err(data_err)?;
    if let Some(path) = &args.surface {
        let rows: Vec<String> = result
            .surface
            .iter()
            .map(|p| serde_json::to_string(p).expect("score points serialize"))
            .collect();
        write_output(path, &jsonl(&rows))?;
    }
    println!(
        "additional_confidence={} min_error_probability={}",
        result.best.additional_confidence, result.best.min_error_probability
    );
    println!(
        "precision={:.2} recall={:.2} f0.5={:.2}",
        result.best_point.precision * 100.0,
        result.best_point.recall * 100.0,
        result.best_point.f_half * 100.0
    );
    Ok(())
}
