use clap::Args;
use cswgec_core::metrics::{corpus_report, render_table, CfConfig, CfVariant};
use cswgec_core::text::detect_language_pair;
use cswgec_core::TaggedUtterance;

use super::{maybe_shuffle, resolve_hint};
use crate::config::FileConfig;
use crate::io::{jsonl, lines, read_input, write_output};
use crate::{data_err, CliError};

#[derive(Args)]
pub struct TagArgs {
    /// Sentences, one per line; - for stdin.
    #[arg(default_value = "-")]
    pub input: String,
    #[arg(short, long, default_value = "-")]
    pub output: String,
    /// Non-English side to assume when a script is ambiguous, e.g. "ja".
    #[arg(long)]
    pub pair_hint: Option<String>,
    /// Reorder output by seed instead of keeping input order.
    #[arg(long)]
    pub shuffle: bool,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn tag(args: TagArgs, config: &FileConfig) -> Result<(), CliError> {
    let hint = resolve_hint(config, &args.pair_hint)?;
    let seed = config.seed(args.seed);
    let mut out = Vec::new();
    for line in lines(&read_input(&args.input)?) {
        let utt = TaggedUtterance::from_text(&line, hint);
        let tokens: Vec<serde_json::Value> = utt
            .tokens
            .iter()
            .zip(&utt.tags)
            .map(|(t, &lang)| serde_json::json!({"surface": t.surface, "lang": lang.code()}))
            .collect();
        let record = serde_json::json!({
            "text": line,
            "pair": detect_language_pair(&utt).label(),
            "tokens": tokens,
        });
        out.push(record.to_string());
    }
    maybe_shuffle(&mut out, args.shuffle, seed);
    write_output(&args.output, &jsonl(&out))
}

#[derive(Args)]
pub struct MetricsArgs {
    /// Sentences, one per line; - for stdin.
    #[arg(default_value = "-")]
    pub input: String,
    #[arg(long)]
    pub pair_hint: Option<String>,
    /// Complexity-factor weight on the mixing fraction.
    #[arg(long, default_value_t = 50.0)]
    pub cf_a: f64,
    /// Complexity-factor weight on the switching fraction.
    #[arg(long, default_value_t = 50.0)]
    pub cf_b: f64,
    /// Emit the full report as JSON instead of the table.
    #[arg(long)]
    pub json: bool,
}

pub fn metrics(args: MetricsArgs, config: &FileConfig) -> Result<(), CliError> {
    let hint = resolve_hint(config, &args.pair_hint)?;
    let cf = CfConfig::new(args.cf_a, args.cf_b, CfVariant::Cf1)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let corpus: Vec<TaggedUtterance> = lines(&read_input(&args.input)?)
        .iter()
        .map(|l| TaggedUtterance::from_text(l, hint))
        .collect();
    let report = corpus_report(&corpus, &cf).map_err(data_err)?;
    if args.json {
        let rendered = serde_json::to_string_pretty(&report).map_err(data_err)?;
        println!("{rendered}");
    } else {
        print!("{}", render_table(&report));
    }
    Ok(())
}
