use std::collections::HashMap;
use std::path::Path;

use clap::Args;
use cswgec_core::corrupt::item_seed;
use cswgec_core::generate::{
    aligned_subtree_candidates, generate_llm_corpus, parallel_switch, parse_ptb_tree,
    translation_switch, Alignment, GenerateError, GeneratedUtterance, LlmConfig, Transcript,
};

use super::maybe_shuffle;
use crate::config::FileConfig;
use crate::http::HttpChatClient;
use crate::io::{jsonl, lines, read_input, write_output};
use crate::CliError;

fn map_generate(e: GenerateError) -> CliError {
    match e {
        GenerateError::Service { .. } | GenerateError::BudgetExhausted { .. } => {
            CliError::Service(e.to_string())
        }
        GenerateError::ExampleCount(_) => CliError::Usage(e.to_string()),
        other => CliError::Data(other.to_string()),
    }
}

fn write_utterances(
    mut utterances: Vec<GeneratedUtterance>,
    output: &str,
    shuffle: bool,
    seed: u64,
) -> Result<(), CliError> {
    maybe_shuffle(&mut utterances, shuffle, seed);
    let rows: Vec<String> = utterances
        .iter()
        .map(|u| serde_json::to_string(u).expect("generated utterances serialize"))
        .collect();
    write_output(output, &jsonl(&rows))
}

#[derive(Args)]
pub struct GenLlmArgs {
    /// Genuine code-switched sentences, one per line; the prompt examples.
    #[arg(long)]
    pub genuine: String,
    /// Request transcript JSONL: replayed when present, extended by live calls.
    #[arg(long)]
    pub transcript: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub batches: u64,
    /// Genuine examples per prompt, 1 to 10.
    #[arg(long, default_value_t = 10)]
    pub batch_size: usize,
    /// Live requests allowed this run; replayed batches cost nothing.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub max_retries: u32,
    #[arg(long, default_value_t = 500)]
    pub retry_base_ms: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "https://api.openai.com/v1/chat/completions")]
    pub endpoint: String,
    #[arg(long, default_value = "gpt-3.5-turbo")]
    pub model: String,
    /// Environment variable the API key is read from. Never a flag.
    #[arg(long, default_value = "OPENAI_API_KEY")]
    pub key_env: String,
    #[arg(short, long, default_value = "-")]
    pub output: String,
    #[arg(long)]
    pub shuffle: bool,
}

pub fn gen_llm(args: GenLlmArgs, config: &FileConfig) -> Result<(), CliError> {
    let llm = LlmConfig {
        batch_size: FileConfig::pick(&config.batch_size, &Some(args.batch_size), 10),
        batches: FileConfig::pick(&config.batches, &Some(args.batches), 1),
        budget: FileConfig::pick(&config.budget, &args.budget, u64::MAX),
        max_retries: FileConfig::pick(&config.max_retries, &Some(args.max_retries), 3),
        retry_base_ms: FileConfig::pick(&config.retry_base_ms, &Some(args.retry_base_ms), 500),
        seed: config.seed(args.seed),
    };
    if llm.budget == 0 {
        return Err(CliError::Usage("budget must be positive".to_string()));
    }
    let genuine = lines(&read_input(&args.genuine)?);
    let mut transcript = match &args.transcript {
        Some(p) if Path::new(p).exists() => {
            Transcript::from_jsonl(&read_input(p)?).map_err(map_generate)?
        }
        _ => Transcript::default(),
    };
    let endpoint = FileConfig::pick(&config.endpoint, &Some(args.endpoint.clone()), String::new());
    let model = FileConfig::pick(&config.model, &Some(args.model.clone()), String::new());
    let key_env = FileConfig::pick(&config.key_env, &Some(args.key_env.clone()), String::new());
    let mut client = HttpChatClient::new(endpoint, model, key_env);

    let result = generate_llm_corpus(&genuine, &mut client, &llm, &mut transcript);
    // The transcript holds every paid request; persist it even on failure.
    if let Some(path) = &args.transcript {
        std::fs::write(path, transcript.to_jsonl())
            .map_err(|e| CliError::Data(format!("{path}: {e}")))?;
    }
    let (utterances, log) = result.map_err(map_generate)?;

    eprintln!(
        "accepted {} | live requests {} ({} retries) | replayed {} | rejected {} monolingual, {} duplicate | unparseable batches {}",
        log.accepted,
        log.requests_sent,
        log.retries,
        log.batches_replayed,
        log.rejected_monolingual,
        log.rejected_duplicate,
        log.parse_failures
    );
    if !log.per_pair.is_empty() {
        let pairs: Vec<String> =
            log.per_pair.iter().map(|(pair, n)| format!("{pair} {n}")).collect();
        eprintln!("pairs: {}", pairs.join(", "));
    }
    for warning in &log.warnings {
        eprintln!("warning: {warning}");
    }
    write_utterances(utterances, &args.output, args.shuffle, llm.seed)
}

#[derive(Args)]
pub struct GenTranslateArgs {
    /// Bracketed parse trees, one per line; - for stdin.
    #[arg(default_value = "-")]
    pub trees: String,
    /// Tab-separated translations, one "english<TAB>foreign" entry per line.
    #[arg(long)]
    pub dictionary: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(short, long, default_value = "-")]
    pub output: String,
    #[arg(long)]
    pub shuffle: bool,
}

pub fn gen_translate(args: GenTranslateArgs, config: &FileConfig) -> Result<(), CliError> {
    let seed = config.seed(args.seed);
    let mut dict: HashMap<String, String> = HashMap::new();
    for (i, line) in lines(&read_input(&args.dictionary)?).iter().enumerate() {
        let (en, fl) = line
            .split_once('\t')
            .ok_or_else(|| CliError::Data(format!("dictionary line {}: no tab", i + 1)))?;
        dict.insert(en.trim().to_lowercase(), fl.trim().to_string());
    }
    let mut generated = Vec::new();
    let mut rejected = 0u64;
    for (i, line) in lines(&read_input(&args.trees)?).iter().enumerate() {
        let tree = parse_ptb_tree(line)
            .map_err(|e| CliError::Data(format!("tree on line {}: {e}", i + 1)))?;
        let translate = |tokens: &[String]| -> Result<String, String> {
            let mut out = Vec::with_capacity(tokens.len());
            for token in tokens {
                match dict.get(&token.to_lowercase()) {
                    Some(t) => out.push(t.clone()),
                    None => return Err(format!("no dictionary entry for {token:?}")),
                }
            }
            Ok(out.join(" "))
        };
        match translation_switch(&tree, translate, item_seed(seed, i as u64)) {
            Ok(mut utt) => {
                utt.source_ids = vec![i as u64];
                generated.push(utt);
            }
            Err(e @ (GenerateError::NoEligibleSubtree | GenerateError::TranslatorFailure { .. })) => {
                rejected += 1;
                eprintln!("line {}: {e}", i + 1);
            }
            Err(other) => return Err(map_generate(other)),
        }
    }
    eprintln!("generated {} | rejected {rejected}", generated.len());
    write_utterances(generated, &args.output, args.shuffle, seed)
}

#[derive(Args)]
pub struct GenParallelArgs {
    /// English parse trees, one per line.
    #[arg(long)]
    pub english: String,
    /// Foreign parse trees, line-aligned with the English file.
    #[arg(long)]
    pub foreign: String,
    /// Pharaoh word alignments ("0-0 1-2 ..."), line-aligned with the trees.
    #[arg(long)]
    pub alignments: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(short, long, default_value = "-")]
    pub output: String,
    #[arg(long)]
    pub shuffle: bool,
}

pub fn gen_parallel(args: GenParallelArgs, config: &FileConfig) -> Result<(), CliError> {
    let seed = config.seed(args.seed);
    // These three files correspond line by line, so blank lines count too.
    let en_text = read_input(&args.english)?;
    let fl_text = read_input(&args.foreign)?;
    let al_text = read_input(&args.alignments)?;
    let en_lines: Vec<&str> = en_text.lines().map(|l| l.trim_end_matches('\r')).collect();
    let fl_lines: Vec<&str> = fl_text.lines().map(|l| l.trim_end_matches('\r')).collect();
    let al_lines: Vec<&str> = al_text.lines().map(|l| l.trim_end_matches('\r')).collect();
    if en_lines.len() != fl_lines.len() || en_lines.len() != al_lines.len() {
        return Err(CliError::Data(format!(
            "line counts differ: {} english, {} foreign, {} alignments",
            en_lines.len(),
            fl_lines.len(),
            al_lines.len()
        )));
    }
    let mut generated = Vec::new();
    let mut rejected = 0u64;
    for (i, ((en, fl), al)) in en_lines.iter().zip(&fl_lines).zip(&al_lines).enumerate() {
        let row = i + 1;
        let en_tree =
            parse_ptb_tree(en).map_err(|e| CliError::Data(format!("english tree {row}: {e}")))?;
        let fl_tree =
            parse_ptb_tree(fl).map_err(|e| CliError::Data(format!("foreign tree {row}: {e}")))?;
        let alignment = Alignment::from_pharaoh(al)
            .map_err(|e| CliError::Data(format!("alignment {row}: {e}")))?;
        alignment
            .validate(en_tree.leaf_count(), fl_tree.leaf_count())
            .map_err(|e| CliError::Data(format!("alignment {row}: {e}")))?;
        let candidates = aligned_subtree_candidates(&en_tree, &fl_tree, &alignment);
        let en_tokens: Vec<String> = en_tree.leaves().into_iter().map(str::to_string).collect();
        let fl_tokens: Vec<String> = fl_tree.leaves().into_iter().map(str::to_string).collect();
        match parallel_switch(&en_tokens, &fl_tokens, &candidates, item_seed(seed, i as u64)) {
            Ok(mut utt) => {
                utt.source_ids = vec![i as u64];
                generated.push(utt);
            }
            Err(GenerateError::NoCandidates) => {
                rejected += 1;
                eprintln!("line {row}: no aligned constituent pair to switch");
            }
            Err(other) => return Err(map_generate(other)),
        }
    }
    eprintln!("generated {} | rejected {rejected}", generated.len());
    write_utterances(generated, &args.output, args.shuffle, seed)
}
