//! Batched LLM generation with a persisted request transcript.
//!
//! Every batch's prompt and response land in the transcript, and a batch
//! whose prompt is already there replays without touching the client. A rerun
//! over a complete transcript therefore needs no service at all, and an
//! aborted run resumes by replaying what it logged. The request budget
//! counts live requests only.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{parse_llm_response, GenerateError, GeneratedUtterance, PromptBatch};
use crate::corrupt::item_seed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClientError {
    pub message: String,
    pub retryable: bool,
}

/// A chat-completion service: one user message in, raw response text out.
pub trait ChatClient {
    fn complete(&mut self, prompt: &str) -> Result<String, ClientError>;
}

/// Replays a fixed response sequence; errors once the script runs dry.
#[derive(Debug, Clone, Default)]
pub struct ScriptedClient {
    responses: std::collections::VecDeque<String>,
    pub calls: u64,
}

impl ScriptedClient {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(responses: I) -> ScriptedClient {
        ScriptedClient {
            responses: responses.into_iter().map(Into::into).collect(),
            calls: 0,
        }
    }
}

impl ChatClient for ScriptedClient {
    fn complete(&mut self, _prompt: &str) -> Result<String, ClientError> {
        self.calls += 1;
        self.responses.pop_front().ok_or(ClientError {
            message: "scripted client ran out of responses".to_string(),
            retryable: false,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub batch: u64,
    pub prompt: String,
    pub response: String,
}

/// Append-only request log, serialized as JSON lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    pub entries: Vec<TranscriptEntry>,
}

impl Transcript {
    pub fn from_jsonl(text: &str) -> Result<Transcript, GenerateError> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let entry: TranscriptEntry = serde_json::from_str(line).map_err(|e| {
                GenerateError::BadTranscript { line: i + 1, message: e.to_string() }
            })?;
            entries.push(entry);
        }
        Ok(Transcript { entries })
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            out.push_str(&serde_json::to_string(entry).expect("transcript entries serialize"));
            out.push('\n');
        }
        out
    }

    pub fn find(&self, batch: u64) -> Option<&TranscriptEntry> {
        self.entries.iter().find(|e| e.batch == batch)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LlmConfig {
    /// Genuine examples per prompt, 1 to 10.
    pub batch_size: usize,
    /// Batches to produce this run (replayed ones included).
    pub batches: u64,
    /// Live requests allowed this run.
    pub budget: u64,
    pub max_retries: u32,
    /// Base backoff delay; doubles per retry. Zero disables sleeping.
    pub retry_base_ms: u64,
    pub seed: u64,
}

impl Default for LlmConfig {
    fn default() -> LlmConfig {
        LlmConfig {
            batch_size: 10,
            batches: 1,
            budget: u64::MAX,
            max_retries: 3,
            retry_base_ms: 0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GenerationLog {
    pub requests_sent: u64,
    pub batches_replayed: u64,
    pub retries: u64,
    pub accepted: u64,
    pub rejected_monolingual: u64,
    pub rejected_duplicate: u64,
    pub parse_failures: u64,
    pub per_pair: BTreeMap<String, u64>,
    pub warnings: Vec<String>,
}

fn normalize(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Samples example batches from the genuine corpus, prompts the client once
/// per batch (minus transcript replays), and collects deduplicated
/// code-switched output. The transcript is extended in place so the caller
/// can persist it even when the run errors out.
pub fn generate_llm_corpus<C: ChatClient>(
    genuine: &[String],
    client: &mut C,
    config: &LlmConfig,
    transcript: &mut Transcript,
) -> Result<(Vec<GeneratedUtterance>, GenerationLog), GenerateError> {
    if config.batch_size == 0 || config.batch_size > 10 {
        return Err(GenerateError::ExampleCount(config.batch_size));
    }
    let pool: Vec<(u64, &String)> = genuine
        .iter()
        .enumerate()
        .filter(|(_, s)| super::is_code_switched(s))
        .map(|(i, s)| (i as u64, s))
        .collect();
    if pool.is_empty() {
        return Err(GenerateError::NoGenuineExamples);
    }
    let mut log = GenerationLog::default();
    if pool.len() < genuine.len() {
        log.warnings.push(format!(
            "{} genuine example(s) are monolingual and were left out of prompting",
            genuine.len() - pool.len()
        ));
    }
    let mut seen: HashSet<String> = genuine.iter().map(|s| normalize(s)).collect();
    let mut corpus = Vec::new();
    for batch in 0..config.batches {
        let seed = item_seed(config.seed, batch);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let take = config.batch_size.min(pool.len());
        let sample: Vec<&(u64, &String)> = pool.choose_multiple(&mut rng, take).collect();
        let source_ids: Vec<u64> = sample.iter().map(|(i, _)| *i).collect();
        let examples: Vec<&str> = sample.iter().map(|(_, s)| s.as_str()).collect();
        let rendered = PromptBatch::new(&examples)?.prompt;
        let response = match transcript.find(batch) {
            Some(entry) if entry.prompt == rendered => {
                log.batches_replayed += 1;
                entry.response.clone()
            }
            Some(_) => return Err(GenerateError::TranscriptMismatch { batch }),
            None => {
                if log.requests_sent >= config.budget {
                    return Err(GenerateError::BudgetExhausted { batch });
                }
                let response = request_with_retries(client, &rendered, batch, config, &mut log)?;
                log.requests_sent += 1;
                transcript.entries.push(TranscriptEntry {
                    batch,
                    prompt: rendered,
                    response: response.clone(),
                });
                response
            }
        };
        let parsed = match parse_llm_response(&response, take) {
            Ok(parsed) => parsed,
            Err(GenerateError::UnparseableResponse) => {
                log.parse_failures += 1;
                log.warnings.push(format!("batch {batch}: response had no numbered sentences"));
                continue;
            }
            Err(other) => return Err(other),
        };
        log.rejected_monolingual += parsed.rejects.len() as u64;
        log.warnings.extend(parsed.warnings.into_iter().map(|w| format!("batch {batch}: {w}")));
        for mut utt in parsed.utterances {
            if !seen.insert(normalize(&utt.text)) {
                log.rejected_duplicate += 1;
                continue;
            }
            utt.source_ids = source_ids.clone();
            utt.seed = seed;
            log.accepted += 1;
            *log.per_pair.entry(utt.pair.clone()).or_insert(0) += 1;
            corpus.push(utt);
        }
    }
    Ok((corpus, log))
}

fn request_with_retries<C: ChatClient>(
    client: &mut C,
    prompt: &str,
    batch: u64,
    config: &LlmConfig,
    log: &mut GenerationLog,
) -> Result<String, GenerateError> {
    let mut attempt = 0u32;
    loop {
        match client.complete(prompt) {
            Ok(response) => return Ok(response),
            Err(e) if e.retryable && attempt < config.max_retries => {
                attempt += 1;
                log.retries += 1;
                if config.retry_base_ms > 0 {
                    let delay = config.retry_base_ms.saturating_mul(1 << (attempt - 1).min(16));
                    std::thread::sleep(std::time::Duration::from_millis(delay));
                }
            }
            Err(e) => return Err(GenerateError::Service { batch, message: e.message }),
        }
    }
}
