//! Synthetic CSW sentence generation by three routes: translating a parse
//! subtree, splicing aligned constituents out of parallel text, and prompting
//! a chat LLM with genuine examples.
//!
//! Parsers, translators, and word aligners are external: trees and alignments
//! arrive as files, translation as a callback, the LLM behind a trait.

mod align;
mod llm;
mod prompt;
mod tree;

pub use align::{aligned_subtree_candidates, parallel_switch, Alignment, CandidatePair};
pub use llm::{
    generate_llm_corpus, ChatClient, ClientError, GenerationLog, LlmConfig, ScriptedClient,
    Transcript, TranscriptEntry,
};
pub use prompt::{build_llm_prompt, parse_llm_response, ParsedResponse, PromptBatch};
pub use tree::{parse_ptb_tree, translation_switch, ParseTree};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::{detect_language_pair, PairDetection, TaggedUtterance};

#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("malformed alignment: {0}")]
    MalformedAlignment(String),
    #[error("tree has no constituent smaller than the whole sentence")]
    NoEligibleSubtree,
    #[error("translator failed on span {start}..{end}: {message}")]
    TranslatorFailure { start: usize, end: usize, message: String },
    #[error("no aligned candidate pairs to switch")]
    NoCandidates,
    #[error("example {index} is monolingual, cannot prompt for code-switching")]
    ExampleNotCsw { index: usize },
    #[error("a prompt batch holds 1 to 10 examples, got {0}")]
    ExampleCount(usize),
    #[error("no numbered sentences found in response")]
    UnparseableResponse,
    #[error("no code-switched examples in the genuine corpus")]
    NoGenuineExamples,
    #[error("transcript entry for batch {batch} was recorded for a different prompt")]
    TranscriptMismatch { batch: u64 },
    #[error("request budget exhausted before batch {batch}")]
    BudgetExhausted { batch: u64 },
    #[error("chat service failed on batch {batch}: {message}")]
    Service { batch: u64, message: String },
    #[error("bad transcript line {line}: {message}")]
    BadTranscript { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Llm,
    Translation,
    Parallel,
}

/// One synthetic sentence plus where it came from. The language pair is
/// always re-detected from the text itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedUtterance {
    pub text: String,
    pub method: Method,
    pub pair: String,
    pub source_ids: Vec<u64>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foreign_span: Option<(usize, usize)>,
}

pub(crate) fn detected_pair_label(text: &str) -> String {
    detect_language_pair(&TaggedUtterance::from_text(text, None)).label()
}

pub(crate) fn is_code_switched(text: &str) -> bool {
    matches!(
        detect_language_pair(&TaggedUtterance::from_text(text, None)),
        PairDetection::Pair { .. }
    )
}
