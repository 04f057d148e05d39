//! Toolkit for building and evaluating code-switched grammatical-error-correction
//! datasets: script-aware tokenization and language tagging, code-switching
//! metrics, synthetic sentence generators, error injection, an ERRANT-style
//! edit extractor and scorer, an edit-tag decoder with threshold tuning, and
//! dataset assembly plumbing.
//!
//! Everything is deterministic given explicit seeds; nothing reads the clock
//! or ambient randomness.

pub mod corrupt;
pub mod decode;
pub mod evaluate;
pub mod generate;
pub mod lexicon;
pub mod metrics;
pub mod pipeline;
pub mod text;

pub use evaluate::{Edit, ErrorCategory};
pub use text::{Lang, Script, TaggedUtterance, Token};
