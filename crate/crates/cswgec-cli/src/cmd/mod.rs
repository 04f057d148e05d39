//! Subcommand implementations, grouped by the core module they front.

pub mod data;
pub mod edits;
pub mod generate;
pub mod text;

use cswgec_core::Lang;

use crate::config::FileConfig;
use crate::CliError;

/// Resolves a `--pair-hint` value like "ja" or "EN-KO" against the config.
pub fn resolve_hint(config: &FileConfig, flag: &Option<String>) -> Result<Option<Lang>, CliError> {
    match config.pair_hint.clone().or_else(|| flag.clone()) {
        None => Ok(None),
        Some(s) => Lang::parse_hint(&s)
            .map(Some)
            .ok_or_else(|| CliError::Usage(format!("unrecognized language hint {s:?}"))),
    }
}

/// Seeded output reordering behind the `--shuffle` flag.
pub fn maybe_shuffle<T>(items: &mut [T], shuffle: bool, seed: u64) {
    if shuffle {
        cswgec_core::pipeline::shuffle(items, seed);
    }
}
