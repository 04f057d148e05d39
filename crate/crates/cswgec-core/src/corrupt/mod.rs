//! Rule-based error injection for synthetic GEC training data.
//!
//! Errors land only on EN-tagged tokens (punctuation counts when it borders
//! one), so the embedded language survives corruption untouched. Gold edits
//! are recomputed at the end by the aligner rather than accumulated per step;
//! sequential errors may interact, and alignment canonicalizes the result.
//! The alignment runs per English stretch between foreign tokens, keeping
//! gold spans off the embedded language.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evaluate::{align_edits, classify_all, Edit};
use crate::lexicon::{self, lexicon, match_case, PUNCT_MARKS};
use crate::text::{Lang, TaggedUtterance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorType {
    NounNum,
    Pronoun,
    WordOrder,
    Determiner,
    Punct,
    Preposition,
    VerbForm,
}

impl ErrorType {
    pub const ALL: [ErrorType; 7] = [
        ErrorType::NounNum,
        ErrorType::Pronoun,
        ErrorType::WordOrder,
        ErrorType::Determiner,
        ErrorType::Punct,
        ErrorType::Preposition,
        ErrorType::VerbForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorType::NounNum => "NOUN_NUM",
            ErrorType::Pronoun => "PRONOUN",
            ErrorType::WordOrder => "WORD_ORDER",
            ErrorType::Determiner => "DETERMINER",
            ErrorType::Punct => "PUNCT",
            ErrorType::Preposition => "PREPOSITION",
            ErrorType::VerbForm => "VERB_FORM",
        }
    }
}

impl fmt::Display for ErrorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CorruptError {
    #[error("no eligible site for this error type")]
    NoSite,
    #[error("parallel files have different lengths: {0} vs {1}")]
    LineCountMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorPlan {
    pub types: Vec<ErrorType>,
}

impl ErrorPlan {
    pub fn k(&self) -> usize {
        self.types.len()
    }
}

/// Uniform error count in 0..=4, each type uniform and independent.
pub fn sample_error_plan<R: Rng>(rng: &mut R) -> ErrorPlan {
    let k = rng.gen_range(0..=4usize);
    let types = (0..k).map(|_| *ErrorType::ALL.choose(rng).expect("non-empty")).collect();
    ErrorPlan { types }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorruptionRecord {
    pub id: u64,
    pub corrupted: Vec<String>,
    pub original: Vec<String>,
    /// Gold edits map corrupted tokens back to the original.
    pub edits: Vec<Edit>,
    pub types: Vec<ErrorType>,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorruptStats {
    pub emitted: u64,
    pub dropped_zero_plan: u64,
    pub dropped_no_site: u64,
    pub dropped_cancelled: u64,
    pub realized: BTreeMap<ErrorType, u64>,
    pub no_site: BTreeMap<ErrorType, u64>,
}

impl CorruptStats {
    pub fn dropped(&self) -> u64 {
        self.dropped_zero_plan + self.dropped_no_site + self.dropped_cancelled
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "emitted {} / dropped {} (zero-plan {}, no-site {}, cancelled {})\n",
            self.emitted,
            self.dropped(),
            self.dropped_zero_plan,
            self.dropped_no_site,
            self.dropped_cancelled
        );
        for ty in ErrorType::ALL {
            out.push_str(&format!(
                "{:<12} realized {:<8} no-site {}\n",
                ty.name(),
                self.realized.get(&ty).copied().unwrap_or(0),
                self.no_site.get(&ty).copied().unwrap_or(0)
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CorruptConfig {
    pub seed: u64,
    pub pair_hint: Option<Lang>,
}

const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(SPLITMIX_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-item seed mixing the corpus seed with the item index, so items can be
/// corrupted in any order (or in parallel) without changing the output.
pub fn item_seed(corpus_seed: u64, index: u64) -> u64 {
    splitmix64(corpus_seed.wrapping_add(index.wrapping_add(1).wrapping_mul(SPLITMIX_GAMMA)))
}

fn is_en_word(tagged: &TaggedUtterance, i: usize) -> bool {
    tagged.tags[i] == Lang::En
}

fn alphabetic_content(surface: &str) -> bool {
    surface.len() >= 2 && surface.chars().all(|c| c.is_ascii_alphabetic())
}

/// Positions where a token may be inserted next to an EN token.
fn insertion_points(tagged: &TaggedUtterance) -> Vec<usize> {
    let n = tagged.tokens.len();
    (0..=n)
        .filter(|&p| {
            (p > 0 && is_en_word(tagged, p - 1)) || (p < n && is_en_word(tagged, p))
        })
        .collect()
}

#[derive(Clone)]
enum Action {
    Delete(usize),
    Substitute(usize, String),
    Insert(usize, String),
    Swap(usize),
}

fn apply_action(surfaces: &[String], action: &Action) -> (Vec<String>, Edit) {
    let mut out = surfaces.to_vec();
    match action {
        Action::Delete(i) => {
            out.remove(*i);
            (out, Edit::new(*i, i + 1, vec![]))
        }
        Action::Substitute(i, with) => {
            out[*i] = with.clone();
            (out, Edit::new(*i, i + 1, vec![with.clone()]))
        }
        Action::Insert(pos, what) => {
            out.insert(*pos, what.clone());
            (out, Edit::new(*pos, *pos, vec![what.clone()]))
        }
        Action::Swap(i) => {
            out.swap(*i, i + 1);
            let replacement = vec![out[*i].clone(), out[i + 1].clone()];
            (out, Edit::new(*i, i + 2, replacement))
        }
    }
}

fn candidate_actions(tagged: &TaggedUtterance, ty: ErrorType) -> Vec<Action> {
    let lex = lexicon();
    let surfaces: Vec<&str> = tagged.tokens.iter().map(|t| t.surface.as_str()).collect();
    let mut actions = Vec::new();
    match ty {
        ErrorType::NounNum => {
            for (i, s) in surfaces.iter().enumerate() {
                if !is_en_word(tagged, i) || !alphabetic_content(s) {
                    continue;
                }
                let lower = s.to_lowercase();
                if lex.is_function_word(&lower) {
                    continue;
                }
                // Verb-paradigm members are left to VERB_FORM.
                if lexicon::verb_paradigm_of(&lower).is_some() {
                    continue;
                }
                if let Some(toggled) = lexicon::noun_toggle(&lower) {
                    actions.push(Action::Substitute(i, match_case(s, &toggled)));
                }
            }
        }
        ErrorType::Pronoun => {
            for (i, s) in surfaces.iter().enumerate() {
                if !is_en_word(tagged, i) {
                    continue;
                }
                let lower = s.to_lowercase();
                for alt in lex.pronoun_confusions(&lower) {
                    actions.push(Action::Substitute(i, match_case(s, &alt)));
                }
            }
        }
        ErrorType::WordOrder => {
            for i in 0..surfaces.len().saturating_sub(1) {
                if is_en_word(tagged, i) && is_en_word(tagged, i + 1) && surfaces[i] != surfaces[i + 1] {
                    actions.push(Action::Swap(i));
                }
            }
        }
        ErrorType::Determiner => {
            for (i, s) in surfaces.iter().enumerate() {
                if !is_en_word(tagged, i) {
                    continue;
                }
                let lower = s.to_lowercase();
                if !lex.is_determiner(&lower) {
                    continue;
                }
                actions.push(Action::Delete(i));
                for alt in lexicon::DETERMINERS {
                    if alt != lower {
                        actions.push(Action::Substitute(i, match_case(s, alt)));
                    }
                }
            }
            for pos in insertion_points(tagged) {
                for det in lexicon::DETERMINERS {
                    actions.push(Action::Insert(pos, det.to_string()));
                }
            }
        }
        ErrorType::Punct => {
            for (i, s) in surfaces.iter().enumerate() {
                if !PUNCT_MARKS.contains(s) {
                    continue;
                }
                let near_en = (i > 0 && is_en_word(tagged, i - 1))
                    || (i + 1 < surfaces.len() && is_en_word(tagged, i + 1));
                if !near_en {
                    continue;
                }
                actions.push(Action::Delete(i));
                for alt in PUNCT_MARKS {
                    if alt != *s {
                        actions.push(Action::Substitute(i, alt.to_string()));
                    }
                }
            }
            for pos in insertion_points(tagged) {
                for mark in PUNCT_MARKS {
                    actions.push(Action::Insert(pos, mark.to_string()));
                }
            }
        }
        ErrorType::Preposition => {
            for (i, s) in surfaces.iter().enumerate() {
                if !is_en_word(tagged, i) {
                    continue;
                }
                let lower = s.to_lowercase();
                if !lex.is_preposition(&lower) {
                    continue;
                }
                for alt in lex.preposition_alternatives(&lower) {
                    actions.push(Action::Substitute(i, match_case(s, &alt)));
                }
            }
        }
        ErrorType::VerbForm => {
            for (i, s) in surfaces.iter().enumerate() {
                if !is_en_word(tagged, i) || !alphabetic_content(s) {
                    continue;
                }
                let lower = s.to_lowercase();
                if lex.is_function_word(&lower) {
                    continue;
                }
                if let Some((paradigm, _)) = lexicon::verb_paradigm_of(&lower) {
                    let mut alts: Vec<&str> =
                        vec![&paradigm.base, &paradigm.third, &paradigm.past, &paradigm.ing]
                            .into_iter()
                            .map(String::as_str)
                            .filter(|f| *f != lower)
                            .collect();
                    alts.sort();
                    alts.dedup();
                    for alt in alts {
                        actions.push(Action::Substitute(i, match_case(s, alt)));
                    }
                }
            }
        }
    }
    actions
}

/// Injects one error of the given type at a uniformly chosen eligible site.
/// Returns the corrupted surfaces and the forward edit that was applied.
pub fn apply_error<R: Rng>(
    tagged: &TaggedUtterance,
    ty: ErrorType,
    rng: &mut R,
) -> Result<(Vec<String>, Edit), CorruptError> {
    let actions = candidate_actions(tagged, ty);
    let action = actions.choose(rng).ok_or(CorruptError::NoSite)?;
    let surfaces = tagged.surfaces();
    Ok(apply_action(&surfaces, action))
}

fn is_foreign(tag: Lang) -> bool {
    tag != Lang::En && tag != Lang::Neutral
}

/// Aligns around foreign-token anchors. Corruption leaves non-EN tokens
/// alone, so both sides carry the same foreign subsequence; aligning the
/// English stretches between anchors separately stops an equal-cost edit
/// script from cutting through a foreign token, which a whole-sentence
/// alignment is free to do on a tie. Falls back to one whole-sentence
/// alignment when the anchor sequences disagree (externally corrupted text
/// may genuinely alter foreign tokens, and then edits over them are correct).
fn anchored_align(corrupted: &TaggedUtterance, original: &TaggedUtterance) -> Vec<Edit> {
    let c_surfaces = corrupted.surfaces();
    let o_surfaces = original.surfaces();
    let c_anchors: Vec<usize> =
        (0..corrupted.tags.len()).filter(|&i| is_foreign(corrupted.tags[i])).collect();
    let o_anchors: Vec<usize> =
        (0..original.tags.len()).filter(|&i| is_foreign(original.tags[i])).collect();
    let anchors_match = c_anchors.len() == o_anchors.len()
        && c_anchors.iter().zip(&o_anchors).all(|(&c, &o)| c_surfaces[c] == o_surfaces[o]);
    if !anchors_match {
        return align_edits(&c_surfaces, &o_surfaces);
    }
    let mut bounds: Vec<(usize, usize)> =
        c_anchors.into_iter().zip(o_anchors).collect();
    bounds.push((c_surfaces.len(), o_surfaces.len()));
    let mut edits = Vec::new();
    let (mut c_lo, mut o_lo) = (0, 0);
    for (c_hi, o_hi) in bounds {
        for mut edit in align_edits(&c_surfaces[c_lo..c_hi], &o_surfaces[o_lo..o_hi]) {
            edit.start += c_lo;
            edit.end += c_lo;
            edits.push(edit);
        }
        c_lo = c_hi + 1;
        o_lo = o_hi + 1;
    }
    edits
}

/// Corrupts a corpus utterance by utterance. Pairs whose plan realized no
/// edit (k=0, every site missing, or errors that cancelled out) are dropped
/// and counted.
pub fn corrupt_corpus(
    corpus: &[TaggedUtterance],
    config: &CorruptConfig,
) -> (Vec<CorruptionRecord>, CorruptStats) {
    let mut records = Vec::new();
    let mut stats = CorruptStats::default();
    for (index, utterance) in corpus.iter().enumerate() {
        let seed = item_seed(config.seed, index as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let plan = sample_error_plan(&mut rng);
        if plan.k() == 0 {
            stats.dropped_zero_plan += 1;
            continue;
        }
        let original = utterance.surfaces();
        let mut current = utterance.clone();
        let mut realized = Vec::new();
        for ty in &plan.types {
            match apply_error(&current, *ty, &mut rng) {
                Ok((surfaces, _)) => {
                    realized.push(*ty);
                    *stats.realized.entry(*ty).or_insert(0) += 1;
                    current = TaggedUtterance::from_surfaces(&surfaces, config.pair_hint);
                }
                Err(CorruptError::NoSite) => {
                    *stats.no_site.entry(*ty).or_insert(0) += 1;
                }
                Err(_) => unreachable!("apply_error only reports NoSite"),
            }
        }
        if realized.is_empty() {
            stats.dropped_no_site += 1;
            continue;
        }
        let corrupted = current.surfaces();
        let mut edits = anchored_align(&current, utterance);
        if edits.is_empty() {
            stats.dropped_cancelled += 1;
            continue;
        }
        classify_all(&corrupted, &mut edits);
        stats.emitted += 1;
        records.push(CorruptionRecord {
            id: index as u64,
            corrupted,
            original,
            edits,
            types: realized,
            seed,
        });
    }
    (records, stats)
}

/// Builds records from pre-corrupted parallel text (for externally induced
/// errors). Zero-edit lines are dropped and counted.
pub fn ingest_external_corruptions(
    corrupted_lines: &[String],
    original_lines: &[String],
    pair_hint: Option<Lang>,
) -> Result<(Vec<CorruptionRecord>, u64), CorruptError> {
    if corrupted_lines.len() != original_lines.len() {
        return Err(CorruptError::LineCountMismatch(corrupted_lines.len(), original_lines.len()));
    }
    let mut records = Vec::new();
    let mut dropped = 0;
    for (index, (bad, good)) in corrupted_lines.iter().zip(original_lines).enumerate() {
        let bad_tagged = TaggedUtterance::from_text(bad, pair_hint);
        let good_tagged = TaggedUtterance::from_text(good, pair_hint);
        let mut edits = anchored_align(&bad_tagged, &good_tagged);
        let corrupted = bad_tagged.surfaces();
        let original = good_tagged.surfaces();
        if edits.is_empty() {
            dropped += 1;
            continue;
        }
        classify_all(&corrupted, &mut edits);
        records.push(CorruptionRecord {
            id: index as u64,
            corrupted,
            original,
            edits,
            types: Vec::new(),
            seed: 0,
        });
    }
    Ok((records, dropped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate::apply_edits;

    fn tagged(text: &str) -> TaggedUtterance {
        TaggedUtterance::from_text(text, None)
    }

    #[test]
    fn plan_sampling_is_uniform_enough() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut zero = 0usize;
        let mut type_counts: BTreeMap<ErrorType, usize> = BTreeMap::new();
        let n = 20_000;
        for _ in 0..n {
            let plan = sample_error_plan(&mut rng);
            assert!(plan.k() <= 4);
            if plan.k() == 0 {
                zero += 1;
            }
            for ty in &plan.types {
                *type_counts.entry(*ty).or_insert(0) += 1;
            }
        }
        let zero_rate = zero as f64 / n as f64;
        assert!((0.18..=0.22).contains(&zero_rate), "zero rate {zero_rate}");
        let total: usize = type_counts.values().sum();
        for ty in ErrorType::ALL {
            let share = type_counts[&ty] as f64 / total as f64;
            assert!((share - 1.0 / 7.0).abs() < 0.2 / 7.0, "{ty} share {share}");
        }
    }

    #[test]
    fn plan_sampling_is_deterministic() {
        let a: Vec<ErrorPlan> =
            (0..50).map(|_| sample_error_plan(&mut ChaCha8Rng::seed_from_u64(3))).collect();
        let b: Vec<ErrorPlan> =
            (0..50).map(|_| sample_error_plan(&mut ChaCha8Rng::seed_from_u64(3))).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn determiner_deletion_realizes_spec_example() {
        let utt = tagged("I have a dog .");
        let mut saw_delete = false;
        for seed in 0..300 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (surfaces, _) = apply_error(&utt, ErrorType::Determiner, &mut rng).unwrap();
            if surfaces == ["I", "have", "dog", "."] {
                let gold = align_edits(&surfaces, &utt.surfaces());
                assert_eq!(gold, vec![Edit::new(2, 2, vec!["a".into()])]);
                saw_delete = true;
                break;
            }
        }
        assert!(saw_delete, "deletion of \"a\" never sampled in 300 seeds");
    }

    #[test]
    fn noun_number_toggles_inflection() {
        let utt = tagged("dogs");
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (surfaces, edit) = apply_error(&utt, ErrorType::NounNum, &mut rng).unwrap();
        assert_eq!(surfaces, vec!["dog"]);
        assert_eq!(edit, Edit::new(0, 1, vec!["dog".into()]));
    }

    #[test]
    fn non_en_tokens_offer_no_sites() {
        let utt = tagged("何 ?");
        for ty in ErrorType::ALL {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            assert_eq!(apply_error(&utt, ty, &mut rng), Err(CorruptError::NoSite), "{ty}");
        }
    }

    #[test]
    fn gold_edits_never_cross_foreign_anchors() {
        // Whole-sentence alignment has an equal-cost script here that
        // substitutes straight through えき; the anchored one matches it.
        let original = tagged("I walk to the えき with my friend every day .");
        let surfaces: Vec<String> = "I walk the to , えき my friend with every day ."
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let corrupted = TaggedUtterance::from_surfaces(&surfaces, None);
        let edits = anchored_align(&corrupted, &original);
        assert_eq!(apply_edits(&surfaces, &edits).unwrap(), original.surfaces());
        for edit in &edits {
            for covered in &surfaces[edit.start..edit.end] {
                assert_ne!(covered, "えき", "gold span {}..{} covers the anchor", edit.start, edit.end);
            }
        }
    }

    #[test]
    fn altered_foreign_tokens_fall_back_to_plain_alignment() {
        let bad = TaggedUtterance::from_text("I like すし", None);
        let good = TaggedUtterance::from_text("I like さしみ", None);
        let edits = anchored_align(&bad, &good);
        assert_eq!(apply_edits(&bad.surfaces(), &edits).unwrap(), good.surfaces());
        assert_eq!(edits.len(), 1);
    }

    #[test]
    fn punct_needs_an_english_neighbor() {
        let ja = tagged("ラーメン が 好き 。");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert_eq!(apply_error(&ja, ErrorType::Punct, &mut rng), Err(CorruptError::NoSite));
        let mixed = tagged("ramen が 好き .");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(apply_error(&mixed, ErrorType::Punct, &mut rng).is_ok());
    }

    #[test]
    fn verb_form_toggles_within_paradigm() {
        let utt = tagged("walking");
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (surfaces, _) = apply_error(&utt, ErrorType::VerbForm, &mut rng).unwrap();
        assert!(["walk", "walks", "walked"].contains(&surfaces[0].as_str()), "{surfaces:?}");
    }

    fn fixture_corpus() -> Vec<TaggedUtterance> {
        let sentences = [
            "I like to eat ramen with my friends .",
            "She wants a new bag because hers is old .",
            "昨日 I watched the movie with him .",
            "We walk to the station every morning .",
            "He said that the food in Tokyo is great .",
            "They have two dogs and a cat .",
            "I think ラーメン is the best food .",
            "You should visit the museum on Sunday .",
        ];
        sentences.iter().map(|s| tagged(s)).collect()
    }

    #[test]
    fn corrupt_corpus_is_deterministic_and_reversible() {
        let corpus = fixture_corpus();
        let config = CorruptConfig { seed: 42, pair_hint: None };
        let (records, stats) = corrupt_corpus(&corpus, &config);
        let (again, stats_again) = corrupt_corpus(&corpus, &config);
        assert_eq!(records, again);
        assert_eq!(stats, stats_again);
        assert!(!records.is_empty());
        assert_eq!(stats.emitted as usize, records.len());
        assert_eq!(stats.emitted + stats.dropped(), corpus.len() as u64);
        for rec in &records {
            assert!(!rec.edits.is_empty());
            assert!(!rec.types.is_empty());
            assert_eq!(apply_edits(&rec.corrupted, &rec.edits).unwrap(), rec.original);
        }
    }

    #[test]
    fn corrupt_corpus_leaves_non_en_tokens_alone() {
        let corpus = fixture_corpus();
        let (records, _) = corrupt_corpus(&corpus, &CorruptConfig { seed: 9, pair_hint: None });
        for rec in &records {
            let retagged = TaggedUtterance::from_surfaces(&rec.corrupted, None);
            for edit in &rec.edits {
                for i in edit.start..edit.end {
                    let lang = retagged.tags[i];
                    assert!(
                        lang == Lang::En || lang == Lang::Neutral,
                        "edit span covers {lang:?} token {:?}",
                        rec.corrupted[i]
                    );
                }
            }
        }
    }

    #[test]
    fn all_japanese_corpus_drops_everything() {
        let corpus = vec![tagged("ラーメン が 好き です 。"), tagged("今日 は 暑い 。")];
        let (records, stats) = corrupt_corpus(&corpus, &CorruptConfig::default());
        assert!(records.is_empty());
        assert_eq!(stats.dropped_zero_plan + stats.dropped_no_site, 2);
    }

    #[test]
    fn item_seed_spreads_indices() {
        let s: Vec<u64> = (0..100).map(|i| item_seed(7, i)).collect();
        let mut dedup = s.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), s.len());
        assert_ne!(item_seed(7, 0), item_seed(8, 0));
    }

    #[test]
    fn external_ingest_drops_identical_lines() {
        let corrupted = vec!["He go home".to_string(), "same line".to_string()];
        let original = vec!["He goes home".to_string(), "same line".to_string()];
        let (records, dropped) = ingest_external_corruptions(&corrupted, &original, None).unwrap();
        assert_eq!(dropped, 1);
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].edits, vec![{
            let mut e = Edit::new(1, 2, vec!["goes".into()]);
            e.category = Some(crate::evaluate::ErrorCategory::VerbSva);
            e
        }]);
    }

    #[test]
    fn external_ingest_rejects_mismatched_lengths() {
        let a = vec!["one".to_string()];
        let b = vec!["one".to_string(), "two".to_string()];
        assert_eq!(
            ingest_external_corruptions(&a, &b, None),
            Err(CorruptError::LineCountMismatch(1, 2))
        );
    }
}
