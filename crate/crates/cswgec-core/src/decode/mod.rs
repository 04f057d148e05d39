//! GECToR-style edit-tag decoding over externally produced probability
//! matrices, plus grid search over the two inference parameters.
//!
//! The additional-confidence bias affects argmax decisions only; nothing is
//! renormalized. A token whose detection argmax is CSW is pinned to KEEP no
//! matter what the tag head wants.

mod matrix;

pub use matrix::{
    detection_argmax, read_matrices, write_matrices, DetectionLabel, TagProbMatrix,
    DETECTION_LABELS,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evaluate::{align_edits, score_pair, Counts, Edit, ScoreMode};
use crate::lexicon::{self, lexicon, match_case};

#[derive(Debug, Error, PartialEq)]
pub enum DecodeError {
    #[error("unknown tag {0:?}")]
    UnknownTag(String),
    #[error("tag vocabulary must start with $KEEP, found {0:?}")]
    VocabKeepFirst(String),
    #[error("duplicate tag {0:?} in vocabulary")]
    VocabDuplicate(String),
    #[error("{0} tokens need {1} tags (leading sentinel included), got {2}")]
    TagCount(usize, usize, usize),
    #[error("matrix shape mismatch: {0}")]
    MatrixShapeMismatch(String),
    #[error("token {token}: tag id {id} outside vocabulary of {vocab}")]
    BadTagId { token: usize, id: usize, vocab: usize },
    #[error("bad distribution: {0}")]
    BadDistribution(String),
    #[error("bad inference params: {0}")]
    BadParams(String),
    #[error("empty parameter grid")]
    EmptyGrid,
    #[error("empty dev set")]
    EmptyDevSet,
    #[error("matrix line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// One per-token edit instruction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tag {
    Keep,
    Delete,
    Append(String),
    Replace(String),
    CaseCapital,
    CaseLower,
    CaseUpper,
    Agreement,
    VerbPast,
    VerbPresent,
    VerbIng,
    MergeSpace,
}

impl Tag {
    pub fn parse(s: &str) -> Result<Tag, DecodeError> {
        if let Some(t) = s.strip_prefix("$APPEND_") {
            return Ok(Tag::Append(t.to_string()));
        }
        if let Some(t) = s.strip_prefix("$REPLACE_") {
            return Ok(Tag::Replace(t.to_string()));
        }
        match s {
            "$KEEP" => Ok(Tag::Keep),
            "$DELETE" => Ok(Tag::Delete),
            "$TRANSFORM_CASE_CAPITAL" => Ok(Tag::CaseCapital),
            "$TRANSFORM_CASE_LOWER" => Ok(Tag::CaseLower),
            "$TRANSFORM_CASE_UPPER" => Ok(Tag::CaseUpper),
            "$TRANSFORM_AGREEMENT" => Ok(Tag::Agreement),
            "$TRANSFORM_VERB_PAST" => Ok(Tag::VerbPast),
            "$TRANSFORM_VERB_PRESENT" => Ok(Tag::VerbPresent),
            "$TRANSFORM_VERB_ING" => Ok(Tag::VerbIng),
            "$MERGE_SPACE" => Ok(Tag::MergeSpace),
            other => Err(DecodeError::UnknownTag(other.to_string())),
        }
    }

    pub fn format(&self) -> String {
        match self {
            Tag::Keep => "$KEEP".to_string(),
            Tag::Delete => "$DELETE".to_string(),
            Tag::Append(t) => format!("$APPEND_{t}"),
            Tag::Replace(t) => format!("$REPLACE_{t}"),
            Tag::CaseCapital => "$TRANSFORM_CASE_CAPITAL".to_string(),
            Tag::CaseLower => "$TRANSFORM_CASE_LOWER".to_string(),
            Tag::CaseUpper => "$TRANSFORM_CASE_UPPER".to_string(),
            Tag::Agreement => "$TRANSFORM_AGREEMENT".to_string(),
            Tag::VerbPast => "$TRANSFORM_VERB_PAST".to_string(),
            Tag::VerbPresent => "$TRANSFORM_VERB_PRESENT".to_string(),
            Tag::VerbIng => "$TRANSFORM_VERB_ING".to_string(),
            Tag::MergeSpace => "$MERGE_SPACE".to_string(),
        }
    }
}

/// Ordered tag inventory; id 0 is always KEEP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagVocab {
    tags: Vec<Tag>,
}

impl TagVocab {
    pub fn new(tags: Vec<Tag>) -> Result<TagVocab, DecodeError> {
        match tags.first() {
            Some(Tag::Keep) => {}
            other => {
                let found = other.map(Tag::format).unwrap_or_default();
                return Err(DecodeError::VocabKeepFirst(found));
            }
        }
        for (i, tag) in tags.iter().enumerate() {
            if tags[..i].contains(tag) {
                return Err(DecodeError::VocabDuplicate(tag.format()));
            }
        }
        Ok(TagVocab { tags })
    }

    /// Parses a sidecar file: one tag per line, blank lines skipped.
    pub fn parse(text: &str) -> Result<TagVocab, DecodeError> {
        let tags = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(Tag::parse)
            .collect::<Result<Vec<_>, _>>()?;
        TagVocab::new(tags)
    }

    pub fn render(&self) -> String {
        self.tags.iter().map(|t| t.format() + "\n").collect()
    }

    /// Built-in inventory: structural tags plus APPEND/REPLACE over the
    /// closed word classes the corruptor draws from.
    pub fn standard() -> TagVocab {
        let lex = lexicon();
        let mut tags = vec![
            Tag::Keep,
            Tag::Delete,
            Tag::CaseCapital,
            Tag::CaseLower,
            Tag::CaseUpper,
            Tag::Agreement,
            Tag::VerbPast,
            Tag::VerbPresent,
            Tag::VerbIng,
            Tag::MergeSpace,
        ];
        let closed_class: Vec<String> = lexicon::DETERMINERS
            .iter()
            .map(|s| s.to_string())
            .chain(lexicon::PUNCT_MARKS.iter().map(|s| s.to_string()))
            .chain(lex.prepositions.iter().cloned())
            .collect();
        for word in &closed_class {
            tags.push(Tag::Append(word.clone()));
        }
        let mut replace_class = closed_class;
        for set in &lex.pronoun_sets {
            for word in set {
                if !replace_class.contains(word) {
                    replace_class.push(word.clone());
                }
            }
        }
        for word in replace_class {
            tags.push(Tag::Replace(word));
        }
        TagVocab::new(tags).expect("standard vocabulary is well-formed")
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn tag(&self, id: usize) -> Option<&Tag> {
        self.tags.get(id)
    }

    pub fn id_of(&self, tag: &Tag) -> Option<usize> {
        self.tags.iter().position(|t| t == tag)
    }
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

fn verb_transform(word: &str, want: &Tag) -> String {
    let lower = word.to_lowercase();
    let Some((paradigm, _)) = lexicon::verb_paradigm_of(&lower) else {
        return word.to_string();
    };
    let target = match want {
        Tag::VerbPast => &paradigm.past,
        Tag::VerbPresent => &paradigm.base,
        Tag::VerbIng => &paradigm.ing,
        _ => return word.to_string(),
    };
    match_case(word, target)
}

/// Applies one tag per token, plus a leading sentinel slot whose APPEND
/// inserts before the first token (other sentinel tags are inert). Transforms
/// that do not apply to a token (unknown verb, say) leave it unchanged.
/// MERGE_SPACE joins a token with its successor only when the successor's own
/// tag is KEEP; otherwise it degrades to KEEP.
pub fn apply_tags(tokens: &[String], tags: &[Tag]) -> Result<Vec<String>, DecodeError> {
    if tags.len() != tokens.len() + 1 {
        return Err(DecodeError::TagCount(tokens.len(), tokens.len() + 1, tags.len()));
    }
    let mut out = Vec::with_capacity(tokens.len());
    if let Tag::Append(t) = &tags[0] {
        out.push(t.clone());
    }
    let mut i = 0;
    while i < tokens.len() {
        let token = &tokens[i];
        match &tags[i + 1] {
            Tag::Keep => out.push(token.clone()),
            Tag::Delete => {}
            Tag::Append(t) => {
                out.push(token.clone());
                out.push(t.clone());
            }
            Tag::Replace(t) => out.push(t.clone()),
            Tag::CaseCapital => out.push(capitalize(token)),
            Tag::CaseLower => out.push(token.to_lowercase()),
            Tag::CaseUpper => out.push(token.to_uppercase()),
            Tag::Agreement => {
                let lower = token.to_lowercase();
                match lexicon::agreement_toggle(&lower) {
                    Some(toggled) => out.push(match_case(token, &toggled)),
                    None => out.push(token.clone()),
                }
            }
            tag @ (Tag::VerbPast | Tag::VerbPresent | Tag::VerbIng) => {
                out.push(verb_transform(token, tag));
            }
            Tag::MergeSpace => {
                if i + 1 < tokens.len() && tags[i + 2] == Tag::Keep {
                    out.push(format!("{token}{}", tokens[i + 1]));
                    i += 2;
                    continue;
                }
                out.push(token.clone());
            }
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InferenceParams {
    pub additional_confidence: f64,
    pub min_error_probability: f64,
    pub max_iterations: usize,
}

impl Default for InferenceParams {
    fn default() -> InferenceParams {
        InferenceParams { additional_confidence: 0.0, min_error_probability: 0.0, max_iterations: 4 }
    }
}

impl InferenceParams {
    fn validate(&self) -> Result<(), DecodeError> {
        if !self.additional_confidence.is_finite() || self.additional_confidence < 0.0 {
            return Err(DecodeError::BadParams(format!(
                "additional_confidence {} must be ≥ 0",
                self.additional_confidence
            )));
        }
        if !(0.0..=1.0).contains(&self.min_error_probability) {
            return Err(DecodeError::BadParams(format!(
                "min_error_probability {} must be in [0,1]",
                self.min_error_probability
            )));
        }
        if self.max_iterations == 0 {
            return Err(DecodeError::BadParams("max_iterations must be ≥ 1".to_string()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub iteration: usize,
    pub sentence_error_prob: f64,
    /// True when the sentence fell below the error threshold and was left alone.
    pub below_threshold: bool,
    /// Chosen tag per token (sentinel excluded), after CSW masking.
    pub tags: Vec<String>,
    /// Token indices pinned to KEEP because their detection argmax was CSW.
    pub masked: Vec<usize>,
    pub tokens_after: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodeOutcome {
    pub tokens: Vec<String>,
    pub trace: Vec<IterationTrace>,
}

fn choose_tags(
    matrix: &TagProbMatrix,
    vocab: &TagVocab,
    additional_confidence: f64,
) -> (Vec<Tag>, Vec<usize>) {
    let mut chosen = Vec::with_capacity(matrix.len());
    let mut masked = Vec::new();
    for i in 0..matrix.len() {
        if detection_argmax(&matrix.detect_probs[i]) == DetectionLabel::Csw {
            masked.push(i);
            chosen.push(Tag::Keep);
            continue;
        }
        let mut best_tag = Tag::Keep;
        let mut best_prob = matrix.tag_prob(i, 0) + additional_confidence;
        for (slot, &id) in matrix.correct_tag_ids[i].iter().enumerate() {
            if id == 0 {
                continue;
            }
            let p = matrix.correct_probs[i][slot];
            if p > best_prob {
                best_prob = p;
                best_tag = vocab.tag(id).expect("validated id").clone();
            }
        }
        chosen.push(best_tag);
    }
    // A merge would swallow the following token, so a masked successor also
    // degrades it to KEEP.
    for (i, tag) in chosen.iter_mut().enumerate() {
        if *tag == Tag::MergeSpace && masked.contains(&(i + 1)) {
            *tag = Tag::Keep;
        }
    }
    (chosen, masked)
}

/// Single-matrix decode: the model is consulted once and the chosen tags are
/// applied in one pass.
pub fn decode(
    matrix: &TagProbMatrix,
    vocab: &TagVocab,
    params: &InferenceParams,
) -> Result<DecodeOutcome, DecodeError> {
    decode_iterative(matrix, vocab, params, |_tokens, _iteration| None)
}

/// Iterative decode for callers that can re-run their model: after each pass
/// the supplier may produce a fresh matrix over the corrected tokens. Decoding
/// stops at `max_iterations`, when the sentence error probability is not
/// above the threshold, when a pass changes nothing, or when the supplier
/// declines.
pub fn decode_iterative<S>(
    matrix: &TagProbMatrix,
    vocab: &TagVocab,
    params: &InferenceParams,
    mut supplier: S,
) -> Result<DecodeOutcome, DecodeError>
where
    S: FnMut(&[String], usize) -> Option<TagProbMatrix>,
{
    params.validate()?;
    let mut current = matrix.clone();
    let mut tokens = matrix.tokens.clone();
    let mut trace = Vec::new();
    for iteration in 0..params.max_iterations {
        current.validate(vocab)?;
        tokens = current.tokens.clone();
        let sentence_error_prob = current
            .detect_probs
            .iter()
            .map(|row| row[DetectionLabel::Incorrect.index()])
            .fold(0.0, f64::max);
        let above_threshold = sentence_error_prob > params.min_error_probability;
        if !above_threshold {
            trace.push(IterationTrace {
                iteration,
                sentence_error_prob,
                below_threshold: true,
                tags: vec![Tag::Keep.format(); tokens.len()],
                masked: Vec::new(),
                tokens_after: tokens.clone(),
            });
            break;
        }
        let (chosen, masked) = choose_tags(&current, vocab, params.additional_confidence);
        let all_keep = chosen.iter().all(|t| *t == Tag::Keep);
        let mut full = Vec::with_capacity(chosen.len() + 1);
        full.push(Tag::Keep);
        full.extend(chosen.iter().cloned());
        let after = apply_tags(&tokens, &full)?;
        trace.push(IterationTrace {
            iteration,
            sentence_error_prob,
            below_threshold: false,
            tags: chosen.iter().map(Tag::format).collect(),
            masked,
            tokens_after: after.clone(),
        });
        tokens = after;
        if all_keep || iteration + 1 == params.max_iterations {
            break;
        }
        match supplier(&tokens, iteration + 1) {
            Some(next) => current = next,
            None => break,
        }
    }
    Ok(DecodeOutcome { tokens, trace })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub additional_confidence: Vec<f64>,
    pub min_error_probability: Vec<f64>,
}

fn steps(to: f64, by: f64) -> Vec<f64> {
    let n = (to / by).round() as usize;
    (0..=n).map(|i| i as f64 * by).collect()
}

impl Default for ParamGrid {
    fn default() -> ParamGrid {
        ParamGrid {
            additional_confidence: steps(0.5, 0.05),
            min_error_probability: steps(0.9, 0.05),
        }
    }
}

/// One dev item: the model's matrix and the reference edits against the
/// matrix's own tokens.
#[derive(Debug, Clone, PartialEq)]
pub struct GridItem {
    pub matrix: TagProbMatrix,
    pub reference: Vec<Edit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScorePoint {
    pub additional_confidence: f64,
    pub min_error_probability: f64,
    pub counts: Counts,
    pub precision: f64,
    pub recall: f64,
    pub f_half: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSearchResult {
    pub best: InferenceParams,
    pub best_point: ScorePoint,
    /// Every grid point's corpus-level score, in evaluation order.
    pub surface: Vec<ScorePoint>,
}

/// Exhaustive search maximizing corpus F0.5. Ties prefer higher precision,
/// then larger min_error_probability, then smaller additional_confidence.
pub fn grid_search(
    items: &[GridItem],
    vocab: &TagVocab,
    grid: &ParamGrid,
    max_iterations: usize,
) -> Result<GridSearchResult, DecodeError> {
    if items.is_empty() {
        return Err(DecodeError::EmptyDevSet);
    }
    if grid.additional_confidence.is_empty() || grid.min_error_probability.is_empty() {
        return Err(DecodeError::EmptyGrid);
    }
    let mut surface = Vec::new();
    let mut best: Option<ScorePoint> = None;
    for &ac in &grid.additional_confidence {
        for &mep in &grid.min_error_probability {
            let params = InferenceParams {
                additional_confidence: ac,
                min_error_probability: mep,
                max_iterations,
            };
            let mut counts = Counts::default();
            for item in items {
                let outcome = decode(&item.matrix, vocab, &params)?;
                let hyp = align_edits(&item.matrix.tokens, &outcome.tokens);
                let report = score_pair(
                    &item.matrix.tokens,
                    &hyp,
                    &item.reference,
                    ScoreMode::SpanAndReplacement,
                );
                counts.add(report.overall);
            }
            let point = ScorePoint {
                additional_confidence: ac,
                min_error_probability: mep,
                counts,
                precision: counts.precision(),
                recall: counts.recall(),
                f_half: counts.f_half(),
            };
            let better = match &best {
                None => true,
                Some(b) => {
                    (point.f_half, point.precision, point.min_error_probability, -point.additional_confidence)
                        > (b.f_half, b.precision, b.min_error_probability, -b.additional_confidence)
                }
            };
            if better {
                best = Some(point.clone());
            }
            surface.push(point);
        }
    }
    let best_point = best.expect("grid is non-empty");
    Ok(GridSearchResult {
        best: InferenceParams {
            additional_confidence: best_point.additional_confidence,
            min_error_probability: best_point.min_error_probability,
            max_iterations,
        },
        best_point,
        surface,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    fn tags(list: &[&str]) -> Vec<Tag> {
        list.iter().map(|s| Tag::parse(s).unwrap()).collect()
    }

    #[test]
    fn tag_strings_round_trip() {
        let all = [
            "$KEEP",
            "$DELETE",
            "$APPEND_the",
            "$REPLACE_goes",
            "$TRANSFORM_CASE_CAPITAL",
            "$TRANSFORM_CASE_LOWER",
            "$TRANSFORM_CASE_UPPER",
            "$TRANSFORM_AGREEMENT",
            "$TRANSFORM_VERB_PAST",
            "$TRANSFORM_VERB_PRESENT",
            "$TRANSFORM_VERB_ING",
            "$MERGE_SPACE",
        ];
        for s in all {
            assert_eq!(Tag::parse(s).unwrap().format(), s);
        }
        assert!(matches!(Tag::parse("$NOPE"), Err(DecodeError::UnknownTag(_))));
        assert!(matches!(Tag::parse("KEEP"), Err(DecodeError::UnknownTag(_))));
    }

    #[test]
    fn vocab_requires_keep_first_and_uniqueness() {
        assert!(TagVocab::parse("$KEEP\n$DELETE\n").is_ok());
        assert!(matches!(
            TagVocab::parse("$DELETE\n$KEEP\n"),
            Err(DecodeError::VocabKeepFirst(_))
        ));
        assert!(matches!(
            TagVocab::parse("$KEEP\n$DELETE\n$DELETE\n"),
            Err(DecodeError::VocabDuplicate(_))
        ));
        let std = TagVocab::standard();
        assert_eq!(std.tag(0), Some(&Tag::Keep));
        assert!(std.id_of(&Tag::Replace("the".into())).is_some());
        let reparsed = TagVocab::parse(&std.render()).unwrap();
        assert_eq!(reparsed, std);
    }

    #[test]
    fn apply_identity_and_length_check() {
        let tokens = toks("a b c");
        let keeps = vec![Tag::Keep; 4];
        assert_eq!(apply_tags(&tokens, &keeps).unwrap(), tokens);
        assert!(matches!(
            apply_tags(&tokens, &vec![Tag::Keep; 3]),
            Err(DecodeError::TagCount(3, 4, 3))
        ));
    }

    #[test]
    fn apply_edit_semantics() {
        let out = apply_tags(&toks("New"), &tags(&["$KEEP", "$TRANSFORM_CASE_LOWER"])).unwrap();
        assert_eq!(out, toks("new"));
        let out = apply_tags(&toks("He go"), &tags(&["$KEEP", "$KEEP", "$TRANSFORM_AGREEMENT"])).unwrap();
        assert_eq!(out, toks("He goes"));
        let out = apply_tags(&toks("I dog"), &tags(&["$KEEP", "$APPEND_have", "$KEEP"])).unwrap();
        assert_eq!(out, toks("I have dog"));
        let out = apply_tags(&toks("b c"), &tags(&["$APPEND_a", "$KEEP", "$KEEP"])).unwrap();
        assert_eq!(out, toks("a b c"));
        let out = apply_tags(&toks("x y"), &tags(&["$KEEP", "$DELETE", "$REPLACE_z"])).unwrap();
        assert_eq!(out, toks("z"));
        let out = apply_tags(&toks("walk fast"), &tags(&["$KEEP", "$TRANSFORM_VERB_PAST", "$KEEP"])).unwrap();
        assert_eq!(out, toks("walked fast"));
        let out = apply_tags(&toks("going"), &tags(&["$KEEP", "$TRANSFORM_VERB_PRESENT"])).unwrap();
        assert_eq!(out, toks("go"));
    }

    #[test]
    fn merge_space_needs_a_kept_successor() {
        let out = apply_tags(&toks("some thing"), &tags(&["$KEEP", "$MERGE_SPACE", "$KEEP"])).unwrap();
        assert_eq!(out, toks("something"));
        let out = apply_tags(&toks("some thing"), &tags(&["$KEEP", "$MERGE_SPACE", "$DELETE"])).unwrap();
        assert_eq!(out, toks("some"));
        let out = apply_tags(&toks("some"), &tags(&["$KEEP", "$MERGE_SPACE"])).unwrap();
        assert_eq!(out, toks("some"));
    }

    #[test]
    fn unknown_verbs_pass_through_transforms() {
        let out = apply_tags(&toks("zzz"), &tags(&["$KEEP", "$TRANSFORM_VERB_PAST"])).unwrap();
        assert_eq!(out, toks("zzz"));
        let out = apply_tags(&toks("ラーメン"), &tags(&["$KEEP", "$TRANSFORM_AGREEMENT"])).unwrap();
        assert_eq!(out, toks("ラーメン"));
    }

    fn fixture_vocab() -> TagVocab {
        TagVocab::parse("$KEEP\n$DELETE\n$REPLACE_goes\n$REPLACE_like\n$REPLACE_fish\n").unwrap()
    }

    // "He go home": "go" wants REPLACE_goes at 0.52 vs KEEP 0.48.
    fn go_matrix() -> TagProbMatrix {
        TagProbMatrix {
            tokens: toks("He go home"),
            detect_probs: vec![[0.95, 0.05, 0.0], [0.55, 0.45, 0.0], [0.95, 0.05, 0.0]],
            correct_tag_ids: vec![vec![0], vec![0, 2], vec![0]],
            correct_probs: vec![vec![1.0], vec![0.48, 0.52], vec![1.0]],
        }
    }

    // "I love スシ": the CSW token would be rewritten were it not masked.
    fn masked_matrix() -> TagProbMatrix {
        TagProbMatrix {
            tokens: toks("I love スシ"),
            detect_probs: vec![[0.9, 0.1, 0.0], [0.9, 0.1, 0.0], [0.05, 0.45, 0.5]],
            correct_tag_ids: vec![vec![0], vec![0], vec![0, 4]],
            correct_probs: vec![vec![1.0], vec![1.0], vec![0.1, 0.9]],
        }
    }

    #[test]
    fn decode_edits_when_above_threshold() {
        let vocab = fixture_vocab();
        let params = InferenceParams { min_error_probability: 0.4, ..Default::default() };
        let out = decode(&go_matrix(), &vocab, &params).unwrap();
        assert_eq!(out.tokens, toks("He goes home"));
        assert_eq!(out.trace.len(), 1);
        assert!(!out.trace[0].below_threshold);
        assert_eq!(out.trace[0].tags[1], "$REPLACE_goes");
    }

    #[test]
    fn threshold_rule_is_strictly_greater() {
        let vocab = fixture_vocab();
        let at = InferenceParams { min_error_probability: 0.45, ..Default::default() };
        let out = decode(&go_matrix(), &vocab, &at).unwrap();
        assert_eq!(out.tokens, toks("He go home"));
        assert!(out.trace[0].below_threshold);
        assert_eq!(out.trace[0].sentence_error_prob, 0.45);
    }

    #[test]
    fn additional_confidence_biases_toward_keep() {
        let vocab = fixture_vocab();
        let params = InferenceParams { additional_confidence: 0.05, ..Default::default() };
        let out = decode(&go_matrix(), &vocab, &params).unwrap();
        assert_eq!(out.tokens, toks("He go home"));
        let huge = InferenceParams { additional_confidence: 10.0, ..Default::default() };
        let out = decode(&go_matrix(), &vocab, &huge).unwrap();
        assert_eq!(out.tokens, toks("He go home"));
    }

    #[test]
    fn csw_argmax_tokens_are_pinned() {
        let vocab = fixture_vocab();
        let out = decode(&masked_matrix(), &vocab, &InferenceParams::default()).unwrap();
        assert_eq!(out.tokens, toks("I love スシ"));
        assert_eq!(out.trace[0].masked, vec![2]);
        assert_eq!(out.trace[0].tags[2], "$KEEP");
    }

    #[test]
    fn iterative_decode_consults_the_supplier() {
        let vocab = fixture_vocab();
        let second = TagProbMatrix {
            tokens: toks("He goes home"),
            detect_probs: vec![[0.9, 0.1, 0.0], [0.6, 0.4, 0.0], [0.9, 0.1, 0.0]],
            correct_tag_ids: vec![vec![0], vec![0, 3], vec![0]],
            correct_probs: vec![vec![1.0], vec![0.3, 0.7], vec![1.0]],
        };
        let params = InferenceParams { max_iterations: 4, ..Default::default() };
        let out = decode_iterative(&go_matrix(), &vocab, &params, |tokens, _| {
            (tokens == toks("He goes home")).then(|| second.clone())
        })
        .unwrap();
        assert_eq!(out.trace.len(), 2);
        assert_eq!(out.tokens, toks("He like home"));

        let capped = InferenceParams { max_iterations: 1, ..Default::default() };
        let out = decode_iterative(&go_matrix(), &vocab, &capped, |tokens, _| {
            (tokens == toks("He goes home")).then(|| second.clone())
        })
        .unwrap();
        assert_eq!(out.tokens, toks("He goes home"));
    }

    #[test]
    fn decode_rejects_bad_params_and_shapes() {
        let vocab = fixture_vocab();
        let bad = InferenceParams { additional_confidence: -0.1, ..Default::default() };
        assert!(matches!(
            decode(&go_matrix(), &vocab, &bad),
            Err(DecodeError::BadParams(_))
        ));
        let mut matrix = go_matrix();
        matrix.correct_tag_ids[1] = vec![0, 40];
        assert!(matches!(
            decode(&matrix, &vocab, &InferenceParams::default()),
            Err(DecodeError::BadTagId { .. })
        ));
    }

    fn grid_items() -> Vec<GridItem> {
        let replace_like = TagProbMatrix {
            tokens: toks("She likes tea"),
            detect_probs: vec![[0.95, 0.05, 0.0], [0.65, 0.35, 0.0], [0.95, 0.05, 0.0]],
            correct_tag_ids: vec![vec![0], vec![0, 3], vec![0]],
            correct_probs: vec![vec![1.0], vec![0.4, 0.6], vec![1.0]],
        };
        vec![
            GridItem {
                matrix: go_matrix(),
                reference: vec![Edit::new(1, 2, vec!["goes".into()])],
            },
            GridItem { matrix: replace_like.clone(), reference: vec![] },
            GridItem { matrix: replace_like, reference: vec![] },
            GridItem { matrix: masked_matrix(), reference: vec![] },
        ]
    }

    #[test]
    fn grid_search_finds_the_threshold_that_kills_false_positives() {
        let result = grid_search(&grid_items(), &fixture_vocab(), &ParamGrid::default(), 1).unwrap();
        assert_eq!(result.best.additional_confidence, 0.0);
        assert_eq!(result.best.min_error_probability, 0.4);
        assert_eq!(result.best_point.f_half, 1.0);
        assert_eq!(result.surface.len(), 11 * 19);
        // The reported score must match re-decoding at the winning point.
        let vocab = fixture_vocab();
        let mut counts = Counts::default();
        for item in grid_items() {
            let out = decode(&item.matrix, &vocab, &result.best).unwrap();
            let hyp = align_edits(&item.matrix.tokens, &out.tokens);
            counts.add(
                score_pair(&item.matrix.tokens, &hyp, &item.reference, ScoreMode::SpanAndReplacement)
                    .overall,
            );
        }
        assert_eq!(counts.f_half(), result.best_point.f_half);
    }

    #[test]
    fn grid_search_single_cell_and_errors() {
        let grid = ParamGrid { additional_confidence: vec![0.1], min_error_probability: vec![0.2] };
        let result = grid_search(&grid_items(), &fixture_vocab(), &grid, 1).unwrap();
        assert_eq!(result.best.additional_confidence, 0.1);
        assert_eq!(result.best.min_error_probability, 0.2);
        assert_eq!(result.surface.len(), 1);

        let empty = ParamGrid { additional_confidence: vec![], min_error_probability: vec![0.0] };
        assert_eq!(
            grid_search(&grid_items(), &fixture_vocab(), &empty, 1).unwrap_err(),
            DecodeError::EmptyGrid
        );
        assert_eq!(
            grid_search(&[], &fixture_vocab(), &ParamGrid::default(), 1).unwrap_err(),
            DecodeError::EmptyDevSet
        );
    }

    #[test]
    fn keep_bias_monotonicity() {
        let vocab = fixture_vocab();
        let matrix = go_matrix();
        let mut last_edits = usize::MAX;
        for step in 0..=10 {
            let ac = step as f64 * 0.05;
            let params = InferenceParams { additional_confidence: ac, ..Default::default() };
            let out = decode(&matrix, &vocab, &params).unwrap();
            let edits = out.trace[0].tags.iter().filter(|t| *t != "$KEEP").count();
            assert!(edits <= last_edits);
            last_edits = edits;
        }
    }

    #[test]
    fn default_grid_matches_documented_ranges() {
        let grid = ParamGrid::default();
        assert_eq!(grid.additional_confidence.len(), 11);
        assert_eq!(grid.min_error_probability.len(), 19);
        assert_eq!(grid.additional_confidence[0], 0.0);
        assert!((grid.additional_confidence[10] - 0.5).abs() < 1e-12);
        assert!((grid.min_error_probability[18] - 0.9).abs() < 1e-12);
    }
}
