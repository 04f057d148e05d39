//! Edit extraction, classification, and scoring for GEC evaluation.
//!
//! Alignment is token-level Damerau-Levenshtein with substitution costs that
//! favor case variants and shared-stem pairs, so inflection errors align as
//! substitutions instead of insert+delete pairs. Adjacent runs of non-matching
//! operations merge into span edits, which makes scripts like full phrase
//! reorderings come out as a single edit.

pub mod m2;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::{self, lexicon};
use crate::text::{classify_char, Script};

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("edits overlap at source positions {0}..{1}")]
    OverlappingEdits(usize, usize),
    #[error("edit span {start}..{end} exceeds source length {len}")]
    OutOfBounds { start: usize, end: usize, len: usize },
    #[error("hypothesis and reference disagree on source: {0}")]
    SourceMismatch(String),
    #[error("M2 parse error at line {line}: {msg}")]
    M2Parse { line: usize, msg: String },
}

/// Error categories used for per-type scoring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ErrorCategory {
    Det,
    Noun,
    Orth,
    Other,
    Prep,
    Pron,
    Punct,
    Verb,
    VerbForm,
    VerbSva,
    VerbTense,
    Wo,
}

impl ErrorCategory {
    pub const ALL: [ErrorCategory; 12] = [
        ErrorCategory::Det,
        ErrorCategory::Noun,
        ErrorCategory::Orth,
        ErrorCategory::Other,
        ErrorCategory::Prep,
        ErrorCategory::Pron,
        ErrorCategory::Punct,
        ErrorCategory::Verb,
        ErrorCategory::VerbForm,
        ErrorCategory::VerbSva,
        ErrorCategory::VerbTense,
        ErrorCategory::Wo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorCategory::Det => "DET",
            ErrorCategory::Noun => "NOUN",
            ErrorCategory::Orth => "ORTH",
            ErrorCategory::Other => "OTHER",
            ErrorCategory::Prep => "PREP",
            ErrorCategory::Pron => "PRON",
            ErrorCategory::Punct => "PUNCT",
            ErrorCategory::Verb => "VERB",
            ErrorCategory::VerbForm => "VERB:FORM",
            ErrorCategory::VerbSva => "VERB:SVA",
            ErrorCategory::VerbTense => "VERB:TENSE",
            ErrorCategory::Wo => "WO",
        }
    }

    /// Parses a category name, tolerating ERRANT-style `M:`/`R:`/`U:` prefixes.
    pub fn parse(s: &str) -> Option<ErrorCategory> {
        let s = s.strip_prefix("M:").or_else(|| s.strip_prefix("R:")).or_else(|| s.strip_prefix("U:")).unwrap_or(s);
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A span replacement over source tokens. `start == end` inserts before
/// `start`; an empty replacement deletes the span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edit {
    pub start: usize,
    pub end: usize,
    pub replacement: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<ErrorCategory>,
}

impl Edit {
    pub fn new(start: usize, end: usize, replacement: Vec<String>) -> Edit {
        Edit { start, end, replacement, category: None }
    }

    pub fn is_insertion(&self) -> bool {
        self.start == self.end
    }
}

const COST_INDEL: f64 = 1.0;
const COST_TRANSPOSE: f64 = 1.0;
const COST_SUB_CASE: f64 = 0.25;
const COST_SUB_STEM: f64 = 0.5;
const COST_SUB: f64 = 1.0;

fn shared_stem(a: &str, b: &str) -> bool {
    let a: Vec<char> = a.to_lowercase().chars().collect();
    let b: Vec<char> = b.to_lowercase().chars().collect();
    let prefix = a.iter().zip(b.iter()).take_while(|(x, y)| x == y).count();
    prefix >= 3 || (prefix >= 1 && prefix == a.len().min(b.len()))
}

/// Substitution cost between two unequal tokens.
fn sub_cost(a: &str, b: &str) -> f64 {
    if a.to_lowercase() == b.to_lowercase() {
        COST_SUB_CASE
    } else if shared_stem(a, b) {
        COST_SUB_STEM
    } else {
        COST_SUB
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Op {
    Start,
    Match,
    Sub,
    Trans,
    Del,
    Ins,
}

fn dp_align(source: &[String], target: &[String]) -> (Vec<Vec<f64>>, Vec<Vec<Op>>) {
    let n = source.len();
    let m = target.len();
    let mut d = vec![vec![0.0f64; m + 1]; n + 1];
    let mut ops = vec![vec![Op::Start; m + 1]; n + 1];
    for i in 1..=n {
        d[i][0] = i as f64 * COST_INDEL;
        ops[i][0] = Op::Del;
    }
    for j in 1..=m {
        d[0][j] = j as f64 * COST_INDEL;
        ops[0][j] = Op::Ins;
    }
    for i in 1..=n {
        for j in 1..=m {
            // Candidates in tie-break preference order: diagonal first (so
            // substitutions beat insert+delete and edits lean left), then
            // transposition, deletion, insertion.
            let mut best;
            if source[i - 1] == target[j - 1] {
                best = (d[i - 1][j - 1], Op::Match);
            } else {
                best = (d[i - 1][j - 1] + sub_cost(&source[i - 1], &target[j - 1]), Op::Sub);
            }
            if i >= 2
                && j >= 2
                && source[i - 1] == target[j - 2]
                && source[i - 2] == target[j - 1]
                && source[i - 1] != source[i - 2]
            {
                let c = d[i - 2][j - 2] + COST_TRANSPOSE;
                if c < best.0 {
                    best = (c, Op::Trans);
                }
            }
            let del = d[i - 1][j] + COST_INDEL;
            if del < best.0 {
                best = (del, Op::Del);
            }
            let ins = d[i][j - 1] + COST_INDEL;
            if ins < best.0 {
                best = (ins, Op::Ins);
            }
            d[i][j] = best.0;
            ops[i][j] = best.1;
        }
    }
    (d, ops)
}

/// Minimal edit-script cost between two token sequences under the aligner's
/// cost model.
pub fn alignment_cost(source: &[String], target: &[String]) -> f64 {
    dp_align(source, target).0[source.len()][target.len()]
}

/// Extracts span edits turning `source` into `target`. Adjacent non-matching
/// operations merge into one edit; `apply_edits` on the result reproduces
/// `target` exactly.
pub fn align_edits(source: &[String], target: &[String]) -> Vec<Edit> {
    let (_, ops) = dp_align(source, target);
    // Backtrace to a left-to-right op sequence.
    let mut trace = Vec::new();
    let (mut i, mut j) = (source.len(), target.len());
    while i > 0 || j > 0 {
        let op = ops[i][j];
        trace.push(op);
        match op {
            Op::Match | Op::Sub => {
                i -= 1;
                j -= 1;
            }
            Op::Trans => {
                i -= 2;
                j -= 2;
            }
            Op::Del => i -= 1,
            Op::Ins => j -= 1,
            Op::Start => break,
        }
    }
    trace.reverse();

    let mut edits = Vec::new();
    let (mut si, mut ti) = (0usize, 0usize);
    let mut open: Option<(usize, usize)> = None; // (src_start, tgt_start)
    let close = |open: &mut Option<(usize, usize)>, si: usize, ti: usize, edits: &mut Vec<Edit>| {
        if let Some((ss, ts)) = open.take() {
            edits.push(Edit::new(ss, si, target[ts..ti].to_vec()));
        }
    };
    for op in trace {
        match op {
            Op::Match => {
                close(&mut open, si, ti, &mut edits);
                si += 1;
                ti += 1;
            }
            Op::Sub => {
                open.get_or_insert((si, ti));
                si += 1;
                ti += 1;
            }
            Op::Trans => {
                open.get_or_insert((si, ti));
                si += 2;
                ti += 2;
            }
            Op::Del => {
                open.get_or_insert((si, ti));
                si += 1;
            }
            Op::Ins => {
                open.get_or_insert((si, ti));
                ti += 1;
            }
            Op::Start => {}
        }
    }
    close(&mut open, si, ti, &mut edits);
    edits
}

/// Applies span edits right to left. Edits are sorted internally; truly
/// overlapping spans are an error, as are spans past the end of `source`.
pub fn apply_edits(source: &[String], edits: &[Edit]) -> Result<Vec<String>, EvalError> {
    let mut sorted: Vec<&Edit> = edits.iter().collect();
    sorted.sort_by_key(|e| (e.start, e.end));
    for e in &sorted {
        if e.start > e.end || e.end > source.len() {
            return Err(EvalError::OutOfBounds { start: e.start, end: e.end, len: source.len() });
        }
    }
    for pair in sorted.windows(2) {
        if pair[0].end > pair[1].start {
            return Err(EvalError::OverlappingEdits(pair[1].start, pair[0].end));
        }
    }
    let mut out: Vec<String> = source.to_vec();
    for e in sorted.iter().rev() {
        out.splice(e.start..e.end, e.replacement.iter().cloned());
    }
    Ok(out)
}

fn is_punct_token(tok: &str) -> bool {
    !tok.is_empty() && tok.chars().all(|c| classify_char(c) == Script::Punct)
}

fn all_in<F: Fn(&str) -> bool>(edit_src: &[String], repl: &[String], pred: F) -> bool {
    let total = edit_src.len() + repl.len();
    total > 0 && edit_src.iter().chain(repl.iter()).all(|t| pred(&t.to_lowercase()))
}

fn casefold_multiset(tokens: &[String]) -> Vec<String> {
    let mut v: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
    v.sort();
    v
}

/// True when a third-person-singular subject cue precedes `pos`. The nearest
/// personal pronoun decides; without one the toggle defaults to agreement.
fn third_person_subject_before(source: &[String], pos: usize) -> bool {
    for tok in source[..pos.min(source.len())].iter().rev() {
        match tok.to_lowercase().as_str() {
            "he" | "she" | "it" | "this" | "that" => return true,
            "i" | "you" | "we" | "they" | "these" | "those" => return false,
            _ => {}
        }
    }
    true
}

/// Rule-cascade classifier: first matching rule wins. It is deliberately
/// lexicon-driven; no parser or tagger is involved.
pub fn classify_edit(edit: &Edit, source: &[String]) -> ErrorCategory {
    let lex = lexicon();
    let span: &[String] = &source[edit.start.min(source.len())..edit.end.min(source.len())];
    let repl: &[String] = &edit.replacement;
    let one_to_one = span.len() == 1 && repl.len() == 1;

    // Case-only rewrites.
    if !span.is_empty()
        && span.len() == repl.len()
        && span.iter().zip(repl).all(|(a, b)| a != b && a.to_lowercase() == b.to_lowercase())
    {
        return ErrorCategory::Orth;
    }
    if all_in(span, repl, is_punct_token) {
        return ErrorCategory::Punct;
    }
    if all_in(span, repl, |t| lex.is_determiner(t)) {
        return ErrorCategory::Det;
    }
    if all_in(span, repl, |t| lex.is_pronoun(t)) {
        return ErrorCategory::Pron;
    }
    if all_in(span, repl, |t| lex.is_preposition(t)) {
        return ErrorCategory::Prep;
    }
    // Reordering: same words, different order.
    if span.len() >= 2 && span != repl && casefold_multiset(span) == casefold_multiset(repl) {
        return ErrorCategory::Wo;
    }
    if one_to_one {
        let (a, b) = (span[0].to_lowercase(), repl[0].to_lowercase());
        let verb = lexicon::verb_pair(&a, &b);
        if verb.is_none() && lexicon::is_noun_number_pair(&a, &b) {
            return ErrorCategory::Noun;
        }
        if let Some((fa, fb)) = verb {
            use crate::lexicon::VerbForm::*;
            let past = fa == Past || fb == Past;
            let s_toggle = matches!((fa, fb), (Base, Third) | (Third, Base));
            let ing = fa == Ing || fb == Ing;
            if past && !(fa == Past && fb == Past) {
                return ErrorCategory::VerbTense;
            }
            if s_toggle {
                return if third_person_subject_before(source, edit.start) {
                    ErrorCategory::VerbSva
                } else {
                    ErrorCategory::VerbForm
                };
            }
            if ing {
                return ErrorCategory::VerbForm;
            }
            return ErrorCategory::Verb;
        }
        // Lexical verb swap: both sides live in the verb space.
        if lexicon::verb_paradigm_of(&a).is_some() && lexicon::verb_paradigm_of(&b).is_some() {
            return ErrorCategory::Verb;
        }
    }
    ErrorCategory::Other
}

/// Fills in categories for every edit lacking one.
pub fn classify_all(source: &[String], edits: &mut [Edit]) {
    for e in edits.iter_mut() {
        if e.category.is_none() {
            e.category = Some(classify_edit(e, source));
        }
    }
}

/// What counts as a true positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScoreMode {
    SpanOnly,
    SpanAndReplacement,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl Counts {
    pub fn precision(&self) -> f64 {
        let denom = self.tp + self.fp;
        if denom == 0 {
            0.0
        } else {
            self.tp as f64 / denom as f64
        }
    }

    pub fn recall(&self) -> f64 {
        let denom = self.tp + self.fn_;
        if denom == 0 {
            0.0
        } else {
            self.tp as f64 / denom as f64
        }
    }

    pub fn f_half(&self) -> f64 {
        f_beta(self.precision(), self.recall(), 0.5)
    }

    pub fn add(&mut self, other: Counts) {
        self.tp += other.tp;
        self.fp += other.fp;
        self.fn_ += other.fn_;
    }
}

/// `(1 + beta^2) * p * r / (beta^2 * p + r)`, and 0 when both inputs are 0.
pub fn f_beta(p: f64, r: f64, beta: f64) -> f64 {
    if p == 0.0 && r == 0.0 {
        return 0.0;
    }
    let b2 = beta * beta;
    let denom = b2 * p + r;
    if denom == 0.0 {
        0.0
    } else {
        (1.0 + b2) * p * r / denom
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub overall: Counts,
    pub per_category: BTreeMap<ErrorCategory, Counts>,
}

impl ScoreReport {
    pub fn merge(&mut self, other: &ScoreReport) {
        self.overall.add(other.overall);
        for (cat, counts) in &other.per_category {
            self.per_category.entry(*cat).or_default().add(*counts);
        }
    }

    /// Plain-text table: per-category P/R/F0.5 plus raw counts, then a total row.
    pub fn render(&self) -> String {
        let mut out = String::from("Category     P       R       F0.5    TP      FP      FN\n");
        let mut row = |name: &str, c: &Counts| {
            out.push_str(&format!(
                "{name:<12} {:<7.2} {:<7.2} {:<7.2} {:<7} {:<7} {}\n",
                c.precision() * 100.0,
                c.recall() * 100.0,
                c.f_half() * 100.0,
                c.tp,
                c.fp,
                c.fn_
            ));
        };
        for (cat, counts) in &self.per_category {
            row(cat.name(), counts);
        }
        row("ALL", &self.overall);
        out
    }
}

fn edit_key(edit: &Edit, mode: ScoreMode) -> (usize, usize, String) {
    match mode {
        ScoreMode::SpanOnly => (edit.start, edit.end, String::new()),
        ScoreMode::SpanAndReplacement => (edit.start, edit.end, edit.replacement.join(" ")),
    }
}

/// Scores one sentence's hypothesis edits against its reference edits.
/// True positives and misses count under the reference category; spurious
/// edits count under the hypothesis category.
pub fn score_pair(source: &[String], hyp: &[Edit], reference: &[Edit], mode: ScoreMode) -> ScoreReport {
    let classify = |e: &Edit| e.category.unwrap_or_else(|| classify_edit(e, source));
    let mut report = ScoreReport::default();
    let mut hyp_pool: BTreeMap<(usize, usize, String), u64> = BTreeMap::new();
    for e in hyp {
        *hyp_pool.entry(edit_key(e, mode)).or_insert(0) += 1;
    }
    for r in reference {
        let key = edit_key(r, mode);
        let cat = classify(r);
        let slot = report.per_category.entry(cat).or_default();
        match hyp_pool.get_mut(&key) {
            Some(n) if *n > 0 => {
                *n -= 1;
                slot.tp += 1;
                report.overall.tp += 1;
            }
            _ => {
                slot.fn_ += 1;
                report.overall.fn_ += 1;
            }
        }
    }
    // Whatever remains unmatched in the pool is spurious; recount from the
    // hypothesis list so each leftover keeps its own category.
    let mut leftovers = hyp_pool;
    for h in hyp {
        let key = edit_key(h, mode);
        if let Some(n) = leftovers.get_mut(&key) {
            if *n > 0 {
                *n -= 1;
                let cat = classify(h);
                report.per_category.entry(cat).or_default().fp += 1;
                report.overall.fp += 1;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn aligns_inflection_as_substitution() {
        let edits = align_edits(&toks("He go to school"), &toks("He goes to school"));
        assert_eq!(edits, vec![Edit::new(1, 2, vec!["goes".into()])]);
    }

    #[test]
    fn merges_full_reordering_into_one_span() {
        let edits = align_edits(&toks("I and my girlfriend"), &toks("My girlfriend and I"));
        assert_eq!(edits, vec![Edit::new(0, 4, toks("My girlfriend and I"))]);
    }

    #[test]
    fn adjacent_swap_uses_transposition() {
        let edits = align_edits(&toks("I like really ramen"), &toks("I really like ramen"));
        assert_eq!(edits, vec![Edit::new(1, 3, toks("really like"))]);
        assert_eq!(alignment_cost(&toks("I like really ramen"), &toks("I really like ramen")), 1.0);
    }

    #[test]
    fn identical_sequences_need_no_edits() {
        assert!(align_edits(&toks("nothing to fix"), &toks("nothing to fix")).is_empty());
        assert!(align_edits(&[], &[]).is_empty());
    }

    #[test]
    fn insertion_and_deletion_edits() {
        let edits = align_edits(&toks("I have dog ."), &toks("I have a dog ."));
        assert_eq!(edits, vec![Edit::new(2, 2, vec!["a".into()])]);
        let edits = align_edits(&toks("I have a a dog ."), &toks("I have a dog ."));
        assert_eq!(edits.len(), 1);
        assert!(edits[0].replacement.is_empty());
    }

    #[test]
    fn round_trip_on_mixed_script_tokens() {
        let src = toks("今日 は I go to 学校 。");
        let tgt = toks("今日 は I went to the 学校 。");
        let edits = align_edits(&src, &tgt);
        assert_eq!(apply_edits(&src, &edits).unwrap(), tgt);
    }

    #[test]
    fn apply_rejects_overlap_and_out_of_bounds() {
        let src = toks("a b c");
        let e1 = Edit::new(0, 2, vec!["x".into()]);
        let e2 = Edit::new(1, 3, vec!["y".into()]);
        assert!(matches!(apply_edits(&src, &[e1, e2]), Err(EvalError::OverlappingEdits(..))));
        let e3 = Edit::new(2, 4, vec![]);
        assert!(matches!(apply_edits(&src, &[e3]), Err(EvalError::OutOfBounds { .. })));
    }

    #[test]
    fn apply_handles_adjacent_and_insertion_edits() {
        let src = toks("a b c d");
        let edits = vec![Edit::new(1, 2, vec!["x".into()]), Edit::new(2, 4, vec!["y".into()])];
        assert_eq!(apply_edits(&src, &edits).unwrap(), toks("a x y"));
        let edits = vec![Edit::new(0, 0, vec!["start".into()]), Edit::new(4, 4, vec!["end".into()])];
        assert_eq!(apply_edits(&src, &edits).unwrap(), toks("start a b c d end"));
    }

    fn cat(src: &str, start: usize, end: usize, repl: &str) -> ErrorCategory {
        let source = toks(src);
        let edit = Edit::new(start, end, toks(repl));
        classify_edit(&edit, &source)
    }

    #[test]
    fn classifier_rule_cascade() {
        assert_eq!(cat("i like tokyo", 2, 3, "Tokyo"), ErrorCategory::Orth);
        assert_eq!(cat("I like ramen .", 3, 4, ","), ErrorCategory::Punct);
        assert_eq!(cat("I have dog", 2, 2, "a"), ErrorCategory::Det);
        assert_eq!(cat("me like it", 0, 1, "I"), ErrorCategory::Pron);
        assert_eq!(cat("I live at Tokyo", 2, 3, "in"), ErrorCategory::Prep);
        assert_eq!(cat("I like really ramen", 1, 3, "really like"), ErrorCategory::Wo);
        assert_eq!(cat("I have two dog", 3, 4, "dogs"), ErrorCategory::Noun);
        assert_eq!(cat("He go to school", 1, 2, "goes"), ErrorCategory::VerbSva);
        assert_eq!(cat("They goes there", 1, 2, "go"), ErrorCategory::VerbForm);
        assert_eq!(cat("He eat yesterday", 1, 2, "ate"), ErrorCategory::VerbTense);
        assert_eq!(cat("He is walk now", 2, 3, "walking"), ErrorCategory::VerbForm);
        assert_eq!(cat("He will eat it", 2, 3, "drink"), ErrorCategory::Verb);
        assert_eq!(cat("This is strange word", 2, 3, "a strange"), ErrorCategory::Other);
    }

    #[test]
    fn classifier_separates_noun_and_verb_s_toggles() {
        // "goes" is also a valid noun pluralization of "go"; the verb paradigm
        // must win.
        assert_eq!(cat("He go home", 1, 2, "goes"), ErrorCategory::VerbSva);
        assert_eq!(cat("the dog bark", 1, 2, "dogs"), ErrorCategory::Noun);
        assert_eq!(cat("one leaf fell", 1, 2, "leaves"), ErrorCategory::Noun);
    }

    #[test]
    fn f_beta_fixtures() {
        assert!((f_beta(0.7114, 0.2708, 0.5) - 0.536741).abs() < 1e-5);
        assert_eq!(f_beta(0.0, 0.0, 0.5), 0.0);
        let c = Counts { tp: 432, fp: 80, fn_: 205 };
        assert!((c.precision() - 0.84375).abs() < 1e-9);
        assert!((c.recall() - 0.678178).abs() < 1e-6);
        // Same number through the one-line identity (1+β²)tp / ((1+β²)tp + β²fn + fp).
        assert!((c.f_half() - 540.0 / 671.25).abs() < 1e-12);
    }

    #[test]
    fn scoring_counts_tp_fp_fn_by_category() {
        let source = toks("He go to school yesterday");
        let gold = vec![
            Edit::new(1, 2, vec!["goes".into()]),
            Edit::new(4, 5, vec![]),
        ];
        let hyp = vec![
            Edit::new(1, 2, vec!["goes".into()]),
            Edit::new(2, 3, vec!["at".into()]),
        ];
        let report = score_pair(&source, &hyp, &gold, ScoreMode::SpanAndReplacement);
        assert_eq!(report.overall, Counts { tp: 1, fp: 1, fn_: 1 });
        assert_eq!(report.per_category[&ErrorCategory::VerbSva].tp, 1);
        assert_eq!(report.per_category[&ErrorCategory::Prep].fp, 1);
        assert_eq!(report.per_category[&ErrorCategory::Other].fn_, 1);
    }

    #[test]
    fn span_only_mode_ignores_replacement_text() {
        let source = toks("He go home");
        let gold = vec![Edit::new(1, 2, vec!["goes".into()])];
        let hyp = vec![Edit::new(1, 2, vec!["went".into()])];
        let strict = score_pair(&source, &hyp, &gold, ScoreMode::SpanAndReplacement);
        let lax = score_pair(&source, &hyp, &gold, ScoreMode::SpanOnly);
        assert_eq!(strict.overall.tp, 0);
        assert_eq!(lax.overall.tp, 1);
    }

    #[test]
    fn identical_edit_lists_score_perfectly() {
        let source = toks("He go to school");
        let edits = vec![Edit::new(1, 2, vec!["goes".into()])];
        let report = score_pair(&source, &edits, &edits, ScoreMode::SpanAndReplacement);
        assert_eq!(report.overall, Counts { tp: 1, fp: 0, fn_: 0 });
        assert_eq!(report.overall.f_half(), 1.0);
    }

    #[test]
    fn report_merge_accumulates() {
        let mut a =
            ScoreReport { overall: Counts { tp: 1, fp: 2, fn_: 3 }, ..Default::default() };
        a.per_category.insert(ErrorCategory::Det, Counts { tp: 1, fp: 0, fn_: 0 });
        let mut b =
            ScoreReport { overall: Counts { tp: 10, fp: 20, fn_: 30 }, ..Default::default() };
        b.per_category.insert(ErrorCategory::Det, Counts { tp: 0, fp: 1, fn_: 0 });
        a.merge(&b);
        assert_eq!(a.overall, Counts { tp: 11, fp: 22, fn_: 33 });
        assert_eq!(a.per_category[&ErrorCategory::Det], Counts { tp: 1, fp: 1, fn_: 0 });
    }

    #[test]
    fn category_name_round_trip() {
        for c in ErrorCategory::ALL {
            assert_eq!(ErrorCategory::parse(c.name()), Some(c));
        }
        assert_eq!(ErrorCategory::parse("R:VERB:SVA"), Some(ErrorCategory::VerbSva));
        assert_eq!(ErrorCategory::parse("bogus"), None);
    }
}
