//! The model-agnostic interchange format: per-token detection and tag
//! probabilities, one JSON record per sentence. Tag distributions are sparse
//! (parallel id/probability lists over a sidecar vocabulary).

use serde::{Deserialize, Serialize};

use super::{DecodeError, TagVocab};

pub const DETECTION_LABELS: [&str; 3] = ["CORRECT", "INCORRECT", "CSW"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DetectionLabel {
    Correct,
    Incorrect,
    Csw,
}

impl DetectionLabel {
    pub fn index(self) -> usize {
        match self {
            DetectionLabel::Correct => 0,
            DetectionLabel::Incorrect => 1,
            DetectionLabel::Csw => 2,
        }
    }
}

/// Argmax over a [CORRECT, INCORRECT, CSW] row; ties go to the earlier label.
pub fn detection_argmax(row: &[f64; 3]) -> DetectionLabel {
    let mut best = 0;
    for i in 1..3 {
        if row[i] > row[best] {
            best = i;
        }
    }
    match best {
        0 => DetectionLabel::Correct,
        1 => DetectionLabel::Incorrect,
        _ => DetectionLabel::Csw,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TagProbMatrix {
    pub tokens: Vec<String>,
    /// Per token: [CORRECT, INCORRECT, CSW].
    pub detect_probs: Vec<[f64; 3]>,
    /// Per token: vocabulary ids carrying probability mass.
    pub correct_tag_ids: Vec<Vec<usize>>,
    /// Parallel to `correct_tag_ids`.
    pub correct_probs: Vec<Vec<f64>>,
}

const SUM_TOLERANCE: f64 = 1e-6;

impl TagProbMatrix {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Probability of `tag_id` at `token`, zero when the sparse row omits it.
    pub fn tag_prob(&self, token: usize, tag_id: usize) -> f64 {
        self.correct_tag_ids[token]
            .iter()
            .position(|&id| id == tag_id)
            .map_or(0.0, |slot| self.correct_probs[token][slot])
    }

    pub fn validate(&self, vocab: &TagVocab) -> Result<(), DecodeError> {
        let n = self.tokens.len();
        if self.detect_probs.len() != n
            || self.correct_tag_ids.len() != n
            || self.correct_probs.len() != n
        {
            return Err(DecodeError::MatrixShapeMismatch(format!(
                "{} tokens but {}/{}/{} probability rows",
                n,
                self.detect_probs.len(),
                self.correct_tag_ids.len(),
                self.correct_probs.len()
            )));
        }
        for (i, row) in self.detect_probs.iter().enumerate() {
            check_distribution(&row[..], &format!("detect_probs[{i}]"))?;
        }
        for i in 0..n {
            let ids = &self.correct_tag_ids[i];
            let probs = &self.correct_probs[i];
            if ids.len() != probs.len() {
                return Err(DecodeError::MatrixShapeMismatch(format!(
                    "token {i}: {} tag ids but {} probabilities",
                    ids.len(),
                    probs.len()
                )));
            }
            for &id in ids {
                if id >= vocab.len() {
                    return Err(DecodeError::BadTagId { token: i, id, vocab: vocab.len() });
                }
            }
            check_distribution(probs, &format!("correct_probs[{i}]"))?;
        }
        Ok(())
    }
}

fn check_distribution(probs: &[f64], what: &str) -> Result<(), DecodeError> {
    if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(DecodeError::BadDistribution(format!("{what} has a negative or non-finite entry")));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(DecodeError::BadDistribution(format!("{what} sums to {sum}")));
    }
    Ok(())
}

/// Parses line-delimited matrix records.
pub fn read_matrices(text: &str) -> Result<Vec<TagProbMatrix>, DecodeError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let matrix: TagProbMatrix = serde_json::from_str(line)
            .map_err(|e| DecodeError::Parse { line: i + 1, message: e.to_string() })?;
        out.push(matrix);
    }
    Ok(out)
}

pub fn write_matrices(matrices: &[TagProbMatrix]) -> String {
    let mut out = String::new();
    for m in matrices {
        out.push_str(&serde_json::to_string(m).expect("matrices serialize"));
        out.push('\n');
    }
    out
}
