//! Code-switching metrics over tagged utterances.
//!
//! Neutral tokens (punctuation, digits) never count as content. An utterance
//! with zero content tokens has no metrics and is skipped by [`corpus_report`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::{Lang, TaggedUtterance};

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("empty input: no content tokens")]
    EmptyInput,
    #[error("invalid complexity-factor config: {0}")]
    BadConfig(String),
}

/// Which denominator a single complexity factor uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CfVariant {
    Cf1,
    Cf2,
    Cf3,
}

/// Weights for the complexity factor numerator `a*MF + b*SF`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CfConfig {
    pub a: f64,
    pub b: f64,
    pub variant: CfVariant,
}

impl CfConfig {
    pub fn new(a: f64, b: f64, variant: CfVariant) -> Result<CfConfig, MetricsError> {
        let positive = a > 0.0 && b > 0.0; // also rejects NaN
        if !positive {
            return Err(MetricsError::BadConfig(format!("weights must be positive, got a={a} b={b}")));
        }
        Ok(CfConfig { a, b, variant })
    }
}

impl Default for CfConfig {
    fn default() -> Self {
        CfConfig { a: 50.0, b: 50.0, variant: CfVariant::Cf1 }
    }
}

fn lang_histogram(utt: &TaggedUtterance) -> BTreeMap<Lang, u64> {
    let mut hist = BTreeMap::new();
    for &t in &utt.tags {
        if t != Lang::Neutral {
            *hist.entry(t).or_insert(0) += 1;
        }
    }
    hist
}

/// Code-mixing index in percent: `100 * (N - u - t_max) / (N - u)` where `N`
/// counts all tokens, `u` the neutral ones, and `t_max` the largest
/// per-language token count. 0 for utterances without content tokens.
pub fn cmi(utt: &TaggedUtterance) -> f64 {
    let n = utt.tags.len() as f64;
    let u = utt.tags.iter().filter(|&&t| t == Lang::Neutral).count() as f64;
    if n - u <= 0.0 {
        return 0.0;
    }
    let t_max = lang_histogram(utt).values().copied().max().unwrap_or(0) as f64;
    100.0 * (n - u - t_max) / (n - u)
}

/// Multilingual index over a language histogram: `(1 - sum p_j^2) / ((k-1) * sum p_j^2)`.
/// 0 for a single language; errors on an all-zero histogram.
pub fn m_index(hist: &BTreeMap<Lang, u64>) -> Result<f64, MetricsError> {
    let total: u64 = hist.values().sum();
    if total == 0 {
        return Err(MetricsError::EmptyInput);
    }
    let k = hist.values().filter(|&&v| v > 0).count();
    if k <= 1 {
        return Ok(0.0);
    }
    let sum_sq: f64 = hist
        .values()
        .map(|&v| {
            let p = v as f64 / total as f64;
            p * p
        })
        .sum();
    Ok((1.0 - sum_sq) / ((k as f64 - 1.0) * sum_sq))
}

/// Integration index: fraction of adjacent content-token pairs that switch
/// language, over the neutral-stripped tag sequence. 0 when fewer than two
/// content tokens.
pub fn i_index(utt: &TaggedUtterance) -> f64 {
    let content: Vec<Lang> = utt.tags.iter().copied().filter(|&t| t != Lang::Neutral).collect();
    if content.len() < 2 {
        return 0.0;
    }
    let switches = content.windows(2).filter(|w| w[0] != w[1]).count();
    switches as f64 / (content.len() as f64 - 1.0)
}

/// Burstiness of span lengths: `(sigma - mu) / (sigma + mu)` with population
/// standard deviation. -1 when all lengths are equal; errors on empty input.
pub fn burstiness(lengths: &[usize]) -> Result<f64, MetricsError> {
    if lengths.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    let n = lengths.len() as f64;
    let mu = lengths.iter().sum::<usize>() as f64 / n;
    let var = lengths.iter().map(|&l| (l as f64 - mu).powi(2)).sum::<f64>() / n;
    let sigma = var.sqrt();
    Ok((sigma - mu) / (sigma + mu))
}

fn cf_denominator(variant: CfVariant, lf: f64, words: f64) -> f64 {
    match variant {
        CfVariant::Cf1 => lf,
        // Degenerate single-word utterance: denominator 1 by convention.
        CfVariant::Cf2 => {
            if words <= 1.0 {
                1.0
            } else {
                0.25 / (words - 1.0) * (lf - 1.0) + 1.0
            }
        }
        CfVariant::Cf3 => lf.atan() / std::f64::consts::PI + 0.75,
    }
}

/// All three complexity factors: `(a*MF + b*SF) / f(LF)` where MF is the
/// utterance CMI as a fraction, SF its integration index, and LF the ratio of
/// distinct languages to content tokens. Monolingual utterances score 0.
pub fn complexity_factors(utt: &TaggedUtterance, cfg: &CfConfig) -> Result<(f64, f64, f64), MetricsError> {
    let words = utt.content_tokens() as f64;
    if words == 0.0 {
        return Err(MetricsError::EmptyInput);
    }
    let positive = cfg.a > 0.0 && cfg.b > 0.0;
    if !positive {
        return Err(MetricsError::BadConfig("weights must be positive".into()));
    }
    let mf = cmi(utt) / 100.0;
    let sf = i_index(utt);
    let lf = utt.languages().len() as f64 / words;
    let num = cfg.a * mf + cfg.b * sf;
    Ok((
        num / cf_denominator(CfVariant::Cf1, lf, words),
        num / cf_denominator(CfVariant::Cf2, lf, words),
        num / cf_denominator(CfVariant::Cf3, lf, words),
    ))
}

/// Single complexity factor selected by `cfg.variant`.
pub fn complexity_factor(utt: &TaggedUtterance, cfg: &CfConfig) -> Result<f64, MetricsError> {
    let (cf1, cf2, cf3) = complexity_factors(utt, cfg)?;
    Ok(match cfg.variant {
        CfVariant::Cf1 => cf1,
        CfVariant::Cf2 => cf2,
        CfVariant::Cf3 => cf3,
    })
}

/// Per-utterance metric values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricVector {
    pub cmi: f64,
    pub m_index: f64,
    pub i_index: f64,
    pub burstiness: f64,
    pub cf1: f64,
    pub cf2: f64,
    pub cf3: f64,
}

pub fn utterance_metrics(utt: &TaggedUtterance, cfg: &CfConfig) -> Result<MetricVector, MetricsError> {
    if utt.content_tokens() == 0 {
        return Err(MetricsError::EmptyInput);
    }
    let (cf1, cf2, cf3) = complexity_factors(utt, cfg)?;
    let lengths: Vec<usize> = utt.spans.iter().map(|s| s.len).collect();
    Ok(MetricVector {
        cmi: cmi(utt),
        m_index: m_index(&lang_histogram(utt))?,
        i_index: i_index(utt),
        burstiness: burstiness(&lengths)?,
        cf1,
        cf2,
        cf3,
    })
}

/// Corpus-level metric report. CMI and M-Index aggregate over pooled token
/// histograms (per-utterance means are kept alongside); the switch-shaped
/// metrics aggregate as per-utterance means, with burstiness also pooled over
/// the corpus-wide span-length multiset. Aggregates are recomputable from
/// `per_utterance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub utterances: usize,
    /// Utterances with zero content tokens, excluded from every aggregate.
    pub skipped: usize,
    pub language_histogram: BTreeMap<Lang, u64>,
    pub neutral_tokens: u64,
    pub cmi_pooled: f64,
    pub cmi_mean: f64,
    pub m_index_pooled: f64,
    pub m_index_mean: f64,
    pub i_index_mean: f64,
    pub burstiness_mean: f64,
    pub burstiness_pooled: f64,
    pub cf1_mean: f64,
    pub cf2_mean: f64,
    pub cf3_mean: f64,
    pub per_utterance: Vec<MetricVector>,
}

pub fn corpus_report(corpus: &[TaggedUtterance], cfg: &CfConfig) -> Result<MetricReport, MetricsError> {
    if corpus.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    let mut hist: BTreeMap<Lang, u64> = BTreeMap::new();
    let mut neutral = 0u64;
    let mut vectors = Vec::new();
    let mut all_lengths: Vec<usize> = Vec::new();
    let mut skipped = 0usize;

    for utt in corpus {
        for &t in &utt.tags {
            if t == Lang::Neutral {
                neutral += 1;
            } else {
                *hist.entry(t).or_insert(0) += 1;
            }
        }
        match utterance_metrics(utt, cfg) {
            Ok(v) => {
                all_lengths.extend(utt.spans.iter().map(|s| s.len));
                vectors.push(v);
            }
            Err(MetricsError::EmptyInput) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    if vectors.is_empty() {
        return Err(MetricsError::EmptyInput);
    }

    let n = vectors.len() as f64;
    let mean = |f: fn(&MetricVector) -> f64| vectors.iter().map(f).sum::<f64>() / n;

    let total: u64 = hist.values().sum();
    let t_max = hist.values().copied().max().unwrap_or(0);
    let cmi_pooled = if total > 0 {
        100.0 * (total - t_max) as f64 / total as f64
    } else {
        0.0
    };

    Ok(MetricReport {
        utterances: corpus.len(),
        skipped,
        cmi_pooled,
        cmi_mean: mean(|v| v.cmi),
        m_index_pooled: m_index(&hist)?,
        m_index_mean: mean(|v| v.m_index),
        i_index_mean: mean(|v| v.i_index),
        burstiness_mean: mean(|v| v.burstiness),
        burstiness_pooled: burstiness(&all_lengths)?,
        cf1_mean: mean(|v| v.cf1),
        cf2_mean: mean(|v| v.cf2),
        cf3_mean: mean(|v| v.cf3),
        language_histogram: hist,
        neutral_tokens: neutral,
        per_utterance: vectors,
    })
}

/// Plain-text metric table, one row per metric.
pub fn render_table(report: &MetricReport) -> String {
    let rows = [
        ("CMI", format!("{:.2}", report.cmi_pooled)),
        ("M-Index", format!("{:.3}", report.m_index_pooled)),
        ("I-Index", format!("{:.2}", report.i_index_mean)),
        ("Burstiness", format!("{:.2}", report.burstiness_mean)),
        ("CF1", format!("{:.2}", report.cf1_mean)),
        ("CF2", format!("{:.2}", report.cf2_mean)),
        ("CF3", format!("{:.2}", report.cf3_mean)),
    ];
    let mut out = String::from("Metric      Value\n");
    for (name, value) in rows {
        out.push_str(&format!("{name:<11} {value}\n"));
    }
    out
}
