//! Stage manifests: declarative TOML files naming which corpora feed a
//! training stage, how much of each, and the seeds that make the result
//! reproducible.

use serde::{Deserialize, Serialize};

use super::{sample_subset, shuffle, split, Corpus, PipelineError, Ratio, Record, SampleSpec};

/// One corpus drawn into a stage. Exactly one of `count` and `fraction` is
/// set; `seed` drives the sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceEntry {
    pub corpus: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fraction: Option<f64>,
    pub seed: u64,
}

impl SourceEntry {
    fn spec(&self) -> Result<SampleSpec, PipelineError> {
        match (self.count, self.fraction) {
            (Some(n), None) => Ok(SampleSpec::Count(n as usize)),
            (None, Some(f)) => Ok(SampleSpec::Fraction(f)),
            _ => Err(PipelineError::BadManifest(format!(
                "source {:?} needs exactly one of count or fraction",
                self.corpus
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageManifest {
    pub stage: u8,
    /// Train:val, e.g. "19:1".
    pub ratio: String,
    pub shuffle_seed: u64,
    pub sources: Vec<SourceEntry>,
}

impl StageManifest {
    pub fn from_toml(text: &str) -> Result<StageManifest, PipelineError> {
        let manifest: StageManifest =
            toml::from_str(text).map_err(|e| PipelineError::BadManifest(e.to_string()))?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }

    pub fn ratio(&self) -> Result<Ratio, PipelineError> {
        self.ratio.parse()
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if !(1..=3).contains(&self.stage) {
            return Err(PipelineError::BadManifest(format!("stage {} outside 1..=3", self.stage)));
        }
        if self.sources.is_empty() {
            return Err(PipelineError::BadManifest("no sources".to_string()));
        }
        self.ratio()?;
        for (i, entry) in self.sources.iter().enumerate() {
            entry.spec()?;
            if let Some(f) = entry.fraction {
                if !(f > 0.0 && f <= 1.0) {
                    return Err(PipelineError::InvalidFraction(f));
                }
            }
            if self.sources[..i].iter().any(|e| e.corpus == entry.corpus) {
                return Err(PipelineError::BadManifest(format!(
                    "corpus {:?} listed twice",
                    entry.corpus
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub corpus: String,
    pub count: usize,
    pub percent: f64,
}

fn percentages(mut rows: Vec<Contribution>) -> Vec<Contribution> {
    let total: usize = rows.iter().map(|r| r.count).sum();
    for row in &mut rows {
        row.percent = if total == 0 { 0.0 } else { row.count as f64 / total as f64 * 100.0 };
    }
    rows
}

/// Contribution table computed from declared counts alone, without the
/// corpora. Fraction entries cannot be resolved this way.
pub fn manifest_contributions(
    manifest: &StageManifest,
) -> Result<Vec<Contribution>, PipelineError> {
    manifest.validate()?;
    let mut rows = Vec::new();
    for entry in &manifest.sources {
        let Some(count) = entry.count else {
            return Err(PipelineError::BadManifest(format!(
                "source {:?} declares a fraction; counts are needed to tabulate without corpora",
                entry.corpus
            )));
        };
        rows.push(Contribution { corpus: entry.corpus.clone(), count: count as usize, percent: 0.0 });
    }
    Ok(percentages(rows))
}

/// Plain-text contribution table, percentages to two decimals.
pub fn render_contributions(rows: &[Contribution]) -> String {
    let width = rows.iter().map(|r| r.corpus.len()).max().unwrap_or(6).max("corpus".len());
    let mut out = format!("{:<width$}  {:>10}  {:>7}\n", "corpus", "count", "share");
    for row in rows {
        out.push_str(&format!(
            "{:<width$}  {:>10}  {:>6.2}%\n",
            row.corpus, row.count, row.percent
        ));
    }
    let total: usize = rows.iter().map(|r| r.count).sum();
    out.push_str(&format!("{:<width$}  {:>10}  {:>6.2}%\n", "total", total, 100.0));
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssembledStage {
    pub manifest: StageManifest,
    pub train: Vec<Record>,
    pub val: Vec<Record>,
    pub contributions: Vec<Contribution>,
    pub warnings: Vec<String>,
}

/// Samples each source per the manifest, concatenates, shuffles, and splits.
/// The contribution table reflects realized sample sizes, which equal the
/// declared counts whenever counts are given.
pub fn assemble_stage(
    manifest: &StageManifest,
    corpora: &[Corpus],
) -> Result<AssembledStage, PipelineError> {
    manifest.validate()?;
    let ratio = manifest.ratio()?;
    let mut pool: Vec<Record> = Vec::new();
    let mut rows = Vec::new();
    for entry in &manifest.sources {
        let corpus = corpora
            .iter()
            .find(|c| c.id == entry.corpus)
            .ok_or_else(|| PipelineError::MissingCorpus(entry.corpus.clone()))?;
        let sampled = sample_subset(corpus, entry.spec()?, entry.seed)?;
        rows.push(Contribution {
            corpus: entry.corpus.clone(),
            count: sampled.records.len(),
            percent: 0.0,
        });
        pool.extend(sampled.records);
    }
    let contributions = percentages(rows);
    shuffle(&mut pool, manifest.shuffle_seed);
    let outcome = split(&pool, ratio, manifest.shuffle_seed);
    Ok(AssembledStage {
        manifest: manifest.clone(),
        train: outcome.train,
        val: outcome.val,
        contributions,
        warnings: outcome.warnings,
    })
}
