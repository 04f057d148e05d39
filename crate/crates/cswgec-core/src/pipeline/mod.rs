//! Corpus plumbing: ingestion into a uniform record shape, duplicate removal
//! against a reference corpus, seeded splitting and sampling, and staged
//! training-set assembly from declarative manifests.

mod manifest;

pub use manifest::{
    assemble_stage, manifest_contributions, render_contributions, AssembledStage, Contribution,
    SourceEntry, StageManifest,
};

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evaluate::{apply_edits, m2};
use crate::text::{detect_language_pair, TaggedUtterance};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("bad ratio {0:?}, expected \"train:val\" positive integers")]
    BadRatio(String),
    #[error("fraction {0} outside (0, 1]")]
    InvalidFraction(f64),
    #[error("asked for {want} records, corpus has {have}")]
    OverSample { want: usize, have: usize },
    #[error("manifest references unknown corpus {0:?}")]
    MissingCorpus(String),
    #[error("bad manifest: {0}")]
    BadManifest(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One parallel sentence pair plus bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: u64,
    pub source: String,
    pub target: String,
    /// Language-pair label of the source side, e.g. "EN-JA" or "MONOLINGUAL".
    pub pair: String,
    /// Corpus the record came from; survives sampling and assembly.
    pub origin: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub id: String,
    pub records: Vec<Record>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IngestFormat {
    /// One pair per line, "source<TAB>target"; a line without a tab is its
    /// own target.
    Lines,
    /// JSONL records {id?, source, target, pair?, origin?}.
    Records,
    /// M2 blocks; the target is annotator 0's correction.
    M2,
}

impl FromStr for IngestFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<IngestFormat, String> {
        match s {
            "lines" => Ok(IngestFormat::Lines),
            "records" => Ok(IngestFormat::Records),
            "m2" => Ok(IngestFormat::M2),
            other => Err(format!("unknown format {other:?}, expected lines|records|m2")),
        }
    }
}

impl fmt::Display for IngestFormat {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let name = match self {
            IngestFormat::Lines => "lines",
            IngestFormat::Records => "records",
            IngestFormat::M2 => "m2",
        };
        f.write_str(name)
    }
}

fn detect_pair(text: &str) -> String {
    detect_language_pair(&TaggedUtterance::from_text(text, None)).label()
}

#[derive(Deserialize)]
struct RawRecord {
    id: Option<u64>,
    source: String,
    target: String,
    pair: Option<String>,
    origin: Option<String>,
}

/// Parses corpus `content` in the given format. Blank lines are skipped in
/// the line formats; records are numbered by position when the input carries
/// no ids.
pub fn ingest_str(
    content: &str,
    format: IngestFormat,
    corpus_id: &str,
) -> Result<Corpus, PipelineError> {
    let mut records = Vec::new();
    match format {
        IngestFormat::Lines => {
            for (idx, line) in content.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let (source, target) = match line.split_once('\t') {
                    Some((s, t)) => (s.trim(), t.trim()),
                    None => (line.trim(), line.trim()),
                };
                if source.is_empty() || target.is_empty() {
                    return Err(PipelineError::Parse {
                        line: idx + 1,
                        message: "empty source or target".to_string(),
                    });
                }
                records.push(Record {
                    id: records.len() as u64,
                    source: source.to_string(),
                    target: target.to_string(),
                    pair: detect_pair(source),
                    origin: corpus_id.to_string(),
                });
            }
        }
        IngestFormat::Records => {
            let mut seen_ids = HashSet::new();
            for (idx, line) in content.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let raw: RawRecord =
                    serde_json::from_str(line).map_err(|e| PipelineError::Parse {
                        line: idx + 1,
                        message: e.to_string(),
                    })?;
                if raw.source.is_empty() || raw.target.is_empty() {
                    return Err(PipelineError::Parse {
                        line: idx + 1,
                        message: "empty source or target".to_string(),
                    });
                }
                let id = raw.id.unwrap_or(records.len() as u64);
                if !seen_ids.insert(id) {
                    return Err(PipelineError::Parse {
                        line: idx + 1,
                        message: format!("duplicate record id {id}"),
                    });
                }
                let pair = raw.pair.unwrap_or_else(|| detect_pair(&raw.source));
                records.push(Record {
                    id,
                    source: raw.source,
                    target: raw.target,
                    pair,
                    origin: raw.origin.unwrap_or_else(|| corpus_id.to_string()),
                });
            }
        }
        IngestFormat::M2 => {
            let blocks = m2::parse_m2(content).map_err(|e| match e {
                crate::evaluate::EvalError::M2Parse { line, msg } => {
                    PipelineError::Parse { line, message: msg }
                }
                other => PipelineError::Parse { line: 0, message: other.to_string() },
            })?;
            for (idx, block) in blocks.iter().enumerate() {
                let edits = block.annotator_edits(0);
                let corrected =
                    apply_edits(&block.source, &edits).map_err(|e| PipelineError::Parse {
                        line: 0,
                        message: format!("block {}: {e}", idx + 1),
                    })?;
                let source = block.source.join(" ");
                records.push(Record {
                    id: idx as u64,
                    source: source.clone(),
                    target: corrected.join(" "),
                    pair: detect_pair(&source),
                    origin: corpus_id.to_string(),
                });
            }
        }
    }
    Ok(Corpus { id: corpus_id.to_string(), records })
}

/// Reads and parses one corpus file; the corpus id is the file stem.
pub fn ingest(path: &Path, format: IngestFormat) -> Result<Corpus, PipelineError> {
    let content = std::fs::read_to_string(path)?;
    let id = path.file_stem().and_then(|s| s.to_str()).unwrap_or("corpus");
    ingest_str(&content, format, id)
}

/// Serializes records as JSONL, one per line.
pub fn write_records(records: &[Record]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
        .collect()
}

/// Case-fold and collapse runs of whitespace; the duplicate-detection key.
fn normalize(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

fn pair_key(record: &Record) -> (String, String) {
    (normalize(&record.source), normalize(&record.target))
}

/// Removes records of `primary` whose normalized (source, target) pair also
/// appears in `against`. Returns the surviving corpus and the removed count.
pub fn dedup(primary: &Corpus, against: &Corpus) -> (Corpus, usize) {
    let seen: HashSet<(String, String)> = against.records.iter().map(pair_key).collect();
    let before = primary.records.len();
    let records: Vec<Record> =
        primary.records.iter().filter(|r| !seen.contains(&pair_key(r))).cloned().collect();
    let removed = before - records.len();
    (Corpus { id: primary.id.clone(), records }, removed)
}

/// Train:val split ratio, e.g. 19:1 for 95/5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub train: u64,
    pub val: u64,
}

impl Ratio {
    pub fn val_share(&self) -> f64 {
        self.val as f64 / (self.train + self.val) as f64
    }
}

impl FromStr for Ratio {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Ratio, PipelineError> {
        let bad = || PipelineError::BadRatio(s.to_string());
        let (train, val) = s.split_once(':').ok_or_else(bad)?;
        let train: u64 = train.trim().parse().map_err(|_| bad())?;
        let val: u64 = val.trim().parse().map_err(|_| bad())?;
        if train == 0 || val == 0 {
            return Err(bad());
        }
        Ok(Ratio { train, val })
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}:{}", self.train, self.val)
    }
}

/// Seeded Fisher-Yates. Index draws come from `next_u64() % (i + 1)` so the
/// permutation is fixed by the seed alone, not by any library's shuffle.
pub fn shuffle<T>(items: &mut [T], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in (1..items.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitOutcome {
    pub train: Vec<Record>,
    pub val: Vec<Record>,
    pub warnings: Vec<String>,
}

/// Shuffles by seed, then takes ⌊n · val_share⌋ records for validation and
/// the rest for training. Small corpora can floor to an empty validation
/// side; that is allowed and flagged.
pub fn split(records: &[Record], ratio: Ratio, seed: u64) -> SplitOutcome {
    let mut shuffled = records.to_vec();
    shuffle(&mut shuffled, seed);
    let n_val = (shuffled.len() as f64 * ratio.val_share()).floor() as usize;
    let val = shuffled.split_off(shuffled.len() - n_val);
    let mut warnings = Vec::new();
    if val.is_empty() && !shuffled.is_empty() {
        warnings.push(format!(
            "{} records at ratio {ratio} floor to an empty validation set",
            shuffled.len()
        ));
    }
    SplitOutcome { train: shuffled, val, warnings }
}

/// Sample size given either way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleSpec {
    Count(usize),
    Fraction(f64),
}

impl SampleSpec {
    fn resolve(&self, size: usize) -> Result<usize, PipelineError> {
        match *self {
            SampleSpec::Count(n) => {
                if n > size {
                    return Err(PipelineError::OverSample { want: n, have: size });
                }
                Ok(n)
            }
            SampleSpec::Fraction(f) => {
                if !(f > 0.0 && f <= 1.0) {
                    return Err(PipelineError::InvalidFraction(f));
                }
                Ok((size as f64 * f).floor() as usize)
            }
        }
    }
}

/// Uniform sample without replacement: shuffle by seed, keep the prefix.
pub fn sample_subset(
    corpus: &Corpus,
    spec: SampleSpec,
    seed: u64,
) -> Result<Corpus, PipelineError> {
    let k = spec.resolve(corpus.records.len())?;
    let mut records = corpus.records.clone();
    shuffle(&mut records, seed);
    records.truncate(k);
    Ok(Corpus { id: corpus.id.clone(), records })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(id: &str, pairs: &[(&str, &str)]) -> Corpus {
        let records = pairs
            .iter()
            .enumerate()
            .map(|(i, (s, t))| Record {
                id: i as u64,
                source: s.to_string(),
                target: t.to_string(),
                pair: detect_pair(s),
                origin: id.to_string(),
            })
            .collect();
        Corpus { id: id.to_string(), records }
    }

    #[test]
    fn lines_ingest_reads_pairs_and_bare_lines() {
        let corpus =
            ingest_str("I goes home\tI go home\nこんにちは world\n", IngestFormat::Lines, "toy")
                .unwrap();
        assert_eq!(corpus.records.len(), 2);
        assert_eq!(corpus.records[0].source, "I goes home");
        assert_eq!(corpus.records[0].target, "I go home");
        assert_eq!(corpus.records[0].pair, "MONOLINGUAL");
        assert_eq!(corpus.records[1].source, corpus.records[1].target);
        assert_eq!(corpus.records[1].pair, "EN-JA");
        assert_eq!(corpus.records[1].id, 1);
    }

    #[test]
    fn lines_ingest_skips_blanks_and_rejects_empty_sides() {
        let corpus = ingest_str("a\n\n\nb\n", IngestFormat::Lines, "toy").unwrap();
        assert_eq!(corpus.records.len(), 2);
        let err = ingest_str("ok\tfine\n\tmissing\n", IngestFormat::Lines, "toy").unwrap_err();
        assert!(matches!(err, PipelineError::Parse { line: 2, .. }));
    }

    #[test]
    fn records_ingest_honors_given_fields_and_checks_ids() {
        let content = concat!(
            "{\"source\":\"I eat スシ\",\"target\":\"I eat sushi\"}\n",
            "{\"id\":7,\"source\":\"b\",\"target\":\"b\",\"pair\":\"EN-KO\",\"origin\":\"x\"}\n",
        );
        let corpus = ingest_str(content, IngestFormat::Records, "toy").unwrap();
        assert_eq!(corpus.records[0].pair, "EN-JA");
        assert_eq!(corpus.records[0].origin, "toy");
        assert_eq!(corpus.records[1].id, 7);
        assert_eq!(corpus.records[1].pair, "EN-KO");
        assert_eq!(corpus.records[1].origin, "x");

        let dup = "{\"id\":1,\"source\":\"a\",\"target\":\"a\"}\n\
                   {\"id\":1,\"source\":\"b\",\"target\":\"b\"}\n";
        assert!(matches!(
            ingest_str(dup, IngestFormat::Records, "toy").unwrap_err(),
            PipelineError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            ingest_str("{\"source\":\"a\"}\n", IngestFormat::Records, "toy").unwrap_err(),
            PipelineError::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn records_round_trip_through_jsonl() {
        let original = corpus("toy", &[("I goes", "I go"), ("それ is fine", "それ is fine")]);
        let text = write_records(&original.records);
        let back = ingest_str(&text, IngestFormat::Records, "toy").unwrap();
        assert_eq!(back, original);
    }

    #[test]
    fn m2_ingest_applies_annotator_zero() {
        let content = "S He go home\nA 1 2|||VERB:SVA|||goes|||REQUIRED|||-NONE-|||0\n\
                       A 1 2|||VERB:SVA|||went|||REQUIRED|||-NONE-|||1\n\n\
                       S fine .\nA -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0\n";
        let corpus = ingest_str(content, IngestFormat::M2, "m2demo").unwrap();
        assert_eq!(corpus.records.len(), 2);
        assert_eq!(corpus.records[0].source, "He go home");
        assert_eq!(corpus.records[0].target, "He goes home");
        assert_eq!(corpus.records[1].target, "fine .");

        let bad = "S a b\nA x y|||DET|||the|||REQUIRED|||-NONE-|||0\n";
        assert!(matches!(
            ingest_str(bad, IngestFormat::M2, "m2demo").unwrap_err(),
            PipelineError::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn format_names_round_trip() {
        for f in [IngestFormat::Lines, IngestFormat::Records, IngestFormat::M2] {
            assert_eq!(f.to_string().parse::<IngestFormat>().unwrap(), f);
        }
        assert!("csv".parse::<IngestFormat>().is_err());
    }

    #[test]
    fn dedup_removes_normalized_matches() {
        let primary = corpus(
            "a",
            &[("I  GO home", "I go home"), ("unique", "unique"), ("i go home", "I GO  HOME")],
        );
        let against = corpus("b", &[("i go home", "i go home")]);
        let (kept, removed) = dedup(&primary, &against);
        assert_eq!(removed, 2);
        assert_eq!(kept.records.len(), 1);
        assert_eq!(kept.records[0].source, "unique");

        let (again, removed_again) = dedup(&kept, &against);
        assert_eq!(removed_again, 0);
        assert_eq!(again, kept);
    }

    #[test]
    fn dedup_of_identical_and_disjoint_corpora() {
        let a = corpus("a", &[("x", "y"), ("p", "q")]);
        let (empty, removed) = dedup(&a, &a);
        assert!(empty.is_empty());
        assert_eq!(removed, 2);
        let b = corpus("b", &[("m", "n")]);
        let (kept, removed) = dedup(&a, &b);
        assert_eq!(kept, a);
        assert_eq!(removed, 0);
    }

    #[test]
    fn ratio_parsing() {
        let r: Ratio = "19:1".parse().unwrap();
        assert_eq!(r, Ratio { train: 19, val: 1 });
        assert!((r.val_share() - 0.05).abs() < 1e-12);
        for bad in ["19", "0:1", "19:0", "a:b", ""] {
            assert!(matches!(
                bad.parse::<Ratio>().unwrap_err(),
                PipelineError::BadRatio(_)
            ));
        }
    }

    #[test]
    fn split_nineteen_to_one() {
        let c = corpus("a", &vec![("s", "t"); 20]);
        let out = split(&c.records, "19:1".parse().unwrap(), 3);
        assert_eq!(out.train.len(), 19);
        assert_eq!(out.val.len(), 1);
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn split_is_seed_deterministic_and_disjoint() {
        let pairs: Vec<(String, String)> =
            (0..40).map(|i| (format!("src {i}"), format!("tgt {i}"))).collect();
        let pairs_ref: Vec<(&str, &str)> =
            pairs.iter().map(|(s, t)| (s.as_str(), t.as_str())).collect();
        let c = corpus("a", &pairs_ref);
        let one = split(&c.records, "19:1".parse().unwrap(), 9);
        let two = split(&c.records, "19:1".parse().unwrap(), 9);
        assert_eq!(one, two);
        let other = split(&c.records, "19:1".parse().unwrap(), 10);
        assert_ne!(one.train, other.train);

        let train_ids: HashSet<u64> = one.train.iter().map(|r| r.id).collect();
        assert!(one.val.iter().all(|r| !train_ids.contains(&r.id)));
        assert_eq!(one.train.len() + one.val.len(), 40);
    }

    #[test]
    fn split_of_one_record_warns() {
        let c = corpus("a", &[("only", "only")]);
        let out = split(&c.records, "19:1".parse().unwrap(), 0);
        assert_eq!(out.train.len(), 1);
        assert_eq!(out.val.len(), 0);
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn sampling_floors_fractions() {
        let pairs: Vec<(String, String)> =
            (0..5875).map(|i| (format!("s{i}"), format!("t{i}"))).collect();
        let pairs_ref: Vec<(&str, &str)> =
            pairs.iter().map(|(s, t)| (s.as_str(), t.as_str())).collect();
        let c = corpus("genuine", &pairs_ref);
        let sampled = sample_subset(&c, SampleSpec::Fraction(0.9), 1).unwrap();
        assert_eq!(sampled.records.len(), 5287);
        let ids: HashSet<u64> = sampled.records.iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), 5287);
    }

    #[test]
    fn sampling_edge_cases() {
        let c = corpus("a", &[("x", "x"), ("y", "y")]);
        let full = sample_subset(&c, SampleSpec::Count(2), 5).unwrap();
        let mut ids: Vec<u64> = full.records.iter().map(|r| r.id).collect();
        ids.sort();
        assert_eq!(ids, vec![0, 1]);
        assert!(matches!(
            sample_subset(&c, SampleSpec::Count(3), 5).unwrap_err(),
            PipelineError::OverSample { want: 3, have: 2 }
        ));
        for f in [0.0, -0.5, 1.5] {
            assert!(matches!(
                sample_subset(&c, SampleSpec::Fraction(f), 5).unwrap_err(),
                PipelineError::InvalidFraction(_)
            ));
        }
        let identity = sample_subset(&c, SampleSpec::Fraction(1.0), 5).unwrap();
        assert_eq!(identity.records.len(), 2);
    }

    #[test]
    fn sampling_is_uniformish() {
        let pairs: Vec<(String, String)> =
            (0..10).map(|i| (format!("s{i}"), format!("t{i}"))).collect();
        let pairs_ref: Vec<(&str, &str)> =
            pairs.iter().map(|(s, t)| (s.as_str(), t.as_str())).collect();
        let c = corpus("a", &pairs_ref);
        let mut hits = [0usize; 10];
        for seed in 0..2000 {
            let s = sample_subset(&c, SampleSpec::Count(3), seed).unwrap();
            for r in &s.records {
                hits[r.id as usize] += 1;
            }
        }
        // 2000 draws of 3 from 10: each id expects 600.
        for (id, &h) in hits.iter().enumerate() {
            assert!(
                (480..=720).contains(&h),
                "id {id} drawn {h} times, expected near 600"
            );
        }
    }
}
