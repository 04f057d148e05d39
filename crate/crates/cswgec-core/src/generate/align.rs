//! Word alignments (Pharaoh "i-j" format) and the parallel-corpus switch:
//! find constituent pairs whose alignment images close over each other, then
//! splice the foreign side into the English sentence.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{detected_pair_label, GenerateError, GeneratedUtterance, Method, ParseTree};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alignment {
    links: BTreeSet<(usize, usize)>,
}

impl Alignment {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(links: I) -> Alignment {
        Alignment { links: links.into_iter().collect() }
    }

    /// Parses one Pharaoh line, e.g. "0-0 1-2 2-1".
    pub fn from_pharaoh(line: &str) -> Result<Alignment, GenerateError> {
        let mut links = BTreeSet::new();
        for pair in line.split_whitespace() {
            let (s, t) = pair
                .split_once('-')
                .ok_or_else(|| GenerateError::MalformedAlignment(format!("bad link {pair:?}")))?;
            let parse = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| GenerateError::MalformedAlignment(format!("bad index in {pair:?}")))
            };
            links.insert((parse(s)?, parse(t)?));
        }
        Ok(Alignment { links })
    }

    pub fn links(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.links.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn validate(&self, source_len: usize, target_len: usize) -> Result<(), GenerateError> {
        for &(s, t) in &self.links {
            if s >= source_len || t >= target_len {
                return Err(GenerateError::MalformedAlignment(format!(
                    "link {s}-{t} outside {source_len}x{target_len} sentence pair"
                )));
            }
        }
        Ok(())
    }

    fn image(&self, span: (usize, usize)) -> BTreeSet<usize> {
        self.links.iter().filter(|(s, _)| (span.0..span.1).contains(s)).map(|&(_, t)| t).collect()
    }

    fn preimage(&self, span: (usize, usize)) -> BTreeSet<usize> {
        self.links.iter().filter(|(_, t)| (span.0..span.1).contains(t)).map(|&(s, _)| s).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidatePair {
    pub en: (usize, usize),
    pub fl: (usize, usize),
}

fn span_set(span: (usize, usize)) -> BTreeSet<usize> {
    (span.0..span.1).collect()
}

/// All constituent pairs whose alignment images close over each other: the
/// English span maps exactly onto the foreign span and back. Pairs covering
/// both full sentences are excluded; swapping them would replace everything.
pub fn aligned_subtree_candidates(
    en_tree: &ParseTree,
    fl_tree: &ParseTree,
    alignment: &Alignment,
) -> Vec<CandidatePair> {
    let en_full = en_tree.span;
    let fl_full = fl_tree.span;
    let mut out = Vec::new();
    for en in en_tree.constituent_spans() {
        let image = alignment.image(en);
        if image.is_empty() {
            continue;
        }
        for fl in fl_tree.constituent_spans() {
            if en == en_full && fl == fl_full {
                continue;
            }
            if image == span_set(fl) && alignment.preimage(fl) == span_set(en) {
                out.push(CandidatePair { en, fl });
            }
        }
    }
    out.sort_by_key(|c| (c.en, c.fl));
    out
}

/// Splices the foreign side of one uniformly chosen candidate into the
/// English sentence.
pub fn parallel_switch(
    en_tokens: &[String],
    fl_tokens: &[String],
    candidates: &[CandidatePair],
    seed: u64,
) -> Result<GeneratedUtterance, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen = candidates.choose(&mut rng).ok_or(GenerateError::NoCandidates)?;
    let mut out: Vec<String> = en_tokens[..chosen.en.0].to_vec();
    out.extend_from_slice(&fl_tokens[chosen.fl.0..chosen.fl.1]);
    out.extend_from_slice(&en_tokens[chosen.en.1..]);
    let text = out.join(" ");
    Ok(GeneratedUtterance {
        pair: detected_pair_label(&text),
        text,
        method: Method::Parallel,
        source_ids: Vec::new(),
        seed,
        span: Some(chosen.en),
        foreign_span: Some(chosen.fl),
    })
}
