//! Script-aware tokenization and language tagging.
//!
//! Tokens are maximal runs of a single script class inside whitespace-separated
//! chunks. For spaced scripts (Latin, Cyrillic, ...) this is whitespace splitting
//! with punctuation and digits detached; for unspaced scripts (kana, Han, Hangul,
//! Thai) it yields short same-script runs. The tokenizer records the exact
//! whitespace between tokens so the original string can always be rebuilt.

use serde::{Deserialize, Serialize};

/// Script class of a token. Each token contains characters of exactly one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Script {
    Latin,
    Hiragana,
    Katakana,
    Han,
    Hangul,
    Cyrillic,
    Thai,
    Arabic,
    Digit,
    Punct,
    Other,
}

/// Token-level language tag. `Neutral` marks tokens (punctuation, digits)
/// that belong to no language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Lang {
    En,
    Ja,
    Ko,
    Zh,
    Ru,
    Th,
    Ar,
    OtherLang,
    Neutral,
}

impl Lang {
    pub fn code(self) -> &'static str {
        match self {
            Lang::En => "EN",
            Lang::Ja => "JA",
            Lang::Ko => "KO",
            Lang::Zh => "ZH",
            Lang::Ru => "RU",
            Lang::Th => "TH",
            Lang::Ar => "AR",
            Lang::OtherLang => "OTHER",
            Lang::Neutral => "NEUTRAL",
        }
    }

    /// Parses codes as they appear in record `pair_hint` fields ("ja", "EN-JA", "zh").
    /// For a pair the non-EN side is returned.
    pub fn parse_hint(s: &str) -> Option<Lang> {
        let s = s.trim();
        let part = s
            .split(['-', '_'])
            .map(str::trim)
            .find(|p| !p.eq_ignore_ascii_case("en"))
            .unwrap_or(s);
        match part.to_ascii_lowercase().as_str() {
            "en" => Some(Lang::En),
            "ja" | "jp" => Some(Lang::Ja),
            "ko" => Some(Lang::Ko),
            "zh" | "cn" => Some(Lang::Zh),
            "ru" => Some(Lang::Ru),
            "th" => Some(Lang::Th),
            "ar" => Some(Lang::Ar),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub script: Script,
}

/// A maximal run of tokens sharing one non-neutral language. Neutral tokens
/// inside the run are not counted in `len` and do not break it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageSpan {
    pub lang: Lang,
    /// Index of the first token of the span.
    pub start: usize,
    /// Number of non-neutral tokens in the span.
    pub len: usize,
}

/// Tokens with per-token language tags and derived spans.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedUtterance {
    pub tokens: Vec<Token>,
    pub tags: Vec<Lang>,
    pub spans: Vec<LanguageSpan>,
}

/// Outcome of language-pair detection over a tagged utterance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairDetection {
    /// Zero or one language present.
    Monolingual,
    /// English plus the most frequent non-English language (ties broken by
    /// first occurrence). `mixed_beyond_pair` is set when three or more
    /// languages are present; the utterance is still categorized by `other`.
    Pair { other: Lang, mixed_beyond_pair: bool },
}

impl PairDetection {
    pub fn label(&self) -> String {
        match self {
            PairDetection::Monolingual => "MONOLINGUAL".to_string(),
            PairDetection::Pair { other, .. } => format!("EN-{}", other.code()),
        }
    }
}

fn in_ranges(c: char, ranges: &[(u32, u32)]) -> bool {
    let cp = c as u32;
    ranges.iter().any(|&(lo, hi)| (lo..=hi).contains(&cp))
}

const HIRAGANA: &[(u32, u32)] = &[(0x3041, 0x309F)];
// U+30FB (middle dot) is punctuation; U+30FC (prolonged sound mark) stays kana.
const KATAKANA: &[(u32, u32)] = &[(0x30A0, 0x30FA), (0x30FC, 0x30FF), (0x31F0, 0x31FF), (0xFF66, 0xFF9D)];
const HAN: &[(u32, u32)] = &[
    (0x3400, 0x4DBF),
    (0x4E00, 0x9FFF),
    (0xF900, 0xFAFF),
    (0x20000, 0x2A6DF),
    (0x2A700, 0x2EBEF),
];
const HANGUL: &[(u32, u32)] = &[(0x1100, 0x11FF), (0x3130, 0x318F), (0xA960, 0xA97F), (0xAC00, 0xD7FF)];
const CYRILLIC: &[(u32, u32)] = &[(0x0400, 0x052F), (0x1C80, 0x1C8F), (0x2DE0, 0x2DFF), (0xA640, 0xA69F)];
const THAI: &[(u32, u32)] = &[(0x0E01, 0x0E5B)];
const ARABIC: &[(u32, u32)] = &[
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
];
const LATIN: &[(u32, u32)] = &[
    (0x0041, 0x005A),
    (0x0061, 0x007A),
    (0x00C0, 0x00FF),
    (0x0100, 0x024F),
    (0x1E00, 0x1EFF),
];
const PUNCT_EXTRA: &[(u32, u32)] = &[
    (0x00A1, 0x00BF),
    (0x2000, 0x206F),
    (0x3000, 0x3003),
    (0x3008, 0x303F),
    (0xFE30, 0xFE4F),
    (0xFF01, 0xFF0F),
    (0xFF1A, 0xFF20),
    (0xFF3B, 0xFF40),
    (0xFF5B, 0xFF65),
];

/// Script class of a single character.
pub fn classify_char(c: char) -> Script {
    if c.is_numeric() {
        Script::Digit
    } else if c.is_ascii_punctuation() || c == '\u{30FB}' || in_ranges(c, PUNCT_EXTRA) {
        Script::Punct
    } else if in_ranges(c, HIRAGANA) {
        Script::Hiragana
    } else if in_ranges(c, KATAKANA) {
        Script::Katakana
    } else if in_ranges(c, HAN) {
        Script::Han
    } else if in_ranges(c, HANGUL) {
        Script::Hangul
    } else if in_ranges(c, CYRILLIC) {
        Script::Cyrillic
    } else if in_ranges(c, THAI) {
        Script::Thai
    } else if in_ranges(c, ARABIC) {
        Script::Arabic
    } else if in_ranges(c, LATIN) {
        Script::Latin
    } else {
        Script::Other
    }
}

/// Majority script class of a string (ties broken by first occurrence).
/// Tokens produced by [`tokenize`] are single-class by construction; this is
/// for classifying externally supplied surfaces.
pub fn classify_surface(s: &str) -> Script {
    let mut counts: Vec<(Script, usize)> = Vec::new();
    for c in s.chars() {
        let sc = classify_char(c);
        match counts.iter_mut().find(|(k, _)| *k == sc) {
            Some((_, n)) => *n += 1,
            None => counts.push((sc, 1)),
        }
    }
    counts
        .into_iter()
        .max_by_key(|&(_, n)| n)
        .map(|(k, _)| k)
        .unwrap_or(Script::Other)
}

/// Tokenization output: tokens plus the exact whitespace around them, so
/// [`Tokenization::detokenize`] reproduces the input byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tokenization {
    pub tokens: Vec<Token>,
    /// `gaps[i]` is the whitespace before token `i`; `gaps[tokens.len()]` is
    /// the trailing whitespace. Always `tokens.len() + 1` entries.
    pub gaps: Vec<String>,
}

impl Tokenization {
    pub fn detokenize(&self) -> String {
        let mut out = String::new();
        for (i, tok) in self.tokens.iter().enumerate() {
            out.push_str(&self.gaps[i]);
            out.push_str(&tok.surface);
        }
        out.push_str(&self.gaps[self.tokens.len()]);
        out
    }

    pub fn surfaces(&self) -> Vec<String> {
        self.tokens.iter().map(|t| t.surface.clone()).collect()
    }
}

/// Splits text into single-script tokens. Whitespace separates tokens and is
/// preserved in the gap list; script-class changes inside a chunk also split,
/// which detaches punctuation and digits and segments unspaced CJK text into
/// maximal same-script runs.
pub fn tokenize(text: &str) -> Tokenization {
    let mut tokens = Vec::new();
    let mut gaps = vec![String::new()];
    let mut cur = String::new();
    let mut cur_script = Script::Other;

    for c in text.chars() {
        if c.is_whitespace() {
            if !cur.is_empty() {
                tokens.push(Token { surface: std::mem::take(&mut cur), script: cur_script });
                gaps.push(String::new());
            }
            gaps.last_mut().expect("gaps is never empty").push(c);
            continue;
        }
        let sc = classify_char(c);
        if !cur.is_empty() && sc != cur_script {
            tokens.push(Token { surface: std::mem::take(&mut cur), script: cur_script });
            gaps.push(String::new());
        }
        cur.push(c);
        cur_script = sc;
    }
    if !cur.is_empty() {
        tokens.push(Token { surface: cur, script: cur_script });
        gaps.push(String::new());
    }
    debug_assert_eq!(gaps.len(), tokens.len() + 1);
    Tokenization { tokens, gaps }
}

fn script_lang(script: Script) -> Lang {
    match script {
        Script::Hiragana | Script::Katakana => Lang::Ja,
        Script::Hangul => Lang::Ko,
        Script::Cyrillic => Lang::Ru,
        Script::Thai => Lang::Th,
        Script::Arabic => Lang::Ar,
        Script::Latin => Lang::En,
        Script::Digit | Script::Punct => Lang::Neutral,
        Script::Other => Lang::OtherLang,
        // Resolved per utterance by kana vote or hint.
        Script::Han => Lang::Zh,
    }
}

/// Tags each token with a language. Scripts map deterministically except Han,
/// which is Japanese when the utterance contains any kana (or the hint names
/// Japanese or Chinese, which overrides the vote) and Chinese otherwise.
pub fn tag_languages(tokens: &[Token], pair_hint: Option<Lang>) -> Vec<Lang> {
    let has_kana = tokens
        .iter()
        .any(|t| matches!(t.script, Script::Hiragana | Script::Katakana));
    let han = match pair_hint {
        Some(Lang::Ja) => Lang::Ja,
        Some(Lang::Zh) => Lang::Zh,
        _ => {
            if has_kana {
                Lang::Ja
            } else {
                Lang::Zh
            }
        }
    };
    tokens
        .iter()
        .map(|t| match t.script {
            Script::Han => han,
            s => script_lang(s),
        })
        .collect()
}

/// Maximal runs of equal non-neutral tags. Neutral tokens attach to no span
/// and do not break a run.
pub fn extract_spans(tags: &[Lang]) -> Vec<LanguageSpan> {
    let mut spans: Vec<LanguageSpan> = Vec::new();
    for (i, &tag) in tags.iter().enumerate() {
        if tag == Lang::Neutral {
            continue;
        }
        match spans.last_mut() {
            Some(span) if span.lang == tag => span.len += 1,
            _ => spans.push(LanguageSpan { lang: tag, start: i, len: 1 }),
        }
    }
    spans
}

impl TaggedUtterance {
    pub fn from_text(text: &str, pair_hint: Option<Lang>) -> TaggedUtterance {
        Self::from_tokens(tokenize(text).tokens, pair_hint)
    }

    /// Builds from pre-split surfaces, classifying each by majority script.
    pub fn from_surfaces<S: AsRef<str>>(surfaces: &[S], pair_hint: Option<Lang>) -> TaggedUtterance {
        let tokens = surfaces
            .iter()
            .map(|s| Token { surface: s.as_ref().to_string(), script: classify_surface(s.as_ref()) })
            .collect();
        Self::from_tokens(tokens, pair_hint)
    }

    pub fn from_tokens(tokens: Vec<Token>, pair_hint: Option<Lang>) -> TaggedUtterance {
        let tags = tag_languages(&tokens, pair_hint);
        let spans = extract_spans(&tags);
        TaggedUtterance { tokens, tags, spans }
    }

    pub fn surfaces(&self) -> Vec<String> {
        self.tokens.iter().map(|t| t.surface.clone()).collect()
    }

    /// Number of tokens carrying a real language tag.
    pub fn content_tokens(&self) -> usize {
        self.tags.iter().filter(|&&t| t != Lang::Neutral).count()
    }

    /// Distinct non-neutral languages in tag order of first appearance.
    pub fn languages(&self) -> Vec<Lang> {
        let mut langs = Vec::new();
        for &t in &self.tags {
            if t != Lang::Neutral && !langs.contains(&t) {
                langs.push(t);
            }
        }
        langs
    }
}

/// Detects the utterance's language pair: English plus the dominant non-English
/// language. Returns [`PairDetection::Monolingual`] when fewer than two
/// languages are present.
pub fn detect_language_pair(utt: &TaggedUtterance) -> PairDetection {
    let langs = utt.languages();
    if langs.len() < 2 {
        return PairDetection::Monolingual;
    }
    let mut best: Option<(Lang, usize)> = None;
    for &lang in &langs {
        if lang == Lang::En {
            continue;
        }
        let count = utt.tags.iter().filter(|&&t| t == lang).count();
        // First occurrence wins ties: `langs` is in first-appearance order.
        if best.map_or(true, |(_, c)| count > c) {
            best = Some((lang, count));
        }
    }
    match best {
        Some((other, _)) => PairDetection::Pair { other, mixed_beyond_pair: langs.len() >= 3 },
        // Only English present more than once cannot happen here: two distinct
        // languages without a non-EN member is impossible.
        None => PairDetection::Monolingual,
    }
}
