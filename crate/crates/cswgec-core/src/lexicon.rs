//! Word lists and inflection rules shared by the corruptor and the edit
//! classifier. The lists live in `data/` as plain text so they can be audited
//! and extended without touching code.

use std::collections::{HashMap, HashSet};

use once_cell::sync::Lazy;

pub const DETERMINERS: [&str; 3] = ["a", "an", "the"];
/// Marks eligible for punctuation corruption.
pub const PUNCT_MARKS: [&str; 6] = [".", ",", ";", ":", "!", "?"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerbForm {
    Base,
    Third,
    Past,
    Ing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbParadigm {
    pub base: String,
    pub third: String,
    pub past: String,
    pub ing: String,
}

impl VerbParadigm {
    pub fn form(&self, form: VerbForm) -> &str {
        match form {
            VerbForm::Base => &self.base,
            VerbForm::Third => &self.third,
            VerbForm::Past => &self.past,
            VerbForm::Ing => &self.ing,
        }
    }

    pub fn form_of(&self, word: &str) -> Option<VerbForm> {
        [VerbForm::Base, VerbForm::Third, VerbForm::Past, VerbForm::Ing]
            .into_iter()
            .find(|&f| self.form(f) == word)
    }
}

pub struct Lexicon {
    pub pronoun_sets: Vec<Vec<String>>,
    pub pronouns: HashSet<String>,
    pub prepositions: Vec<String>,
    pub irregular_noun_to_plural: HashMap<String, String>,
    pub irregular_noun_to_singular: HashMap<String, String>,
    pub paradigms: Vec<VerbParadigm>,
    /// Any irregular surface form to its paradigm index.
    pub verb_form_index: HashMap<String, usize>,
    pub verb_stems: HashSet<String>,
    pub function_words: HashSet<String>,
}

fn data_lines(raw: &str) -> impl Iterator<Item = &str> {
    raw.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

static LEXICON: Lazy<Lexicon> = Lazy::new(|| {
    let pronoun_sets: Vec<Vec<String>> = data_lines(include_str!("../data/pronouns.txt"))
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    let pronouns = pronoun_sets.iter().flatten().cloned().collect();

    let prepositions = data_lines(include_str!("../data/prepositions.txt"))
        .map(str::to_string)
        .collect();

    let mut irregular_noun_to_plural = HashMap::new();
    let mut irregular_noun_to_singular = HashMap::new();
    for line in data_lines(include_str!("../data/irregular_nouns.txt")) {
        let mut parts = line.split_whitespace();
        let (sing, plur) = (parts.next().unwrap(), parts.next().unwrap());
        irregular_noun_to_plural.insert(sing.to_string(), plur.to_string());
        irregular_noun_to_singular.insert(plur.to_string(), sing.to_string());
    }

    let mut paradigms = Vec::new();
    let mut verb_form_index = HashMap::new();
    for line in data_lines(include_str!("../data/irregular_verbs.txt")) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cols.len(), 4, "irregular verb row needs 4 columns: {line}");
        let idx = paradigms.len();
        paradigms.push(VerbParadigm {
            base: cols[0].to_string(),
            third: cols[1].to_string(),
            past: cols[2].to_string(),
            ing: cols[3].to_string(),
        });
        for col in cols {
            verb_form_index.entry(col.to_string()).or_insert(idx);
        }
    }

    let mut verb_stems: HashSet<String> = data_lines(include_str!("../data/verbs_common.txt"))
        .map(str::to_string)
        .collect();
    verb_stems.extend(paradigms.iter().map(|p| p.base.clone()));

    let function_words = data_lines(include_str!("../data/function_words.txt"))
        .map(str::to_string)
        .collect();

    Lexicon {
        pronoun_sets,
        pronouns,
        prepositions,
        irregular_noun_to_plural,
        irregular_noun_to_singular,
        paradigms,
        verb_form_index,
        verb_stems,
        function_words,
    }
});

pub fn lexicon() -> &'static Lexicon {
    &LEXICON
}

impl Lexicon {
    pub fn is_determiner(&self, word: &str) -> bool {
        DETERMINERS.contains(&word)
    }

    pub fn is_pronoun(&self, word: &str) -> bool {
        self.pronouns.contains(word)
    }

    pub fn is_preposition(&self, word: &str) -> bool {
        self.prepositions.iter().any(|p| p == word)
    }

    pub fn is_function_word(&self, word: &str) -> bool {
        self.function_words.contains(word)
    }

    pub fn is_verb_stem(&self, word: &str) -> bool {
        self.verb_stems.contains(word)
    }

    /// Other members of every confusion set containing `word`, deduplicated,
    /// in file order. Empty when the word is not a known pronoun.
    pub fn pronoun_confusions(&self, word: &str) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for set in &self.pronoun_sets {
            if set.iter().any(|p| p == word) {
                for p in set {
                    if p != word && !out.contains(p) {
                        out.push(p.clone());
                    }
                }
            }
        }
        out
    }

    /// All prepositions except `word` itself; empty when `word` is not one.
    pub fn preposition_alternatives(&self, word: &str) -> Vec<String> {
        if !self.is_preposition(word) {
            return Vec::new();
        }
        self.prepositions.iter().filter(|p| *p != word).cloned().collect()
    }
}

fn ends_with_any(word: &str, suffixes: &[&str]) -> bool {
    suffixes.iter().any(|s| word.ends_with(s))
}

/// Singular to plural by rule (irregulars first).
pub fn pluralize(word: &str) -> String {
    let lex = lexicon();
    if let Some(p) = lex.irregular_noun_to_plural.get(word) {
        return p.clone();
    }
    let chars: Vec<char> = word.chars().collect();
    if word.ends_with('y')
        && chars.len() >= 2
        && !matches!(chars[chars.len() - 2], 'a' | 'e' | 'i' | 'o' | 'u')
    {
        return format!("{}ies", &word[..word.len() - 1]);
    }
    if ends_with_any(word, &["s", "x", "z", "ch", "sh", "o"]) {
        return format!("{word}es");
    }
    if let Some(stem) = word.strip_suffix("fe") {
        return format!("{stem}ves");
    }
    if let Some(stem) = word.strip_suffix('f') {
        return format!("{stem}ves");
    }
    format!("{word}s")
}

/// Plural to singular by rule; `None` when the word does not look plural.
pub fn singularize(word: &str) -> Option<String> {
    let lex = lexicon();
    if let Some(s) = lex.irregular_noun_to_singular.get(word) {
        return Some(s.clone());
    }
    if word.ends_with("ies") && word.len() > 3 {
        return Some(format!("{}y", &word[..word.len() - 3]));
    }
    if word.ends_with("ves") && word.len() > 3 {
        return Some(format!("{}f", &word[..word.len() - 3]));
    }
    if ends_with_any(word, &["ses", "xes", "zes", "ches", "shes", "oes"]) {
        return Some(word[..word.len() - 2].to_string());
    }
    if word.ends_with('s') && !word.ends_with("ss") && word.len() > 1 {
        return Some(word[..word.len() - 1].to_string());
    }
    None
}

/// Toggles noun number; `None` when no rule applies (e.g. "ss" endings).
pub fn noun_toggle(word: &str) -> Option<String> {
    if let Some(s) = singularize(word) {
        if s != word {
            return Some(s);
        }
    }
    let p = pluralize(word);
    (p != word).then_some(p)
}

/// True when the pair is a noun-number toggle that only nouns exhibit
/// (irregular pair or f/fe to ves), as opposed to a bare s-toggle.
pub fn is_noun_specific_pair(a: &str, b: &str) -> bool {
    let lex = lexicon();
    if lex.irregular_noun_to_plural.get(a).map(String::as_str) == Some(b)
        || lex.irregular_noun_to_plural.get(b).map(String::as_str) == Some(a)
    {
        return true;
    }
    let ves = |sing: &str, plur: &str| {
        plur.ends_with("ves") && (sing.ends_with('f') || sing.ends_with("fe")) && {
            let stem = &plur[..plur.len() - 3];
            sing.starts_with(stem)
        }
    };
    ves(a, b) || ves(b, a)
}

/// True when `a` and `b` form a singular/plural pair under the noun rules.
pub fn is_noun_number_pair(a: &str, b: &str) -> bool {
    pluralize(a) == b || pluralize(b) == a || is_noun_specific_pair(a, b)
}

fn third_person(base: &str) -> String {
    // Same suffix rules as pluralization minus the f/fe handling.
    let chars: Vec<char> = base.chars().collect();
    if base.ends_with('y')
        && chars.len() >= 2
        && !matches!(chars[chars.len() - 2], 'a' | 'e' | 'i' | 'o' | 'u')
    {
        return format!("{}ies", &base[..base.len() - 1]);
    }
    if ends_with_any(base, &["s", "x", "z", "ch", "sh", "o"]) {
        return format!("{base}es");
    }
    format!("{base}s")
}

fn past_tense(base: &str) -> String {
    let chars: Vec<char> = base.chars().collect();
    if base.ends_with('e') {
        return format!("{base}d");
    }
    if base.ends_with('y')
        && chars.len() >= 2
        && !matches!(chars[chars.len() - 2], 'a' | 'e' | 'i' | 'o' | 'u')
    {
        return format!("{}ied", &base[..base.len() - 1]);
    }
    format!("{base}ed")
}

fn gerund(base: &str) -> String {
    if base.ends_with('e') && !base.ends_with("ee") && !base.ends_with("ye") && base.len() > 2 {
        return format!("{}ing", &base[..base.len() - 1]);
    }
    format!("{base}ing")
}

/// Regular paradigm built from a base form.
pub fn regular_paradigm(base: &str) -> VerbParadigm {
    VerbParadigm {
        base: base.to_string(),
        third: third_person(base),
        past: past_tense(base),
        ing: gerund(base),
    }
}

/// Recovers the paradigm a surface form belongs to, and which slot it fills.
/// Irregular forms resolve by table; regular forms by suffix stripping with a
/// preference for candidates whose base is a known verb stem. Unsuffixed words
/// must be known stems, and bare s-forms resolve only through known stems, so
/// arbitrary nouns do not register as verbs.
pub fn verb_paradigm_of(word: &str) -> Option<(VerbParadigm, VerbForm)> {
    let lex = lexicon();
    if let Some(&idx) = lex.verb_form_index.get(word) {
        let p = lex.paradigms[idx].clone();
        let form = p.form_of(word).unwrap_or(VerbForm::Base);
        return Some((p, form));
    }
    if lex.is_verb_stem(word) {
        return Some((regular_paradigm(word), VerbForm::Base));
    }

    let known = |cands: &[String]| -> Option<String> {
        cands.iter().find(|c| lex.is_verb_stem(c)).cloned()
    };

    if word.ends_with("ied") && word.len() > 3 {
        let y = format!("{}y", &word[..word.len() - 3]);
        let base = known(std::slice::from_ref(&y)).unwrap_or(y);
        return Some((regular_paradigm(&base), VerbForm::Past));
    }
    if word.ends_with("ed") && word.len() > 2 {
        let keep_e = word[..word.len() - 1].to_string();
        let strip_ed = word[..word.len() - 2].to_string();
        let base = known(&[keep_e, strip_ed.clone()]).unwrap_or(strip_ed);
        return Some((regular_paradigm(&base), VerbForm::Past));
    }
    if word.ends_with("ing") && word.len() > 4 {
        let strip = word[..word.len() - 3].to_string();
        let with_e = format!("{strip}e");
        let base = known(&[strip.clone(), with_e]).unwrap_or(strip);
        return Some((regular_paradigm(&base), VerbForm::Ing));
    }
    if word.ends_with('s') && !word.ends_with("ss") && word.len() > 1 {
        let mut cands = Vec::new();
        if word.ends_with("ies") && word.len() > 3 {
            cands.push(format!("{}y", &word[..word.len() - 3]));
        }
        if ends_with_any(word, &["ses", "xes", "zes", "ches", "shes", "oes"]) {
            cands.push(word[..word.len() - 2].to_string());
        }
        cands.push(word[..word.len() - 1].to_string());
        let base = known(&cands)?;
        return Some((regular_paradigm(&base), VerbForm::Third));
    }
    None
}

/// True when the two surfaces belong to one verb paradigm. Returns their slots.
pub fn verb_pair(a: &str, b: &str) -> Option<(VerbForm, VerbForm)> {
    let (pa, fa) = verb_paradigm_of(a)?;
    let fb = pa.form_of(b);
    if let Some(fb) = fb {
        return Some((fa, fb));
    }
    // The reverse direction catches irregular forms that map to a different
    // paradigm row (e.g. "are" -> "is").
    let (pb, fb) = verb_paradigm_of(b)?;
    let fa2 = pb.form_of(a)?;
    Some((fa2, fb))
}

/// Toggles -s agreement on a verb or noun surface. Only ASCII-alphabetic
/// words carry this morphology; anything else is left alone.
pub fn agreement_toggle(word: &str) -> Option<String> {
    if word.is_empty() || !word.chars().all(|c| c.is_ascii_alphabetic()) {
        return None;
    }
    if let Some((p, form)) = verb_paradigm_of(word) {
        match form {
            VerbForm::Base => return Some(p.third.clone()),
            VerbForm::Third => return Some(p.base.clone()),
            _ => {}
        }
    }
    noun_toggle(word)
}

/// Copies the casing shape of `pattern` onto `word` (all-caps or initial capital).
pub fn match_case(pattern: &str, word: &str) -> String {
    let mut chars = pattern.chars();
    let first_upper = chars.next().map(|c| c.is_uppercase()).unwrap_or(false);
    let all_upper = first_upper && pattern.chars().count() > 1 && pattern.chars().all(|c| !c.is_lowercase());
    if all_upper {
        return word.to_uppercase();
    }
    if first_upper {
        let mut out = String::new();
        let mut wc = word.chars();
        if let Some(c) = wc.next() {
            out.extend(c.to_uppercase());
            out.push_str(wc.as_str());
        }
        return out;
    }
    word.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plural_rules() {
        assert_eq!(pluralize("dog"), "dogs");
        assert_eq!(pluralize("city"), "cities");
        assert_eq!(pluralize("box"), "boxes");
        assert_eq!(pluralize("knife"), "knives");
        assert_eq!(pluralize("child"), "children");
    }

    #[test]
    fn singular_rules() {
        assert_eq!(singularize("dogs").as_deref(), Some("dog"));
        assert_eq!(singularize("cities").as_deref(), Some("city"));
        assert_eq!(singularize("children").as_deref(), Some("child"));
        assert_eq!(singularize("glass"), None);
    }

    #[test]
    fn noun_toggle_round_trips() {
        for w in ["dog", "city", "box", "child", "leaf"] {
            let toggled = noun_toggle(w).unwrap();
            assert_ne!(toggled, w);
            assert_eq!(noun_toggle(&toggled).as_deref(), Some(w));
        }
    }

    #[test]
    fn verb_paradigms_resolve_irregulars() {
        let (p, form) = verb_paradigm_of("went").unwrap();
        assert_eq!(p.base, "go");
        assert_eq!(form, VerbForm::Past);
        let (p, form) = verb_paradigm_of("goes").unwrap();
        assert_eq!(p.third, "goes");
        assert_eq!(form, VerbForm::Third);
    }

    #[test]
    fn verb_paradigms_resolve_regulars_by_stem_list() {
        let (p, form) = verb_paradigm_of("liked").unwrap();
        assert_eq!(p.base, "like");
        assert_eq!(form, VerbForm::Past);
        let (p, _) = verb_paradigm_of("studies").unwrap();
        assert_eq!(p.base, "study");
        // Unknown s-forms stay out of the verb space.
        assert!(verb_paradigm_of("dogs").is_none());
        assert!(verb_paradigm_of("florb").is_none());
    }

    #[test]
    fn verb_pair_connects_forms() {
        assert_eq!(verb_pair("go", "goes"), Some((VerbForm::Base, VerbForm::Third)));
        assert_eq!(verb_pair("walked", "walking"), Some((VerbForm::Past, VerbForm::Ing)));
        assert_eq!(verb_pair("are", "is"), Some((VerbForm::Base, VerbForm::Third)));
        assert_eq!(verb_pair("dog", "dogs"), None);
    }

    #[test]
    fn agreement_toggles() {
        assert_eq!(agreement_toggle("go").as_deref(), Some("goes"));
        assert_eq!(agreement_toggle("goes").as_deref(), Some("go"));
        assert_eq!(agreement_toggle("dogs").as_deref(), Some("dog"));
    }

    #[test]
    fn case_matching() {
        assert_eq!(match_case("He", "she"), "She");
        assert_eq!(match_case("THE", "an"), "AN");
        assert_eq!(match_case("the", "an"), "an");
    }

    #[test]
    fn word_lists_load() {
        let lex = lexicon();
        assert!(lex.is_pronoun("he"));
        assert!(lex.is_preposition("about"));
        assert!(lex.is_function_word("the"));
        assert!(lex.is_verb_stem("like"));
        assert!(lex.pronoun_sets.iter().all(|s| s.len() >= 2));
    }
}
