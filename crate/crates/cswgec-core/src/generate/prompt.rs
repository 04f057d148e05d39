//! The few-shot generation prompt and the parser for model responses.
//!
//! The template is frozen; golden tests compare rendered bytes. Slot 10 has
//! no space after its number, matching the template source exactly.

use super::{detected_pair_label, is_code_switched, GenerateError, GeneratedUtterance, Method};

const PROMPT_HEAD: &str = "Settings: [no prose]\n\
For each of the following code-switched sentences, generate a new sentence that uses the same \
two languages and a similar style of code-switching. The topic should be different. Ensure you \
use the correct grammar in the English portion of the sentence. Make sure that each sentence \
contains 2 languages. Only return the sentences and their number. You must follow all of the \
instructions.\n\
\n\
For example, given the source sentence and label:\n\
1. This food is called \u{201c}ラーメン\u{201d}.\n\
An acceptable answer would be:\n\
1. This animal is called a \u{201c}犬\u{201d}.\n\
\n\
Do not include any other information in the generated sentences. The ";

/// A batch of genuine examples plus the prompt rendered from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptBatch {
    pub examples: Vec<String>,
    pub prompt: String,
}

impl PromptBatch {
    pub fn new<S: AsRef<str>>(examples: &[S]) -> Result<PromptBatch, GenerateError> {
        let prompt = build_llm_prompt(examples)?;
        Ok(PromptBatch {
            examples: examples.iter().map(|s| s.as_ref().to_string()).collect(),
            prompt,
        })
    }
}

/// Renders the generation prompt around 1 to 10 code-switched examples.
pub fn build_llm_prompt<S: AsRef<str>>(examples: &[S]) -> Result<String, GenerateError> {
    if examples.is_empty() || examples.len() > 10 {
        return Err(GenerateError::ExampleCount(examples.len()));
    }
    for (i, example) in examples.iter().enumerate() {
        if !is_code_switched(example.as_ref()) {
            return Err(GenerateError::ExampleNotCsw { index: i + 1 });
        }
    }
    let mut prompt = String::from(PROMPT_HEAD);
    prompt.push_str(&format!("{} real examples are as follows:\n\n", examples.len()));
    for (i, example) in examples.iter().enumerate() {
        let k = i + 1;
        if k < 10 {
            prompt.push_str(&format!("{k}. {}\n", example.as_ref()));
        } else {
            prompt.push_str(&format!("{k}.{}\n", example.as_ref()));
        }
    }
    Ok(prompt)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedResponse {
    pub utterances: Vec<GeneratedUtterance>,
    /// Monolingual candidates, kept for the generation log.
    pub rejects: Vec<String>,
    pub warnings: Vec<String>,
}

fn numbered_line(line: &str) -> Option<(usize, &str)> {
    let line = line.trim_start();
    let digits = line.len() - line.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 {
        return None;
    }
    let k: usize = line[..digits].parse().ok()?;
    let rest = line[digits..].strip_prefix('.')?;
    Some((k, rest.trim()))
}

/// Pulls sentences "1. …" through "n. …" out of a raw model response. The
/// first occurrence of each number wins; monolingual sentences land in
/// `rejects`, absent numbers in `warnings`.
pub fn parse_llm_response(raw: &str, expected: usize) -> Result<ParsedResponse, GenerateError> {
    let mut slots: Vec<Option<String>> = vec![None; expected];
    let mut found = false;
    for line in raw.lines() {
        let Some((k, text)) = numbered_line(line) else { continue };
        if k == 0 || k > expected || text.is_empty() {
            continue;
        }
        found = true;
        if slots[k - 1].is_none() {
            slots[k - 1] = Some(text.to_string());
        }
    }
    if !found {
        return Err(GenerateError::UnparseableResponse);
    }
    let mut parsed = ParsedResponse::default();
    let mut missing = Vec::new();
    for (i, slot) in slots.into_iter().enumerate() {
        match slot {
            Some(text) if is_code_switched(&text) => parsed.utterances.push(GeneratedUtterance {
                pair: detected_pair_label(&text),
                text,
                method: Method::Llm,
                source_ids: Vec::new(),
                seed: 0,
                span: None,
                foreign_span: None,
            }),
            Some(text) => parsed.rejects.push(text),
            None => missing.push((i + 1).to_string()),
        }
    }
    if !missing.is_empty() {
        parsed.warnings.push(format!("response missing sentence(s) {}", missing.join(", ")));
    }
    Ok(parsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CSW: &str = "I ate ラーメン yesterday";

    fn examples(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("I ate ラーメン number {i}")).collect()
    }

    #[test]
    fn counts_adjust_to_batch_size() {
        let ten = build_llm_prompt(&examples(10)).unwrap();
        assert!(ten.contains("The 10 real examples are as follows:"));
        let three = build_llm_prompt(&examples(3)).unwrap();
        assert!(three.contains("The 3 real examples are as follows:"));
    }

    #[test]
    fn tenth_slot_has_no_space_after_the_number() {
        let prompt = build_llm_prompt(&examples(10)).unwrap();
        assert!(prompt.contains("\n10.I ate ラーメン number 9\n"));
        assert!(prompt.contains("\n9. I ate ラーメン number 8\n"));
        assert!(prompt.ends_with('\n'));
    }

    #[test]
    fn every_example_appears_exactly_once() {
        let exs = examples(7);
        let prompt = build_llm_prompt(&exs).unwrap();
        for e in &exs {
            assert_eq!(prompt.matches(e.as_str()).count(), 1, "{e}");
        }
    }

    #[test]
    fn renders_the_full_template_for_one_example() {
        let prompt = build_llm_prompt(&[CSW]).unwrap();
        let expected = concat!(
            "Settings: [no prose]\n",
            "For each of the following code-switched sentences, generate a new sentence that ",
            "uses the same two languages and a similar style of code-switching. The topic should ",
            "be different. Ensure you use the correct grammar in the English portion of the ",
            "sentence. Make sure that each sentence contains 2 languages. Only return the ",
            "sentences and their number. You must follow all of the instructions.\n",
            "\n",
            "For example, given the source sentence and label:\n",
            "1. This food is called “ラーメン”.\n",
            "An acceptable answer would be:\n",
            "1. This animal is called a “犬”.\n",
            "\n",
            "Do not include any other information in the generated sentences. The 1 real ",
            "examples are as follows:\n",
            "\n",
            "1. I ate ラーメン yesterday\n",
        );
        assert_eq!(prompt, expected);
    }

    #[test]
    fn rejects_bad_batches() {
        assert_eq!(build_llm_prompt::<&str>(&[]), Err(GenerateError::ExampleCount(0)));
        assert_eq!(build_llm_prompt(&examples(11)), Err(GenerateError::ExampleCount(11)));
        let mixed = vec![CSW.to_string(), "This is entirely English .".to_string()];
        assert_eq!(build_llm_prompt(&mixed), Err(GenerateError::ExampleNotCsw { index: 2 }));
    }

    #[test]
    fn prompt_batch_keeps_examples_and_render() {
        let batch = PromptBatch::new(&examples(2)).unwrap();
        assert_eq!(batch.examples.len(), 2);
        assert!(batch.prompt.contains("The 2 real examples"));
    }

    #[test]
    fn parses_the_one_shot_answer() {
        // Bare 犬 has no kana around it, so the Han vote reads it as Chinese;
        // with kana in the sentence the same word comes out Japanese.
        let parsed = parse_llm_response("1. This animal is called a “犬”.", 1).unwrap();
        assert_eq!(parsed.utterances.len(), 1);
        assert_eq!(parsed.utterances[0].pair, "EN-ZH");
        assert!(parsed.rejects.is_empty());
        let parsed = parse_llm_response("1. This animal is called a 犬 ね.", 1).unwrap();
        assert_eq!(parsed.utterances[0].pair, "EN-JA");
    }

    #[test]
    fn monolingual_lines_are_rejected_not_errors() {
        let parsed = parse_llm_response("1. This is entirely English.", 1).unwrap();
        assert!(parsed.utterances.is_empty());
        assert_eq!(parsed.rejects, vec!["This is entirely English.".to_string()]);
    }

    #[test]
    fn missing_numbers_warn_and_extras_are_ignored() {
        let raw = "1. First ラーメン line.\n2. Second ラーメン line.\nnoise\n4. Fourth ラーメン line.\n9. out of range\n";
        let parsed = parse_llm_response(raw, 4).unwrap();
        assert_eq!(parsed.utterances.len(), 3);
        assert_eq!(parsed.warnings, vec!["response missing sentence(s) 3".to_string()]);
    }

    #[test]
    fn first_occurrence_of_a_number_wins() {
        let raw = "1. keep ラーメン this\n1. drop ラーメン that\n";
        let parsed = parse_llm_response(raw, 1).unwrap();
        assert_eq!(parsed.utterances[0].text, "keep ラーメン this");
    }

    #[test]
    fn tolerates_indentation_and_tight_numbering() {
        let raw = "  2. indented ラーメン line\n10.tight ラーメン line\n";
        let parsed = parse_llm_response(raw, 10).unwrap();
        assert_eq!(parsed.utterances.len(), 2);
    }

    #[test]
    fn garbage_response_is_unparseable() {
        assert_eq!(parse_llm_response("no numbers here", 5), Err(GenerateError::UnparseableResponse));
        assert_eq!(parse_llm_response("", 5), Err(GenerateError::UnparseableResponse));
    }
}
