//! Penn-Treebank bracketed trees and the translate-a-subtree switch.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{detected_pair_label, GenerateError, GeneratedUtterance, Method};

/// A constituent node. Preterminals carry the leaf token; internal nodes
/// carry children. `span` indexes into the sentence's token sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTree {
    pub label: String,
    pub children: Vec<ParseTree>,
    pub token: Option<String>,
    pub span: (usize, usize),
}

impl ParseTree {
    pub fn leaf_count(&self) -> usize {
        self.span.1 - self.span.0
    }

    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        if let Some(tok) = &self.token {
            out.push(tok);
        }
        for child in &self.children {
            child.collect_leaves(out);
        }
    }

    /// All nodes in pre-order, root first.
    pub fn nodes(&self) -> Vec<&ParseTree> {
        let mut out = vec![self];
        for child in &self.children {
            out.extend(child.nodes());
        }
        out
    }

    /// Distinct constituent spans in pre-order of first appearance.
    pub fn constituent_spans(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for node in self.nodes() {
            if !out.contains(&node.span) {
                out.push(node.span);
            }
        }
        out
    }
}

#[derive(Debug, PartialEq)]
enum SexpToken {
    Open,
    Close,
    Atom(String),
}

fn lex_sexp(input: &str) -> Vec<SexpToken> {
    let mut tokens = Vec::new();
    let mut atom = String::new();
    for c in input.chars() {
        match c {
            '(' | ')' => {
                if !atom.is_empty() {
                    tokens.push(SexpToken::Atom(std::mem::take(&mut atom)));
                }
                tokens.push(if c == '(' { SexpToken::Open } else { SexpToken::Close });
            }
            c if c.is_whitespace() => {
                if !atom.is_empty() {
                    tokens.push(SexpToken::Atom(std::mem::take(&mut atom)));
                }
            }
            c => atom.push(c),
        }
    }
    if !atom.is_empty() {
        tokens.push(SexpToken::Atom(atom));
    }
    tokens
}

struct TreeParser {
    tokens: Vec<SexpToken>,
    pos: usize,
    next_leaf: usize,
}

impl TreeParser {
    fn bad(msg: impl Into<String>) -> GenerateError {
        GenerateError::MalformedTree(msg.into())
    }

    fn peek(&self) -> Option<&SexpToken> {
        self.tokens.get(self.pos)
    }

    fn parse_node(&mut self) -> Result<ParseTree, GenerateError> {
        match self.tokens.get(self.pos) {
            Some(SexpToken::Open) => self.pos += 1,
            other => return Err(Self::bad(format!("expected '(', got {other:?}"))),
        }
        let label = match self.peek() {
            Some(SexpToken::Atom(a)) => {
                let label = a.clone();
                self.pos += 1;
                label
            }
            // "((S …))" style wrappers have a label-less outer node.
            Some(SexpToken::Open) => String::new(),
            _ => return Err(Self::bad("constituent ends right after '('")),
        };
        let start = self.next_leaf;
        let mut children = Vec::new();
        let mut token = None;
        loop {
            match self.peek() {
                Some(SexpToken::Close) => {
                    self.pos += 1;
                    break;
                }
                Some(SexpToken::Open) => {
                    if token.is_some() {
                        return Err(Self::bad(format!("node {label:?} mixes a token and subtrees")));
                    }
                    children.push(self.parse_node()?);
                }
                Some(SexpToken::Atom(word)) => {
                    if token.is_some() || !children.is_empty() {
                        return Err(Self::bad(format!("node {label:?} has more than one leaf token")));
                    }
                    token = Some(word.clone());
                    self.pos += 1;
                    self.next_leaf += 1;
                }
                None => return Err(Self::bad("unbalanced brackets: input ended inside a node")),
            }
        }
        if token.is_none() && children.is_empty() {
            return Err(Self::bad(format!("empty constituent {label:?}")));
        }
        Ok(ParseTree { label, children, token, span: (start, self.next_leaf) })
    }
}

/// Parses one bracketed tree, unwrapping `(ROOT …)`, `(TOP …)`, and bare
/// `((…))` wrappers down to the first real constituent.
pub fn parse_ptb_tree(bracketed: &str) -> Result<ParseTree, GenerateError> {
    let tokens = lex_sexp(bracketed);
    if tokens.is_empty() {
        return Err(TreeParser::bad("empty input"));
    }
    let mut parser = TreeParser { tokens, pos: 0, next_leaf: 0 };
    let mut tree = parser.parse_node()?;
    if parser.pos != parser.tokens.len() {
        return Err(TreeParser::bad("trailing tokens after the root constituent"));
    }
    while tree.children.len() == 1
        && (tree.label.is_empty() || tree.label == "ROOT" || tree.label == "TOP")
    {
        tree = tree.children.into_iter().next().expect("one child");
    }
    Ok(tree)
}

/// Replaces one uniformly chosen proper constituent with translator output.
/// The translator sees the constituent's tokens and returns replacement text,
/// which is spliced in on whitespace boundaries.
pub fn translation_switch<F>(
    tree: &ParseTree,
    mut translate: F,
    seed: u64,
) -> Result<GeneratedUtterance, GenerateError>
where
    F: FnMut(&[String]) -> Result<String, String>,
{
    let leaves: Vec<String> = tree.leaves().into_iter().map(str::to_string).collect();
    let full = tree.span;
    let eligible: Vec<(usize, usize)> =
        tree.nodes().into_iter().map(|n| n.span).filter(|s| *s != full).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let &(start, end) = eligible.choose(&mut rng).ok_or(GenerateError::NoEligibleSubtree)?;
    let translated = translate(&leaves[start..end]).map_err(|message| {
        GenerateError::TranslatorFailure { start, end, message }
    })?;
    let mut out: Vec<String> = leaves[..start].to_vec();
    out.extend(translated.split_whitespace().map(str::to_string));
    out.extend_from_slice(&leaves[end..]);
    let text = out.join(" ");
    Ok(GeneratedUtterance {
        pair: detected_pair_label(&text),
        text,
        method: Method::Translation,
        source_ids: Vec::new(),
        seed,
        span: Some((start, end)),
        foreign_span: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIMPLE: &str = "(S (NP (PRP I)) (VP (VBP like) (NP (NN ramen))))";

    #[test]
    fn parses_spans_and_leaves() {
        let tree = parse_ptb_tree(SIMPLE).unwrap();
        assert_eq!(tree.leaves(), vec!["I", "like", "ramen"]);
        assert_eq!(tree.span, (0, 3));
        let vp = tree.nodes().into_iter().find(|n| n.label == "VP").unwrap();
        assert_eq!(vp.span, (1, 3));
        let spans = tree.constituent_spans();
        assert!(spans.contains(&(0, 1)) && spans.contains(&(1, 2)) && spans.contains(&(2, 3)));
    }

    #[test]
    fn unwraps_root_wrappers() {
        for wrapped in ["(ROOT (S (NN dog)))", "((S (NN dog)))", "(TOP (S (NN dog)))"] {
            let tree = parse_ptb_tree(wrapped).unwrap();
            assert_eq!(tree.label, "S");
            assert_eq!(tree.leaves(), vec!["dog"]);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["(S (NP I)", "", "()", "(S)", "(S (NP the dog))", "(S (NN a)) extra"] {
            assert!(
                matches!(parse_ptb_tree(bad), Err(GenerateError::MalformedTree(_))),
                "{bad:?} parsed"
            );
        }
    }

    #[test]
    fn switch_replaces_exactly_one_constituent() {
        let tree = parse_ptb_tree(SIMPLE).unwrap();
        let dictionary = |span: &[String]| -> Result<String, String> {
            match span.join(" ").as_str() {
                "like" => Ok("好き".to_string()),
                "ramen" => Ok("ラーメン".to_string()),
                "I" => Ok("私".to_string()),
                other => Ok(format!("〈{other}〉")),
            }
        };
        // Some seed must pick the VBP leaf.
        let hit = (0..200).find_map(|seed| {
            let out = translation_switch(&tree, dictionary, seed).unwrap();
            (out.text == "I 好き ramen").then_some(out)
        });
        let out = hit.expect("VBP subtree never chosen in 200 seeds");
        assert_eq!(out.span, Some((1, 2)));
        assert_eq!(out.pair, "EN-JA");
        assert_eq!(out.method, Method::Translation);
    }

    #[test]
    fn switch_is_deterministic_and_never_full_span() {
        let tree = parse_ptb_tree(SIMPLE).unwrap();
        let id = |span: &[String]| -> Result<String, String> { Ok(span.join(" ")) };
        for seed in 0..50 {
            let a = translation_switch(&tree, id, seed).unwrap();
            let b = translation_switch(&tree, id, seed).unwrap();
            assert_eq!(a, b);
            assert_ne!(a.span, Some((0, 3)));
        }
    }

    #[test]
    fn single_leaf_tree_has_no_eligible_subtree() {
        let tree = parse_ptb_tree("(NN dog)").unwrap();
        let id = |span: &[String]| -> Result<String, String> { Ok(span.join(" ")) };
        assert_eq!(translation_switch(&tree, id, 0), Err(GenerateError::NoEligibleSubtree));
    }

    #[test]
    fn translator_failure_carries_span() {
        let tree = parse_ptb_tree(SIMPLE).unwrap();
        let broken = |_: &[String]| -> Result<String, String> { Err("offline".to_string()) };
        match translation_switch(&tree, broken, 0) {
            Err(GenerateError::TranslatorFailure { start, end, message }) => {
                assert!(end > start);
                assert_eq!(message, "offline");
            }
            other => panic!("expected TranslatorFailure, got {other:?}"),
        }
    }
}
