//! M2 annotation format: one "S" source line per sentence followed by "A"
//! edit lines, blocks separated by blank lines.

use super::{Edit, ErrorCategory, EvalError, ScoreMode, ScoreReport};

#[derive(Debug, Clone, PartialEq)]
pub struct M2Block {
    pub source: Vec<String>,
    pub edits: Vec<M2Edit>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct M2Edit {
    pub edit: Edit,
    pub annotator: u32,
}

impl M2Block {
    /// Edits belonging to one annotator, in file order.
    pub fn annotator_edits(&self, annotator: u32) -> Vec<Edit> {
        self.edits.iter().filter(|e| e.annotator == annotator).map(|e| e.edit.clone()).collect()
    }
}

/// Parses M2 text into sentence blocks. Unknown categories map to OTHER;
/// `noop` lines contribute no edits.
pub fn parse_m2(text: &str) -> Result<Vec<M2Block>, EvalError> {
    let mut blocks = Vec::new();
    let mut current: Option<M2Block> = None;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim_end();
        if line.is_empty() {
            if let Some(block) = current.take() {
                blocks.push(block);
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("S ").or(if line == "S" { Some("") } else { None }) {
            if let Some(block) = current.take() {
                blocks.push(block);
            }
            current = Some(M2Block {
                source: rest.split_whitespace().map(str::to_string).collect(),
                edits: Vec::new(),
            });
        } else if let Some(rest) = line.strip_prefix("A ") {
            let block = current.as_mut().ok_or(EvalError::M2Parse {
                line: lineno,
                msg: "edit line before any S line".into(),
            })?;
            block.edits.extend(parse_edit_line(rest, lineno)?);
        } else {
            return Err(EvalError::M2Parse {
                line: lineno,
                msg: format!("expected S or A line, got {line:?}"),
            });
        }
    }
    if let Some(block) = current.take() {
        blocks.push(block);
    }
    Ok(blocks)
}

fn parse_edit_line(rest: &str, lineno: usize) -> Result<Option<M2Edit>, EvalError> {
    let bad = |msg: &str| EvalError::M2Parse { line: lineno, msg: msg.into() };
    let fields: Vec<&str> = rest.split("|||").collect();
    if fields.len() < 3 {
        return Err(bad("edit line needs at least span|||category|||replacement"));
    }
    let mut span = fields[0].split_whitespace();
    let start: i64 = span
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad("bad span start"))?;
    let end: i64 = span.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad span end"))?;
    let category = fields[1];
    if category == "noop" || category == "UNK" {
        return Ok(None);
    }
    if start < 0 || end < start {
        return Err(bad("bad edit span"));
    }
    let replacement = match fields[2] {
        "" | "-NONE-" => Vec::new(),
        text => text.split_whitespace().map(str::to_string).collect(),
    };
    let annotator = fields
        .last()
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| bad("bad annotator id"))?;
    let mut edit = Edit::new(start as usize, end as usize, replacement);
    edit.category = Some(ErrorCategory::parse(category).unwrap_or(ErrorCategory::Other));
    Ok(Some(M2Edit { edit, annotator }))
}

/// Renders one sentence block. Sentences without edits get a `noop` line so
/// round trips preserve block count.
pub fn write_block(source: &[String], edits: &[Edit], annotator: u32) -> String {
    let mut out = format!("S {}\n", source.join(" "));
    if edits.is_empty() {
        out.push_str(&format!("A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||{annotator}\n"));
        return out;
    }
    for e in edits {
        let cat = e.category.map(|c| c.name()).unwrap_or("OTHER");
        let repl = if e.replacement.is_empty() { "-NONE-".to_string() } else { e.replacement.join(" ") };
        out.push_str(&format!(
            "A {} {}|||{}|||{}|||REQUIRED|||-NONE-|||{annotator}\n",
            e.start, e.end, cat, repl
        ));
    }
    out
}

pub fn write_m2<'a, I>(blocks: I) -> String
where
    I: IntoIterator<Item = (&'a [String], &'a [Edit])>,
{
    let mut out = String::new();
    for (source, edits) in blocks {
        out.push_str(&write_block(source, edits, 0));
        out.push('\n');
    }
    out
}

/// Scores parallel hypothesis and reference M2 files block by block using
/// annotator 0 on both sides.
pub fn score_m2(hyp: &[M2Block], reference: &[M2Block], mode: ScoreMode) -> Result<ScoreReport, EvalError> {
    if hyp.len() != reference.len() {
        return Err(EvalError::SourceMismatch(format!(
            "hypothesis has {} sentences, reference has {}",
            hyp.len(),
            reference.len()
        )));
    }
    let mut report = ScoreReport::default();
    for (i, (h, r)) in hyp.iter().zip(reference).enumerate() {
        if h.source.len() != r.source.len() {
            return Err(EvalError::SourceMismatch(format!(
                "sentence {}: {} vs {} source tokens",
                i + 1,
                h.source.len(),
                r.source.len()
            )));
        }
        let contribution =
            super::score_pair(&r.source, &h.annotator_edits(0), &r.annotator_edits(0), mode);
        report.merge(&contribution);
    }
    Ok(report)
}
