//! Stream plumbing: `-` stands for stdin or stdout on every path argument.

use std::io::{Read, Write};

use crate::CliError;

pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Data(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Data(format!("{path}: {e}")))
    }
}

pub fn write_output(path: &str, content: &str) -> Result<(), CliError> {
    if path == "-" {
        std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| CliError::Data(format!("stdout: {e}")))
    } else {
        std::fs::write(path, content).map_err(|e| CliError::Data(format!("{path}: {e}")))
    }
}

/// Non-blank input lines, carriage returns stripped.
pub fn lines(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.trim_end_matches('\r'))
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect()
}

/// One string per line plus a trailing newline; empty stays empty.
pub fn jsonl(items: &[String]) -> String {
    let mut out = items.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}
