//! Library half of the `trilinear` command: document parsing, subcommand
//! bodies and batch processing.

pub mod commands;
pub mod document;

use rayon::prelude::*;
use trilinear::TriLinearMap;

use commands::Outcome;
use document::parse_document;

/// Non-empty lines of `text` that are not `#` comments, with their line numbers.
pub fn batch_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect()
}

/// Parse and process every document of a batch in parallel; results keep the
/// input order.
pub fn run_batch<F>(text: &str, f: F) -> Vec<Outcome>
where
    F: Fn(&TriLinearMap) -> Outcome + Sync,
{
    batch_lines(text)
        .par_iter()
        .map(|(line, doc)| match parse_document(doc, *line) {
            Ok(phi) => f(&phi),
            Err(e) => Outcome::invalid(&e),
        })
        .collect()
}

/// Parse and process a single document.
pub fn run_single<F>(text: &str, f: F) -> Outcome
where
    F: Fn(&TriLinearMap) -> Outcome,
{
    match parse_document(text, 1) {
        Ok(phi) => f(&phi),
        Err(e) => Outcome::invalid(&e),
    }
}

/// The exit code of a batch: the largest item code.
pub fn batch_code(outcomes: &[Outcome]) -> i32 {
    outcomes.iter().map(|o| o.code).max().unwrap_or(commands::EXIT_OK)
}
