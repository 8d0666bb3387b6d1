//! Map documents: a JSON object with four entry strings, or the four entries
//! written as comma-separated text.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;
use trilinear::exactmath::{fmt_rational, parse_rational};
use trilinear::{MapError, Point, Rational, TriLinearMap};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub format_version: String,
    pub entries: [String; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl MapDocument {
    /// Canonical document of a map: entries printed in the polynomial syntax.
    pub fn from_map(phi: &TriLinearMap, metadata: Option<Metadata>) -> Self {
        MapDocument {
            format_version: FORMAT_VERSION.to_string(),
            entries: phi.entry_strings(),
            metadata,
        }
    }

    pub fn to_map(&self) -> Result<TriLinearMap, InputError> {
        if self.format_version != FORMAT_VERSION {
            return Err(InputError::Version(self.format_version.clone()));
        }
        let e = &self.entries;
        TriLinearMap::from_strs(&[&e[0], &e[1], &e[2], &e[3]]).map_err(|error| InputError::Map {
            error,
            position: None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }
}

/// Line and column (1-based) in the input text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("I/O: {0}")]
    Io(String),
    #[error("line {line}, column {column}: malformed document: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("unsupported format_version `{0}`")]
    Version(String),
    #[error("{}{error}", position_prefix(.position))]
    Map { error: MapError, position: Option<Position> },
    #[error("malformed {what} `{text}`: {message}")]
    Value { what: &'static str, text: String, message: String },
}

fn position_prefix(p: &Option<Position>) -> String {
    match p {
        Some(p) => format!("line {}, column {}: ", p.line, p.column),
        None => String::new(),
    }
}

impl InputError {
    pub fn kind(&self) -> &'static str {
        match self {
            InputError::Io(_) => "io",
            InputError::Json { .. } => "malformed_document",
            InputError::Version(_) => "unsupported_version",
            InputError::Map { error, .. } => match error {
                MapError::Parse { .. } => "parse",
                MapError::WrongDegree { .. } => "wrong_degree",
                MapError::Dependent { .. } => "dependent_entries",
                MapError::CommonFactor { .. } => "common_factor",
                MapError::SingularLeftFactor => "singular_left_factor",
            },
            InputError::Value { .. } => "malformed_value",
        }
    }

    /// Extra fields of the error envelope.
    pub fn details(&self) -> Value {
        match self {
            InputError::Json { line, column, .. } => json!({ "line": line, "column": column }),
            InputError::Map { error, position } => {
                let mut v = match error {
                    MapError::Parse { entry, error } => json!({ "entry": entry, "entry_column": error.column }),
                    MapError::WrongDegree { entry, found } => json!({ "entry": entry, "degree": found.to_string() }),
                    MapError::Dependent { rank, common_factor } => json!({
                        "rank": rank,
                        "witness": common_factor.as_ref().map(|(_, f)| f.clone()),
                    }),
                    MapError::CommonFactor { tridegree, factor } => {
                        json!({ "witness": factor, "tridegree": tridegree.tri_part() })
                    }
                    MapError::SingularLeftFactor => json!({}),
                };
                if let Some(p) = position {
                    v["line"] = json!(p.line);
                    v["column"] = json!(p.column);
                }
                v
            }
            _ => json!({}),
        }
    }
}

/// Parse one document. `first_line` is the line number of `text` in its source.
pub fn parse_document(text: &str, first_line: usize) -> Result<TriLinearMap, InputError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: MapDocument = serde_json::from_str(text).map_err(|e| InputError::Json {
            line: first_line + e.line().saturating_sub(1),
            column: e.column(),
            message: e.to_string(),
        })?;
        return doc.to_map();
    }
    let parts: Vec<&str> = text.split(',').collect();
    let map_err = |error: MapError, entry_offset: Option<usize>| {
        let position = match (&error, entry_offset) {
            (MapError::Parse { error: pe, .. }, Some(off)) => Some(locate(text, off + pe.column - 1, first_line)),
            _ => None,
        };
        InputError::Map { error, position }
    };
    if parts.len() != 4 {
        let e = TriLinearMap::parse(text).expect_err("wrong entry count");
        return Err(map_err(e, None));
    }
    TriLinearMap::from_strs(&[parts[0], parts[1], parts[2], parts[3]]).map_err(|e| {
        let offset = match &e {
            MapError::Parse { entry, .. } => Some(parts[..*entry].iter().map(|p| p.len() + 1).sum()),
            _ => None,
        };
        map_err(e, offset)
    })
}

/// Line and column of a byte offset.
fn locate(text: &str, offset: usize, first_line: usize) -> Position {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count();
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    Position {
        line: first_line + line,
        column,
    }
}

fn parse_coords(text: &str, what: &'static str, n: usize) -> Result<Vec<Rational>, InputError> {
    let bad = |message: String| InputError::Value {
        what,
        text: text.to_string(),
        message,
    };
    let v: Vec<Rational> = text
        .split(':')
        .map(|c| parse_rational(c).ok_or_else(|| bad(format!("`{}` is not a rational number", c.trim()))))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(bad(format!("expected {n} coordinates, found {}", v.len())));
    }
    if v.iter().all(|c| c == &Rational::from_integer(0.into())) {
        return Err(bad("all coordinates are zero".into()));
    }
    Ok(v)
}

/// `a0:a1, b0:b1, c0:c1`.
pub fn parse_point(text: &str) -> Result<Point, InputError> {
    let groups: Vec<&str> = text.split(',').collect();
    if groups.len() != 3 {
        return Err(InputError::Value {
            what: "point",
            text: text.to_string(),
            message: format!("expected 3 comma-separated pairs, found {}", groups.len()),
        });
    }
    let mut out: Point = Default::default();
    for (g, s) in groups.iter().enumerate() {
        let v = parse_coords(s, "point", 2)?;
        out[g] = [v[0].clone(), v[1].clone()];
    }
    Ok(out)
}

/// `t0:t1:t2:t3`.
pub fn parse_target(text: &str) -> Result<[Rational; 4], InputError> {
    let v = parse_coords(text, "target", 4)?;
    Ok([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
}

/// Scale so that the first nonzero coordinate is 1.
pub fn normalize(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|c| **c != Rational::from_integer(0.into())) {
        Some(lead) => {
            let lead = lead.clone();
            v.iter().map(|c| c / &lead).collect()
        }
        None => v.to_vec(),
    }
}

pub fn fmt_coords(v: &[Rational]) -> String {
    v.iter().map(fmt_rational).collect::<Vec<_>>().join(":")
}

pub fn fmt_point(p: &Point) -> String {
    p.iter().map(|g| format!("({})", fmt_coords(g))).collect::<Vec<_>>().join(" x ")
}
