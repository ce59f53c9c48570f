//! Incidence files.
//!
//! Text form: an optional `# GF(3^n) mod ...` comment, the header line
//! `incidence v=<v> b=<b>`, then one block per line as ascending point ids.
//! Blank lines and other `#` lines are ignored. The JSON form carries the
//! same data plus a schema version.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::design::IncidenceStructure;
use crate::error::FormatError;
use crate::field::Gf3n;

pub const SCHEMA_VERSION: u32 = 1;

/// Field provenance for structures built over GF(3ⁿ).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub field: String,
    pub modulus: String,
}

impl FieldInfo {
    pub fn of(field: &Gf3n) -> FieldInfo {
        FieldInfo { field: format!("GF(3^{})", field.degree()), modulus: field.modulus_string() }
    }

    pub fn header(&self) -> String {
        format!("{} mod {}", self.field, self.modulus)
    }
}

pub fn write_incidence(
    out: &mut impl Write,
    s: &IncidenceStructure,
    field: Option<&FieldInfo>,
) -> Result<(), FormatError> {
    if let Some(info) = field {
        writeln!(out, "# {}", info.header())?;
    }
    writeln!(out, "incidence v={} b={}", s.v(), s.b())?;
    let mut line = String::new();
    for block in s.blocks() {
        line.clear();
        for (i, p) in block.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&p.to_string());
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Reads the text form; returns the structure and the field comment if any.
pub fn read_incidence(input: impl BufRead) -> Result<(IncidenceStructure, Option<FieldInfo>), FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut field = None;
    let mut blocks = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let t = line.trim();
        if let Some(comment) = t.strip_prefix('#') {
            if let Some((f, m)) = comment.trim().split_once(" mod ") {
                if header.is_none() && f.starts_with("GF(") {
                    field = Some(FieldInfo { field: f.trim().to_string(), modulus: m.trim().to_string() });
                }
            }
            continue;
        }
        if t.is_empty() {
            continue;
        }
        match header {
            None => header = Some(parse_header(t, lineno)?),
            Some(_) => {
                let block = t
                    .split_whitespace()
                    .map(|w| w.parse::<u32>())
                    .collect::<Result<Vec<u32>, _>>()
                    .map_err(|e| FormatError::Syntax { line: lineno, msg: e.to_string() })?;
                if block.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(FormatError::Syntax {
                        line: lineno,
                        msg: "point ids must be strictly ascending".into(),
                    });
                }
                blocks.push(block);
            }
        }
    }
    let (v, b) = header.ok_or(FormatError::Syntax { line: 0, msg: "missing incidence header".into() })?;
    if blocks.len() != b {
        return Err(FormatError::Syntax {
            line: 0,
            msg: format!("header announces {b} blocks, found {}", blocks.len()),
        });
    }
    Ok((IncidenceStructure::new(v, blocks)?, field))
}

fn parse_header(t: &str, line: usize) -> Result<(usize, usize), FormatError> {
    let bad = || FormatError::Syntax { line, msg: format!("expected `incidence v=<v> b=<b>`, got {t:?}") };
    let mut words = t.split_whitespace();
    if words.next() != Some("incidence") {
        return Err(bad());
    }
    let mut get = |key: &str| -> Result<usize, FormatError> {
        words.next().and_then(|w| w.strip_prefix(key)).and_then(|w| w.parse().ok()).ok_or_else(bad)
    };
    let v = get("v=")?;
    let b = get("b=")?;
    if words.next().is_some() {
        return Err(bad());
    }
    Ok((v, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceJson {
    pub schema_version: u32,
    pub v: usize,
    pub b: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<String>,
    pub blocks: Vec<Vec<u32>>,
}

impl IncidenceJson {
    pub fn new(s: &IncidenceStructure, field: Option<&FieldInfo>) -> IncidenceJson {
        IncidenceJson {
            schema_version: SCHEMA_VERSION,
            v: s.v(),
            b: s.b(),
            field: field.map(|f| f.field.clone()),
            modulus: field.map(|f| f.modulus.clone()),
            blocks: s.blocks().to_vec(),
        }
    }

    pub fn into_structure(self) -> Result<IncidenceStructure, FormatError> {
        if self.blocks.len() != self.b {
            return Err(FormatError::Syntax { line: 0, msg: "b does not match the block list".into() });
        }
        Ok(IncidenceStructure::new(self.v, self.blocks)?)
    }
}

/// Reads either form, deciding by the first non-blank character.
pub fn read_any(text: &str) -> Result<(IncidenceStructure, Option<FieldInfo>), FormatError> {
    if text.trim_start().starts_with('{') {
        let j: IncidenceJson = serde_json::from_str(text)?;
        let field = match (&j.field, &j.modulus) {
            (Some(f), Some(m)) => Some(FieldInfo { field: f.clone(), modulus: m.clone() }),
            _ => None,
        };
        Ok((j.into_structure()?, field))
    } else {
        read_incidence(text.as_bytes())
    }
}
