use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::measures::atomic::AtomicMeasure;
use crate::numerics::{format_rational, parse_rational, Rational};

/// Parses an atom file: CSV lines `position,weight`, or the JSON forms
/// `[{"position": .., "weight": ..}, ..]` and `[[position, weight], ..]`.
/// Blank lines and lines starting with `#` are skipped in CSV.
pub fn parse_atoms(text: &str) -> Result<AtomicMeasure> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        return parse_atoms_json(trimmed);
    }
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (x, w) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("line {}: expected position,weight", lineno + 1)))?;
        if lineno == 0 && parse_rational(x).is_err() && x.trim().eq_ignore_ascii_case("position") {
            continue;
        }
        pairs.push((parse_rational(x)?, parse_rational(w)?));
    }
    if pairs.is_empty() {
        return Err(Error::Parse("atom file has no atoms".into()));
    }
    AtomicMeasure::new(pairs)
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

fn parse_atoms_json(text: &str) -> Result<AtomicMeasure> {
    let v: Value = serde_json::from_str(text)?;
    let list = match &v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("atoms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("JSON atom object needs an \"atoms\" array".into()))?,
        _ => return Err(Error::Parse("JSON atoms must be an array".into())),
    };
    let pairs = list
        .iter()
        .map(|a| match a {
            Value::Array(p) if p.len() == 2 => Ok((json_rational(&p[0])?, json_rational(&p[1])?)),
            Value::Object(o) => {
                let get = |k: &str| {
                    o.get(k)
                        .ok_or_else(|| Error::Parse(format!("atom entry missing {k:?}")))
                        .and_then(json_rational)
                };
                Ok((get("position")?, get("weight")?))
            }
            _ => Err(Error::Parse(format!("bad atom entry {a}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    AtomicMeasure::new(pairs)
}

pub fn read_atoms(path: &Path) -> Result<AtomicMeasure> {
    parse_atoms(&std::fs::read_to_string(path)?)
}

/// CSV text in the atom file format.
pub fn atoms_to_csv(mu: &AtomicMeasure) -> String {
    let mut out = String::new();
    for (x, w) in mu.iter() {
        out.push_str(&format_rational(x));
        out.push(',');
        out.push_str(&format_rational(w));
        out.push('\n');
    }
    out
}
