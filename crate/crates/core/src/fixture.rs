//! Text format for graph eigenfunctions at their level of birth.
//!
//! ```text
//! format = sg-fixture/1
//! birth_level = 1
//! birth_eigenvalue = 2
//! boundary = dirichlet
//! plus_levels =
//!
//! [values]
//! cell=0,corner=1 -> 1
//! ```
//!
//! Every vertex of V_{birth_level} must appear at least once, under any of
//! its addresses; repeated vertices must agree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gasket::{CellWord, VertexId};
use crate::scalar::{format_rational, parse_rational};
use crate::spectral::{BoundaryCondition, EigenSpec};

pub const FORMAT_TAG: &str = "sg-fixture/1";

pub fn parse_fixture(text: &str) -> Result<EigenSpec> {
    let mut format = None;
    let mut birth_level = None;
    let mut birth_eigenvalue = None;
    let mut boundary = BoundaryCondition::Dirichlet;
    let mut plus: BTreeSet<usize> = BTreeSet::new();
    let mut values: BTreeMap<VertexId, BigRational> = BTreeMap::new();
    let mut in_values = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
        if line == "[values]" {
            in_values = true;
            continue;
        }
        if in_values {
            let (addr, value) = line
                .split_once("->")
                .ok_or_else(|| err(format!("expected `<address> -> <value>`, got {line:?}")))?;
            let v = parse_rational(value).ok_or_else(|| err(format!("bad value {:?}", value.trim())))?;
            let vertex = parse_address(addr).map_err(|e| err(e.to_string()))?;
            if let Some(prev) = values.insert(vertex, v.clone()) {
                if prev != v {
                    return Err(Error::InvalidSpec(format!(
                        "line {}: vertex given conflicting values {} and {}",
                        lineno + 1,
                        format_rational(&prev),
                        format_rational(&v)
                    )));
                }
            }
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got {line:?}")))?;
        let value = value.trim();
        match key.trim() {
            "format" => format = Some(value.to_string()),
            "birth_level" => {
                birth_level = Some(value.parse::<usize>().map_err(|_| err(format!("bad level {value:?}")))?)
            }
            "birth_eigenvalue" => {
                birth_eigenvalue =
                    Some(parse_rational(value).ok_or_else(|| err(format!("bad eigenvalue {value:?}")))?)
            }
            "boundary" => {
                boundary = match value.to_ascii_lowercase().as_str() {
                    "dirichlet" => BoundaryCondition::Dirichlet,
                    "neumann" => BoundaryCondition::Neumann,
                    other => return Err(err(format!("unknown boundary condition {other:?}"))),
                }
            }
            "plus_levels" => {
                for tok in value.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
                    plus.insert(tok.parse().map_err(|_| err(format!("bad level {tok:?}")))?);
                }
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }

    match format.as_deref() {
        Some(FORMAT_TAG) => {}
        Some(other) => return Err(Error::Parse(format!("unsupported fixture format {other:?}"))),
        None => return Err(Error::Parse("missing `format` line".into())),
    }
    let birth_level = birth_level.ok_or_else(|| Error::Parse("missing birth_level".into()))?;
    let birth_eigenvalue = birth_eigenvalue.ok_or_else(|| Error::Parse("missing birth_eigenvalue".into()))?;
    EigenSpec::new(birth_level, birth_eigenvalue, plus, boundary, values)
}

/// `cell=<word>,corner=<c>`.
pub fn parse_address(s: &str) -> Result<VertexId> {
    let mut cell = None;
    let mut corner = None;
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad address part {part:?}")))?;
        match k.trim() {
            "cell" => cell = Some(v.parse::<CellWord>()?),
            "corner" => {
                corner = Some(
                    v.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad corner {v:?}")))?,
                )
            }
            other => return Err(Error::Parse(format!("unknown address field {other:?}"))),
        }
    }
    match (cell, corner) {
        (Some(w), Some(c)) => VertexId::from_address(&w, c),
        _ => Err(Error::Parse(format!("address {s:?} needs cell and corner"))),
    }
}

/// Serializes a spec; vertices are written under the first address that reaches them.
pub fn write_fixture(spec: &EigenSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format = {FORMAT_TAG}");
    let _ = writeln!(out, "birth_level = {}", spec.birth_level());
    let _ = writeln!(out, "birth_eigenvalue = {}", format_rational(spec.birth_eigenvalue()));
    let _ = writeln!(
        out,
        "boundary = {}",
        match spec.boundary() {
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::Neumann => "neumann",
        }
    );
    let plus: Vec<String> = spec.plus_set().iter().map(|k| k.to_string()).collect();
    let _ = writeln!(out, "plus_levels = {}", plus.join(","));
    out.push_str("\n[values]\n");
    let mut seen = BTreeSet::new();
    for w in CellWord::all(spec.birth_level()) {
        for c in 0..3u8 {
            let v = VertexId::from_address(&w, c).expect("cell within addressable depth");
            if seen.insert(v) {
                let _ = writeln!(
                    out,
                    "cell={w},corner={c} -> {}",
                    format_rational(&spec.initial_values()[&v])
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    const TWO: &str = include_str!("../fixtures/two_series.sgf");

    #[test]
    fn shipped_fixture_parses() {
        let s = parse_fixture(TWO).unwrap();
        assert_eq!(s.birth_level(), 1);
        assert_eq!(s.birth_eigenvalue(), &rat(2, 1));
        assert_eq!(s.initial_values().len(), 6);
    }

    #[test]
    fn round_trip() {
        let s = parse_fixture(TWO).unwrap();
        assert_eq!(parse_fixture(&write_fixture(&s)).unwrap(), s);
    }

    #[test]
    fn rejects_bad_input() {
        let missing = TWO.replace("cell=0,corner=1 -> 1\n", "");
        assert!(matches!(parse_fixture(&missing), Err(Error::InvalidSpec(_))));
        let conflict = format!("{TWO}cell=1,corner=0 -> 2\n");
        assert!(matches!(parse_fixture(&conflict), Err(Error::InvalidSpec(_))));
        let not_eigen = TWO.replace("cell=0,corner=1 -> 1", "cell=0,corner=1 -> 2");
        assert!(matches!(parse_fixture(&not_eigen), Err(Error::InvalidSpec(_))));
        let boundary = TWO.replace("cell=0,corner=0 -> 0", "cell=0,corner=0 -> 1");
        assert!(parse_fixture(&boundary).is_err());
        assert!(matches!(parse_fixture("birth_level = 1"), Err(Error::Parse(_))));
        assert!(matches!(parse_fixture(&TWO.replace("-> 1\n", "-> x\n")), Err(Error::Parse(_))));
    }
}
