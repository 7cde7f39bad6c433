//! Line-delimited corpus records.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isogeny::KernelPolynomial;
use crate::localdata::KodairaType;
use crate::weierstrass::WeierstrassModel;

const BUILTIN: &str = include_str!("../../data/corpus.jsonl");

/// Values frozen from an external database; every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_min: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_min_codomain: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kodaira: Option<KodairaType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kodaira_codomain: Option<KodairaType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_codomain: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_exponent: Option<i64>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub label: String,
    #[serde(rename = "coefficients")]
    pub curve: WeierstrassModel,
    pub p: u64,
    #[serde(default = "one")]
    pub f: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedBlock>,
}

impl CorpusEntry {
    pub fn new(label: impl Into<String>, curve: WeierstrassModel, p: u64) -> Self {
        CorpusEntry { label: label.into(), curve, p, f: 1, kernel: None, expected: None }
    }
}

/// One record per non-blank line; `#` starts a comment line.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let entry: CorpusEntry =
            serde_json::from_str(line).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        if entry.f == 0 {
            return Err(Error::Parse(format!("line {}: residue degree f must be positive", i + 1)));
        }
        out.push(entry);
    }
    Ok(out)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusEntry>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_corpus(&text)
}

/// The corpus shipped with the crate.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUILTIN).expect("built-in corpus parses")
}

pub fn builtin_corpus_text() -> &'static str {
    BUILTIN
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let c = builtin_corpus();
        assert!(c.len() >= 20);
        assert!(c.iter().all(|e| e.f >= 1));
        let e = c.iter().find(|e| e.label == "c27-x-f2").unwrap();
        assert_eq!(e.f, 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "\n# comment\n{\"label\": \"a\", \"coefficients\": [\"0\",\"0\",\"1\",\"0\",\"0\"], \"p\": 3}\n{oops}\n";
        match parse_corpus(text) {
            Err(Error::Parse(msg)) => assert!(msg.starts_with("line 4:"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let bad_kernel = r#"{"label": "a", "coefficients": ["0","0","1","0","0"], "p": 3, "kernel": ["1", "2"]}"#;
        assert!(parse_corpus(bad_kernel).is_err());
        assert!(parse_corpus("").unwrap().is_empty());
    }

    #[test]
    fn round_trip() {
        for e in builtin_corpus() {
            let s = serde_json::to_string(&e).unwrap();
            assert_eq!(parse_corpus(&s).unwrap(), vec![e]);
        }
    }
}
