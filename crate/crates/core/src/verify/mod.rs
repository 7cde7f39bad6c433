//! Corpus runs: per-entry analysis, the theorem checks, and the JSON report.

pub mod checks;
pub mod corpus;

use std::collections::BTreeSet;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

pub use checks::{analyze_entry, run_checks, CheckResult, CheckStatus, EntryAnalysis, PairData, SeriesOrders};
pub use corpus::{builtin_corpus, load_corpus, parse_corpus, CorpusEntry, ExpectedBlock};

use crate::error::Result;
use crate::localdata::{LocalDataRecord, ReductionType};

/// Printed at the top of every report.
pub const SCOPE_NOTE: &str = "unramified base fields only: K = Q_p^(f), e = 1; ramified statements are not instantiated";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub orders: SeriesOrders,
    pub fail_fast: bool,
    pub sequential: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub label: String,
    pub p: u64,
    pub f: u32,
    pub curve: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<String>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<LocalDataRecord>,
    #[serde(rename = "E_prime", skip_serializing_if = "Option::is_none")]
    pub e_prime: Option<LocalDataRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codomain: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_exponent: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_alpha_exponent: Option<i64>,
    /// α written as p^(f·exponent).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub checks: Vec<CheckResult>,
}

impl EntryReport {
    pub fn failed(&self) -> bool {
        self.error.is_some() || self.checks.iter().any(CheckResult::failed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub entries_failed: usize,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub checks_skipped: usize,
    pub all_passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub scope: String,
    pub summary: Summary,
    pub corpus_checks: Vec<CheckResult>,
    pub scan: SupersingularScan,
    pub entries: Vec<EntryReport>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.all_passed
    }

    pub fn entry(&self, label: &str) -> Option<&EntryReport> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn report_entry(entry: &CorpusEntry, analysis: &Result<EntryAnalysis>, orders: &SeriesOrders) -> EntryReport {
    let mut r = EntryReport {
        label: entry.label.clone(),
        p: entry.p,
        f: entry.f,
        curve: entry.curve.to_string(),
        kernel: entry.kernel.as_ref().map(|k| k.polynomial().to_string()),
        e: None,
        e_prime: None,
        codomain: None,
        alpha_exponent: None,
        dual_alpha_exponent: None,
        alpha: None,
        error: None,
        checks: Vec::new(),
    };
    match analysis {
        Err(e) => r.error = Some(e.to_string()),
        Ok(a) => {
            r.e = Some(a.local.record());
            if let Some(q) = &a.pair {
                r.kernel = Some(q.isogeny.kernel.polynomial().to_string());
                r.e_prime = Some(q.local_codomain.record());
                r.codomain = Some(q.isogeny.codomain.to_string());
                r.alpha_exponent = Some(q.alpha.exponent);
                r.dual_alpha_exponent = Some(q.dual_alpha.exponent);
                r.alpha = Some(format!("{}^({}*{}) = {}", entry.p, entry.f, q.alpha.exponent, q.alpha.value()));
            }
            r.checks = run_checks(a, orders);
        }
    }
    r
}

/// Curves seen by the good-supersingular scan, keyed by (minimal model, p).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SupersingularScan {
    pub scanned: usize,
    pub with_isogeny: usize,
    pub violations: Vec<String>,
}

pub fn scan_good_supersingular(analyses: &[&EntryAnalysis]) -> SupersingularScan {
    let mut scanned = BTreeSet::new();
    let mut with_isogeny = BTreeSet::new();
    let mut violations = BTreeSet::new();
    for a in analyses {
        let p = a.entry.p;
        let mut curves = vec![(a.local.minimal_model.to_string(), a.local.reduction, a.pair.is_some())];
        if let Some(q) = &a.pair {
            curves.push((q.local_codomain.minimal_model.to_string(), q.local_codomain.reduction, true));
        }
        for (model, red, has_isogeny) in curves {
            let key = (model.clone(), p);
            scanned.insert(key.clone());
            if has_isogeny {
                with_isogeny.insert(key);
                if red == ReductionType::GoodSupersingular {
                    violations.insert(format!("{model} at {p}"));
                }
            }
        }
    }
    SupersingularScan {
        scanned: scanned.len(),
        with_isogeny: with_isogeny.len(),
        violations: violations.into_iter().collect(),
    }
}

/// No curve carrying a validated rational p-isogeny has good supersingular reduction at p.
pub fn check_no_good_supersingular(analyses: &[&EntryAnalysis]) -> CheckResult {
    let s = scan_good_supersingular(analyses);
    let detail = format!(
        "{} curves scanned, {} with a rational p-isogeny, {} good supersingular among them{}",
        s.scanned,
        s.with_isogeny,
        s.violations.len(),
        if s.violations.is_empty() { String::new() } else { format!(": {}", s.violations.join(", ")) }
    );
    CheckResult::new("no_good_supersingular_with_isogeny", s.violations.is_empty(), detail)
}

/// Runs every entry and assembles a report ordered by label.
pub fn run_verification(entries: &[CorpusEntry], opts: &VerifyOptions) -> VerificationReport {
    let mut sorted: Vec<&CorpusEntry> = entries.iter().collect();
    sorted.sort_by(|a, b| a.label.cmp(&b.label));
    let work = |e: &&CorpusEntry| {
        let a = analyze_entry(e);
        let r = report_entry(e, &a, &opts.orders);
        (a, r)
    };
    let results: Vec<(Result<EntryAnalysis>, EntryReport)> = if opts.fail_fast {
        let mut out = Vec::new();
        for e in &sorted {
            let item = work(e);
            let stop = item.1.failed();
            out.push(item);
            if stop {
                break;
            }
        }
        out
    } else if opts.sequential {
        sorted.iter().map(work).collect()
    } else {
        sorted.par_iter().map(work).collect()
    };
    let analyses: Vec<&EntryAnalysis> = results.iter().filter_map(|(a, _)| a.as_ref().ok()).collect();
    let corpus_checks = vec![check_no_good_supersingular(&analyses)];
    let scan = scan_good_supersingular(&analyses);
    let entries: Vec<EntryReport> = results.into_iter().map(|(_, r)| r).collect();
    let mut s = Summary { entries: entries.len(), ..Summary::default() };
    for c in entries.iter().flat_map(|e| e.checks.iter()).chain(corpus_checks.iter()) {
        match c.status {
            CheckStatus::Pass => s.checks_passed += 1,
            CheckStatus::Fail => s.checks_failed += 1,
            CheckStatus::Skip => s.checks_skipped += 1,
        }
    }
    s.entries_failed = entries.iter().filter(|e| e.failed()).count();
    s.all_passed = s.entries_failed == 0 && s.checks_failed == 0;
    VerificationReport { scope: SCOPE_NOTE.into(), summary: s, corpus_checks, scan, entries }
}

pub fn run_verification_path(path: impl AsRef<Path>, opts: &VerifyOptions) -> Result<VerificationReport> {
    Ok(run_verification(&load_corpus(path)?, opts))
}

/// Single-entry report, as used by the `analyze` subcommand.
pub fn analyze(entry: &CorpusEntry, orders: &SeriesOrders) -> EntryReport {
    report_entry(entry, &analyze_entry(entry), orders)
}
