use std::process::Command;

use isogeny_alpha::verify::{builtin_corpus, parse_corpus, run_verification, CheckStatus, VerifyOptions};

fn failures(report: &isogeny_alpha::verify::VerificationReport) -> Vec<String> {
    let mut out = Vec::new();
    for e in &report.entries {
        if let Some(err) = &e.error {
            out.push(format!("{}: error {err}", e.label));
        }
        for c in e.checks.iter().filter(|c| c.status == CheckStatus::Fail) {
            out.push(format!("{}: {} {}", e.label, c.name, c.detail));
        }
    }
    out
}

#[test]
fn builtin_corpus_passes() {
    let report = run_verification(&builtin_corpus(), &VerifyOptions::default());
    assert!(report.all_passed(), "{:#?}", failures(&report));
    assert_eq!(report.summary.entries, builtin_corpus().len());
    assert!(report.corpus_checks.iter().all(|c| c.passed()));
}

#[test]
fn report_is_deterministic() {
    let corpus = builtin_corpus();
    let a = run_verification(&corpus, &VerifyOptions::default()).to_json();
    let mut shuffled = corpus.clone();
    shuffled.reverse();
    let b = run_verification(&shuffled, &VerifyOptions { sequential: true, ..VerifyOptions::default() }).to_json();
    assert_eq!(a, b);
}

#[test]
fn corrupted_expected_block_flags_only_that_entry() {
    let mut corpus = builtin_corpus();
    let target = corpus.iter().position(|e| e.label == "p5-150").unwrap();
    let ex = corpus[target].expected.as_mut().unwrap();
    ex.alpha_exponent = ex.alpha_exponent.map(|a| 1 - a);
    let report = run_verification(&corpus, &VerifyOptions::default());
    assert!(!report.all_passed());
    let bad = failures(&report);
    assert_eq!(bad.len(), 1, "{bad:#?}");
    assert!(bad[0].starts_with("p5-150: expected_block"), "{bad:?}");
    assert_eq!(report.summary.entries_failed, 1);
}

#[test]
fn fail_fast_stops_at_first_failure() {
    let mut corpus = builtin_corpus();
    for e in corpus.iter_mut().filter(|e| e.label.starts_with("c27-x")) {
        e.expected.as_mut().unwrap().v_min = Some(99);
    }
    let report = run_verification(&corpus, &VerifyOptions { fail_fast: true, ..VerifyOptions::default() });
    assert_eq!(report.entries.len(), 1);
    assert_eq!(report.entries[0].label, "c27-x");
}

#[test]
fn wrong_kernel_is_an_entry_error() {
    let text = r#"{"label":"bad","coefficients":["0","0","1","0","0"],"p":3,"kernel":["5","1"]}"#;
    let report = run_verification(&parse_corpus(text).unwrap(), &VerifyOptions::default());
    assert!(report.entries[0].error.is_some());
    assert!(!report.all_passed());
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isogeny-alpha"))
}

#[test]
fn cli_exit_codes() {
    let dir = std::env::temp_dir().join(format!("isogeny-alpha-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let empty = dir.join("empty.jsonl");
    std::fs::write(&empty, "\n# nothing\n").unwrap();
    let out = cli().args(["verify", "--corpus"]).arg(&empty).output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let broken = dir.join("broken.jsonl");
    std::fs::write(&broken, "{not json}\n").unwrap();
    let out = cli().args(["verify", "--corpus"]).arg(&broken).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let out = cli()
        .args(["analyze", "--curve", "[0,0,1,0,0]", "--p", "3", "--kernel", "0,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["alpha_exponent"], 0);
    assert_eq!(json["dual_alpha_exponent"], 1);

    std::fs::remove_dir_all(&dir).ok();
}
