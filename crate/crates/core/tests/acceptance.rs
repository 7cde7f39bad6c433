//! The ten acceptance criteria, one printed PASS/FAIL line each.

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use isogeny_alpha::exactnum::Rational;
use isogeny_alpha::localdata::{tate_algorithm, ReductionType};
use isogeny_alpha::verify::{builtin_corpus, run_verification, CheckStatus, EntryReport, VerificationReport, VerifyOptions};
use isogeny_alpha::weierstrass::{differential_scale, Transformation, WeierstrassModel};

const CORPUS_TIME_LIMIT: Duration = Duration::from_secs(60);
const MIN_SUPERSINGULAR_PAIRS: usize = 10;
const MIN_GOOD_ENTRIES: usize = 3;
const MIN_SCANNED_CURVES: usize = 20;
const TRANSFORMS_PER_PRIME: u32 = 100;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn pairs(r: &VerificationReport) -> impl Iterator<Item = &EntryReport> {
    r.entries.iter().filter(|e| e.alpha_exponent.is_some())
}

fn reduction(e: &EntryReport) -> Option<ReductionType> {
    e.e.as_ref().map(|d| d.reduction)
}

fn supersingular_pairs(r: &VerificationReport) -> Vec<&EntryReport> {
    pairs(r).filter(|e| reduction(e) == Some(ReductionType::AdditivePotentiallySupersingular)).collect()
}

/// Every listed entry must have `check` passing; returns the failures.
fn failures<'a>(entries: impl Iterator<Item = &'a EntryReport>, check: &str) -> Vec<String> {
    entries
        .filter_map(|e| match e.check(check) {
            Some(c) if c.status == CheckStatus::Pass => None,
            Some(c) => Some(format!("{}: {:?} {}", e.label, c.status, c.detail)),
            None => Some(format!("{}: {check} missing ({:?})", e.label, e.error)),
        })
        .collect()
}

fn criterion_main(r: &VerificationReport, elapsed: Duration) -> Outcome {
    let ss = supersingular_pairs(r);
    let primes_ok = ss.iter().all(|e| [3, 5, 7].contains(&e.p));
    let bad = failures(ss.iter().copied(), "main_theorem");
    outcome(
        ss.len() >= MIN_SUPERSINGULAR_PAIRS && primes_ok && bad.is_empty() && elapsed < CORPUS_TIME_LIMIT,
        format!("{} pairs, corpus run {:.2?} (limit {:?}), failures {bad:?}", ss.len(), elapsed, CORPUS_TIME_LIMIT),
    )
}

fn criterion_dual_sum(r: &VerificationReport) -> Outcome {
    let bad = failures(pairs(r), "dual_exponent_sum");
    let n = pairs(r).count();
    outcome(n > 0 && bad.is_empty(), format!("{n} pairs, failures {bad:?}"))
}

fn criterion_exactly_one(r: &VerificationReport) -> Outcome {
    let bad = failures(pairs(r), "exactly_one_trivial");
    outcome(bad.is_empty(), format!("{} pairs, failures {bad:?}", pairs(r).count()))
}

fn criterion_ogg(r: &VerificationReport) -> Outcome {
    let bad = failures(r.entries.iter(), "ogg");
    let mut conductor_two = 0;
    let mut extra = Vec::new();
    for e in pairs(r).filter(|e| e.p >= 5 && reduction(e).is_some_and(|t| t.is_additive())) {
        for d in [&e.e, &e.e_prime].into_iter().flatten() {
            if d.conductor == 2 {
                conductor_two += 1;
            } else {
                extra.push(format!("{}: conductor {}", e.label, d.conductor));
            }
        }
    }
    outcome(
        bad.is_empty() && extra.is_empty(),
        format!("{} entries, {conductor_two} additive curves at p >= 5 with conductor 2, failures {bad:?} {extra:?}", r.entries.len()),
    )
}

fn criterion_leading_coefficient(r: &VerificationReport) -> Outcome {
    let bad = failures(pairs(r), "formal_leading_coefficient");
    let comp = failures(pairs(r), "dual_composition");
    outcome(
        bad.is_empty() && comp.is_empty(),
        format!("{} pairs, leading-coefficient failures {bad:?}, composition failures {comp:?}", pairs(r).count()),
    )
}

fn criterion_separability(r: &VerificationReport) -> Outcome {
    let good: Vec<&EntryReport> = pairs(r).filter(|e| reduction(e).is_some_and(|t| t.is_good())).collect();
    let bad = failures(good.iter().copied(), "separability");
    outcome(good.len() >= MIN_GOOD_ENTRIES && bad.is_empty(), format!("{} good-reduction pairs, failures {bad:?}", good.len()))
}

fn criterion_no_good_supersingular(r: &VerificationReport) -> Outcome {
    let s = &r.scan;
    let check_ok = r.corpus_checks.iter().all(|c| c.status == CheckStatus::Pass);
    outcome(
        s.scanned >= MIN_SCANNED_CURVES && s.violations.is_empty() && check_ok,
        format!("{} curves scanned, {} with a p-isogeny, violations {:?}", s.scanned, s.with_isogeny, s.violations),
    )
}

fn criterion_valuation_gap(r: &VerificationReport) -> Outcome {
    let ss = supersingular_pairs(r);
    let bad = failures(ss.iter().copied(), "valuation_gap");
    let mut sign = Vec::new();
    for e in &ss {
        let (v, w) = (e.e.as_ref().unwrap().v_min as i64, e.e_prime.as_ref().unwrap().v_min as i64);
        let d = w - v;
        let ok = d != 0 && d.abs() < 12 && (d > 0) == (e.alpha_exponent == Some(0));
        if !ok {
            sign.push(format!("{}: v' - v = {d}, exponent {:?}", e.label, e.alpha_exponent));
        }
    }
    outcome(bad.is_empty() && sign.is_empty(), format!("{} pairs, failures {bad:?} {sign:?}", ss.len()))
}

fn criterion_height(r: &VerificationReport) -> Outcome {
    let relevant: Vec<&EntryReport> = r
        .entries
        .iter()
        .filter(|e| reduction(e).is_some_and(|t| t.is_good() || (t.is_additive() && t.is_potentially_good())))
        .collect();
    let bad = failures(relevant.iter().copied(), "height_vs_hasse");
    outcome(!relevant.is_empty() && bad.is_empty(), format!("{} entries compared, failures {bad:?}", relevant.len()))
}

fn scaled_model(p: u64) -> impl Strategy<Value = WeierstrassModel> {
    proptest::array::uniform5((-40i64..=40, 0u32..=3)).prop_map(move |a| {
        WeierstrassModel::from_ints(a.map(|(c, k)| c * (p as i64).pow(k)))
    })
    .prop_filter("nonsingular", |m| !m.is_singular())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, prop_oneof![Just(1i64), Just(2), Just(3), Just(5), Just(7)]).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn criterion_transformations() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for p in [3u64, 5, 7] {
        let mut runner = TestRunner::new(Config { cases: TRANSFORMS_PER_PRIME, failure_persistence: None, ..Config::default() });
        let strategy = (
            scaled_model(p),
            -2i64..=2,
            prop_oneof![Just(1i64), Just(-1), Just(2), Just(-4)],
            small_rational(),
            small_rational(),
            small_rational(),
        );
        let result = runner.run(&strategy, |(m, e, unit, r, s, t)| {
            let u = Rational::prime_power(p, e) * Rational::from_int(unit);
            let tr = Transformation::new(u, r, s, t).unwrap();
            let n = m.transform(&tr).unwrap();
            prop_assert_eq!(n.discriminant_valuation(p).unwrap(), m.discriminant_valuation(p).unwrap() - 12 * e);
            let a = tate_algorithm(&m, p).unwrap();
            let b = tate_algorithm(&n, p).unwrap();
            prop_assert_eq!(a.record(), b.record());
            prop_assert_eq!(differential_scale(&a.minimal_model, &b.minimal_model, p).unwrap(), 0);
            Ok(())
        });
        match result {
            Ok(()) => details.push(format!("p = {p}: {TRANSFORMS_PER_PRIME} cases")),
            Err(e) => {
                ok = false;
                details.push(format!("p = {p}: {e}"));
            }
        }
    }
    outcome(ok, details.join("; "))
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let report = run_verification(&builtin_corpus(), &VerifyOptions::default());
    let elapsed = start.elapsed();
    let results = [
        ("1 component-count dichotomy on additive potentially supersingular pairs", criterion_main(&report, elapsed)),
        ("2 exponents nonnegative and summing to one across each dual pair", criterion_dual_sum(&report)),
        ("3 exactly one exponent of each dual pair is zero", criterion_exactly_one(&report)),
        ("4 Ogg consistency and equal conductors", criterion_ogg(&report)),
        ("5 leading formal coefficient matches differential scaling", criterion_leading_coefficient(&report)),
        ("6 reduced separability matches exponent zero on good reduction", criterion_separability(&report)),
        ("7 no good supersingular curve carries a rational p-isogeny", criterion_no_good_supersingular(&report)),
        ("8 strict valuation gap 0 < 12e + v' - v < 12", criterion_valuation_gap(&report)),
        ("9 formal height agrees with the Hasse invariant", criterion_height(&report)),
        ("10 discriminant shift and local data under random transformations", criterion_transformations()),
    ];
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.ok).map(|(n, _)| *n).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
