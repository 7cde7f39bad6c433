//! Per-entry analysis and the individual checks run on it.

use std::fmt::Display;

use serde::Serialize;

use super::corpus::{CorpusEntry, ExpectedBlock};
use crate::error::{Error, Result};
use crate::exactnum::LocalFieldContext;
use crate::formalgroup::{dual_series, FormalHomomorphism, formal_height, isogeny_series, multiplication_series, separability_shadow};
use crate::isogeny::{alpha, dual_isogeny, find_kernels, velu, AlphaInvariant, DualIsogeny, IsogenyData};
use crate::localdata::{conductor_via_ogg, good_reduction_lift, is_supersingular_j, local_data, LocalData, ReductionType};
use crate::weierstrass::WeierstrassModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        CheckResult { name: name.into(), status, detail: detail.into() }
    }

    pub fn skip(name: &str, why: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status: CheckStatus::Skip, detail: why.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// Truncation orders used by the series checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct SeriesOrders {
    /// Order of Φ when comparing its leading coefficient; None picks 4.
    pub leading: Option<i64>,
    /// Order of Φ̂ ∘ Φ = [p]; None picks 2p + 2.
    pub composition: Option<i64>,
    /// Order of [p] mod p for the height; None picks p² + 4.
    pub height: Option<i64>,
}


impl SeriesOrders {
    pub fn uniform(n: i64) -> Self {
        SeriesOrders { leading: Some(n), composition: Some(n), height: Some(n) }
    }

    fn leading(&self) -> i64 {
        self.leading.unwrap_or(4)
    }

    fn composition(&self, p: u64) -> i64 {
        self.composition.unwrap_or(2 * p as i64 + 2)
    }

    fn height(&self, p: u64) -> i64 {
        self.height.unwrap_or((p * p + 4) as i64)
    }
}

/// The isogeny side of an entry.
#[derive(Clone, Debug)]
pub struct PairData {
    pub isogeny: IsogenyData,
    pub dual: DualIsogeny,
    pub local_codomain: LocalData,
    pub alpha: AlphaInvariant,
    pub dual_alpha: AlphaInvariant,
}

#[derive(Clone, Debug)]
pub struct EntryAnalysis {
    pub entry: CorpusEntry,
    pub ctx: LocalFieldContext,
    pub local: LocalData,
    /// None when the curve has no rational p-isogeny.
    pub pair: Option<PairData>,
}

/// Resolves the kernel, runs Vélu and the dual search, and computes local data.
pub fn analyze_entry(entry: &CorpusEntry) -> Result<EntryAnalysis> {
    let p = entry.p;
    let ctx = LocalFieldContext::new(p, entry.f)?;
    let local = local_data(&entry.curve, &ctx)?;
    let kernel = match &entry.kernel {
        Some(k) => Some(k.clone()),
        None => {
            if (p - 1) / 2 > 3 {
                return Err(Error::Inconsistent(format!("an explicit kernel is required at p = {p}")));
            }
            let mut ks = find_kernels(&entry.curve, p)?;
            match ks.len() {
                0 => None,
                1 => ks.pop(),
                n => return Err(Error::Inconsistent(format!("{n} rational {p}-isogenies; give the kernel explicitly"))),
            }
        }
    };
    let pair = match kernel {
        None => None,
        Some(k) => {
            if k.degree() != p {
                return Err(Error::InvalidKernel(format!("kernel of degree {} at p = {p}", k.degree())));
            }
            let isogeny = velu(&entry.curve, &k)?;
            let dual = dual_isogeny(&isogeny)?;
            let local_codomain = local_data(&isogeny.codomain, &ctx)?;
            let alpha = alpha(&isogeny, &ctx)?;
            let dual_alpha = crate::isogeny::alpha(&dual.isogeny, &ctx)?;
            Some(PairData { isogeny, dual, local_codomain, alpha, dual_alpha })
        }
    };
    Ok(EntryAnalysis { entry: entry.clone(), ctx, local, pair })
}

fn mismatch<T: PartialEq + Display>(name: &str, expected: &Option<T>, computed: Option<&T>, out: &mut Vec<String>) {
    if let Some(e) = expected {
        match computed {
            Some(c) if c == e => {}
            Some(c) => out.push(format!("{name}: expected {e}, computed {c}")),
            None => out.push(format!("{name}: expected {e}, computed nothing")),
        }
    }
}

pub fn check_expected(a: &EntryAnalysis) -> CheckResult {
    const NAME: &str = "expected_block";
    let Some(ex) = &a.entry.expected else {
        return CheckResult::skip(NAME, "no expected block");
    };
    let ExpectedBlock { v_min, v_min_codomain, kodaira, kodaira_codomain, m, m_codomain, alpha_exponent } = ex;
    let cod = a.pair.as_ref().map(|q| &q.local_codomain);
    let mut bad = Vec::new();
    mismatch("v_min", v_min, Some(&a.local.v_min), &mut bad);
    mismatch("kodaira", kodaira, Some(&a.local.kodaira), &mut bad);
    mismatch("m", m, Some(&a.local.m), &mut bad);
    mismatch("v_min_codomain", v_min_codomain, cod.map(|c| &c.v_min), &mut bad);
    mismatch("kodaira_codomain", kodaira_codomain, cod.map(|c| &c.kodaira), &mut bad);
    mismatch("m_codomain", m_codomain, cod.map(|c| &c.m), &mut bad);
    mismatch("alpha_exponent", alpha_exponent, a.pair.as_ref().map(|q| &q.alpha.exponent), &mut bad);
    if bad.is_empty() {
        CheckResult::new(NAME, true, "all expected fields match")
    } else {
        CheckResult::new(NAME, false, bad.join("; "))
    }
}

/// v_min = conductor + m − 1 on both sides, equal conductors, conductor 2 for
/// additive reduction at p ≥ 5.
pub fn check_ogg(a: &EntryAnalysis) -> CheckResult {
    const NAME: &str = "ogg";
    let mut sides = vec![("E", &a.local)];
    if let Some(q) = &a.pair {
        sides.push(("E'", &q.local_codomain));
    }
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    for (name, ld) in &sides {
        let ogg = conductor_via_ogg(ld.v_min as i64, ld.m as i64);
        parts.push(format!("{name}: v_min {} = f {} + m {} - 1", ld.v_min, ld.conductor_exponent, ld.m));
        if ogg != Ok(ld.conductor_exponent as i64) {
            bad.push(format!("{name}: v_min {} != f {} + m {} - 1", ld.v_min, ld.conductor_exponent, ld.m));
        }
        if a.entry.p >= 5 && ld.reduction.is_additive() && ld.conductor_exponent != 2 {
            bad.push(format!("{name}: additive at p = {} with conductor exponent {} != 2", a.entry.p, ld.conductor_exponent));
        }
    }
    if let Some(q) = &a.pair {
        if a.local.conductor_exponent != q.local_codomain.conductor_exponent {
            bad.push(format!(
                "conductor exponents differ: {} != {}",
                a.local.conductor_exponent, q.local_codomain.conductor_exponent
            ));
        }
    }
    if bad.is_empty() {
        CheckResult::new(NAME, true, parts.join("; "))
    } else {
        CheckResult::new(NAME, false, bad.join("; "))
    }
}

/// Both exponents nonnegative and summing to val(p) = 1.
pub fn check_dual_sum(a: &EntryAnalysis) -> CheckResult {
    const NAME: &str = "dual_exponent_sum";
    let Some(q) = &a.pair else {
        return CheckResult::skip(NAME, "no p-isogeny");
    };
    let (e, d) = (q.alpha.exponent, q.dual_alpha.exponent);
    CheckResult::new(NAME, e >= 0 && d >= 0 && e + d == 1, format!("{e} + {d} = {} (want 1, both >= 0)", e + d))
}

/// Exactly one of the pair has exponent 0.
pub fn check_exactly_one_trivial(a: &EntryAnalysis) -> CheckResult {
    const NAME: &str = "exactly_one_trivial";
    let Some(q) = &a.pair else {
        return CheckResult::skip(NAME, "no p-isogeny");
    };
    let (e, d) = (q.alpha.exponent, q.dual_alpha.exponent);
    CheckResult::new(NAME, (e == 0) != (d == 0), format!("exponents ({e}, {d})"))
}

type SeriesPair = std::result::Result<(FormalHomomorphism, FormalHomomorphism), String>;

/// Φ and Φ̂ on minimal models, shared by the two series checks.
fn series_pair(q: &PairData, n: i64) -> SeriesPair {
    let phi = isogeny_series(&q.isogeny, n).map_err(|e| e.to_string())?;
    let psi = dual_series(&q.isogeny, &q.dual, n).map_err(|e| e.to_string())?;
    Ok((phi, psi))
}

/// val(a1) of Φ from series substitution against the differential-scaling exponent.
fn check_leading_coefficient(q: &PairData, p: u64, series: &SeriesPair) -> CheckResult {
    const NAME: &str = "formal_leading_coefficient";
    match series {
        Ok((phi, psi)) => {
            let (v, w) = (phi.a1_valuation(p).finite(), psi.a1_valuation(p).finite());
            CheckResult::new(
                NAME,
                v == Some(q.alpha.exponent) && w == Some(q.dual_alpha.exponent),
                format!(
                    "val(a1) = {v:?} vs exponent {}; dual val(a1) = {w:?} vs exponent {}",
                    q.alpha.exponent, q.dual_alpha.exponent
                ),
            )
        }
        Err(e) => CheckResult::new(NAME, false, format!("series computation failed: {e}")),
    }
}

/// Φ̂ ∘ Φ equals [p] on the minimal model of E.
fn check_composition(p: u64, n: i64, series: &SeriesPair) -> CheckResult {
    const NAME: &str = "dual_composition";
    let run = || -> std::result::Result<(bool, i64), String> {
        let (phi, psi) = series.as_ref().map_err(Clone::clone)?;
        let comp = psi.compose(phi).map_err(|e| e.to_string())?;
        let mult = multiplication_series(&phi.domain, p as i64, n).map_err(|e| e.to_string())?;
        Ok((comp.agrees_with(&mult), comp.precision().min(mult.precision())))
    };
    match run() {
        Ok((ok, prec)) => CheckResult::new(NAME, ok && prec >= n, format!("agree to O(z^{prec}), requested {n}")),
        Err(e) => CheckResult::new(NAME, false, format!("series computation failed: {e}")),
    }
}

/// Both series checks; skipped without an isogeny.
pub fn check_series(a: &EntryAnalysis, orders: &SeriesOrders) -> [CheckResult; 2] {
    let Some(q) = &a.pair else {
        return [
            CheckResult::skip("formal_leading_coefficient", "no p-isogeny"),
            CheckResult::skip("dual_composition", "no p-isogeny"),
        ];
    };
    let p = a.entry.p;
    let n = orders.composition(p).max(orders.leading());
    let series = series_pair(q, n);
    [check_leading_coefficient(q, p, &series), check_composition(p, orders.composition(p), &series)]
}

fn hypothesis(a: &EntryAnalysis) -> Option<&PairData> {
    (a.local.reduction == ReductionType::AdditivePotentiallySupersingular).then_some(a.pair.as_ref()).flatten()
}

/// m(E) ≠ m(E′), exponent 0 ⟺ m < m′, exponent 1 ⟺ m > m′, the same for v_min,
/// and m − m′ = v_min − v′_min.
pub fn check_main_theorem(a: &EntryAnalysis) -> CheckResult {
    const NAME: &str = "main_theorem";
    let Some(q) = hypothesis(a) else {
        return CheckResult::skip(NAME, format!("outside hypothesis: {}", a.local.reduction));
    };
    let (m, m2) = (a.local.m as i64, q.local_codomain.m as i64);
    let (v, v2) = (a.local.v_min as i64, q.local_codomain.v_min as i64);
    let e = q.alpha.exponent;
    let ok = m != m2
        && (e == 0) == (m < m2)
        && (e == 1) == (m > m2)
        && (e == 0) == (v < v2)
        && (e == 1) == (v > v2)
        && m - m2 == v - v2;
    CheckResult::new(NAME, ok, format!("exponent {e}; m {m} vs m' {m2}; v_min {v} vs v_min' {v2}; m - m' = {} and v - v' = {}", m - m2, v - v2))
}

/// Exponent 0 forces strict increase of m and v_min, exponent 1 strict decrease.
pub fn check_partial_converse(a: &EntryAnalysis) -> CheckResult {
    const NAME: &str = "partial_converse";
    let Some(q) = &a.pair else {
        return CheckResult::skip(NAME, "no p-isogeny");
    };
    if !matches!(a.local.reduction, ReductionType::GoodSupersingular | ReductionType::AdditivePotentiallySupersingular) {
        return CheckResult::skip(NAME, format!("outside hypothesis: {}", a.local.reduction));
    }
    let (m, m2) = (a.local.m, q.local_codomain.m);
    let (v, v2) = (a.local.v_min, q.local_codomain.v_min);
    let e = q.alpha.exponent;
    let ok = match e {
        0 => m < m2 && v < v2,
        1 => m > m2 && v > v2,
        _ => false,
    };
    CheckResult::new(NAME, ok, format!("exponent {e}; m {m} -> {m2}; v_min {v} -> {v2}"))
}

/// 0 < 12·exponent + v′_min − v_min < 12.
pub fn check_valuation_gap(a: &EntryAnalysis) -> CheckResult {
    const NAME: &str = "valuation_gap";
    let Some(q) = hypothesis(a) else {
        return CheckResult::skip(NAME, format!("outside hypothesis: {}", a.local.reduction));
    };
    let diff = q.local_codomain.v_min as i64 - a.local.v_min as i64;
    let t = 12 * q.alpha.exponent + diff;
    CheckResult::new(NAME, 0 < t && t < 12, format!("0 < 12*{} + ({diff}) = {t} < 12", q.alpha.exponent))
}

/// For good reduction: separable reduced x-map ⟺ exponent 0, and exactly one of the pair is separable.
pub fn check_separability(a: &EntryAnalysis) -> CheckResult {
    const NAME: &str = "separability";
    let Some(q) = &a.pair else {
        return CheckResult::skip(NAME, "no p-isogeny");
    };
    if !a.local.reduction.is_good() {
        return CheckResult::skip(NAME, format!("needs good reduction, have {}", a.local.reduction));
    }
    let p = a.entry.p;
    match (separability_shadow(&q.isogeny, p), separability_shadow(&q.dual.isogeny, p)) {
        (Ok(s), Ok(t)) => {
            let e = q.alpha.exponent;
            CheckResult::new(
                NAME,
                s == (e == 0) && s != t,
                format!("phi separable {s} with exponent {e}; dual separable {t}"),
            )
        }
        (Err(e), _) | (_, Err(e)) => CheckResult::new(NAME, false, format!("reduced map failed: {e}")),
    }
}

/// Height of a good-reduction model, or of a good lift of j mod p for
/// additive potentially good reduction; compared with the Hasse test.
fn height_agrees(m: &WeierstrassModel, ld: &LocalData, p: u64, n: i64) -> Result<Option<(u32, bool)>> {
    let j = m.j_invariant()?;
    if ld.reduction.is_good() {
        let h = formal_height(m, p, n)?;
        return Ok(Some((h, is_supersingular_j(j.residue(p)?, p)?)));
    }
    if ld.reduction.is_additive() && ld.reduction.is_potentially_good() {
        let jr = j.residue(p)?;
        let h = formal_height(&good_reduction_lift(jr, p)?, p, n)?;
        return Ok(Some((h, ld.reduction == ReductionType::AdditivePotentiallySupersingular)));
    }
    Ok(None)
}

pub fn check_height(a: &EntryAnalysis, orders: &SeriesOrders) -> CheckResult {
    const NAME: &str = "height_vs_hasse";
    let p = a.entry.p;
    let n = orders.height(p);
    let mut sides = vec![("E", &a.entry.curve, &a.local)];
    if let Some(q) = &a.pair {
        sides.push(("E'", &q.isogeny.codomain, &q.local_codomain));
    }
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, m, ld) in sides {
        match height_agrees(m, ld, p, n) {
            Ok(None) => parts.push(format!("{name}: {} (no height)", ld.reduction)),
            Ok(Some((h, ss))) => {
                ok &= (h == 2) == ss;
                parts.push(format!("{name}: height {h}, supersingular by Hasse {ss}"));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    if parts.iter().all(|s| s.ends_with("(no height)")) {
        return CheckResult::skip(NAME, parts.join("; "));
    }
    CheckResult::new(NAME, ok, parts.join("; "))
}

/// All checks for one analysed entry, in a fixed order.
pub fn run_checks(a: &EntryAnalysis, orders: &SeriesOrders) -> Vec<CheckResult> {
    let [lead, comp] = check_series(a, orders);
    vec![
        check_expected(a),
        check_ogg(a),
        check_dual_sum(a),
        check_exactly_one_trivial(a),
        lead,
        comp,
        check_main_theorem(a),
        check_partial_converse(a),
        check_valuation_gap(a),
        check_separability(a),
        check_height(a, orders),
    ]
}
