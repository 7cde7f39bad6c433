//! Minimal models, Tate's algorithm for odd residue characteristic, Kodaira
//! types, component counts and reduction classification.
//!
//! All root tests are made over the algebraic closure of the residue field, so
//! the component count `m` is geometric. The residue degree of the unramified
//! base never enters: minimal models over ℚ_p stay minimal after unramified
//! extension.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::fp::{inv_mod, mul_mod, sub_mod};
use crate::exactnum::{is_prime, PrimeFieldPolynomial, Rational, Valuation};
use crate::weierstrass::{Transformation, WeierstrassModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KodairaType {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub fn geometric_components(self) -> u32 {
        match self {
            KodairaType::I0 => 1,
            KodairaType::In(n) => n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::I0Star => 5,
            KodairaType::InStar(n) => n + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// Name with `s` marking a star, e.g. `I3s`, `IVs`.
    pub fn code(self) -> String {
        self.to_string().replace('*', "s")
    }
}

pub fn geometric_components(k: KodairaType) -> u32 {
    k.geometric_components()
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => write!(f, "I0"),
            KodairaType::In(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::I0Star => write!(f, "I0*"),
            KodairaType::InStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

/// Accepts both `I3*` and `I3s`.
impl FromStr for KodairaType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (base, star) = match t.strip_suffix('*').or_else(|| t.strip_suffix('s')) {
            Some(b) => (b, true),
            None => (t, false),
        };
        let bad = || Error::Parse(format!("unknown Kodaira type {s:?}"));
        let k = match (base, star) {
            ("II", false) => KodairaType::II,
            ("III", false) => KodairaType::III,
            ("IV", false) => KodairaType::IV,
            ("II", true) => KodairaType::IIStar,
            ("III", true) => KodairaType::IIIStar,
            ("IV", true) => KodairaType::IVStar,
            _ => {
                let n: u32 = base.strip_prefix('I').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                match (n, star) {
                    (0, false) => KodairaType::I0,
                    (0, true) => KodairaType::I0Star,
                    (n, false) => KodairaType::In(n),
                    (n, true) => KodairaType::InStar(n),
                }
            }
        };
        Ok(k)
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.code())
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionType {
    GoodOrdinary,
    GoodSupersingular,
    Multiplicative,
    AdditivePotentiallyMultiplicative,
    AdditivePotentiallyOrdinary,
    AdditivePotentiallySupersingular,
}

impl ReductionType {
    pub fn is_good(self) -> bool {
        matches!(self, ReductionType::GoodOrdinary | ReductionType::GoodSupersingular)
    }

    pub fn is_additive(self) -> bool {
        matches!(
            self,
            ReductionType::AdditivePotentiallyMultiplicative
                | ReductionType::AdditivePotentiallyOrdinary
                | ReductionType::AdditivePotentiallySupersingular
        )
    }

    pub fn is_potentially_good(self) -> bool {
        !matches!(self, ReductionType::Multiplicative | ReductionType::AdditivePotentiallyMultiplicative)
    }
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        write!(f, "{}", s.as_str().unwrap_or_default())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub p: u64,
    pub minimal_model: WeierstrassModel,
    /// From the input model to `minimal_model`.
    pub to_minimal: Transformation,
    pub v_min: u32,
    pub kodaira: KodairaType,
    pub m: u32,
    pub conductor_exponent: u32,
    pub reduction: ReductionType,
}

/// Flat serialized form of [`LocalData`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalDataRecord {
    pub v_min: u32,
    pub kodaira: KodairaType,
    pub m: u32,
    pub conductor: u32,
    pub reduction: ReductionType,
}

impl LocalData {
    pub fn record(&self) -> LocalDataRecord {
        LocalDataRecord {
            v_min: self.v_min,
            kodaira: self.kodaira,
            m: self.m,
            conductor: self.conductor_exponent,
            reduction: self.reduction,
        }
    }
}

impl Serialize for LocalData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(s)
    }
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::UnsupportedPrime { p, reason: "not prime".into() });
    }
    if p == 2 {
        return Err(Error::UnsupportedPrime { p, reason: "residue characteristic 2 is not supported".into() });
    }
    Ok(())
}

/// v_min − m + 1; negative values mean the inputs are inconsistent.
pub fn conductor_via_ogg(v_min: i64, m: i64) -> Result<i64> {
    if v_min < 0 || m < 1 {
        return Err(Error::Inconsistent(format!("v_min = {v_min}, m = {m}")));
    }
    let f = v_min - m + 1;
    if f < 0 {
        return Err(Error::Inconsistent(format!("v_min = {v_min} and m = {m} give a negative conductor exponent")));
    }
    Ok(f)
}

/// Is a curve over the algebraic closure of F_p with j-invariant `j_res`
/// supersingular? Decided by the Hasse invariant of an explicit model.
pub fn is_supersingular_j(j_res: u64, p: u64) -> Result<bool> {
    check_prime(p)?;
    let j = j_res % p;
    let f = hasse_model(j, p);
    let h = f.pow(((p - 1) / 2) as u32);
    Ok(h.coeff((p - 1) as usize) == 0)
}

/// Cubic f with y² = f(x) nonsingular over F_p and j(f) = j.
fn hasse_model(j: u64, p: u64) -> PrimeFieldPolynomial {
    let j1728 = 1728 % p;
    if p == 3 {
        if j == 0 {
            return PrimeFieldPolynomial::new(p, vec![0, 1, 0, 1]);
        }
        // y² = x³ + x² − 1/j
        let c = sub_mod(0, inv_mod(j, p).expect("nonzero"), p);
        return PrimeFieldPolynomial::new(p, vec![c, 0, 1, 1]);
    }
    if j == 0 {
        PrimeFieldPolynomial::new(p, vec![1, 0, 0, 1])
    } else if j == j1728 {
        PrimeFieldPolynomial::new(p, vec![0, 1, 0, 1])
    } else {
        // y² = x³ + 3kx + 2k with k = j/(1728 − j)
        let k = mul_mod(j, inv_mod(sub_mod(j1728, j, p), p).expect("j ≠ 1728"), p);
        PrimeFieldPolynomial::new(p, vec![mul_mod(2, k, p), mul_mod(3, k, p), 0, 1])
    }
}

/// An integral model over ℚ with good reduction at p whose reduction has
/// j-invariant `j_res`.
pub fn good_reduction_lift(j_res: u64, p: u64) -> Result<WeierstrassModel> {
    check_prime(p)?;
    let f = hasse_model(j_res % p, p);
    let c = |i: usize| f.coeff(i) as i64;
    Ok(WeierstrassModel::from_ints([0, c(2), 0, c(1), c(0)]))
}

/// 12 / gcd(v_min, 12), the ramification needed to reach good reduction.
/// Only valid for tame residue characteristic p ≥ 5.
pub fn semistability_defect(v_min: u32, p: u64) -> Result<u32> {
    check_prime(p)?;
    if p < 5 {
        return Err(Error::UnsupportedPrime { p, reason: "semistability defect formula needs p ≥ 5".into() });
    }
    Ok(12 / v_min.gcd(&12))
}

enum CubicRoots {
    Distinct,
    Double(u64),
    Triple(u64),
}

/// Multiple-root structure of a monic cubic over F_p.
fn cubic_roots(c: &PrimeFieldPolynomial) -> CubicRoots {
    let p = c.modulus();
    let g = c.gcd(&c.derivative());
    match g.degree() {
        Some(0) | None => CubicRoots::Distinct,
        Some(1) => CubicRoots::Double(sub_mod(0, g.coeff(0), p)),
        _ => {
            let rho = if p == 3 {
                // (x − ρ)³ = x³ − ρ³ and ρ³ = ρ in F_3
                sub_mod(0, c.coeff(0), p)
            } else {
                mul_mod(sub_mod(0, c.coeff(2), p), inv_mod(3, p).expect("p ≠ 3"), p)
            };
            CubicRoots::Triple(rho)
        }
    }
}

struct Walker {
    p: u64,
    model: WeierstrassModel,
    total: Transformation,
}

impl Walker {
    fn apply(&mut self, t: Transformation) -> Result<()> {
        self.model = self.model.transform(&t)?;
        self.total = self.total.then(&t);
        Ok(())
    }

    fn translate_x(&mut self, r: Rational) -> Result<()> {
        self.apply(Transformation::translation(r, Rational::zero(), Rational::zero()))
    }

    fn v(&self, a: &Rational) -> Valuation {
        a.valuation(self.p)
    }

    /// Residue of a / p^k.
    fn res(&self, a: &Rational, k: i64) -> Result<u64> {
        (a * Rational::prime_power(self.p, -k)).residue(self.p)
    }

    fn pk(&self, k: i64) -> Rational {
        Rational::prime_power(self.p, k)
    }

    fn lift(&self, r: u64, k: i64) -> Rational {
        Rational::from_int(r as i64) * self.pk(k)
    }

    fn cubic(&self, c: [u64; 3]) -> PrimeFieldPolynomial {
        PrimeFieldPolynomial::new(self.p, vec![c[0], c[1], c[2], 1])
    }
}

fn fin(k: i64) -> Valuation {
    Valuation::Finite(k)
}

/// Runs Tate's algorithm, returning the minimal model reached, the
/// transformation to it from `m`, and the Kodaira type.
fn run_tate(m: &WeierstrassModel, p: u64) -> Result<(WeierstrassModel, Transformation, KodairaType)> {
    check_prime(p)?;
    if m.is_singular() {
        return Err(Error::SingularModel);
    }
    let mut w = Walker { p, model: m.clone(), total: Transformation::identity() };

    // Integral model first, then remove a1 and a3 (2 is a unit).
    let mut k = 0i64;
    for (i, a) in [1i64, 2, 3, 4, 6].into_iter().zip(m.coefficients()) {
        if let Valuation::Finite(v) = a.valuation(p) {
            if v < 0 {
                k = k.max((-v + i - 1) / i);
            }
        }
    }
    if k > 0 {
        w.apply(Transformation::scaling(Rational::prime_power(p, -k))?)?;
    }
    let half = Rational::new(1, 2)?;
    let (s, t) = (-(&w.model.a1 * &half), -(&w.model.a3 * &half));
    if !s.is_zero() || !t.is_zero() {
        w.apply(Transformation::translation(Rational::zero(), s, t))?;
    }

    loop {
        let vd = w.model.discriminant_valuation(p)?;
        if vd == 0 {
            return Ok((w.model, w.total, KodairaType::I0));
        }
        let mm = w.model.clone();
        let c = w.cubic([w.res(&mm.a6, 0)?, w.res(&mm.a4, 0)?, w.res(&mm.a2, 0)?]);
        let rho = match cubic_roots(&c) {
            CubicRoots::Distinct => return Err(Error::Internal("positive discriminant valuation with separable cubic".into())),
            CubicRoots::Double(_) => return Ok((w.model, w.total, KodairaType::In(vd as u32))),
            CubicRoots::Triple(rho) => rho,
        };
        if rho != 0 {
            w.translate_x(w.lift(rho, 0))?;
        }
        let mm = w.model.clone();
        if w.v(&mm.a6) < fin(2) {
            return Ok((w.model, w.total, KodairaType::II));
        }
        if w.v(&mm.a4) < fin(2) {
            return Ok((w.model, w.total, KodairaType::III));
        }
        if w.v(&mm.a6) < fin(3) {
            return Ok((w.model, w.total, KodairaType::IV));
        }
        let c = w.cubic([w.res(&mm.a6, 3)?, w.res(&mm.a4, 2)?, w.res(&mm.a2, 1)?]);
        match cubic_roots(&c) {
            CubicRoots::Distinct => return Ok((w.model, w.total, KodairaType::I0Star)),
            CubicRoots::Double(rho) => {
                if rho != 0 {
                    w.translate_x(w.lift(rho, 1))?;
                }
                let n = star_chain(&mut w, vd)?;
                return Ok((w.model, w.total, KodairaType::InStar(n)));
            }
            CubicRoots::Triple(rho) => {
                if rho != 0 {
                    w.translate_x(w.lift(rho, 1))?;
                }
                let mm = w.model.clone();
                if w.v(&mm.a6) < fin(5) {
                    return Ok((w.model, w.total, KodairaType::IVStar));
                }
                if w.v(&mm.a4) < fin(4) {
                    return Ok((w.model, w.total, KodairaType::IIIStar));
                }
                if w.v(&mm.a6) < fin(6) {
                    return Ok((w.model, w.total, KodairaType::IIStar));
                }
                w.apply(Transformation::scaling(Rational::from_int(p as i64))?)?;
            }
        }
    }
}

/// The I_n* subprocedure. On entry v(a2) = 1, v(a4) ≥ 3, v(a6) ≥ 4.
fn star_chain(w: &mut Walker, vd: i64) -> Result<u32> {
    let p = w.p;
    let mut n: i64 = 1;
    loop {
        if n > vd {
            return Err(Error::Internal("I_n* chain exceeded the discriminant valuation".into()));
        }
        let mm = w.model.clone();
        if n % 2 == 1 {
            let k = (n + 1) / 2;
            if w.res(&mm.a6, 2 * k + 2)? != 0 {
                return Ok(n as u32);
            }
        } else {
            let k = n / 2;
            let a = w.res(&mm.a2, 1)?;
            let b = w.res(&mm.a4, k + 2)?;
            let c = w.res(&mm.a6, 2 * k + 3)?;
            let disc = sub_mod(mul_mod(b, b, p), mul_mod(4, mul_mod(a, c, p), p), p);
            if disc != 0 {
                return Ok(n as u32);
            }
            let x0 = mul_mod(sub_mod(0, b, p), inv_mod(mul_mod(2, a, p), p).expect("a2/p is a unit"), p);
            if x0 != 0 {
                w.translate_x(w.lift(x0, k + 1))?;
            }
        }
        n += 1;
    }
}

/// A p-minimal model and the transformation reaching it. Models that are
/// already minimal come back unchanged with the identity.
pub fn minimal_model(m: &WeierstrassModel, p: u64) -> Result<(WeierstrassModel, Transformation)> {
    let (model, total, _) = run_tate(m, p)?;
    if m.is_integral(p) && m.discriminant_valuation(p)? == model.discriminant_valuation(p)? {
        return Ok((m.clone(), Transformation::identity()));
    }
    Ok((model, total))
}

pub fn tate_algorithm(m: &WeierstrassModel, p: u64) -> Result<LocalData> {
    let (reached, total, kodaira) = run_tate(m, p)?;
    let v_min = reached.discriminant_valuation(p)?;
    let (minimal_model, to_minimal) = if m.is_integral(p) && m.discriminant_valuation(p)? == v_min {
        (m.clone(), Transformation::identity())
    } else {
        (reached, total)
    };
    let mcount = kodaira.geometric_components();
    let conductor = conductor_via_ogg(v_min, mcount as i64)?;
    let reduction = reduction_from(&minimal_model, v_min, p)?;
    Ok(LocalData {
        p,
        minimal_model,
        to_minimal,
        v_min: v_min as u32,
        kodaira,
        m: mcount,
        conductor_exponent: conductor as u32,
        reduction,
    })
}

/// Local data over the unramified extension with the given context; the
/// residue degree does not change any field.
pub fn local_data(m: &WeierstrassModel, ctx: &crate::exactnum::LocalFieldContext) -> Result<LocalData> {
    tate_algorithm(m, ctx.p())
}

fn reduction_from(min: &WeierstrassModel, v_min: i64, p: u64) -> Result<ReductionType> {
    let j = min.j_invariant()?;
    if v_min == 0 {
        let ss = is_supersingular_j(j.residue(p)?, p)?;
        return Ok(if ss { ReductionType::GoodSupersingular } else { ReductionType::GoodOrdinary });
    }
    if min.c4().valuation(p) == fin(0) {
        return Ok(ReductionType::Multiplicative);
    }
    if j.valuation(p) < fin(0) {
        return Ok(ReductionType::AdditivePotentiallyMultiplicative);
    }
    Ok(if is_supersingular_j(j.residue(p)?, p)? {
        ReductionType::AdditivePotentiallySupersingular
    } else {
        ReductionType::AdditivePotentiallyOrdinary
    })
}

pub fn classify_reduction(m: &WeierstrassModel, p: u64) -> Result<ReductionType> {
    Ok(tate_algorithm(m, p)?.reduction)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(a: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::from_ints(a)
    }

    #[test]
    fn lifts_have_good_reduction_and_the_right_j() {
        for p in [3u64, 5, 7, 11, 13] {
            for j in 0..p {
                let m = good_reduction_lift(j, p).unwrap();
                assert!(tate_algorithm(&m, p).unwrap().reduction.is_good(), "j = {j} at {p}");
                assert_eq!(m.j_invariant().unwrap().residue(p).unwrap(), j);
            }
        }
    }

    #[test]
    fn tate_examples() {
        let d = tate_algorithm(&model([0, 0, 0, 1, 1]), 5).unwrap();
        assert_eq!((d.kodaira, d.m, d.conductor_exponent, d.v_min), (KodairaType::I0, 1, 0, 0));
        let d = tate_algorithm(&model([0, -1, 1, -10, -20]), 11).unwrap();
        assert_eq!((d.kodaira, d.m, d.conductor_exponent), (KodairaType::In(5), 5, 1));
        assert_eq!(d.reduction, ReductionType::Multiplicative);
        let d = tate_algorithm(&model([0, 0, 0, 0, 49]), 7).unwrap();
        assert_eq!((d.kodaira, d.m, d.conductor_exponent, d.v_min), (KodairaType::IV, 3, 2, 4));
        let d = tate_algorithm(&model([0, 0, 1, 0, 0]), 3).unwrap();
        assert_eq!((d.kodaira, d.v_min), (KodairaType::II, 3));
        assert_eq!(d.reduction, ReductionType::AdditivePotentiallySupersingular);
        assert_eq!(d.minimal_model, model([0, 0, 1, 0, 0]));
        assert!(d.to_minimal.is_identity());
    }

    #[test]
    fn non_minimal_inputs() {
        // y² = x³ + 3⁶ scales down to y² = x³ + 1.
        let e = model([0, 0, 0, 0, 729]);
        let (min, t) = minimal_model(&e, 3).unwrap();
        assert_eq!(e.transform(&t).unwrap(), min);
        assert_eq!(min.discriminant_valuation(3).unwrap(), 3);
        assert_eq!(t.scale_valuation(3), 1);
        // Rational non-integral input.
        let f = model([0, 0, 1, 0, 0]).transform(&Transformation::scaling(Rational::new(1, 3).unwrap()).unwrap()).unwrap();
        let (min, _) = minimal_model(&f, 3).unwrap();
        assert_eq!(min.discriminant_valuation(3).unwrap(), 3);
        let g = model([0, 0, 1, 0, 0]).transform(&Transformation::scaling(Rational::from_int(3)).unwrap()).unwrap();
        assert!(!g.is_integral(3));
        assert_eq!(tate_algorithm(&g, 3).unwrap().v_min, 3);
    }

    #[test]
    fn components_table() {
        assert_eq!(geometric_components(KodairaType::I0), 1);
        assert_eq!(geometric_components(KodairaType::InStar(3)), 8);
        assert_eq!(geometric_components(KodairaType::IIStar), 9);
    }

    #[test]
    fn ogg_examples() {
        assert_eq!(conductor_via_ogg(0, 1).unwrap(), 0);
        assert_eq!(conductor_via_ogg(5, 5).unwrap(), 1);
        assert_eq!(conductor_via_ogg(3, 1).unwrap(), 3);
        assert!(conductor_via_ogg(2, 5).is_err());
    }

    #[test]
    fn hasse_examples() {
        assert!(is_supersingular_j(0, 3).unwrap());
        assert!(is_supersingular_j(6, 7).unwrap());
        assert!(!is_supersingular_j(0, 7).unwrap());
        assert!(!is_supersingular_j(1, 3).unwrap());
        assert!(is_supersingular_j(0, 5).unwrap());
        // Supersingular j in characteristic 11: 0 and 1728 ≡ 1.
        let ss: Vec<u64> = (0..11).filter(|&j| is_supersingular_j(j, 11).unwrap()).collect();
        assert_eq!(ss, vec![0, 1]);
        // Characteristic 13: only j = 5.
        let ss: Vec<u64> = (0..13).filter(|&j| is_supersingular_j(j, 13).unwrap()).collect();
        assert_eq!(ss, vec![5]);
    }

    #[test]
    fn semistability_examples() {
        assert_eq!(semistability_defect(0, 5).unwrap(), 1);
        assert_eq!(semistability_defect(4, 7).unwrap(), 3);
        assert!(semistability_defect(3, 3).is_err());
        // Quadratic twist by 5 of a curve with good reduction at 5 has v_min = 6.
        let twist = model([0, 0, 0, 25, 125]);
        let d = tate_algorithm(&twist, 5).unwrap();
        assert_eq!((d.v_min, d.kodaira), (6, KodairaType::I0Star));
        assert_eq!(semistability_defect(d.v_min, 5).unwrap(), 2);
        let d = tate_algorithm(&model([0, 0, 0, 0, 49]), 7).unwrap();
        assert_eq!(semistability_defect(d.v_min, 7).unwrap(), 3);
    }

    #[test]
    fn kodaira_names() {
        for (k, s) in [
            (KodairaType::InStar(5), "I5s"),
            (KodairaType::IVStar, "IVs"),
            (KodairaType::I0Star, "I0s"),
            (KodairaType::In(3), "I3"),
            (KodairaType::II, "II"),
        ] {
            assert_eq!(k.code(), s);
            assert_eq!(s.parse::<KodairaType>().unwrap(), k);
        }
        assert_eq!("III*".parse::<KodairaType>().unwrap(), KodairaType::IIIStar);
        assert!("V".parse::<KodairaType>().is_err());
        let d = tate_algorithm(&model([0, 0, 1, 0, 0]), 3).unwrap();
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"v_min":3,"kodaira":"II","m":1,"conductor":3,"reduction":"additive-potentially-supersingular"}"#
        );
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(tate_algorithm(&model([0, 0, 1, 0, 0]), 2).is_err());
        assert!(tate_algorithm(&model([0, 0, 1, 0, 0]), 9).is_err());
        assert_eq!(tate_algorithm(&model([0; 5]), 3), Err(Error::SingularModel));
    }
}
