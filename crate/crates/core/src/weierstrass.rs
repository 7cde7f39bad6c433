//! Long Weierstrass models, their standard invariants, and admissible changes
//! of coordinates `x = u²x' + r`, `y = u³y' + su²x' + t`.
//!
//! Under such a change the invariant differential scales as `ω' = u·ω` and the
//! discriminant as `Δ' = u⁻¹²·Δ`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{Rational, Valuation};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

/// b2, b4, b6, b8, c4, c6, Δ and j of a nonsingular model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardInvariants {
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub discriminant: Rational,
    pub j: Rational,
}

impl WeierstrassModel {
    /// Any quintuple; singular models are only rejected by operations that need Δ ≠ 0.
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn from_ints(a: [i64; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a.map(Rational::from_int);
        Self::new(a1, a2, a3, a4, a6)
    }

    pub fn from_coefficients(a: [Rational; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        Self::new(a1, a2, a3, a4, a6)
    }

    /// y² = x³ + a x + b
    pub fn short(a: Rational, b: Rational) -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero(), a, b)
    }

    pub fn coefficients(&self) -> [&Rational; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn b2(&self) -> Rational {
        &self.a1 * &self.a1 + Rational::from_int(4) * &self.a2
    }

    pub fn b4(&self) -> Rational {
        Rational::from_int(2) * &self.a4 + &self.a1 * &self.a3
    }

    pub fn b6(&self) -> Rational {
        &self.a3 * &self.a3 + Rational::from_int(4) * &self.a6
    }

    pub fn b8(&self) -> Rational {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        a1 * a1 * a6 + Rational::from_int(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }

    pub fn c4(&self) -> Rational {
        let b2 = self.b2();
        &b2 * &b2 - Rational::from_int(24) * self.b4()
    }

    pub fn c6(&self) -> Rational {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -(&b2 * &b2 * &b2) + Rational::from_int(36) * &b2 * &b4 - Rational::from_int(216) * b6
    }

    pub fn discriminant(&self) -> Rational {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - Rational::from_int(8) * &b4 * &b4 * &b4 - Rational::from_int(27) * &b6 * &b6
            + Rational::from_int(9) * &b2 * &b4 * &b6
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn j_invariant(&self) -> Result<Rational> {
        let disc = self.discriminant();
        if disc.is_zero() {
            return Err(Error::SingularModel);
        }
        let c4 = self.c4();
        Ok(&c4 * &c4 * &c4 / disc)
    }

    pub fn invariants(&self) -> Result<StandardInvariants> {
        let discriminant = self.discriminant();
        if discriminant.is_zero() {
            return Err(Error::SingularModel);
        }
        let c4 = self.c4();
        let j = &c4 * &c4 * &c4 / &discriminant;
        Ok(StandardInvariants {
            b2: self.b2(),
            b4: self.b4(),
            b6: self.b6(),
            b8: self.b8(),
            c4,
            c6: self.c6(),
            discriminant,
            j,
        })
    }

    pub fn discriminant_valuation(&self, p: u64) -> Result<i64> {
        self.discriminant().valuation(p).finite().ok_or(Error::SingularModel)
    }

    /// True when every coefficient has non-negative valuation at `p`.
    pub fn is_integral(&self, p: u64) -> bool {
        self.coefficients().iter().all(|a| a.is_integral(p))
    }

    /// The cubic right-hand side x³ + a2x² + a4x + a6 with a1 = a3 = 0 assumed by callers.
    pub fn rhs_coefficients(&self) -> [Rational; 4] {
        [self.a6.clone(), self.a4.clone(), self.a2.clone(), Rational::one()]
    }

    /// Does the affine point (x, y) satisfy the equation?
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
        let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
        lhs == rhs
    }

    /// Model in new coordinates; see the module documentation for the convention.
    pub fn transform(&self, t: &Transformation) -> Result<WeierstrassModel> {
        if t.u.is_zero() {
            return Err(Error::ZeroScale);
        }
        let Transformation { u, r, s, t } = t;
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let two = Rational::from_int(2);
        let three = Rational::from_int(3);
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let na1 = (a1 + &two * s) / u;
        let na2 = (a2 - s * a1 + &three * r - s * s) / &u2;
        let na3 = (a3 + r * a1 + &two * t) / &u3;
        let na4 = (a4 - s * a3 + &two * r * a2 - (t + r * s) * a1 + &three * r * r - &two * s * t) / &u4;
        let na6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / &u6;
        Ok(WeierstrassModel::new(na1, na2, na3, na4, na6))
    }

    /// Every transformation `T` over ℚ with `self.transform(T) == other`.
    pub fn isomorphisms_to(&self, other: &WeierstrassModel) -> Result<Vec<Transformation>> {
        let (d1, d2) = (self.discriminant(), other.discriminant());
        if d1.is_zero() || d2.is_zero() {
            return Err(Error::SingularModel);
        }
        let (c4, c6, c4o, c6o) = (self.c4(), self.c6(), other.c4(), other.c6());
        if c4.is_zero() != c4o.is_zero() || c6.is_zero() != c6o.is_zero() {
            return Ok(Vec::new());
        }
        let candidates: Vec<Rational> = if !c4.is_zero() && !c6.is_zero() {
            // u² = (c6/c6')/(c4/c4')
            let u2 = (&c6 * &c4o) / (&c6o * &c4);
            rational_root(&u2, 2)
        } else if c4.is_zero() {
            rational_root(&(&c6 / &c6o), 6)
        } else {
            rational_root(&(&c4 / &c4o), 4)
        };
        let two = Rational::from_int(2);
        let three = Rational::from_int(3);
        let mut out = Vec::new();
        for u in candidates.iter().flat_map(|u| [u.clone(), -u]) {
            let s = (&u * &other.a1 - &self.a1) / &two;
            let r = (&u * &u * &other.a2 - &self.a2 + &s * &self.a1 + &s * &s) / &three;
            let t = (&u * &u * &u * &other.a3 - &self.a3 - &r * &self.a1) / &two;
            let tr = Transformation::new(u, r, s, t)?;
            if &self.transform(&tr)? == other {
                out.push(tr);
            }
        }
        Ok(out)
    }

    pub fn is_isomorphic_to(&self, other: &WeierstrassModel) -> bool {
        self.isomorphisms_to(other).map(|v| !v.is_empty()).unwrap_or(false)
    }
}

/// Positive rational k-th roots of `q` (at most one), empty when none exists.
fn rational_root(q: &Rational, k: u32) -> Vec<Rational> {
    if q.is_zero() || q.is_negative() && k.is_multiple_of(2) {
        return Vec::new();
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == n.abs()).then_some(r)
    };
    match (root(q.numer()), root(q.denom())) {
        (Some(a), Some(b)) => {
            let a = if q.is_negative() { -a } else { a };
            vec![Rational::new(a, b).expect("positive denominator")]
        }
        _ => Vec::new(),
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}, {}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

impl fmt::Debug for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses "a1,a2,a3,a4,a6" (brackets optional).
impl FromStr for WeierstrassModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = s.split(',').map(|t| t.trim().trim_matches('"').parse::<Rational>()).collect::<Result<Vec<_>>>()?;
        let arr: [Rational; 5] = parts
            .try_into()
            .map_err(|v: Vec<Rational>| Error::Parse(format!("expected 5 coefficients, got {}", v.len())))?;
        Ok(Self::from_coefficients(arr))
    }
}

impl Serialize for WeierstrassModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coefficients().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeierstrassModel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[Rational; 5]>::deserialize(d)?;
        Ok(Self::from_coefficients(v))
    }
}

/// Change of coordinates (u, r, s, t) with u ≠ 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Transformation {
    pub u: Rational,
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl Transformation {
    pub fn new(u: Rational, r: Rational, s: Rational, t: Rational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(Transformation { u, r, s, t })
    }

    pub fn identity() -> Self {
        Transformation { u: Rational::one(), r: Rational::zero(), s: Rational::zero(), t: Rational::zero() }
    }

    pub fn scaling(u: Rational) -> Result<Self> {
        Self::new(u, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn translation(r: Rational, s: Rational, t: Rational) -> Self {
        Transformation { u: Rational::one(), r, s, t }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Apply `self` first, then `next`: `m.transform(a.then(b)) == m.transform(a).transform(b)`.
    pub fn then(&self, next: &Transformation) -> Transformation {
        let u1 = &self.u;
        let u1sq = u1 * u1;
        Transformation {
            u: u1 * &next.u,
            r: &self.r + &u1sq * &next.r,
            s: &self.s + u1 * &next.s,
            t: &self.t + &u1sq * u1 * &next.t + &self.s * &u1sq * &next.r,
        }
    }

    pub fn inverse(&self) -> Transformation {
        let ui = self.u.inv().expect("u nonzero");
        let ui2 = &ui * &ui;
        Transformation {
            u: ui.clone(),
            r: -(&self.r * &ui2),
            s: -(&self.s * &ui),
            t: (&self.r * &self.s - &self.t) * &ui2 * &ui,
        }
    }

    /// Valuation of the scale `u`, the exponent by which the differential changes.
    pub fn scale_valuation(&self, p: u64) -> i64 {
        self.u.valuation(p).finite().expect("u nonzero")
    }

    /// Image of a point under the coordinate change (old coordinates to new).
    pub fn map_point(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        let ui = self.u.inv().expect("u nonzero");
        let ui2 = &ui * &ui;
        let xr = x - &self.r;
        let nx = &xr * &ui2;
        let ny = (y - &self.s * &xr - &self.t) * &ui2 * &ui;
        (nx, ny)
    }
}

/// val_p(u) of a transformation taking `from` to `to`; equals
/// (val_p Δ(from) − val_p Δ(to)) / 12.
pub fn differential_scale(from: &WeierstrassModel, to: &WeierstrassModel, p: u64) -> Result<i64> {
    let isos = from.isomorphisms_to(to)?;
    let t = isos.first().ok_or(Error::NotIsomorphic)?;
    let v = t.scale_valuation(p);
    let (vf, vt) = (from.discriminant_valuation(p)?, to.discriminant_valuation(p)?);
    if (vf - vt) % 12 != 0 || (vf - vt) / 12 != v {
        return Err(Error::Internal(format!("discriminant valuations {vf} and {vt} do not match scale {v}")));
    }
    Ok(v)
}

/// Valuation of the discriminant, with zero reported as singular.
pub fn discriminant_valuation(m: &WeierstrassModel, p: u64) -> Result<Valuation> {
    let v = m.discriminant().valuation(p);
    if v.is_infinite() {
        return Err(Error::SingularModel);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn invariant_examples() {
        let e = WeierstrassModel::from_ints([0, 0, 1, 0, 0]);
        let inv = e.invariants().unwrap();
        assert_eq!(inv.discriminant, q("-27"));
        assert_eq!(inv.c4, q("0"));
        assert_eq!(inv.j, q("0"));
        let e = WeierstrassModel::from_ints([0, 0, 0, 1, 1]);
        assert_eq!(e.discriminant(), q("-496"));
        assert_eq!(WeierstrassModel::from_ints([0; 5]).invariants(), Err(Error::SingularModel));
    }

    #[test]
    fn identity_and_scaling() {
        let e = WeierstrassModel::from_ints([1, -1, 1, -10, -20]);
        assert_eq!(e.transform(&Transformation::identity()).unwrap(), e);
        // y^2 + y = x^3 - x^2 - 10x - 20 has val_11(Δ) = 5; build a model with val_3(Δ) = 3.
        let f = WeierstrassModel::from_ints([0, 0, 1, 0, 0]);
        let g = f.transform(&Transformation::scaling(q("3")).unwrap()).unwrap();
        assert_eq!(g.discriminant_valuation(3).unwrap(), -9);
        assert!(Transformation::scaling(q("0")).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let e = WeierstrassModel::from_ints([1, -1, 1, -10, -20]);
        let t1 = Transformation::new(q("2"), q("1/3"), q("-1"), q("5")).unwrap();
        let t2 = Transformation::new(q("-3/7"), q("2"), q("1/2"), q("-1")).unwrap();
        let two_step = e.transform(&t1).unwrap().transform(&t2).unwrap();
        assert_eq!(e.transform(&t1.then(&t2)).unwrap(), two_step);
        assert_eq!(e.transform(&t1).unwrap().transform(&t1.inverse()).unwrap(), e);
        assert!(t1.then(&t1.inverse()).is_identity());
    }

    #[test]
    fn point_map_agrees_with_model_map() {
        let e = WeierstrassModel::from_ints([0, 0, 1, -1, 0]);
        let t = Transformation::new(q("2"), q("1"), q("3"), q("-2")).unwrap();
        let f = e.transform(&t).unwrap();
        let (x, y) = t.map_point(&q("1"), &q("0"));
        assert!(e.contains(&q("1"), &q("0")));
        assert!(f.contains(&x, &y));
    }

    #[test]
    fn differential_scale_examples() {
        let e = WeierstrassModel::from_ints([0, 0, 1, 0, 0]);
        assert_eq!(differential_scale(&e, &e, 3).unwrap(), 0);
        for p in [3u64, 5, 7] {
            let pr = Rational::from_int(p as i64);
            let scaled = e.transform(&Transformation::scaling(pr).unwrap()).unwrap();
            // Δ_to = p^-12 Δ_from, so val(u) = (val Δ_from − val Δ_to)/12 = 1.
            assert_eq!(differential_scale(&e, &scaled, p).unwrap(), 1);
            assert_eq!(differential_scale(&scaled, &e, p).unwrap(), -1);
        }
        let other = WeierstrassModel::from_ints([0, 0, 1, 0, -7]);
        assert_eq!(differential_scale(&e, &other, 3), Err(Error::NotIsomorphic));
    }

    #[test]
    fn isomorphisms_of_special_j() {
        // j = 1728 and j = 0 models related by scalings.
        let e = WeierstrassModel::from_ints([0, 0, 0, 1, 0]);
        let f = e.transform(&Transformation::scaling(q("1/2")).unwrap()).unwrap();
        assert_eq!(f, WeierstrassModel::from_ints([0, 0, 0, 16, 0]));
        assert_eq!(e.isomorphisms_to(&f).unwrap().len(), 2);
        let g = WeierstrassModel::from_ints([0, 0, 0, 0, 1]);
        let h = g.transform(&Transformation::scaling(q("1/3")).unwrap()).unwrap();
        assert_eq!(h, WeierstrassModel::from_ints([0, 0, 0, 0, 729]));
        assert_eq!(differential_scale(&g, &h, 3).unwrap(), -1);
        assert!(!g.is_isomorphic_to(&WeierstrassModel::from_ints([0, 0, 0, 0, 2])));
    }

    #[test]
    fn parse_and_serialize() {
        let e: WeierstrassModel = "0,0,1,-7,1/2".parse().unwrap();
        assert_eq!(serde_json::to_string(&e).unwrap(), r#"["0","0","1","-7","1/2"]"#);
        assert!("1,2,3".parse::<WeierstrassModel>().is_err());
    }
}
