//! Truncated Laurent series with explicit absolute precision.
//!
//! A series is known modulo z^prec. Every operation derives the precision of
//! its result from its operands, so a coefficient is never reported unless it
//! is determined.

use std::fmt;

use super::ring::{CoefficientRing, RationalField, ResidueField};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

#[derive(Clone, PartialEq)]
pub struct Series<R: CoefficientRing> {
    ring: R,
    /// Exponent of `coeffs[0]`; equals the valuation unless no coefficient is known to be nonzero.
    val: i64,
    coeffs: Vec<R::Elem>,
    prec: i64,
}

pub type RationalSeries = Series<RationalField>;

impl<R: CoefficientRing> Series<R> {
    /// Σ coeffs[k]·z^(val+k) + O(z^prec); missing coefficients below `prec` are zero.
    pub fn new(ring: R, val: i64, mut coeffs: Vec<R::Elem>, prec: i64) -> Self {
        let keep = (prec - val).max(0) as usize;
        coeffs.truncate(keep);
        coeffs.resize(keep, ring.zero());
        let mut s = Series { ring, val, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !self.ring.is_zero(c)).unwrap_or(self.coeffs.len());
        self.coeffs.drain(..lead);
        self.val += lead as i64;
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
    }

    pub fn zero(ring: R, prec: i64) -> Self {
        Self::new(ring, prec, Vec::new(), prec)
    }

    pub fn constant(ring: R, c: R::Elem, prec: i64) -> Self {
        Self::new(ring, 0, vec![c], prec)
    }

    pub fn one(ring: R, prec: i64) -> Self {
        let one = ring.one();
        Self::constant(ring, one, prec)
    }

    /// The parameter z itself, known to the given precision.
    pub fn variable(ring: R, prec: i64) -> Self {
        let one = ring.one();
        Self::new(ring, 1, vec![one], prec)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Exponent of the first coefficient known to be nonzero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Lower bound for the valuation: the true one, or `prec` when nothing nonzero is known.
    fn order(&self) -> i64 {
        self.val
    }

    /// Coefficient of z^k; fails when k is beyond the known precision.
    pub fn coeff(&self, k: i64) -> Result<R::Elem> {
        if k >= self.prec {
            return Err(Error::Precision(format!("coefficient of z^{k} requested from a series known mod z^{}", self.prec)));
        }
        Ok(self.coeff_unchecked(k))
    }

    fn coeff_unchecked(&self, k: i64) -> R::Elem {
        if k < self.val || k >= self.val + self.coeffs.len() as i64 {
            self.ring.zero()
        } else {
            self.coeffs[(k - self.val) as usize].clone()
        }
    }

    /// Known coefficients from degree `from` up to `prec − 1`.
    pub fn coefficients_from(&self, from: i64) -> Vec<R::Elem> {
        (from..self.prec).map(|k| self.coeff_unchecked(k)).collect()
    }

    pub fn leading_coefficient(&self) -> Option<R::Elem> {
        self.coeffs.first().cloned()
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, prec: i64) -> Self {
        Self::new(self.ring.clone(), self.val, self.coeffs.clone(), prec.min(self.prec))
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: i64) -> Self {
        Series { ring: self.ring.clone(), val: self.val + k, coeffs: self.coeffs.clone(), prec: self.prec + k }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let val = self.val.min(o.val).min(prec);
        let coeffs = (val..prec).map(|k| self.ring.add(&self.coeff_unchecked(k), &o.coeff_unchecked(k))).collect();
        Self::new(self.ring.clone(), val, coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Series { ring: self.ring.clone(), val: self.val, coeffs, prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        Self::new(self.ring.clone(), self.val, coeffs, self.prec)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&self.ring.from_int(n))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = (self.order() + o.prec).min(o.order() + self.prec);
        let val = self.order() + o.order();
        let n = (prec - val).max(0) as usize;
        let mut out = vec![self.ring.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = self.ring.add(&out[i + j], &self.ring.mul(a, b));
            }
        }
        Self::new(self.ring.clone(), val, out, prec)
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Series::one(self.ring.clone(), self.prec - self.order());
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the leading coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let lead = self
            .coeffs
            .first()
            .ok_or_else(|| Error::Precision("inverting a series with no known nonzero coefficient".into()))?;
        let c0 = self.ring.inv(lead)?;
        let n = self.coeffs.len();
        let mut out: Vec<R::Elem> = Vec::with_capacity(n);
        out.push(c0.clone());
        for k in 1..n {
            let mut s = self.ring.zero();
            for i in 1..=k {
                s = self.ring.add(&s, &self.ring.mul(&self.coeffs[i], &out[k - i]));
            }
            out.push(self.ring.neg(&self.ring.mul(&s, &c0)));
        }
        Ok(Self::new(self.ring.clone(), -self.val, out, self.prec - 2 * self.val))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// self(g) for a power series `self` and g with positive valuation.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let vg = g.order();
        if vg < 1 {
            return Err(Error::Precision("substituting a series without positive valuation".into()));
        }
        let vf = self.order();
        if vf < 0 {
            return Err(Error::Precision("substituting into a series with a pole".into()));
        }
        let prec = (self.prec.saturating_mul(vg)).min(g.prec + (vf - 1).max(0) * vg);
        let mut acc = Series::zero(self.ring.clone(), prec);
        let mut gp = Series::one(self.ring.clone(), prec);
        for n in 0..self.prec {
            if n * vg >= prec {
                break;
            }
            let c = self.coeff_unchecked(n);
            if !self.ring.is_zero(&c) {
                acc = acc.add(&gp.scale(&c));
            }
            gp = gp.mul(g);
        }
        Ok(acc.truncate(prec))
    }

    /// Formal derivative d/dz.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| self.ring.mul(c, &self.ring.from_int(self.val + k as i64)))
            .collect();
        Self::new(self.ring.clone(), self.val - 1, coeffs, self.prec - 1)
    }

    /// Do the two series agree on every coefficient known for both?
    pub fn agrees_with(&self, o: &Self) -> bool {
        let prec = self.prec.min(o.prec);
        let lo = self.val.min(o.val);
        (lo..prec).all(|k| self.coeff_unchecked(k) == o.coeff_unchecked(k))
    }

    pub fn map_ring<T: CoefficientRing>(&self, target: T, f: impl Fn(&R::Elem) -> Result<T::Elem>) -> Result<Series<T>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Series::new(target, self.val, coeffs, self.prec))
    }
}

impl RationalSeries {
    pub fn from_rationals(val: i64, coeffs: Vec<Rational>, prec: i64) -> Self {
        Series::new(RationalField, val, coeffs, prec)
    }

    /// Coefficient-wise reduction; fails if a coefficient is not p-integral.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Series<ResidueField>> {
        self.map_ring(ResidueField::new(p), |c| c.residue(p))
    }

    /// Minimum valuation of the known coefficients at p.
    pub fn min_coefficient_valuation(&self, p: u64) -> Option<i64> {
        self.coeffs.iter().filter(|c| !c.is_zero()).filter_map(|c| c.valuation(p).finite()).min()
    }
}

fn superscript(k: i64) -> String {
    if k == 1 {
        return "z".into();
    }
    format!("z^{k}")
}

impl<R: CoefficientRing> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            let k = self.val + i as i64;
            let c = self.ring.render(c);
            let (sign, mag) = match c.strip_prefix('-') {
                Some(m) => ("-", m.to_string()),
                None => ("+", c),
            };
            if out.is_empty() {
                out.push_str(if sign == "-" { "-" } else { "" });
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&if k == 0 { mag } else { format!("{mag}·{}", superscript(k)) });
        }
        let tail = format!("O({})", superscript(self.prec));
        if out.is_empty() {
            write!(f, "{tail}")
        } else {
            write!(f, "{out} + {tail}")
        }
    }
}

impl<R: CoefficientRing> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(val: i64, c: &[i64], prec: i64) -> RationalSeries {
        RationalSeries::from_rationals(val, c.iter().map(|&n| Rational::from_int(n)).collect(), prec)
    }

    #[test]
    fn precision_rules() {
        let a = s(1, &[1, 1], 5); // z + z² + O(z^5)
        let b = s(0, &[1, 2], 3); // 1 + 2z + O(z^3)
        let c = a.mul(&b);
        assert_eq!(c.precision(), 4);
        assert_eq!(c.coeff(2).unwrap(), Rational::from_int(3));
        assert!(c.coeff(4).is_err());
        assert_eq!(a.add(&b).precision(), 3);
    }

    #[test]
    fn inverse_and_geometric_series() {
        let a = s(0, &[1, -1], 6);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, s(0, &[1, 1, 1, 1, 1, 1], 6));
        let w = s(3, &[1, 0, 2], 10);
        let x = w.inverse().unwrap();
        assert_eq!(x.valuation(), Some(-3));
        assert_eq!(x.precision(), 4);
        assert!(w.mul(&x).agrees_with(&RationalSeries::one(RationalField, 4)));
    }

    #[test]
    fn composition() {
        // exp-like truncated polynomial composed with 2z.
        let f = s(0, &[1, 1, 1, 1], 4);
        let g = s(1, &[2], 10);
        let h = f.compose(&g).unwrap();
        assert_eq!(h, s(0, &[1, 2, 4, 8], 4));
        // z/(1−z) ∘ z/(1+z) = z
        let a = s(1, &[1, 1, 1, 1, 1, 1, 1], 8);
        let b = s(1, &[1, -1, 1, -1, 1, -1, 1], 8);
        assert!(a.compose(&b).unwrap().agrees_with(&RationalSeries::variable(RationalField, 8)));
        assert_eq!(a.compose(&b).unwrap().precision(), 8);
    }

    #[test]
    fn display() {
        let a = s(1, &[1, 0, -3], 5);
        assert_eq!(a.to_string(), "1·z - 3·z^3 + O(z^5)");
    }
}
