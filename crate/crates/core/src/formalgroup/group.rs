//! The formal group of a Weierstrass model in the parameter z = −x/y.

use super::ring::{CoefficientRing, RationalField, ResidueField};
use super::series::{RationalSeries, Series};
use crate::error::{Error, Result};
use crate::weierstrass::WeierstrassModel;

/// Expansion data in the parameter z: w = −1/y as a power series, and the
/// formal inverse i(z).
#[derive(Clone, Debug)]
pub struct FormalGroup<R: CoefficientRing> {
    ring: R,
    a: [R::Elem; 5],
    w: Series<R>,
    inverse: Series<R>,
}

/// w, x, y and the invariant differential ω = ω(z)·dz of a model.
#[derive(Clone, Debug)]
pub struct FormalExpansion<R: CoefficientRing> {
    pub w: Series<R>,
    pub x: Series<R>,
    pub y: Series<R>,
    pub omega: Series<R>,
}

impl<R: CoefficientRing> FormalGroup<R> {
    /// `prec` is the working precision of w(z).
    pub fn new(ring: R, a: [R::Elem; 5], prec: i64) -> Result<Self> {
        if prec < 5 {
            return Err(Error::Precision(format!("formal expansion needs order at least 5, got {prec}")));
        }
        let [a1, a2, a3, a4, a6] = &a;
        let z = Series::variable(ring.clone(), prec);
        let z2 = z.mul(&z);
        let z3 = z2.mul(&z);
        // w = z³ + a1zw + a2z²w + a3w² + a4zw² + a6w³; each pass fixes one more coefficient.
        let mut w = z3.clone();
        for _ in 0..prec {
            let w2 = w.mul(&w);
            let next = z3
                .add(&z.mul(&w).scale(a1))
                .add(&z2.mul(&w).scale(a2))
                .add(&w2.scale(a3))
                .add(&z.mul(&w2).scale(a4))
                .add(&w2.mul(&w).scale(a6))
                .truncate(prec);
            if next == w {
                break;
            }
            w = next;
        }
        let one = Series::one(ring.clone(), prec);
        let inverse = z.mul(&one.sub(&z.scale(a1)).sub(&w.scale(a3)).inverse()?).neg();
        Ok(FormalGroup { ring, a, w, inverse })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn precision(&self) -> i64 {
        self.w.precision()
    }

    pub fn w(&self) -> &Series<R> {
        &self.w
    }

    /// i(z), the formal inverse.
    pub fn inverse_series(&self) -> &Series<R> {
        &self.inverse
    }

    pub fn expansion(&self) -> Result<FormalExpansion<R>> {
        let [a1, _, a3, _, _] = &self.a;
        let prec = self.precision();
        let z = Series::variable(self.ring.clone(), prec);
        let winv = self.w.inverse()?;
        let x = z.mul(&winv);
        let y = winv.neg();
        let denom = y
            .scale_int(2)
            .add(&x.scale(a1))
            .add(&Series::constant(self.ring.clone(), a3.clone(), prec));
        let omega = x.derivative().div(&denom)?;
        Ok(FormalExpansion { w: self.w.clone(), x, y, omega })
    }

    /// F(u, v) for power series u, v without constant term.
    pub fn add(&self, u: &Series<R>, v: &Series<R>) -> Result<Series<R>> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let ring = self.ring.clone();
        let vmin = positive_order(u)?.min(positive_order(v)?);
        let nw = self.precision();
        // Terms A_n·h_{n−1}(u, v) with n ≥ nw are unknown and have order ≥ (nw − 1)·vmin.
        let cap = u.precision().min(v.precision()).min((nw - 1) * vmin);
        let mut lambda = Series::zero(ring.clone(), cap);
        let mut h = Series::one(ring.clone(), cap);
        let mut vpow = Series::one(ring.clone(), cap);
        for n in 1..nw {
            if (n - 1) * vmin >= cap {
                break;
            }
            if n > 1 {
                vpow = vpow.mul(v);
                h = u.mul(&h).add(&vpow);
            }
            let an = self.w.coeff(n)?;
            if !ring.is_zero(&an) {
                lambda = lambda.add(&h.scale(&an));
            }
        }
        let lambda = lambda.truncate(cap);
        let nu = self.w.compose(u)?.sub(&lambda.mul(u));
        let l2 = lambda.mul(&lambda);
        let num = lambda
            .scale(a1)
            .add(&l2.scale(a3))
            .add(&nu.scale(a2))
            .add(&lambda.mul(&nu).scale(&ring.mul(&ring.from_int(2), a4)))
            .add(&l2.mul(&nu).scale(&ring.mul(&ring.from_int(3), a6)));
        let den = Series::one(ring.clone(), cap)
            .add(&lambda.scale(a2))
            .add(&l2.scale(a4))
            .add(&l2.mul(&lambda).scale(a6));
        let z3 = u.neg().sub(v).sub(&num.div(&den)?);
        self.inverse.compose(&z3)
    }

    pub fn negate(&self, u: &Series<R>) -> Result<Series<R>> {
        self.inverse.compose(u)
    }

    /// [k](u) by double-and-add.
    pub fn multiply(&self, k: i64, u: &Series<R>) -> Result<Series<R>> {
        if k == 0 {
            return Ok(Series::zero(self.ring.clone(), u.precision()));
        }
        if k < 0 {
            return self.negate(&self.multiply(-k, u)?);
        }
        let mut result: Option<Series<R>> = None;
        let mut base = u.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => self.add(&r, &base)?,
                });
            }
            e >>= 1;
            if e > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(result.expect("k > 0"))
    }

    /// [k](z).
    pub fn multiplication_series(&self, k: i64) -> Result<Series<R>> {
        let z = Series::variable(self.ring.clone(), self.precision());
        self.multiply(k, &z)
    }
}

fn positive_order<R: CoefficientRing>(u: &Series<R>) -> Result<i64> {
    let v = u.valuation().unwrap_or(u.precision());
    if v < 1 {
        return Err(Error::Precision("formal group arguments must have positive valuation".into()));
    }
    Ok(v)
}

impl FormalGroup<RationalField> {
    pub fn of_model(m: &WeierstrassModel, prec: i64) -> Result<Self> {
        let a = m.coefficients().map(|c| c.clone());
        FormalGroup::new(RationalField, a, prec)
    }
}

impl FormalGroup<ResidueField> {
    /// Formal group of the reduction of a p-integral model.
    pub fn of_reduction(m: &WeierstrassModel, p: u64, prec: i64) -> Result<Self> {
        let ring = ResidueField::new(p);
        let a = m.coefficients().map(|c| c.residue(p));
        let [a1, a2, a3, a4, a6] = a;
        FormalGroup::new(ring, [a1?, a2?, a3?, a4?, a6?], prec)
    }
}

/// w, x, y and ω of a model, known at least to order `n`.
pub fn formal_expansion(m: &WeierstrassModel, n: i64) -> Result<FormalExpansion<RationalField>> {
    if n < 5 {
        return Err(Error::Precision(format!("formal expansion needs order at least 5, got {n}")));
    }
    FormalGroup::of_model(m, n + 6)?.expansion()
}

/// [k](z) over ℚ, known to order `n`.
pub fn multiplication_series(m: &WeierstrassModel, k: i64, n: i64) -> Result<RationalSeries> {
    if n < 2 {
        return Err(Error::Precision(format!("multiplication series needs order at least 2, got {n}")));
    }
    let g = FormalGroup::of_model(m, n.max(5) + 2)?;
    let s = g.multiplication_series(k)?;
    if s.precision() < n {
        return Err(Error::Precision(format!("[{k}] known only to order {}", s.precision())));
    }
    Ok(s.truncate(n))
}
