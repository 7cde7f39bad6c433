//! The formal group law F(z1, z2) as a bivariate series truncated by total degree.

use std::fmt;

use super::group::FormalGroup;
use super::ring::{CoefficientRing, RationalField};
use super::series::Series;
use crate::error::{Error, Result};
use crate::weierstrass::WeierstrassModel;

/// Σ c[i][j]·z1^i·z2^j over i + j < order; higher total degrees are unknown.
#[derive(Clone, PartialEq, Debug)]
pub struct BivariateSeries<R: CoefficientRing> {
    ring: R,
    order: usize,
    c: Vec<Vec<R::Elem>>,
}

impl<R: CoefficientRing> BivariateSeries<R> {
    pub fn zero(ring: R, order: usize) -> Self {
        let c = (0..order).map(|i| vec![ring.zero(); order - i]).collect();
        BivariateSeries { ring, order, c }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> Result<R::Elem> {
        if i + j >= self.order {
            return Err(Error::Precision(format!("z1^{i} z2^{j} is beyond total degree {}", self.order)));
        }
        Ok(self.c[i][j].clone())
    }

    fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        if i + j < self.order {
            self.c[i][j] = v;
        }
    }

    pub fn constant(ring: R, v: R::Elem, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.set(0, 0, v);
        s
    }

    /// A univariate series placed in z1 (`first`) or z2.
    pub fn from_univariate(s: &Series<R>, first: bool, order: usize) -> Result<Self> {
        if s.precision() < order as i64 {
            return Err(Error::Precision("univariate series too short for the requested order".into()));
        }
        let mut out = Self::zero(s.ring().clone(), order);
        for k in 0..order {
            let c = s.coeff(k as i64)?;
            if first {
                out.set(k, 0, c);
            } else {
                out.set(0, k, c);
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.order.min(o.order));
        for i in 0..out.order {
            for j in 0..out.order - i {
                out.c[i][j] = self.ring.add(&self.c[i][j], &o.c[i][j]);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for row in out.c.iter_mut() {
            for v in row.iter_mut() {
                *v = self.ring.neg(v);
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        let mut out = self.clone();
        for row in out.c.iter_mut() {
            for v in row.iter_mut() {
                *v = self.ring.mul(v, k);
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut out = Self::zero(self.ring.clone(), order);
        for i1 in 0..order {
            for j1 in 0..order - i1 {
                let a = &self.c[i1][j1];
                if self.ring.is_zero(a) {
                    continue;
                }
                for i2 in 0..order - i1 - j1 {
                    for j2 in 0..order - i1 - j1 - i2 {
                        let t = self.ring.mul(a, &o.c[i2][j2]);
                        out.c[i1 + i2][j1 + j2] = self.ring.add(&out.c[i1 + i2][j1 + j2], &t);
                    }
                }
            }
        }
        out
    }

    /// f(self) for a univariate f; self must have zero constant term.
    pub fn substitute_into(&self, f: &Series<R>) -> Result<Self> {
        if !self.ring.is_zero(&self.c[0][0]) {
            return Err(Error::Precision("substituting a bivariate series with constant term".into()));
        }
        if f.precision() < self.order as i64 {
            return Err(Error::Precision("outer series too short for the requested order".into()));
        }
        let mut acc = Self::zero(self.ring.clone(), self.order);
        let mut pw = Self::constant(self.ring.clone(), self.ring.one(), self.order);
        for n in 0..self.order {
            acc = acc.add(&pw.scale(&f.coeff(n as i64)?));
            pw = pw.mul(self);
        }
        Ok(acc)
    }

    /// Substitute univariate series for z1 and z2.
    pub fn evaluate(&self, u: &Series<R>, v: &Series<R>) -> Series<R> {
        let prec = self.order as i64;
        let ring = self.ring.clone();
        let mut acc = Series::zero(ring.clone(), prec);
        let mut up = Series::one(ring.clone(), prec);
        for i in 0..self.order {
            let mut vp = Series::one(ring.clone(), prec);
            for j in 0..self.order - i {
                if !ring.is_zero(&self.c[i][j]) {
                    acc = acc.add(&up.mul(&vp).scale(&self.c[i][j]));
                }
                vp = vp.mul(v);
            }
            up = up.mul(u);
        }
        acc
    }

    /// Substitute bivariate series without constant term for z1 and z2.
    pub fn evaluate_bivariate(&self, u: &Self, v: &Self) -> Self {
        let order = self.order.min(u.order).min(v.order);
        let mut acc = Self::zero(self.ring.clone(), order);
        let one = Self::constant(self.ring.clone(), self.ring.one(), order);
        let mut up = one.clone();
        for i in 0..order {
            let mut vp = one.clone();
            for j in 0..order - i {
                if !self.ring.is_zero(&self.c[i][j]) {
                    acc = acc.add(&up.mul(&vp).scale(&self.c[i][j]));
                }
                vp = vp.mul(v);
            }
            up = up.mul(u);
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.order);
        for i in 0..self.order {
            for j in 0..self.order - i {
                out.c[j][i] = self.c[i][j].clone();
            }
        }
        out
    }
}

impl<R: CoefficientRing> fmt::Display for BivariateSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for d in 0..self.order {
            for i in (0..=d).rev() {
                let c = &self.c[i][d - i];
                if self.ring.is_zero(c) {
                    continue;
                }
                let mono = match (i, d - i) {
                    (0, 0) => String::new(),
                    (i, 0) => format!("·z1^{i}"),
                    (0, j) => format!("·z2^{j}"),
                    (i, j) => format!("·z1^{i}·z2^{j}"),
                };
                parts.push(format!("{}{mono}", self.ring.render(c)));
            }
        }
        parts.push(format!("O(deg {})", self.order));
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: CoefficientRing> FormalGroup<R> {
    /// F(z1, z2) to total degree `order`.
    pub fn law(&self, order: usize, a: &[R::Elem; 5]) -> Result<BivariateSeries<R>> {
        if (self.precision() as usize) < order + 1 {
            return Err(Error::Precision("formal group built with too little precision for this order".into()));
        }
        let ring = self.ring().clone();
        let [a1, a2, a3, a4, a6] = a;
        let w = self.w();
        let z1 = {
            let mut s = BivariateSeries::zero(ring.clone(), order);
            s.set(1, 0, ring.one());
            s
        };
        // λ = Σ A_n Σ_{i+j=n−1} z1^i z2^j
        let mut lambda = BivariateSeries::zero(ring.clone(), order);
        for n in 1..=order {
            let an = w.coeff(n as i64)?;
            if ring.is_zero(&an) {
                continue;
            }
            for i in 0..n {
                let j = n - 1 - i;
                if i + j < order {
                    lambda.c[i][j] = ring.add(&lambda.c[i][j], &an);
                }
            }
        }
        let w1 = BivariateSeries::from_univariate(w, true, order)?;
        let nu = w1.sub(&lambda.mul(&z1));
        let l2 = lambda.mul(&lambda);
        let two_a4 = ring.mul(&ring.from_int(2), a4);
        let three_a6 = ring.mul(&ring.from_int(3), a6);
        let num = lambda
            .scale(a1)
            .add(&l2.scale(a3))
            .add(&nu.scale(a2))
            .add(&lambda.mul(&nu).scale(&two_a4))
            .add(&l2.mul(&nu).scale(&three_a6));
        // 1/(1 + d) = Σ (−d)^k
        let d = lambda.scale(a2).add(&l2.scale(a4)).add(&l2.mul(&lambda).scale(a6));
        let geometric = Series::new(
            ring.clone(),
            0,
            (0..order).map(|k| if k % 2 == 0 { ring.one() } else { ring.neg(&ring.one()) }).collect(),
            order as i64,
        );
        let inv_den = d.substitute_into(&geometric)?;
        let z2 = z1.transpose();
        let z3 = z1.neg().sub(&z2).sub(&num.mul(&inv_den));
        z3.substitute_into(self.inverse_series())
    }
}

/// F(z1, z2) of a model over ℚ, to total degree `order`.
pub fn group_law(m: &WeierstrassModel, order: usize) -> Result<BivariateSeries<RationalField>> {
    if order < 3 {
        return Err(Error::Precision(format!("group law needs order at least 3, got {order}")));
    }
    let g = FormalGroup::of_model(m, order as i64 + 2)?;
    let a = m.coefficients().map(|c| c.clone());
    g.law(order, &a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::formalgroup::series::RationalSeries;

    #[test]
    fn law_axioms() {
        let e = WeierstrassModel::from_ints([1, -1, 1, -10, -20]);
        let f = group_law(&e, 8).unwrap();
        assert_eq!(f.coeff(1, 0).unwrap(), Rational::one());
        assert_eq!(f.coeff(0, 1).unwrap(), Rational::one());
        assert_eq!(f.coeff(1, 1).unwrap(), -e.a1.clone());
        assert_eq!(f, f.transpose());
        for i in 2..8 {
            assert!(f.coeff(i, 0).unwrap().is_zero());
        }
        assert!(f.coeff(8, 0).is_err());
    }

    #[test]
    fn law_matches_univariate_addition() {
        let e = WeierstrassModel::from_ints([0, 1, 1, -2, 3]);
        let f = group_law(&e, 10).unwrap();
        let g = FormalGroup::of_model(&e, 14).unwrap();
        let u = RationalSeries::from_rationals(1, vec![Rational::one(), Rational::from_int(2)], 14);
        let v = RationalSeries::from_rationals(1, vec![Rational::from_int(-3)], 14);
        let direct = g.add(&u, &v).unwrap();
        assert!(f.evaluate(&u, &v).agrees_with(&direct));
    }

    #[test]
    fn associativity_residual_vanishes() {
        let e = WeierstrassModel::from_ints([1, 2, 3, 4, 5]);
        let f = group_law(&e, 7).unwrap();
        let g = FormalGroup::of_model(&e, 12).unwrap();
        let t = |c: &[i64]| RationalSeries::from_rationals(1, c.iter().map(|&n| Rational::from_int(n)).collect(), 12);
        let (a, b, c) = (t(&[1]), t(&[2, 1]), t(&[-1, 0, 4]));
        let left = f.evaluate(&f.evaluate(&a, &b), &c);
        let right = f.evaluate(&a, &f.evaluate(&b, &c));
        assert!(left.agrees_with(&right));
        assert!(left.agrees_with(&g.add(&g.add(&a, &b).unwrap(), &c).unwrap()));
    }
}
