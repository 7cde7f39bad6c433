//! Kernel polynomials of cyclic isogenies of odd prime degree.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::division::{division_polynomial, multiplication_x_map};
use crate::error::{Error, Result};
use crate::exactnum::fp::pow_mod;
use crate::exactnum::{factor_degree_d, Rational, RationalPolynomial};
use crate::localdata::check_prime;
use crate::weierstrass::{Transformation, WeierstrassModel};

/// Monic h of degree (p − 1)/2 whose roots are the x-coordinates of the
/// nonzero points of a cyclic subgroup of order p.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelPolynomial {
    h: RationalPolynomial,
}

impl KernelPolynomial {
    /// Shape check only: monic with positive degree. See [`validate_kernel`].
    pub fn new(h: RationalPolynomial) -> Result<Self> {
        match h.degree() {
            Some(d) if d >= 1 && h.is_monic() => Ok(KernelPolynomial { h }),
            _ => Err(Error::InvalidKernel(format!("{h} is not monic of positive degree"))),
        }
    }

    pub fn polynomial(&self) -> &RationalPolynomial {
        &self.h
    }

    /// The prime 2·deg h + 1.
    pub fn degree(&self) -> u64 {
        2 * self.h.degree().expect("nonzero") as u64 + 1
    }

    /// Elementary symmetric functions s1, s2, s3 of the roots.
    pub fn symmetric_sums(&self) -> [Rational; 3] {
        let n = self.h.degree().expect("nonzero");
        let c = |k: usize| if k <= n { self.h.coeff(n - k) } else { Rational::zero() };
        [-c(1), c(2), -c(3)]
    }

    /// Kernel of the same subgroup in the coordinates of `m.transform(t)`.
    pub fn transform(&self, t: &Transformation) -> KernelPolynomial {
        // x = u²x' + r
        let sub = RationalPolynomial::new(vec![t.r.clone(), &t.u * &t.u]);
        KernelPolynomial { h: self.h.compose(&sub).monic() }
    }
}

impl fmt::Display for KernelPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.h)
    }
}

impl fmt::Debug for KernelPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KernelPolynomial({})", self.h)
    }
}

impl Serialize for KernelPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.h.serialize(s)
    }
}

impl<'de> Deserialize<'de> for KernelPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let h = RationalPolynomial::deserialize(d)?;
        KernelPolynomial::new(h).map_err(serde::de::Error::custom)
    }
}

/// Smallest generator of (ℤ/p)^×.
pub(crate) fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            factors.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).unwrap_or(1)
}

/// Is the root set of h mapped to itself by x ↦ x([g]P) for a generator g of (ℤ/p)^×/±1?
fn is_stable(m: &WeierstrassModel, h: &RationalPolynomial, p: u64) -> Result<bool> {
    if p == 3 {
        return Ok(true);
    }
    let g = primitive_root(p);
    let xg = multiplication_x_map(m, g);
    let n = xg.num.rem(h)?;
    let d = xg.den.rem(h)?;
    let deg = h.degree().expect("nonzero");
    // Σ h_i n^i d^(deg − i) mod h
    let mut acc = RationalPolynomial::constant(h.coeff(deg));
    let mut dpow = RationalPolynomial::one();
    let mut dpows = Vec::with_capacity(deg + 1);
    for _ in 0..=deg {
        dpows.push(dpow.clone());
        dpow = dpow.mul(&d).rem(h)?;
    }
    for i in (0..deg).rev() {
        acc = acc.mul(&n).add(&dpows[deg - i].scale(&h.coeff(i))).rem(h)?;
    }
    Ok(acc.is_zero())
}

/// Checks that `h` cuts out a rational cyclic subgroup of order p on `m`.
pub fn validate_kernel(m: &WeierstrassModel, h: &RationalPolynomial, p: u64) -> Result<KernelPolynomial> {
    check_prime(p)?;
    let k = KernelPolynomial::new(h.clone())?;
    if k.degree() != p {
        return Err(Error::InvalidKernel(format!("{h} has degree {} but a {p}-isogeny needs {}", h.degree().unwrap_or(0), (p - 1) / 2)));
    }
    let psi = division_polynomial(m, p)?;
    if !h.divides(&psi) {
        return Err(Error::InvalidKernel(format!("{h} does not divide the {p}-division polynomial")));
    }
    if h.gcd(&h.derivative()).degree() != Some(0) {
        return Err(Error::InvalidKernel(format!("{h} is not square-free")));
    }
    if !is_stable(m, h, p)? {
        return Err(Error::InvalidKernel(format!("roots of {h} do not form a subgroup")));
    }
    Ok(k)
}

/// All kernel polynomials of rational p-isogenies from `m`, sorted.
pub fn find_kernels(m: &WeierstrassModel, p: u64) -> Result<Vec<KernelPolynomial>> {
    check_prime(p)?;
    let psi = division_polynomial(m, p)?;
    let mut out = Vec::new();
    for h in factor_degree_d(&psi, ((p - 1) / 2) as usize)? {
        match validate_kernel(m, &h, p) {
            Ok(k) => out.push(k),
            Err(Error::InvalidKernel(_)) => {}
            Err(e) => return Err(e),
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(a: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::from_ints(a)
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(13), 2);
        assert_eq!(primitive_root(41), 6);
    }

    #[test]
    fn kernels_at_three() {
        let e = model([0, 0, 1, 0, 0]);
        let ks = find_kernels(&e, 3).unwrap();
        let hs: Vec<_> = ks.iter().map(|k| k.polynomial().clone()).collect();
        assert!(hs.contains(&RationalPolynomial::x()));
        let psi = division_polynomial(&e, 3).unwrap();
        assert!(hs.iter().all(|h| h.divides(&psi)));
    }

    #[test]
    fn five_isogeny_of_11a1() {
        // 11a1 has two rational 5-isogenies.
        let e = model([0, -1, 1, -10, -20]);
        assert_eq!(find_kernels(&e, 5).unwrap().len(), 2);
        // 11a3 has one; its kernel is generated by (0, 0), with multiple (1, 0).
        let e3 = model([0, -1, 1, 0, 0]);
        let ks = find_kernels(&e3, 5).unwrap();
        assert_eq!(ks.len(), 1);
        assert_eq!(ks[0].polynomial(), &RationalPolynomial::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn no_kernels() {
        // y² = x³ + x + 1 has no rational 3-, 5- or 7-isogeny.
        let e = model([0, 0, 0, 1, 1]);
        for p in [3, 5, 7] {
            assert!(find_kernels(&e, p).unwrap().is_empty());
        }
    }

    #[test]
    fn rejects_bad_kernels() {
        let e = model([0, -1, 1, 0, 0]);
        // x − 1 divides ψ_5 but has the wrong degree.
        assert!(matches!(validate_kernel(&e, &RationalPolynomial::from_ints(&[-1, 1]), 5), Err(Error::InvalidKernel(_))));
        // Right degree, but not a factor.
        assert!(matches!(validate_kernel(&e, &RationalPolynomial::from_ints(&[1, 0, 1]), 5), Err(Error::InvalidKernel(_))));
    }

    #[test]
    fn transformed_kernel_still_valid() {
        let e = model([0, -1, 1, 0, 0]);
        let k = &find_kernels(&e, 5).unwrap()[0];
        let t = Transformation::new(Rational::from_int(2), Rational::from_int(3), Rational::from_int(-1), Rational::from_int(1)).unwrap();
        let f = e.transform(&t).unwrap();
        let k2 = k.transform(&t);
        assert!(validate_kernel(&f, k2.polynomial(), 5).is_ok());
    }
}
