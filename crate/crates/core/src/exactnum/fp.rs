use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    add_mod(a, p - b % p, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Reduce a signed integer into [0, p).
pub fn reduce_i64(n: i64, p: u64) -> u64 {
    n.rem_euclid(p as i64) as u64
}

/// Univariate polynomial over 𝔽_p, coefficients in [0, p), constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeFieldPolynomial {
    p: u64,
    coeffs: Vec<u64>,
}

impl PrimeFieldPolynomial {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = PrimeFieldPolynomial { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        poly.trim();
        poly
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| reduce_i64(c, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        PrimeFieldPolynomial { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.p, (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), self.p)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.p, (0..n).map(|i| sub_mod(self.coeff(i), o.coeff(i), self.p)).collect())
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        Self::new(self.p, out)
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let lead_inv = inv_mod(d.leading(), self.p).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((Self::zero(self.p), self.clone())),
        };
        let mut quo = vec![0u64; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = mul_mod(rem[k + dd], lead_inv, self.p);
            quo[k] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    rem[k + j] = sub_mod(rem[k + j], mul_mod(c, b, self.p), self.p);
                }
            }
        }
        rem.truncate(dd);
        Ok((Self::new(self.p, quo), Self::new(self.p, rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> Self {
        match inv_mod(self.leading(), self.p) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s·self + t·o = g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("r1 nonzero");
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        let inv = inv_mod(r0.leading(), p).unwrap_or(1);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p)).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// self^e mod m with a big exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        let mut acc = Self::one(self.p).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m)?;
            if e.bit(i) {
                acc = acc.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// All roots in 𝔽_p by exhaustive search.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor_squarefree(&self) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for (d, part) in self.distinct_degree()? {
            out.extend(part.equal_degree(d)?);
        }
        out.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
        Ok(out)
    }

    fn distinct_degree(&self) -> Result<Vec<(usize, Self)>> {
        let p = self.p;
        let mut rest = self.monic();
        let mut h = Self::x(p);
        let mut out = Vec::new();
        let mut d = 0;
        while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&BigUint::from(p), &rest)?;
            let g = h.sub(&Self::x(p)).gcd(&rest);
            if g.degree().unwrap_or(0) > 0 {
                rest = rest.divrem(&g)?.0;
                h = h.rem(&rest)?;
                out.push((d, g));
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            let dr = rest.degree().unwrap();
            out.push((dr, rest));
        }
        Ok(out)
    }

    fn equal_degree(&self, d: usize) -> Result<Vec<Self>> {
        let n = self.degree().unwrap_or(0);
        if n == d {
            return Ok(vec![self.monic()]);
        }
        let p = self.p;
        let exponent = if p == 2 {
            BigUint::zero()
        } else {
            (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32)
        };
        // Deterministic trial polynomials: enumerate coefficient vectors in base p.
        for seed in 1u64.. {
            let mut coeffs = Vec::new();
            let mut s = seed;
            while s > 0 {
                coeffs.push(s % p);
                s /= p;
            }
            let a = Self::new(p, coeffs);
            if a.degree().is_none_or(|k| k >= n) {
                continue;
            }
            let g = if p == 2 {
                // Trace map for characteristic two.
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self)?;
                    acc = acc.add(&t);
                }
                acc.gcd(self)
            } else {
                a.pow_mod(&exponent, self)?.sub(&Self::one(p)).gcd(self)
            };
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = self.divrem(&g)?.0;
                let mut out = g.equal_degree(d)?;
                out.extend(h.equal_degree(d)?);
                return Ok(out);
            }
            if seed > 1_000_000 {
                break;
            }
        }
        Err(Error::Internal("equal-degree splitting did not terminate".into()))
    }
}

impl fmt::Display for PrimeFieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

impl fmt::Debug for PrimeFieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
