use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::fp::PrimeFieldPolynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial over ℚ, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut poly = RationalPolynomial { coeffs };
        poly.trim();
        poly
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// x - c
    pub fn linear_root(c: &Rational) -> Self {
        Self::new(vec![-c, Rational::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((Self::zero(), self.clone())),
        };
        let lead_inv = d.leading().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    let t = &c * b;
                    rem[k + j] -= &t;
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quo), Self::new(rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; fails when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, a: &Self) -> bool {
        !self.is_zero() && a.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic greatest common divisor; zero iff both inputs are zero.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_int(i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(g).add(&Self::constant(c.clone())))
    }

    /// Coefficient-wise reduction into 𝔽_p; fails on a negative valuation.
    pub fn reduce_mod_p(&self, p: u64) -> Result<PrimeFieldPolynomial> {
        let coeffs = self.coeffs.iter().map(|c| c.residue(p)).collect::<Result<Vec<_>>>()?;
        Ok(PrimeFieldPolynomial::new(p, coeffs))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients of the primitive integer multiple with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.denominator_lcm();
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    fn primitive_rational(&self) -> Self {
        Self::new(self.primitive_integer().into_iter().map(Rational::from_bigint).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_bigint).collect())
    }

    /// Power sums are easier to read off monic polynomials: returns e_1 = -(c_{n-1}).
    pub fn root_sum(&self) -> Rational {
        match self.degree() {
            Some(n) if n >= 1 => -(self.coeff(n - 1) / self.leading()),
            _ => Rational::zero(),
        }
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a comma-separated coefficient list, constant term first: "c0,c1,...".
impl FromStr for RationalPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.trim().is_empty() {
            return Ok(Self::zero());
        }
        let coeffs = s
            .split(',')
            .map(|t| t.trim().trim_matches('"').parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

/// Serialized as a coefficient list, constant term first, of rational strings.
impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Self::new(Vec::<Rational>::deserialize(d)?))
    }
}

/// Quotient of two rational polynomials, denominator nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    pub num: RationalPolynomial,
    pub den: RationalPolynomial,
}

impl RationalFunction {
    pub fn new(num: RationalPolynomial, den: RationalPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn polynomial(p: RationalPolynomial) -> Self {
        RationalFunction { num: p, den: RationalPolynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::polynomial(RationalPolynomial::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RationalFunction { num: self.num.add(&o.num), den: self.den.clone() };
        }
        RationalFunction { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn derivative(&self) -> Self {
        RationalFunction {
            num: self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative())),
            den: self.den.mul(&self.den),
        }
    }

    /// Substitute a polynomial for the variable.
    pub fn compose_poly(&self, g: &RationalPolynomial) -> Self {
        RationalFunction { num: self.num.compose(g), den: self.den.compose(g) }
    }

    /// Cancel the common factor and make the denominator monic.
    pub fn reduced(&self) -> Self {
        let g = self.num.gcd(&self.den);
        let num = self.num.exact_div(&g).expect("gcd divides");
        let den = self.den.exact_div(&g).expect("gcd divides");
        let lc = den.leading().inv().expect("nonzero");
        RationalFunction { num: num.scale(&lc), den: den.scale(&lc) }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(poly(&[-1, 0, 1]).gcd(&poly(&[-1, 1])), poly(&[-1, 1]));
        let (q, r) = poly(&[0, 0, 0, 1]).divrem(&poly(&[-1, 1])).unwrap();
        assert_eq!(q, poly(&[1, 1, 1]));
        assert_eq!(r, poly(&[1]));
        assert_eq!(poly(&[1, 1]).mul(&poly(&[-1, 1])), poly(&[-1, 0, 1]));
        assert_eq!(poly(&[1, 1]).divrem(&RationalPolynomial::zero()), Err(Error::DivisionByZeroPolynomial));
    }

    #[test]
    fn gcd_is_monic() {
        let a = poly(&[-2, 0, 2]);
        let b = poly(&[3, 3]);
        assert_eq!(a.gcd(&b), poly(&[1, 1]));
        assert_eq!(poly(&[4]).gcd(&poly(&[6])), poly(&[1]));
    }

    #[test]
    fn reduction_examples() {
        let a = poly(&[10, 7, 3]);
        assert_eq!(a.reduce_mod_p(5).unwrap(), PrimeFieldPolynomial::new(5, vec![0, 2, 3]));
        let b = RationalPolynomial::new(vec![Rational::zero(), "1/5".parse().unwrap()]);
        assert!(matches!(b.reduce_mod_p(5), Err(Error::NonIntegral { .. })));
        assert!(poly(&[5, 5]).reduce_mod_p(5).unwrap().is_zero());
    }

    #[test]
    fn parse_display() {
        let p: RationalPolynomial = "1, -3/2, 0, 1".parse().unwrap();
        assert_eq!(p.to_string(), "x^3 - 3/2*x + 1");
        assert_eq!(p.degree(), Some(3));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["1","-3/2","0","1"]"#);
        let back: RationalPolynomial = serde_json::from_str(r#"["1","-3/2","0","1"]"#).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn compose_and_derivative() {
        let p = poly(&[1, 0, 1]);
        assert_eq!(p.compose(&poly(&[1, 1])), poly(&[2, 2, 1]));
        assert_eq!(p.derivative(), poly(&[0, 2]));
        let f = RationalFunction::new(poly(&[1]), poly(&[0, 1])).unwrap();
        let d = f.derivative().reduced();
        assert_eq!(d.num, poly(&[-1]));
        assert_eq!(d.den, poly(&[0, 0, 1]));
    }
}
