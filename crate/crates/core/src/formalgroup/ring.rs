//! Coefficient rings for truncated series: ℚ and 𝔽_p.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::exactnum::fp::{add_mod, inv_mod, mul_mod, reduce_i64, sub_mod};
use crate::exactnum::Rational;

pub trait CoefficientRing: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RationalField;

impl CoefficientRing for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, n: i64) -> Rational {
        Rational::from_int(n)
    }
    fn from_rational(&self, q: &Rational) -> Result<Rational> {
        Ok(q.clone())
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Result<Rational> {
        a.inv()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }
}

/// 𝔽_p with elements stored as residues in [0, p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueField {
    pub p: u64,
}

impl ResidueField {
    pub fn new(p: u64) -> Self {
        ResidueField { p }
    }
}

impl CoefficientRing for ResidueField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        reduce_i64(n, self.p)
    }
    fn from_rational(&self, q: &Rational) -> Result<u64> {
        q.residue(self.p)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.p)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.p)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        sub_mod(0, *a, self.p)
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        inv_mod(*a, self.p).ok_or(Error::DivisionByZero)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}
