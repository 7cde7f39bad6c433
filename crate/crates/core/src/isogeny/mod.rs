//! Cyclic isogenies of odd prime degree: division polynomials, kernel
//! discovery, Vélu's formulas, duals, and the valuation of φ*ω'/ω on minimal
//! differentials.

pub mod division;
pub mod kernel;
pub mod velu;

use num_bigint::BigInt;
use serde::Serialize;

pub use division::{division_polynomial, multiplication_x_map, reduced_division_polynomials};
pub use kernel::{find_kernels, validate_kernel, KernelPolynomial};
pub use velu::velu;

use crate::error::{Error, Result};
use crate::exactnum::{LocalFieldContext, Rational, RationalFunction, RationalPolynomial};
use crate::localdata::minimal_model;
use crate::weierstrass::{differential_scale, Transformation, WeierstrassModel};
use division::homogenize;

/// y-coordinate of the image: Y = y_coeff(x)·y + constant(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YMap {
    pub y_coeff: RationalFunction,
    pub constant: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyData {
    pub degree: u64,
    pub domain: WeierstrassModel,
    pub codomain: WeierstrassModel,
    pub kernel: KernelPolynomial,
    pub x_map: RationalFunction,
    pub y_map: YMap,
}

impl IsogenyData {
    /// Substitutes the maps into the codomain equation and reduces with the
    /// domain equation; both the y-part and the constant part must vanish.
    pub fn check_maps(&self) -> Result<()> {
        let h = self.kernel.polynomial();
        let (h2, h3) = (h.mul(h), h.mul(h).mul(h));
        if self.x_map.den == h2 && self.y_map.y_coeff.den == h3 && self.y_map.constant.den == h3 {
            return self.check_maps_cleared(h);
        }
        self.check_maps_generic()
    }

    /// Same identity multiplied through by h⁶, for maps with denominators h² and h³.
    fn check_maps_cleared(&self, h: &RationalPolynomial) -> Result<()> {
        let (e, f) = (&self.domain, &self.codomain);
        let (n, p, q) = (&self.x_map.num, &self.y_map.y_coeff.num, &self.y_map.constant.num);
        let hp = |k: u32| h.pow(k);
        let lin = RationalPolynomial::new(vec![e.a3.clone(), e.a1.clone()]);
        let g = RationalPolynomial::new(vec![e.a6.clone(), e.a4.clone(), e.a2.clone(), Rational::one()]);
        let nh = n.mul(h);
        let y_part = p
            .mul(p)
            .mul(&lin)
            .neg()
            .add(&p.mul(q).scale(&Rational::from_int(2)))
            .add(&nh.mul(p).scale(&f.a1))
            .add(&p.mul(&hp(3)).scale(&f.a3));
        let const_part = p
            .mul(p)
            .mul(&g)
            .add(&q.mul(q))
            .add(&nh.mul(q).scale(&f.a1))
            .add(&q.mul(&hp(3)).scale(&f.a3))
            .sub(&n.pow(3))
            .sub(&n.mul(n).mul(&hp(2)).scale(&f.a2))
            .sub(&n.mul(&hp(4)).scale(&f.a4))
            .sub(&hp(6).scale(&f.a6));
        if !y_part.is_zero() || !const_part.is_zero() {
            return Err(Error::Internal("isogeny maps do not land on the codomain".into()));
        }
        Ok(())
    }

    fn check_maps_generic(&self) -> Result<()> {
        let (e, f) = (&self.domain, &self.codomain);
        let c = |q: &Rational| RationalFunction::constant(q.clone());
        let xx = &self.x_map;
        let (a, b) = (&self.y_map.y_coeff, &self.y_map.constant);
        let lin = RationalFunction::polynomial(RationalPolynomial::new(vec![e.a3.clone(), e.a1.clone()]));
        let g = RationalFunction::polynomial(RationalPolynomial::new(vec![
            e.a6.clone(),
            e.a4.clone(),
            e.a2.clone(),
            Rational::one(),
        ]));
        // Y² + a1'XY + a3'Y with y² replaced by −(a1x + a3)y + g(x).
        let a2 = a.mul(a);
        let y_part = a2
            .mul(&lin)
            .neg()
            .add(&a.mul(b).scale(&Rational::from_int(2)))
            .add(&c(&f.a1).mul(xx).mul(a))
            .add(&c(&f.a3).mul(a));
        let rhs = xx.mul(xx).mul(xx).add(&c(&f.a2).mul(xx).mul(xx)).add(&c(&f.a4).mul(xx)).add(&c(&f.a6));
        let const_part = a2.mul(&g).add(&b.mul(b)).add(&c(&f.a1).mul(xx).mul(b)).add(&c(&f.a3).mul(b)).sub(&rhs);
        if !y_part.is_zero() || !const_part.is_zero() {
            return Err(Error::Internal("isogeny maps do not land on the codomain".into()));
        }
        Ok(())
    }

    /// x-coordinate of ψ∘φ as a rational function, for ψ with domain = self.codomain.
    pub fn compose_x(&self, next: &IsogenyData) -> RationalFunction {
        let (n1, d1) = (&self.x_map.num, &self.x_map.den);
        let total = next.x_map.num.degree().unwrap_or(0).max(next.x_map.den.degree().unwrap_or(0));
        let num = homogenize(&next.x_map.num, n1, d1, total);
        let den = homogenize(&next.x_map.den, n1, d1, total);
        RationalFunction { num, den }
    }
}

/// val_K(φ*ω'_min/ω_min) together with the residue degree; α = p^(f·exponent).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaInvariant {
    pub p: u64,
    pub exponent: i64,
    pub f: u32,
}

impl AlphaInvariant {
    pub fn log_p(&self) -> i64 {
        self.exponent * self.f as i64
    }

    /// p^(f·exponent) as an exact rational.
    pub fn value(&self) -> Rational {
        Rational::prime_power(self.p, self.log_p())
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    pub fn magnitude(&self) -> Option<BigInt> {
        (self.exponent >= 0).then(|| num_traits::pow(BigInt::from(self.p), self.log_p() as usize))
    }
}

/// φ*ω'_to/ω_to for the given target models of domain and codomain.
pub fn alpha_exponent_relative(
    iso: &IsogenyData,
    domain_target: &WeierstrassModel,
    codomain_target: &WeierstrassModel,
    p: u64,
) -> Result<i64> {
    let u = differential_scale(&iso.domain, domain_target, p)?;
    let u_prime = differential_scale(&iso.codomain, codomain_target, p)?;
    Ok(u_prime - u)
}

/// Exponent of α computed by scaling both Vélu models to minimal models.
pub fn alpha_exponent(iso: &IsogenyData) -> Result<i64> {
    let p = iso.degree;
    let (_, t) = minimal_model(&iso.domain, p)?;
    let (_, t_prime) = minimal_model(&iso.codomain, p)?;
    Ok(t_prime.scale_valuation(p) - t.scale_valuation(p))
}

pub fn alpha(iso: &IsogenyData, ctx: &LocalFieldContext) -> Result<AlphaInvariant> {
    if ctx.p() != iso.degree {
        return Err(Error::Inconsistent(format!("context prime {} differs from isogeny degree {}", ctx.p(), iso.degree)));
    }
    let exponent = alpha_exponent(iso)?;
    if !(0..=ctx.val_p()).contains(&exponent) {
        return Err(Error::Internal(format!("alpha exponent {exponent} outside [0, 1] over an unramified field")));
    }
    Ok(AlphaInvariant { p: ctx.p(), exponent, f: ctx.f() })
}

/// The dual as a Vélu isogeny E' → E'' followed by the isomorphism
/// `back: E'' → E`, whose scale is exactly p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualIsogeny {
    pub isogeny: IsogenyData,
    pub back: Transformation,
}

impl DualIsogeny {
    /// x-coordinate of back∘ψ∘φ, which must equal x∘[p].
    pub fn composite_x(&self, phi: &IsogenyData) -> RationalFunction {
        let c = phi.compose_x(&self.isogeny);
        let u2 = &self.back.u * &self.back.u;
        RationalFunction {
            num: c.num.sub(&c.den.scale(&self.back.r)),
            den: c.den.scale(&u2),
        }
    }
}

/// Searches the kernels of the codomain for the one whose quotient returns to
/// the domain with ψ∘φ = [p].
pub fn dual_isogeny(iso: &IsogenyData) -> Result<DualIsogeny> {
    let p = iso.degree;
    let pr = Rational::from_int(p as i64);
    let j = iso.domain.j_invariant()?;
    let mult = multiplication_x_map(&iso.domain, p);
    for k in find_kernels(&iso.codomain, p)? {
        let psi = velu(&iso.codomain, &k)?;
        if psi.codomain.j_invariant()? != j {
            continue;
        }
        for back in psi.codomain.isomorphisms_to(&iso.domain)? {
            if back.u != pr {
                continue;
            }
            let dual = DualIsogeny { isogeny: psi.clone(), back };
            let c = dual.composite_x(iso);
            if c.num.mul(&mult.den) == mult.num.mul(&c.den) {
                return Ok(dual);
            }
        }
    }
    Err(Error::NoDual(format!("no kernel on {} composes to [{p}]", iso.codomain)))
}
