//! The formal homomorphism Φ(z) induced by an isogeny, the height of a formal
//! group mod p, and separability of reduced x-maps.

use std::fmt;

use serde::Serialize;

use super::bivariate::group_law;
use super::group::{formal_expansion, FormalGroup};
use super::ring::RationalField;
use super::series::RationalSeries;
use crate::error::{Error, Result};
use crate::exactnum::{Rational, RationalFunction, RationalPolynomial, Valuation};
use crate::isogeny::{DualIsogeny, IsogenyData};
use crate::localdata::{check_prime, minimal_model, tate_algorithm};
use crate::weierstrass::{Transformation, WeierstrassModel};

/// Truncation order used when none is given: p² + 4.
pub fn default_order(p: u64) -> i64 {
    (p * p + 4) as i64
}

/// Φ(z) = a1·z + a2·z² + … between the formal groups of two models.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalHomomorphism {
    pub series: RationalSeries,
    pub a1: Rational,
    pub domain: WeierstrassModel,
    pub codomain: WeierstrassModel,
}

impl FormalHomomorphism {
    fn from_series(series: RationalSeries, domain: WeierstrassModel, codomain: WeierstrassModel) -> Result<Self> {
        match series.valuation() {
            Some(v) if v >= 1 => {}
            Some(_) => return Err(Error::Internal("formal homomorphism with a constant or polar term".into())),
            None => return Err(Error::Precision("formal homomorphism vanishes to the working precision".into())),
        }
        let a1 = series.coeff(1)?;
        Ok(FormalHomomorphism { series, a1, domain, codomain })
    }

    pub fn precision(&self) -> i64 {
        self.series.precision()
    }

    pub fn a1_valuation(&self, p: u64) -> Valuation {
        self.a1.valuation(p)
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &FormalHomomorphism) -> Result<RationalSeries> {
        self.series.compose(&inner.series)
    }

    /// Φ(F(z1, z2)) − F'(Φ(z1), Φ(z2)) must vanish to total degree `order`.
    pub fn homomorphism_residual_vanishes(&self, order: usize) -> Result<bool> {
        if (self.precision() as usize) < order {
            return Err(Error::Precision(format!("Φ known only to order {}", self.precision())));
        }
        let f = group_law(&self.domain, order)?;
        let g = group_law(&self.codomain, order)?;
        let left = f.substitute_into(&self.series.truncate(order as i64))?;
        let phi1 = super::BivariateSeries::from_univariate(&self.series, true, order)?;
        let phi2 = phi1.transpose();
        let right = g.evaluate_bivariate(&phi1, &phi2);
        Ok(left == right)
    }
}

impl fmt::Display for FormalHomomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.series)
    }
}

fn eval_poly(poly: &RationalPolynomial, x: &RationalSeries) -> RationalSeries {
    // constants are exact; give them precision well beyond anything x can reach
    let exact = x.precision().abs() + 4 * (poly.coeffs().len() as i64 + 4);
    let c = |q: &Rational| RationalSeries::constant(RationalField, q.clone(), exact);
    let mut coeffs = poly.coeffs().iter().rev();
    let Some(lead) = coeffs.next() else {
        return RationalSeries::zero(RationalField, exact);
    };
    let mut acc = c(lead);
    for q in coeffs {
        acc = acc.mul(x).add(&c(q));
    }
    acc
}

fn eval_function(f: &RationalFunction, x: &RationalSeries) -> Result<RationalSeries> {
    eval_poly(&f.num, x).div(&eval_poly(&f.den, x))
}

/// Φ for the model `iso.domain.transform(dom_t)` mapping to `iso.codomain.transform(cod_t)`.
fn series_through(iso: &IsogenyData, dom_t: &Transformation, cod_t: &Transformation, n: i64) -> Result<FormalHomomorphism> {
    if n < 2 {
        return Err(Error::Precision(format!("isogeny series needs order at least 2, got {n}")));
    }
    let dom = iso.domain.transform(dom_t)?;
    let cod = iso.codomain.transform(cod_t)?;
    let ex = formal_expansion(&dom, n + 6)?;
    let c = |q: &Rational| RationalSeries::constant(RationalField, q.clone(), n + 16);
    let Transformation { u, r, s, t } = dom_t;
    let u2 = u * u;
    let x_e = ex.x.scale(&u2).add(&c(r));
    let y_e = ex.y.scale(&(&u2 * u)).add(&ex.x.scale(&(s * &u2))).add(&c(t));
    let big_x = eval_function(&iso.x_map, &x_e)?;
    let big_y = eval_function(&iso.y_map.y_coeff, &x_e)?.mul(&y_e).add(&eval_function(&iso.y_map.constant, &x_e)?);
    let Transformation { u: u1, r: r1, s: s1, t: t1 } = cod_t;
    let shifted = big_x.sub(&c(r1));
    let x_c = shifted.scale(&(u1 * u1).inv()?);
    let y_c = big_y.sub(&shifted.scale(s1)).sub(&c(t1)).scale(&(u1 * u1 * u1).inv()?);
    let phi = x_c.div(&y_c)?.neg();
    if phi.precision() < n {
        return Err(Error::Precision(format!("Φ known only to order {} < {n}", phi.precision())));
    }
    FormalHomomorphism::from_series(phi.truncate(n), dom, cod)
}

/// Φ on the Vélu models themselves; its leading coefficient is 1.
pub fn velu_series(iso: &IsogenyData, n: i64) -> Result<FormalHomomorphism> {
    series_through(iso, &Transformation::identity(), &Transformation::identity(), n)
}

/// Φ between minimal models at the isogeny degree.
pub fn isogeny_series(iso: &IsogenyData, n: i64) -> Result<FormalHomomorphism> {
    let p = iso.degree;
    let (_, dom_t) = minimal_model(&iso.domain, p)?;
    let (_, cod_t) = minimal_model(&iso.codomain, p)?;
    series_through(iso, &dom_t, &cod_t, n)
}

/// Φ between two chosen models isomorphic to the domain and codomain.
pub fn isogeny_series_between(
    iso: &IsogenyData,
    domain: &WeierstrassModel,
    codomain: &WeierstrassModel,
    n: i64,
) -> Result<FormalHomomorphism> {
    let dom_t = iso.domain.isomorphisms_to(domain)?.into_iter().next().ok_or(Error::NotIsomorphic)?;
    let cod_t = iso.codomain.isomorphisms_to(codomain)?.into_iter().next().ok_or(Error::NotIsomorphic)?;
    series_through(iso, &dom_t, &cod_t, n)
}

/// Φ̂ from the minimal model of the codomain back to the minimal model of the
/// domain, normalised so that Φ̂ ∘ Φ = [p] with Φ from `isogeny_series`.
pub fn dual_series(iso: &IsogenyData, dual: &DualIsogeny, n: i64) -> Result<FormalHomomorphism> {
    let p = iso.degree;
    let (_, sigma) = minimal_model(&iso.domain, p)?;
    let (_, tau) = minimal_model(&iso.codomain, p)?;
    if dual.isogeny.domain != iso.codomain {
        return Err(Error::Inconsistent("dual does not start on the codomain".into()));
    }
    series_through(&dual.isogeny, &tau, &dual.back.then(&sigma), n)
}

/// 1 if [p] mod p first has a nonzero term in degree p, 2 if in degree p².
pub fn formal_height(m: &WeierstrassModel, p: u64, n: i64) -> Result<u32> {
    check_prime(p)?;
    let pp = (p * p) as i64;
    if n < pp + 1 {
        return Err(Error::Precision(format!("height detection needs order at least {} at p = {p}, got {n}", pp + 1)));
    }
    let ld = tate_algorithm(m, p)?;
    if !ld.reduction.is_good() {
        return Err(Error::Inconsistent(format!("{m} does not have good reduction at {p}")));
    }
    // each group-law step costs at most one degree
    let steps = 2 * (64 - p.leading_zeros() as i64);
    let g = FormalGroup::of_reduction(&ld.minimal_model, p, n + steps)?;
    let mult = g.multiplication_series(p as i64)?;
    match mult.valuation() {
        Some(v) if v == p as i64 => Ok(1),
        Some(v) if v == pp => Ok(2),
        Some(v) => Err(Error::Internal(format!("[{p}] mod {p} starts in degree {v}"))),
        None => Err(Error::Precision(format!("[{p}] mod {p} vanishes to order {}", mult.precision()))),
    }
}

fn min_valuation(polys: &[&RationalPolynomial], p: u64) -> Option<i64> {
    polys.iter().flat_map(|f| f.coeffs()).filter_map(|c| c.valuation(p).finite()).min()
}

/// A rational map x ↦ N(x)/D(x) scaled to be p-primitive and reduced mod p is
/// separable iff N̄'D̄ − N̄D̄' ≠ 0.
pub fn rational_map_is_separable(f: &RationalFunction, p: u64) -> Result<bool> {
    let k = min_valuation(&[&f.num, &f.den], p).ok_or(Error::DivisionByZeroPolynomial)?;
    let scale = Rational::prime_power(p, -k);
    let num = f.num.scale(&scale).reduce_mod_p(p)?;
    let den = f.den.scale(&scale).reduce_mod_p(p)?;
    if den.is_zero() {
        return Err(Error::NonIntegral { value: f.to_string(), p });
    }
    let w = num.derivative().mul(&den).sub(&num.mul(&den.derivative()));
    Ok(!w.is_zero())
}

/// Separability of the reduction mod p of the x-map between minimal models.
pub fn separability_shadow(iso: &IsogenyData, p: u64) -> Result<bool> {
    check_prime(p)?;
    if !tate_algorithm(&iso.domain, p)?.reduction.is_good() {
        return Err(Error::Inconsistent(format!("{} does not have good reduction at {p}", iso.domain)));
    }
    let (_, t) = minimal_model(&iso.domain, p)?;
    let (_, t2) = minimal_model(&iso.codomain, p)?;
    let inner = RationalPolynomial::new(vec![t.r.clone(), &t.u * &t.u]);
    let n = iso.x_map.num.compose(&inner);
    let d = iso.x_map.den.compose(&inner);
    let map = RationalFunction {
        num: n.sub(&d.scale(&t2.r)),
        den: d.scale(&(&t2.u * &t2.u)),
    };
    rational_map_is_separable(&map, p)
}

/// Serializable summary of a formal homomorphism.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesSummary {
    pub a1: Rational,
    pub a1_valuation: Option<i64>,
    pub precision: i64,
    pub series: String,
}

impl FormalHomomorphism {
    pub fn summary(&self, p: u64) -> SeriesSummary {
        SeriesSummary {
            a1: self.a1.clone(),
            a1_valuation: self.a1_valuation(p).finite(),
            precision: self.precision(),
            series: self.series.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formalgroup::group::multiplication_series;
    use crate::isogeny::{alpha_exponent, dual_isogeny, multiplication_x_map, velu, KernelPolynomial};

    fn model(a: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::from_ints(a)
    }

    fn iso(a: [i64; 5], h: &[i64]) -> IsogenyData {
        velu(&model(a), &KernelPolynomial::new(RationalPolynomial::from_ints(h)).unwrap()).unwrap()
    }

    #[test]
    fn velu_models_give_unit_leading_coefficient() {
        let phi = velu_series(&iso([0, 0, 1, 0, 0], &[0, 1]), 12).unwrap();
        assert_eq!(phi.a1, Rational::one());
        let e = model([0, -1, 1, -10, -20]);
        for k in crate::isogeny::find_kernels(&e, 5).unwrap() {
            let phi = velu_series(&velu(&e, &k).unwrap(), 10).unwrap();
            assert_eq!(phi.a1, Rational::one());
        }
    }

    #[test]
    fn minimal_models_match_alpha_exponent() {
        for (a, h) in [([0, 0, 1, 0, 0], vec![0, 1]), ([0, 0, 0, -135, 270], vec![-15, 1])] {
            let i = iso(a, &h);
            let phi = isogeny_series(&i, 12).unwrap();
            assert_eq!(phi.a1_valuation(3).finite(), Some(alpha_exponent(&i).unwrap()));
        }
    }

    #[test]
    fn homomorphism_law_holds() {
        let phi = isogeny_series(&iso([0, 0, 0, -135, 270], &[-15, 1]), 10).unwrap();
        assert!(phi.homomorphism_residual_vanishes(7).unwrap());
    }

    #[test]
    fn dual_composes_to_multiplication() {
        let i = iso([0, 0, 1, 0, 0], &[0, 1]);
        let d = dual_isogeny(&i).unwrap();
        let n = 12;
        let phi = isogeny_series(&i, n).unwrap();
        let psi = dual_series(&i, &d, n).unwrap();
        let comp = psi.compose(&phi).unwrap();
        let (min, _) = minimal_model(&i.domain, 3).unwrap();
        let three = multiplication_series(&min, 3, n).unwrap();
        assert!(comp.agrees_with(&three));
        assert!(comp.precision() >= n - 1);
        let total = phi.a1_valuation(3).finite().unwrap() + psi.a1_valuation(3).finite().unwrap();
        assert_eq!(total, 1);
    }

    #[test]
    fn heights() {
        assert_eq!(formal_height(&model([0, 0, 0, 1, 0]), 3, 10).unwrap(), 2);
        // 11a1 is ordinary at 3 and 5, supersingular at 19 is out of reach here
        assert_eq!(formal_height(&model([0, -1, 1, -10, -20]), 3, 10).unwrap(), 1);
        assert_eq!(formal_height(&model([0, -1, 1, -10, -20]), 5, 26).unwrap(), 1);
        // y² = x³ + 1 is supersingular at 5
        assert_eq!(formal_height(&model([0, 0, 0, 0, 1]), 5, 26).unwrap(), 2);
        assert!(matches!(formal_height(&model([0, 0, 0, 1, 0]), 3, 9), Err(Error::Precision(_))));
        assert!(matches!(formal_height(&model([0, 0, 1, 0, 0]), 3, 10), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn separability_on_good_reduction() {
        // 11a1 → 11a3 and 11a1 → 11a2 at 5: one is étale on the formal group, one is not
        let a = [0, -1, 1, -10, -20];
        let kernels = crate::isogeny::find_kernels(&model(a), 5).unwrap();
        assert_eq!(kernels.len(), 2);
        for k in kernels {
            let i = velu(&model(a), &k).unwrap();
            let e = alpha_exponent(&i).unwrap();
            assert_eq!(separability_shadow(&i, 5).unwrap(), e == 0);
            let d = dual_isogeny(&i).unwrap();
            assert_ne!(separability_shadow(&d.isogeny, 5).unwrap(), separability_shadow(&i, 5).unwrap());
        }
    }

    #[test]
    fn multiplication_by_p_is_inseparable_mod_p() {
        let m = model([0, 0, 0, 1, 0]);
        assert!(!rational_map_is_separable(&multiplication_x_map(&m, 3), 3).unwrap());
        assert!(rational_map_is_separable(&multiplication_x_map(&m, 3), 5).unwrap());
    }

    #[test]
    fn too_short_is_an_error() {
        assert!(isogeny_series(&iso([0, 0, 1, 0, 0], &[0, 1]), 1).is_err());
    }
}
