//! Vélu's formulas for odd prime degree, in Kohel's kernel-polynomial form.

use super::division::two_torsion_polynomial;
use super::kernel::{validate_kernel, KernelPolynomial};
use super::IsogenyData;
use super::YMap;
use crate::error::{Error, Result};
use crate::exactnum::{Rational, RationalFunction, RationalPolynomial};
use crate::weierstrass::WeierstrassModel;

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

/// The normalized isogeny with kernel `kernel`: φ*ω' = ω for the two models.
pub fn velu(m: &WeierstrassModel, kernel: &KernelPolynomial) -> Result<IsogenyData> {
    let p = kernel.degree();
    validate_kernel(m, kernel.polynomial(), p)?;
    let h = kernel.polynomial();
    let n = r(((p - 1) / 2) as i64);
    let [s1, s2, s3] = kernel.symmetric_sums();
    let (b2, b4, b6) = (m.b2(), m.b4(), m.b6());

    let pow2 = &s1 * &s1 - r(2) * &s2;
    let pow3 = &s1 * &s1 * &s1 - r(3) * &s1 * &s2 + r(3) * &s3;
    let t = r(6) * &pow2 + &b2 * &s1 + &n * &b4;
    let w = r(10) * &pow3 + r(2) * &b2 * &pow2 + r(3) * &b4 * &s1 + &n * &b6;
    let codomain = WeierstrassModel::new(
        m.a1.clone(),
        m.a2.clone(),
        m.a3.clone(),
        &m.a4 - r(5) * &t,
        &m.a6 - &b2 * &t - r(7) * &w,
    );
    if codomain.is_singular() {
        return Err(Error::Internal("Vélu codomain is singular".into()));
    }

    // X = N/h², N = (px − 2s1)h² − F(h''h − h'²) − (6x² + b2x + b4)h'h
    let (h1, h2) = (h.derivative(), h.derivative().derivative());
    let hh = h.mul(h);
    let lin = RationalPolynomial::new(vec![-(r(2) * &s1), r(p as i64)]);
    let ff = two_torsion_polynomial(m);
    let quad = RationalPolynomial::new(vec![b4.clone(), b2.clone(), r(6)]);
    let num = lin
        .mul(&hh)
        .sub(&ff.mul(&h2.mul(h).sub(&h1.mul(&h1))))
        .sub(&quad.mul(&h1.mul(h)));
    let x_map = RationalFunction::new(num.clone(), hh)?;

    // Y = X'·y + (X'(a1x + a3) − a1X − a3)/2, with X' = (N'h − 2Nh')/h³.
    let h3 = h.mul(h).mul(h);
    let dnum = num.derivative().mul(h).sub(&num.mul(&h1).scale(&r(2)));
    let a1x_a3 = RationalPolynomial::new(vec![m.a3.clone(), m.a1.clone()]);
    let half = Rational::new(1, 2)?;
    let constant = dnum
        .mul(&a1x_a3)
        .sub(&num.mul(h).scale(&m.a1))
        .sub(&h3.scale(&m.a3))
        .scale(&half);
    let y_map = YMap {
        y_coeff: RationalFunction::new(dnum, h3.clone())?,
        constant: RationalFunction::new(constant, h3)?,
    };
    let iso = IsogenyData { degree: p, domain: m.clone(), codomain, kernel: kernel.clone(), x_map, y_map };
    iso.check_maps()?;
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isogeny::kernel::find_kernels;

    #[test]
    fn conductor_27_three_isogenies() {
        let e = WeierstrassModel::from_ints([0, 0, 1, 0, 0]);
        let k = KernelPolynomial::new(RationalPolynomial::x()).unwrap();
        let iso = velu(&e, &k).unwrap();
        assert_eq!(iso.codomain, WeierstrassModel::from_ints([0, 0, 1, 0, -7]));
        assert_eq!(iso.x_map.num.degree(), Some(3));
        let k = KernelPolynomial::new(RationalPolynomial::from_ints(&[1, 1])).unwrap();
        let iso = velu(&e, &k).unwrap();
        assert_eq!(iso.codomain.j_invariant().unwrap(), Rational::from_int(-12288000));
    }

    #[test]
    fn eleven_a_five_isogenies() {
        // 11a1 → 11a2 and 11a1 → 11a3 up to isomorphism.
        let e = WeierstrassModel::from_ints([0, -1, 1, -10, -20]);
        let mut js: Vec<Rational> = find_kernels(&e, 5)
            .unwrap()
            .iter()
            .map(|k| velu(&e, k).unwrap().codomain.j_invariant().unwrap())
            .collect();
        js.sort_by(|a, b| a.as_big_rational().cmp(b.as_big_rational()));
        let j2 = "-52893159101157376/11".parse::<Rational>().unwrap();
        let j3 = "-4096/11".parse::<Rational>().unwrap();
        assert_eq!(js, vec![j2, j3]);
    }

    #[test]
    fn seven_isogeny_maps_check() {
        // 26b1 has a rational 7-isogeny.
        let e = WeierstrassModel::from_ints([1, -1, 1, -3, 3]);
        let ks = find_kernels(&e, 7).unwrap();
        assert_eq!(ks.len(), 1);
        let iso = velu(&e, &ks[0]).unwrap();
        assert_eq!(iso.x_map.num.degree(), Some(7));
        assert_eq!(iso.x_map.den.degree(), Some(6));
    }
}
