//! Division polynomials in the reduced form f_n = ψ_n for odd n and
//! f_n = ψ_n / ψ_2 for even n, which lives in ℚ[x].

use crate::error::{Error, Result};
use crate::exactnum::{Rational, RationalFunction, RationalPolynomial};
use crate::weierstrass::WeierstrassModel;

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

/// ψ_2² = 4x³ + b2x² + 2b4x + b6.
pub fn two_torsion_polynomial(m: &WeierstrassModel) -> RationalPolynomial {
    RationalPolynomial::new(vec![m.b6(), r(2) * m.b4(), m.b2(), r(4)])
}

/// f_0, …, f_n.
pub fn reduced_division_polynomials(m: &WeierstrassModel, n: usize) -> Vec<RationalPolynomial> {
    let (b2, b4, b6, b8) = (m.b2(), m.b4(), m.b6(), m.b8());
    let mut f = vec![
        RationalPolynomial::zero(),
        RationalPolynomial::one(),
        RationalPolynomial::one(),
        RationalPolynomial::new(vec![b8.clone(), r(3) * &b6, r(3) * &b4, b2.clone(), r(3)]),
        RationalPolynomial::new(vec![
            &b4 * &b8 - &b6 * &b6,
            &b2 * &b8 - &b4 * &b6,
            r(10) * &b8,
            r(10) * &b6,
            r(5) * &b4,
            b2.clone(),
            r(2),
        ]),
    ];
    let ff = two_torsion_polynomial(m);
    let ff2 = ff.mul(&ff);
    for k in 5..=n {
        let mm = k / 2;
        let next = if k % 2 == 0 {
            let a = f[mm + 2].mul(&f[mm - 1].pow(2));
            let b = f[mm - 2].mul(&f[mm + 1].pow(2));
            f[mm].mul(&a.sub(&b))
        } else {
            let a = f[mm + 2].mul(&f[mm].pow(3));
            let b = f[mm - 1].mul(&f[mm + 1].pow(3));
            if mm % 2 == 0 {
                ff2.mul(&a).sub(&b)
            } else {
                a.sub(&ff2.mul(&b))
            }
        };
        f.push(next);
    }
    f.truncate(n + 1);
    f
}

/// ψ_n for odd n ≥ 1; its roots are the x-coordinates of the nonzero n-torsion points.
pub fn division_polynomial(m: &WeierstrassModel, n: u64) -> Result<RationalPolynomial> {
    if n.is_multiple_of(2) {
        return Err(Error::UnsupportedPrime { p: n, reason: "division polynomial requested for even index".into() });
    }
    if m.is_singular() {
        return Err(Error::SingularModel);
    }
    Ok(reduced_division_polynomials(m, n as usize).pop().expect("nonempty"))
}

/// x-coordinate of [n]P as a rational function of x(P), for n ≥ 1.
pub fn multiplication_x_map(m: &WeierstrassModel, n: u64) -> RationalFunction {
    let f = reduced_division_polynomials(m, n as usize + 1);
    let n = n as usize;
    let ff = two_torsion_polynomial(m);
    let x = RationalPolynomial::x();
    let fn2 = f[n].mul(&f[n]);
    let cross = f[n - 1].mul(&f[n + 1]);
    if n % 2 == 1 {
        RationalFunction { num: x.mul(&fn2).sub(&ff.mul(&cross)), den: fn2 }
    } else {
        let den = ff.mul(&fn2);
        RationalFunction { num: x.mul(&den).sub(&cross), den }
    }
}

/// Σ c_i · num^i · den^(total − i) for c = poly; the numerator of poly(num/den) · den^total.
pub(crate) fn homogenize(
    poly: &RationalPolynomial,
    num: &RationalPolynomial,
    den: &RationalPolynomial,
    total: usize,
) -> RationalPolynomial {
    let d = poly.degree().unwrap_or(0);
    let mut acc = RationalPolynomial::constant(poly.coeff(d));
    for i in (0..d).rev() {
        acc = acc.mul(num).add(&den.pow((d - i) as u32).scale(&poly.coeff(i)));
    }
    acc.mul(&den.pow((total - d) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi3_examples() {
        let e = WeierstrassModel::from_ints([0, 0, 1, 0, 0]);
        assert_eq!(division_polynomial(&e, 3).unwrap(), RationalPolynomial::from_ints(&[0, 3, 0, 0, 3]));
        let e = WeierstrassModel::from_ints([0, 0, 0, 0, 1]);
        assert_eq!(division_polynomial(&e, 3).unwrap(), RationalPolynomial::from_ints(&[0, 12, 0, 0, 3]));
    }

    #[test]
    fn degrees() {
        let e = WeierstrassModel::from_ints([1, -1, 1, -10, -20]);
        for n in [3u64, 5, 7, 11] {
            let psi = division_polynomial(&e, n).unwrap();
            assert_eq!(psi.degree(), Some(((n * n - 1) / 2) as usize));
            assert_eq!(psi.leading(), Rational::from_int(n as i64));
        }
        let f = reduced_division_polynomials(&e, 8);
        assert_eq!(f[6].degree(), Some((36 - 4) / 2));
        assert_eq!(f[8].degree(), Some((64 - 4) / 2));
    }

    #[test]
    fn multiplication_by_two_matches_duplication() {
        // x(2P) = (x⁴ − b4x² − 2b6x − b8) / (4x³ + b2x² + 2b4x + b6)
        let e = WeierstrassModel::from_ints([1, 2, 3, 4, 5]);
        let m2 = multiplication_x_map(&e, 2);
        let num = RationalPolynomial::new(vec![-e.b8(), -(Rational::from_int(2) * e.b6()), -e.b4(), Rational::zero(), Rational::one()]);
        let den = two_torsion_polynomial(&e);
        assert_eq!(m2.num.mul(&den), num.mul(&m2.den));
    }

    #[test]
    fn torsion_point_is_root() {
        // (0, 0) on y² + y = x³ has order 3; (5, 5) on 11a3 has order 5.
        let e = WeierstrassModel::from_ints([0, 0, 1, 0, 0]);
        assert!(division_polynomial(&e, 3).unwrap().eval(&Rational::zero()).is_zero());
        let e = WeierstrassModel::from_ints([0, -1, 1, 0, 0]);
        assert!(e.contains(&Rational::from_int(1), &Rational::from_int(0)));
        assert!(division_polynomial(&e, 5).unwrap().eval(&Rational::from_int(1)).is_zero());
        assert!(division_polynomial(&e, 4).is_err());
    }
}
