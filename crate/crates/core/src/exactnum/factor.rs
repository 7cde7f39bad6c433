//! Search for monic rational factors of a fixed degree.
//!
//! The polynomial is made integral, primitive and square-free, then turned
//! into a monic integer polynomial `G(y) = lc^(n-1) g(y / lc)`. `G` is factored
//! modulo an auxiliary prime `q` for which it stays square-free, the modular
//! factorization is Hensel-lifted past a Mignotte-style coefficient bound, and
//! subsets of lifted factors are recombined and trial-divided over ℤ. Desk-scale
//! degrees keep the subset search small.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::PrimeFieldPolynomial;
use super::poly::RationalPolynomial;
use super::rational::{is_prime, Rational};
use crate::error::Result;

/// All monic degree-`d` factors of `a` with rational coefficients, sorted.
pub fn factor_degree_d(a: &RationalPolynomial, d: usize) -> Result<Vec<RationalPolynomial>> {
    let n = match a.degree() {
        Some(n) => n,
        None => return Ok(Vec::new()),
    };
    if d == 0 || d > n {
        return Ok(Vec::new());
    }
    let f = a.monic();
    let squarefree = f.exact_div(&f.gcd(&f.derivative()))?;

    // Irreducible factors of the square-free part with degree <= d.
    let mut small: Vec<RationalPolynomial> = Vec::new();
    for k in 1..=d.min(squarefree.degree().unwrap_or(0)) {
        for h in squarefree_factors_of_degree(&squarefree, k)? {
            if !small.iter().any(|g| g.divides(&h)) {
                small.push(h);
            }
        }
    }

    // Multiplicity of each irreducible in the original polynomial.
    let mults: Vec<usize> = small
        .iter()
        .map(|h| {
            let mut e = 0;
            let mut rest = f.clone();
            while let Ok((q, r)) = rest.divrem(h) {
                if !r.is_zero() {
                    break;
                }
                e += 1;
                rest = q;
            }
            e
        })
        .collect();

    let mut out = BTreeSet::new();
    let mut counts = vec![0usize; small.len()];
    enumerate_multisets(&small, &mults, 0, d, &mut counts, &mut out);
    Ok(out.into_iter().collect())
}

fn enumerate_multisets(
    irr: &[RationalPolynomial],
    mults: &[usize],
    idx: usize,
    remaining: usize,
    counts: &mut Vec<usize>,
    out: &mut BTreeSet<RationalPolynomial>,
) {
    if remaining == 0 {
        let prod = irr
            .iter()
            .zip(counts.iter())
            .fold(RationalPolynomial::one(), |acc, (h, &c)| acc.mul(&h.pow(c as u32)));
        out.insert(prod);
        return;
    }
    if idx == irr.len() {
        return;
    }
    let deg = irr[idx].degree().unwrap_or(0);
    let mut c = 0;
    while c <= mults[idx] && c * deg <= remaining {
        counts[idx] = c;
        enumerate_multisets(irr, mults, idx + 1, remaining - c * deg, counts, out);
        c += 1;
    }
    counts[idx] = 0;
}

/// Monic degree-`k` factors (not necessarily irreducible) of a square-free polynomial.
fn squarefree_factors_of_degree(g: &RationalPolynomial, k: usize) -> Result<Vec<RationalPolynomial>> {
    let ints = g.primitive_integer();
    let n = ints.len() - 1;
    let lc = ints[n].clone();
    // G(y) = lc^(n-1) g(y/lc), monic with integer coefficients.
    let mut monic_g: Vec<BigInt> = Vec::with_capacity(n + 1);
    for (i, c) in ints.iter().enumerate() {
        if i == n {
            monic_g.push(BigInt::one());
        } else {
            monic_g.push(c * lc.pow((n - 1 - i) as u32));
        }
    }

    let q = choose_prime(&monic_g);
    let reduced = reduce(&monic_g, q);
    let modular = reduced.factor_squarefree()?;

    // Coefficients of a monic factor of degree <= k are bounded by 2^k * ||G||_2.
    let norm_sq: BigInt = monic_g.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << k) * (norm_sq.sqrt() + BigInt::one());
    let qb = BigInt::from(q);
    let mut modulus = qb.clone();
    let mut steps = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &qb;
        steps += 1;
    }
    let lifted = hensel_lift_all(&monic_g, &modular, q, steps);

    let degs: Vec<usize> = modular.iter().map(|f| f.degree().unwrap_or(0)).collect();
    let mut found = Vec::new();
    let mut subset = Vec::new();
    subsets_with_degree(&degs, 0, k, &mut subset, &mut |s: &[usize]| {
        let mut prod = vec![BigInt::one()];
        for &i in s {
            prod = zmod(&zmul(&prod, &lifted[i]), &modulus);
        }
        let cand: Vec<BigInt> = prod.iter().map(|c| symmetric(c, &modulus)).collect();
        if zdivides_monic(&cand, &monic_g) {
            found.push(cand);
        }
    });

    // h(x) = H(lc x) / lc^k
    let lcr = Rational::from_bigint(lc);
    let mut out: Vec<RationalPolynomial> = found
        .into_iter()
        .map(|h| {
            let hp = RationalPolynomial::from_bigints(&h);
            hp.compose(&RationalPolynomial::new(vec![Rational::zero(), lcr.clone()])).monic()
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn subsets_with_degree(degs: &[usize], start: usize, remaining: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if remaining == 0 {
        f(cur);
        return;
    }
    for i in start..degs.len() {
        if degs[i] <= remaining {
            cur.push(i);
            subsets_with_degree(degs, i + 1, remaining - degs[i], cur, f);
            cur.pop();
        }
    }
}

fn choose_prime(g: &[BigInt]) -> u64 {
    let mut q = 3u64;
    loop {
        if is_prime(q) {
            let r = reduce(g, q);
            if r.degree() == Some(g.len() - 1) && r.is_squarefree() {
                return q;
            }
        }
        q += 2;
    }
}

fn reduce(g: &[BigInt], q: u64) -> PrimeFieldPolynomial {
    let qb = BigInt::from(q);
    PrimeFieldPolynomial::new(q, g.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect())
}

fn lift_fp(f: &PrimeFieldPolynomial) -> Vec<BigInt> {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn ztrim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn zmod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Does the monic integer polynomial `h` divide `g` over ℤ?
fn zdivides_monic(h: &[BigInt], g: &[BigInt]) -> bool {
    let dh = h.len() - 1;
    if g.len() - 1 < dh {
        return false;
    }
    let mut rem = g.to_vec();
    for k in (0..=g.len() - 1 - dh).rev() {
        let c = rem[k + dh].clone();
        if c.is_zero() {
            continue;
        }
        for (j, b) in h.iter().enumerate() {
            rem[k + j] -= &c * b;
        }
    }
    rem[..dh].iter().all(|c| c.is_zero())
}

/// Lift a complete monic factorization `g ≡ ∏ f_i (mod q)` to `mod q^steps`.
fn hensel_lift_all(g: &[BigInt], factors: &[PrimeFieldPolynomial], q: u64, steps: u32) -> Vec<Vec<BigInt>> {
    let modulus = BigInt::from(q).pow(steps);
    let mut out = Vec::with_capacity(factors.len());
    let mut target = zmod(g, &modulus);
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            out.push(target.clone());
            break;
        }
        let rest = factors[i + 1..].iter().fold(PrimeFieldPolynomial::one(q), |acc, f| acc.mul(f));
        let (a, b) = hensel_lift_pair(&target, &factors[i], &rest, q, steps);
        out.push(a);
        target = b;
    }
    out
}

/// Linear Hensel lifting of `t ≡ g·h (mod q)` with g, h monic and coprime mod q.
fn hensel_lift_pair(
    t: &[BigInt],
    g: &PrimeFieldPolynomial,
    h: &PrimeFieldPolynomial,
    q: u64,
    steps: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (_, s, tt) = g.ext_gcd(h);
    let qb = BigInt::from(q);
    let mut gl = lift_fp(g);
    let mut hl = lift_fp(h);
    let mut qj = qb.clone();
    let modulus = qb.pow(steps);
    for _ in 1..steps {
        let diff = zmod(&zsub(t, &zmul(&gl, &hl)), &modulus);
        let e_int: Vec<BigInt> = diff.iter().map(|c| c / &qj).collect();
        let e = PrimeFieldPolynomial::new(q, e_int.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect());
        let et = e.mul(&tt);
        let (quo, a) = et.divrem(g).expect("g monic");
        let b = e.mul(&s).add(&quo.mul(h));
        gl = zadd(&gl, &lift_fp(&a).iter().map(|c| c * &qj).collect::<Vec<_>>());
        hl = zadd(&hl, &lift_fp(&b).iter().map(|c| c * &qj).collect::<Vec<_>>());
        qj *= &qb;
    }
    (zmod(&gl, &modulus), zmod(&hl, &modulus))
}

/// Rational roots by the classical divisor test; used as an oracle in tests and for tiny inputs.
pub fn rational_roots_bruteforce(a: &RationalPolynomial) -> Vec<Rational> {
    let ints = a.primitive_integer();
    if ints.is_empty() {
        return Vec::new();
    }
    let mut roots = BTreeSet::new();
    let mut coeffs = ints.clone();
    if coeffs[0].is_zero() {
        roots.insert(Rational::zero());
        let k = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..k);
    }
    let c0 = coeffs[0].abs();
    let cn = coeffs.last().unwrap().abs();
    let divs = |n: &BigInt| -> Vec<BigInt> {
        let n = n.to_u64().expect("small constant for brute force");
        (1..=n).filter(|d| n.is_multiple_of(*d)).map(BigInt::from).collect()
    };
    let poly = RationalPolynomial::from_bigints(&coeffs);
    for num in divs(&c0) {
        for den in divs(&cn) {
            for s in [1i64, -1] {
                let r = Rational::new(&num * s, den.clone()).unwrap();
                if poly.eval(&r).is_zero() {
                    roots.insert(r);
                }
            }
        }
    }
    roots.into_iter().collect()
}
