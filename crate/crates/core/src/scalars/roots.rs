use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{AlgebraicScalar, ParamPoly, QuadraticField, Rational, UPoly};
use crate::error::{Error, Result};

/// Square-free part of a univariate parameter polynomial (monic).
pub fn square_free(p: &ParamPoly) -> Result<ParamPoly> {
    let (i, u) = univariate(p)?;
    let sf = u.square_free();
    Ok(match i {
        Some(i) => ParamPoly::from_upoly(p.vars(), i, &sf),
        None => ParamPoly::from_int(1),
    })
}

fn univariate(p: &ParamPoly) -> Result<(Option<usize>, UPoly)> {
    p.to_upoly()
        .ok_or_else(|| Error::Usage(format!("expected a univariate polynomial, got {p}")))
}

/// All rational roots of a nonzero univariate polynomial, ascending, without
/// multiplicity.
pub fn rational_roots(p: &ParamPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::Usage("rational_roots of the zero polynomial".into()));
    }
    let (_, u) = univariate(p)?;
    Ok(upoly_rational_roots(&u))
}

pub(crate) fn upoly_rational_roots(u: &UPoly) -> Vec<Rational> {
    let mut u = u.square_free().primitive();
    let mut roots = vec![];
    if u.degree().unwrap_or(0) == 0 {
        return roots;
    }
    if u.coeff(0).is_zero() {
        roots.push(Rational::zero());
        u = u.div_rem(&UPoly::from_ints(&[0, 1])).0;
    }
    let a0 = u.coeff(0).numer().abs();
    let an = u.lead().numer().abs();
    let candidates = match (divisors(&a0), divisors(&an)) {
        (Some(ps), Some(qs)) => {
            let mut c = vec![];
            for p in &ps {
                for q in &qs {
                    if p.gcd(q).is_one() {
                        let r = Rational::from_bigints(p.clone(), q.clone()).unwrap();
                        c.push(-&r);
                        c.push(r);
                    }
                }
            }
            c
        }
        _ => numeric_roots(&u)
            .into_iter()
            .filter(|z| z.1.abs() < 1e-7 * (1.0 + z.0.abs()))
            .filter_map(|z| rationalize(z.0))
            .collect(),
    };
    for c in candidates {
        if u.eval::<Rational>(&c).is_zero() && !roots.contains(&c) {
            roots.push(c);
        }
    }
    roots.sort();
    roots
}

/// Positive divisors of n, when n is small enough to factor by trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let v = n.to_u64()?;
    if v > 1_000_000_000_000 {
        return None;
    }
    let mut primes: Vec<(u64, u32)> = vec![];
    let mut m = v;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut ds = vec![1u64];
    for (p, e) in primes {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort();
    Some(ds.into_iter().map(BigInt::from).collect())
}

/// Both roots of an irreducible quadratic, branch 0 (positive radical) first.
pub fn quadratic_split(p: &ParamPoly) -> Result<[AlgebraicScalar; 2]> {
    let (_, u) = univariate(p)?;
    let f = QuadraticField::new(&u)?;
    Ok([f.root(0), f.root(1)])
}

/// One irreducible factor of a resonance locus.
#[derive(Clone, Debug, PartialEq)]
pub enum LocusFactor {
    Linear(Rational),
    Quadratic(Arc<QuadraticField>),
}

impl LocusFactor {
    pub fn roots(&self) -> Vec<AlgebraicScalar> {
        match self {
            LocusFactor::Linear(r) => vec![AlgebraicScalar::rational(r.clone())],
            LocusFactor::Quadratic(f) => vec![f.root(0), f.root(1)],
        }
    }

    pub fn poly(&self) -> UPoly {
        match self {
            LocusFactor::Linear(r) => UPoly::linear_root(r),
            LocusFactor::Quadratic(f) => f.minpoly_upoly(),
        }
    }
}

/// Split a locus polynomial into linear and quadratic irreducible factors.
/// Any irreducible factor of degree three or more is reported as unsupported.
pub fn factor_locus(u: &UPoly) -> Result<Vec<LocusFactor>> {
    if u.is_zero() {
        return Err(Error::Usage("locus of the zero polynomial".into()));
    }
    let mut rest = u.square_free();
    let mut out = vec![];
    for r in upoly_rational_roots(&rest) {
        rest = rest.div_rem(&UPoly::linear_root(&r)).0;
        out.push(LocusFactor::Linear(r));
    }
    loop {
        match rest.degree().unwrap_or(0) {
            0 => break,
            2 => {
                out.push(LocusFactor::Quadratic(QuadraticField::new(&rest)?));
                break;
            }
            1 => unreachable!("rational roots removed"),
            _ => {
                let Some(q) = find_quadratic_factor(&rest) else {
                    return Err(Error::Unsupported(format!(
                        "resonance locus has an irreducible factor of degree >= 3: {}",
                        rest.primitive().fmt_with("lambda")
                    )));
                };
                rest = rest.div_rem(&q).0;
                out.push(LocusFactor::Quadratic(QuadraticField::new(&q)?));
            }
        }
    }
    Ok(out)
}

fn find_quadratic_factor(u: &UPoly) -> Option<UPoly> {
    let zs = numeric_roots(u);
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            let (a, b) = (zs[i], zs[j]);
            let s = a.0 + b.0;
            let si = a.1 + b.1;
            let pr = a.0 * b.0 - a.1 * b.1;
            let pi = a.0 * b.1 + a.1 * b.0;
            if si.abs() > 1e-6 * (1.0 + s.abs()) || pi.abs() > 1e-6 * (1.0 + pr.abs()) {
                continue;
            }
            let (Some(s), Some(p)) = (rationalize(s), rationalize(pr)) else {
                continue;
            };
            let q = UPoly::new(vec![p, -s, Rational::one()]);
            if u.div_rem(&q).1.is_zero() {
                return Some(q);
            }
        }
    }
    None
}

/// Best rational approximation with denominator ≤ 10^6, if it is close.
fn rationalize(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > 1_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() < 1e-9 * (1.0 + x.abs()) {
            return Rational::new(h1 as i64, k1 as i64).ok();
        }
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    None
}

/// Complex roots by Aberth iteration, as (re, im) pairs. Used only to propose
/// candidates that are then verified exactly.
fn numeric_roots(u: &UPoly) -> Vec<(f64, f64)> {
    let n = u.degree().unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    let lead = u.lead().to_f64();
    let cs: Vec<f64> = u.coeffs().iter().map(|c| c.to_f64() / lead).collect();
    let bound = 1.0 + cs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
            (bound * 0.5 * ang.cos(), bound * 0.5 * ang.sin())
        })
        .collect();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (mut p, mut dp) = ((0.0, 0.0), (0.0, 0.0));
            for c in cs.iter().rev() {
                dp = mul(dp, z[i]);
                dp.0 += p.0;
                dp.1 += p.1;
                p = mul(p, z[i]);
                p.0 += c;
            }
            if p.0 == 0.0 && p.1 == 0.0 {
                continue;
            }
            let ratio = div(p, dp);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    let inv = div((1.0, 0.0), d);
                    s.0 += inv.0;
                    s.1 += inv.1;
                }
            }
            let denom = (1.0 - mul(ratio, s).0, -mul(ratio, s).1);
            let w = div(ratio, denom);
            z[i].0 -= w.0;
            z[i].1 -= w.1;
            moved = moved.max(w.0.abs() + w.1.abs());
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Ring;

    fn lam() -> ParamPoly {
        ParamPoly::named("lambda")
    }

    fn c(v: i64) -> ParamPoly {
        ParamPoly::from_int(v)
    }

    #[test]
    fn rational_root_examples() {
        let l = lam();
        let p = l.mul_ref(&l.add_ref(&c(4)));
        assert_eq!(rational_roots(&p).unwrap(), vec![Rational::from_int(-4), Rational::zero()]);
        let q = l.pow(2).add_ref(&c(1));
        assert!(rational_roots(&q).unwrap().is_empty());
        let r = c(2).mul_ref(&l).add_ref(&c(5)).mul_ref(&l.sub_ref(&c(3)));
        assert_eq!(
            rational_roots(&r).unwrap(),
            vec![Rational::frac(-5, 2), Rational::from_int(3)]
        );
    }

    #[test]
    fn quadratic_split_examples() {
        let l = lam();
        let p = c(2).mul_ref(&l.pow(2)).add_ref(&c(10).mul_ref(&l)).add_ref(&c(3));
        let [a, b] = quadratic_split(&p).unwrap();
        let (_, u) = p.to_upoly().unwrap();
        assert!(u.eval(&a).is_zero());
        assert!(u.eval(&b).is_zero());
        assert_eq!(a.pretty(), "-5/2 + 1/2√19");
        let reducible = l.pow(2).sub_ref(&c(1));
        assert!(quadratic_split(&reducible).is_err());
    }

    #[test]
    fn locus_factorization() {
        // λ(λ+4)(2λ²+10λ+3)(λ²-2)
        let u = UPoly::from_ints(&[0, 1])
            .mul(&UPoly::from_ints(&[4, 1]))
            .mul(&UPoly::from_ints(&[3, 10, 2]))
            .mul(&UPoly::from_ints(&[-2, 0, 1]));
        let fs = factor_locus(&u).unwrap();
        assert_eq!(fs.len(), 4);
        let cubic = UPoly::from_ints(&[-2, 0, 0, 1]);
        assert!(matches!(factor_locus(&cubic), Err(Error::Unsupported(_))));
    }
}
