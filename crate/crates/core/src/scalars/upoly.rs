use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Rational, Ring};

/// Dense univariate polynomial over ℚ; `coeffs[i]` multiplies t^i.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// t - r
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                r[i + j] = &r[i + j] + &(a * b);
            }
        }
        Self::new(r)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().recip().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = &r[k] - &(&c * dj);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip().unwrap();
        self.scale(&inv)
    }

    /// Monic gcd; gcd(a, 0) = monic(a).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Scale to a rational multiple with integer coefficients of gcd 1 and
    /// positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = super::rational::big_lcm(&lcm, &c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = super::rational::big_gcd(&g, i);
        }
        let sign = if self.lead().is_negative() { -1 } else { 1 };
        Self::new(
            ints.into_iter()
                .map(|i| Rational::from(i * sign / &g))
                .collect(),
        )
    }

    // keeps Euclid's coefficients small without changing the ideal
    fn primitive_rational(&self) -> Self {
        self.primitive()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from_int(i as i64))
                .collect(),
        )
    }

    pub fn eval<R: Ring>(&self, at: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(at).add_ref(&R::from_rational(c));
        }
        acc
    }

    /// Product of the distinct monic irreducible factors.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return UPoly::constant(Rational::one());
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (i, a.is_one()) {
                (0, _) => out.push_str(&a.to_string()),
                (_, true) => {}
                (_, false) => {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclid() {
        let a = UPoly::from_ints(&[-1, 0, 1]);
        let b = UPoly::from_ints(&[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        let c = UPoly::from_ints(&[3, 10, 2]);
        let d = UPoly::from_ints(&[10, 4]);
        assert_eq!(c.gcd(&d), UPoly::from_ints(&[1]));
        assert_eq!(c.gcd(&UPoly::zero()), c.monic());
    }

    #[test]
    fn division_identity() {
        let a = UPoly::from_ints(&[5, -3, 0, 7, 2]);
        let d = UPoly::from_ints(&[1, 0, 3]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn square_free_part() {
        // t^2 (t+4)^3
        let t = UPoly::from_ints(&[0, 1]);
        let s = UPoly::from_ints(&[4, 1]);
        let p = t.mul(&t).mul(&s).mul(&s).mul(&s);
        assert_eq!(p.square_free(), t.mul(&s));
    }
}
