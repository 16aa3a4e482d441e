//! Arithmetic modulo the Mersenne prime 2^61 - 1, used to pick independent
//! rows of large systems cheaply before exact elimination.

use std::fmt;

use super::{Rational, Ring};

pub const P: u64 = (1u64 << 61) - 1;

#[inline]
pub fn reduce128(x: u128) -> u64 {
    if P == (1u64 << 61) - 1 {
        let lo = (x as u64) & P;
        let hi = (x >> 61) as u64;
        let mut s = lo + (hi & P) + ((x >> 122) as u64);
        while s >= P {
            s -= P;
        }
        s
    } else {
        (x % P as u128) as u64
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p == P {
        reduce128(a as u128 * b as u128)
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
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

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod p");
    pow_mod(a, p - 2, p)
}

/// Square root modulo `P` (Tonelli-Shanks), if `a` is a square.
pub fn sqrt_mod(a: u64) -> Option<u64> {
    let p = P;
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Element of the prime field F_P.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(pub u64);

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Fp {
    pub fn inv(self) -> Fp {
        Fp(inv_mod(self.0, P))
    }
}

impl Ring for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add_ref(&self, o: &Self) -> Self {
        Fp(add_mod(self.0, o.0, P))
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Fp(sub_mod(self.0, o.0, P))
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Fp(mul_mod(self.0, o.0, P))
    }
    fn neg_ref(&self) -> Self {
        Fp(sub_mod(0, self.0, P))
    }
    fn from_rational(r: &Rational) -> Self {
        Fp(r.mod_p(P).expect("denominator divisible by the working prime"))
    }
}

/// Dense univariate polynomial over F_P; the variable is the weight λ.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyFp(pub smallvec::SmallVec<[u64; 4]>);

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl PolyFp {
    pub fn var() -> Self {
        PolyFp(smallvec::smallvec![0, 1])
    }

    pub fn constant(c: u64) -> Self {
        let mut p = PolyFp(smallvec::smallvec![c % P]);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn eval(&self, at: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.0.iter().rev() {
            acc = add_mod(mul_mod(acc, at, P), c, P);
        }
        acc
    }

    /// Evaluate at a + b·ω in F_P[ω]/(ω² - d).
    pub fn eval2(&self, at: (u64, u64), d: u64) -> (u64, u64) {
        let mut acc = (0u64, 0u64);
        for &c in self.0.iter().rev() {
            acc = fp2_mul(acc, at, d);
            acc.0 = add_mod(acc.0, c, P);
        }
        acc
    }
}

#[inline]
pub fn fp2_mul(x: (u64, u64), y: (u64, u64), d: u64) -> (u64, u64) {
    let a = add_mod(mul_mod(x.0, y.0, P), mul_mod(mul_mod(x.1, y.1, P), d, P), P);
    let b = add_mod(mul_mod(x.0, y.1, P), mul_mod(x.1, y.0, P), P);
    (a, b)
}

pub fn fp2_inv(x: (u64, u64), d: u64) -> (u64, u64) {
    // (a + bω)^{-1} = (a - bω) / (a² - d b²)
    let n = sub_mod(mul_mod(x.0, x.0, P), mul_mod(d, mul_mod(x.1, x.1, P), P), P);
    let ni = inv_mod(n, P);
    (mul_mod(x.0, ni, P), mul_mod(sub_mod(0, x.1, P), ni, P))
}

impl Ring for PolyFp {
    fn zero() -> Self {
        PolyFp(smallvec::SmallVec::new())
    }
    fn one() -> Self {
        PolyFp(smallvec::smallvec![1])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        let (long, short) = if self.0.len() >= o.0.len() { (self, o) } else { (o, self) };
        let mut r = long.clone();
        for (i, &c) in short.0.iter().enumerate() {
            r.0[i] = add_mod(r.0[i], c, P);
        }
        r.trim();
        r
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return Self::zero();
        }
        let mut r = smallvec::smallvec![0u64; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                r[i + j] = add_mod(r[i + j], mul_mod(a, b, P), P);
            }
        }
        let mut p = PolyFp(r);
        p.trim();
        p
    }
    fn neg_ref(&self) -> Self {
        PolyFp(self.0.iter().map(|&c| sub_mod(0, c, P)).collect())
    }
    fn from_rational(r: &Rational) -> Self {
        PolyFp::constant(r.mod_p(P).expect("denominator divisible by the working prime"))
    }
    fn add_assign_ref(&mut self, o: &Self) {
        if self.0.len() < o.0.len() {
            self.0.resize(o.0.len(), 0);
        }
        for (i, &c) in o.0.iter().enumerate() {
            self.0[i] = add_mod(self.0[i], c, P);
        }
        self.trim();
    }
}

/// Element a + bω of F_P[ω]/(ω² − d). Constants carry d = 0 and adopt the
/// modulus of whatever they are combined with.
#[derive(Clone, Copy, Default)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
    pub d: u64,
}

impl PartialEq for Fp2 {
    fn eq(&self, o: &Self) -> bool {
        (self.a, self.b) == (o.a, o.b)
    }
}

impl Eq for Fp2 {}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w", self.a, self.b)
    }
}

impl Fp2 {
    pub fn new(a: u64, b: u64, d: u64) -> Self {
        Fp2 { a: a % P, b: b % P, d: d % P }
    }

    fn modulus(&self, o: &Self) -> u64 {
        if self.d != 0 {
            self.d
        } else {
            o.d
        }
    }
}

impl Ring for Fp2 {
    fn zero() -> Self {
        Fp2::default()
    }
    fn one() -> Self {
        Fp2 { a: 1, b: 0, d: 0 }
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    fn add_ref(&self, o: &Self) -> Self {
        Fp2 { a: add_mod(self.a, o.a, P), b: add_mod(self.b, o.b, P), d: self.modulus(o) }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Fp2 { a: sub_mod(self.a, o.a, P), b: sub_mod(self.b, o.b, P), d: self.modulus(o) }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let d = self.modulus(o);
        let (a, b) = fp2_mul((self.a, self.b), (o.a, o.b), d);
        Fp2 { a, b, d }
    }
    fn neg_ref(&self) -> Self {
        Fp2 { a: sub_mod(0, self.a, P), b: sub_mod(0, self.b, P), d: self.d }
    }
    fn from_rational(r: &Rational) -> Self {
        Fp2 { a: r.mod_p(P).expect("denominator divisible by the working prime"), b: 0, d: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let a = 123456789u64;
        assert_eq!(mul_mod(a, inv_mod(a, P), P), 1);
        assert_eq!(reduce128((P as u128) * 3 + 5), 5);
        assert_eq!(reduce128(u128::from(P - 1) * u128::from(P - 1)), 1);
    }

    #[test]
    fn square_roots() {
        for a in [4u64, 19, 33, 76, 2] {
            if let Some(r) = sqrt_mod(a) {
                assert_eq!(mul_mod(r, r, P), a);
            }
        }
        assert_eq!(sqrt_mod(9).map(|r| mul_mod(r, r, P)), Some(9));
    }

    #[test]
    fn poly_eval() {
        // (x + 1)^2 at 3 = 16
        let p = PolyFp::var().add_ref(&PolyFp::one());
        let q = p.mul_ref(&p);
        assert_eq!(q.eval(3), 16);
        assert_eq!(q.eval2((3, 0), 5), (16, 0));
    }

    #[test]
    fn quadratic_extension() {
        // 3 is not a square mod P, so ω² = 3 generates F_{P²}
        assert!(sqrt_mod(3).is_none());
        let w = Fp2::new(0, 1, 3);
        assert_eq!(w.mul_ref(&w), Fp2::new(3, 0, 3));
        let x = Fp2::new(5, 7, 3);
        let inv = crate::scalars::Field::inv(&x).unwrap();
        assert_eq!(x.mul_ref(&inv), Fp2::new(1, 0, 3));
    }
}
