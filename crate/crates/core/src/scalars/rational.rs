use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Small values stay in machine words; anything that
/// overflows an `i64` numerator or denominator is promoted to a big rational.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    // den > 0, gcd(num, den) = 1
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Small(0, 1));
    pub const ONE: Rational = Rational(Repr::Small(1, 1));

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_int(v: i64) -> Self {
        Rational(Repr::Small(v, 1))
    }

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    /// Panicking constructor for literals in code and tests.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if n == 0 {
            return Self::ZERO;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(n),
                BigInt::from(d),
            )))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational keeps itself reduced with positive denominator.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(r))),
        }
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::from_big(BigRational::new(num, den)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    /// Numerator and denominator if both fit in machine words.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small(n, d) => Some((n, d)),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else if b.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        match &self.0 {
            Repr::Small(0, _) => Err(Error::Arithmetic("division by zero".into())),
            Repr::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(b) => Ok(Self::from_big(b.recip())),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer floor, as a big integer.
    pub fn floor(&self) -> BigInt {
        self.to_big().floor().to_integer()
    }

    /// Lossy conversion used only for human-readable approximations.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Residue modulo the prime `p`, or `None` when p divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let (n, d) = match &self.0 {
            Repr::Small(n, d) => (
                (*n as i128).rem_euclid(p as i128) as u64,
                (*d as i128).rem_euclid(p as i128) as u64,
            ),
            Repr::Big(b) => {
                let pb = BigInt::from(p);
                (
                    b.numer().mod_floor(&pb).to_u64().unwrap(),
                    b.denom().mod_floor(&pb).to_u64().unwrap(),
                )
            }
        };
        if d == 0 {
            return None;
        }
        Some(crate::scalars::modp::mul_mod(n, crate::scalars::modp::inv_mod(d, p), p))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Self::from_int(v as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(v))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            // canonical representation: a Small never equals a Big
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) => rhs.clone(),
            (_, Repr::Small(0, _)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Rational::from_i128(
                        *a as i128 * *d as i128 + *c as i128 * *b as i128,
                        *b as i128 * *d as i128,
                    )
                }
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rational::ZERO,
            (Repr::Small(1, 1), _) => rhs.clone(),
            (_, Repr::Small(1, 1)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational::from_i128(-(*n as i128), *d as i128),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n` or `n/d` with an optional leading sign.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Usage(format!("not a rational literal: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Self::ONE
    }
}

/// gcd of the absolute values of two big integers (0 if both are 0).
pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Least common multiple of two positive big integers.
pub fn big_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        assert_eq!(Rational::frac(2, -4), Rational::frac(-1, 2));
        assert_eq!(Rational::frac(0, -7), Rational::zero());
        assert_eq!(Rational::frac(6, 3).to_string(), "2");
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(sq.as_small().is_none());
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(back.as_small().is_some());
    }

    #[test]
    fn parse_and_print() {
        let r: Rational = "-10/4".parse().unwrap();
        assert_eq!(r.to_string(), "-5/2");
        let huge: Rational = "123456789012345678901234567890/3".parse().unwrap();
        assert_eq!(huge.to_string(), "41152263004115226300411522630");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering() {
        assert!(Rational::frac(1, 3) < Rational::frac(1, 2));
        assert!(Rational::frac(-1, 2) < Rational::zero());
    }

    #[test]
    fn residues() {
        let p = crate::scalars::modp::P;
        let half = Rational::frac(1, 2).mod_p(p).unwrap();
        assert_eq!(crate::scalars::modp::mul_mod(half, 2, p), 1);
    }
}
