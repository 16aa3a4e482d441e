use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Field, Rational, Ring, UPoly};
use crate::error::{Error, Result};

/// ℚ[t]/(t² + c1·t + c0) for an irreducible quadratic. The generator `t` is
/// the root (-c1 + √disc)/2, i.e. the one taken with the positive radical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    /// Primitive integer form of the defining polynomial, [c0, c1, c2].
    minpoly: [Rational; 3],
    c0: Rational,
    c1: Rational,
}

impl QuadraticField {
    pub fn new(p: &UPoly) -> Result<Arc<Self>> {
        if p.degree() != Some(2) {
            return Err(Error::Usage(format!("expected a quadratic, got {p:?}")));
        }
        let prim = p.primitive();
        let m = p.monic();
        let field = QuadraticField {
            minpoly: [prim.coeff(0), prim.coeff(1), prim.coeff(2)],
            c0: m.coeff(0),
            c1: m.coeff(1),
        };
        if is_rational_square(&field.discriminant()) {
            return Err(Error::Usage(format!(
                "{} has rational roots; use rational_roots",
                prim.fmt_with("t")
            )));
        }
        Ok(Arc::new(field))
    }

    /// Primitive integer coefficients [c0, c1, c2] of the defining polynomial.
    pub fn minpoly(&self) -> &[Rational; 3] {
        &self.minpoly
    }

    pub fn minpoly_upoly(&self) -> UPoly {
        UPoly::new(self.minpoly.to_vec())
    }

    /// Discriminant of the monic polynomial, c1² - 4c0.
    pub fn discriminant(&self) -> Rational {
        &(&self.c1 * &self.c1) - &(&Rational::from_int(4) * &self.c0)
    }

    /// The generator t itself.
    pub fn gen(self: &Arc<Self>) -> AlgebraicScalar {
        AlgebraicScalar { field: Some(self.clone()), a: Rational::zero(), b: Rational::one() }
    }

    /// Root with the given branch: 0 is t, 1 is the conjugate -c1 - t.
    pub fn root(self: &Arc<Self>, branch: u8) -> AlgebraicScalar {
        match branch {
            0 => self.gen(),
            _ => AlgebraicScalar { field: Some(self.clone()), a: -&self.c1, b: -Rational::one() },
        }
    }

    /// √disc expressed in the field: 2t + c1.
    pub fn sqrt_disc(self: &Arc<Self>) -> AlgebraicScalar {
        AlgebraicScalar {
            field: Some(self.clone()),
            a: self.c1.clone(),
            b: Rational::from_int(2),
        }
    }
}

impl fmt::Debug for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", UPoly::new(self.minpoly.to_vec()).fmt_with("t"))
    }
}

fn is_rational_square(r: &Rational) -> bool {
    if r.is_negative() {
        return false;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    &sn * &sn == n && &sd * &sd == d
}

/// Element a + b·t of a quadratic field, or a plain rational when `field` is
/// `None` (b is then zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicScalar {
    field: Option<Arc<QuadraticField>>,
    a: Rational,
    b: Rational,
}

impl AlgebraicScalar {
    pub fn rational(r: Rational) -> Self {
        AlgebraicScalar { field: None, a: r, b: Rational::zero() }
    }

    pub fn new(field: &Arc<QuadraticField>, a: Rational, b: Rational) -> Self {
        AlgebraicScalar { field: Some(field.clone()), a, b }.collapse()
    }

    fn collapse(mut self) -> Self {
        if self.b.is_zero() {
            self.field = None;
        }
        self
    }

    pub fn field(&self) -> Option<&Arc<QuadraticField>> {
        self.field.as_ref()
    }

    pub fn coords(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn common_field(&self, o: &Self) -> Result<Option<Arc<QuadraticField>>> {
        match (&self.field, &o.field) {
            (None, f) | (f, None) => Ok(f.clone()),
            (Some(f), Some(g)) if f == g => Ok(Some(f.clone())),
            (Some(f), Some(g)) => Err(Error::Usage(format!(
                "elements of different extensions {f:?} and {g:?}"
            ))),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let field = self.common_field(o)?;
        Ok(AlgebraicScalar { field, a: &self.a + &o.a, b: &self.b + &o.b }.collapse())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let field = self.common_field(o)?;
        let Some(f) = &field else {
            return Ok(Self::rational(&self.a * &o.a));
        };
        // t² = -c1 t - c0
        let bb = &self.b * &o.b;
        let a = &(&self.a * &o.a) - &(&bb * &f.c0);
        let b = &(&(&self.a * &o.b) + &(&self.b * &o.a)) - &(&bb * &f.c1);
        Ok(AlgebraicScalar { field, a, b }.collapse())
    }

    pub fn checked_inv(&self) -> Result<Self> {
        let Some(f) = &self.field else {
            return Ok(Self::rational(self.a.recip()?));
        };
        // conjugate of a + b t is (a - b c1) - b t; the product is the norm
        let ca = &self.a - &(&self.b * &f.c1);
        let norm = &(&self.a * &ca) + &(&(&self.b * &self.b) * &f.c0);
        if norm.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        let inv = norm.recip()?;
        Ok(AlgebraicScalar { field: self.field.clone(), a: &ca * &inv, b: &(-&self.b) * &inv }
            .collapse())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.checked_mul(&o.checked_inv()?)
    }

    /// Real approximation for display only; NaN for non-real elements.
    pub fn to_f64(&self) -> f64 {
        match &self.field {
            None => self.a.to_f64(),
            Some(f) => {
                let d = f.discriminant().to_f64();
                let t = (-f.c1.to_f64() + d.sqrt()) / 2.0;
                self.a.to_f64() + self.b.to_f64() * t
            }
        }
    }

    /// Human-readable radical form p + q√d with d squarefree.
    pub fn pretty(&self) -> String {
        let Some(f) = &self.field else {
            return self.a.to_string();
        };
        // a + b t = (a - b c1 / 2) + (b / 2) √disc
        let half = Rational::frac(1, 2);
        let p = &self.a - &(&(&self.b * &f.c1) * &half);
        let q = &self.b * &half;
        let (s, d) = sqrt_split(&f.discriminant());
        let q = &q * &s;
        let rad = format!("√{d}");
        let qs = if q.is_one() {
            rad
        } else if (-&q).is_one() {
            format!("-{rad}")
        } else {
            format!("{q}{rad}")
        };
        if p.is_zero() {
            qs
        } else if qs.starts_with('-') {
            format!("{p} - {}", &qs[1..])
        } else {
            format!("{p} + {qs}")
        }
    }

    pub fn to_json(&self) -> AlgebraicJson {
        match &self.field {
            None => AlgebraicJson { minpoly: None, a: self.a.to_string(), b: None },
            Some(f) => AlgebraicJson {
                minpoly: Some(f.minpoly.iter().map(|c| c.to_string()).collect()),
                a: self.a.to_string(),
                b: Some(self.b.to_string()),
            },
        }
    }

    pub fn from_json(j: &AlgebraicJson) -> Result<Self> {
        let a: Rational = j.a.parse()?;
        match (&j.minpoly, &j.b) {
            (None, _) => Ok(Self::rational(a)),
            (Some(m), Some(b)) => {
                let cs = m.iter().map(|c| c.parse()).collect::<Result<Vec<Rational>>>()?;
                let f = QuadraticField::new(&UPoly::new(cs))?;
                Ok(Self::new(&f, a, b.parse()?))
            }
            (Some(_), None) => Err(Error::Usage("algebraic scalar without t-coordinate".into())),
        }
    }
}

/// JSON form of a field element: value a + b·t where t is branch 0 of `minpoly`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub minpoly: Option<Vec<String>>,
    pub a: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<String>,
}

/// Write r = s²·d with d a squarefree integer (sign kept in d); returns (s, d).
fn sqrt_split(r: &Rational) -> (Rational, BigInt) {
    let num = r.numer();
    let den = r.denom();
    // √(n/m) = √(n m) / m
    let prod = &num * &den;
    let (s, d) = square_part(&prod);
    (Rational::from_bigints(s, den).unwrap(), d)
}

fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &p * &p <= m && p < limit {
        let pp = &p * &p;
        while (&m % &pp).is_zero() {
            m /= &pp;
            s *= &p;
        }
        p += 1;
    }
    if m.to_u64().is_some_and(|v| v == 0) {
        return (BigInt::zero(), BigInt::zero());
    }
    (s, m * sign)
}

impl Ring for AlgebraicScalar {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn one() -> Self {
        Self::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.checked_add(o).expect("mixed quadratic extensions")
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.checked_add(&o.neg_ref()).expect("mixed quadratic extensions")
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("mixed quadratic extensions")
    }
    fn neg_ref(&self) -> Self {
        AlgebraicScalar { field: self.field.clone(), a: -&self.a, b: -&self.b }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        AlgebraicScalar { field: self.field.clone(), a: &self.a * r, b: &self.b * r }.collapse()
    }
}

impl Field for AlgebraicScalar {
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt19() -> AlgebraicScalar {
        QuadraticField::new(&UPoly::from_ints(&[-19, 0, 1])).unwrap().gen()
    }

    fn r(v: i64) -> AlgebraicScalar {
        AlgebraicScalar::rational(Rational::from_int(v))
    }

    #[test]
    fn examples() {
        let s = sqrt19();
        assert_eq!(s.mul_ref(&s), r(19));
        assert_eq!(r(1).add_ref(&s).add_ref(&r(1).sub_ref(&s)), r(2));
        let inv = r(2).add_ref(&s).inv().unwrap();
        let expected = r(-2).add_ref(&s).scale(&Rational::frac(1, 15));
        assert_eq!(inv, expected);
        assert_eq!(inv.mul_ref(&r(2).add_ref(&s)), r(1));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = sqrt19();
        let b = QuadraticField::new(&UPoly::from_ints(&[-2, 0, 1])).unwrap().gen();
        assert!(a.checked_add(&b).is_err());
        assert!(r(0).checked_inv().is_err());
    }

    #[test]
    fn pretty_forms() {
        let f = QuadraticField::new(&UPoly::from_ints(&[3, 10, 2])).unwrap();
        assert_eq!(f.root(0).pretty(), "-5/2 + 1/2√19");
        assert_eq!(f.root(1).pretty(), "-5/2 - 1/2√19");
        let g = QuadraticField::new(&UPoly::from_ints(&[2, 7, 2])).unwrap();
        assert_eq!(g.root(0).pretty(), "-7/4 + 1/4√33");
        assert!(QuadraticField::new(&UPoly::from_ints(&[-4, 0, 1])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = QuadraticField::new(&UPoly::from_ints(&[3, 10, 2])).unwrap();
        let x = f.root(1).scale(&Rational::frac(3, 7));
        let j = x.to_json();
        assert_eq!(AlgebraicScalar::from_json(&j).unwrap(), x);
    }
}
