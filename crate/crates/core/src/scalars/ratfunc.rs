use std::fmt;

use super::{Field, ParamPoly, Rational, Ring};
use crate::error::{Error, Result};

/// Reduced quotient of parameter polynomials. The denominator has integer
/// coefficients of gcd 1 and a positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: ParamPoly,
    den: ParamPoly,
}

impl RationalFunction {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        RationalFunction { num: p, den: ParamPoly::from_int(1) }
    }

    fn normalized(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return Self::from_poly(ParamPoly::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let prim = den.primitive();
        let factor = prim
            .leading()
            .map(|t| &t.1 / &den.leading().unwrap().1)
            .unwrap();
        RationalFunction { num: num.scale(&factor), den: prim }
    }

    /// Re-run normalization; a no-op on values built through this API.
    pub fn normalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Evaluate at rational parameter values; `None` on a pole.
    pub fn eval(&self, values: &[Rational]) -> Option<Rational> {
        let d: Rational = self.den.eval_in(values);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval_in::<Rational>(values) / &d)
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(Self::normalized(self.num.mul_ref(&o.den), self.den.mul_ref(&o.num)))
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(ParamPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(ParamPoly::from_int(1))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(self.num.add_ref(&o.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den)),
            self.den.mul_ref(&o.den),
        )
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Self::normalized(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
    }
    fn neg_ref(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(ParamPoly::constant(r.clone()))
    }
}

impl Field for RationalFunction {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_factors() {
        let l = ParamPoly::named("lambda");
        let one = ParamPoly::from_int(1);
        let num = l.pow(2).sub_ref(&one);
        let den = ParamPoly::from_int(2).mul_ref(&l.sub_ref(&one));
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r.denom(), &ParamPoly::from_int(1));
        assert_eq!(r.numer(), &l.add_ref(&one).scale(&Rational::frac(1, 2)));
        assert_eq!(r.normalize(), r);
    }

    #[test]
    fn field_ops() {
        let l = ParamPoly::named("lambda");
        let a = RationalFunction::new(ParamPoly::from_int(1), l.clone()).unwrap();
        let b = a.inv().unwrap();
        assert_eq!(a.mul_ref(&b), RationalFunction::one());
        assert!(RationalFunction::new(l, ParamPoly::zero()).is_err());
    }
}
