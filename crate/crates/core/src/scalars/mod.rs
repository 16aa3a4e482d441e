//! Exact scalars: rationals, polynomials in named weight parameters, their
//! fraction field, and quadratic extensions of ℚ.

mod algebraic;
pub mod modp;
mod poly;
mod ratfunc;
mod rational;
mod roots;
mod upoly;

use std::fmt::Debug;

pub use algebraic::{AlgebraicScalar, QuadraticField};
pub use poly::{ParamPoly, Vars};
pub use ratfunc::RationalFunction;
pub use rational::Rational;
pub use roots::{factor_locus, quadratic_split, rational_roots, square_free, LocusFactor};
pub use upoly::UPoly;

/// Commutative ring interface shared by every coefficient type the operator
/// algebra is generic over.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_int(v))
    }
    fn scale(&self, r: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(r))
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
}

impl Field for modp::Fp2 {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            let (a, b) = modp::fp2_inv((self.a, self.b), self.d);
            Some(modp::Fp2 { a, b, d: self.d })
        }
    }
}

impl Field for modp::Fp {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(modp::Fp::inv(*self))
        }
    }
}
