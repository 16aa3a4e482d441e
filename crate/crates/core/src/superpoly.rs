//! The supercommutative algebra ℚ[x, θ₁..θ_n] and its derivations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::scalars::{ParamPoly, Rational, Ring};

/// Largest supported number of odd variables.
pub const MAX_N: u8 = 8;

/// Set of θ-indices; bit i-1 stands for θ_i.
pub type ThetaMask = u8;

pub fn mask_len(m: ThetaMask) -> u32 {
    m.count_ones()
}

pub fn bit(i: u8) -> ThetaMask {
    1 << (i - 1)
}

/// Mask of every θ index strictly below `i`.
fn below(i: u8) -> ThetaMask {
    bit(i) - 1
}

/// Mask of every θ index strictly above `i`.
fn above(i: u8) -> ThetaMask {
    !(bit(i) | below(i))
}

/// Indices set in a mask, ascending.
pub fn mask_indices(m: ThetaMask) -> impl Iterator<Item = u8> {
    (1..=MAX_N).filter(move |&i| m & bit(i) != 0)
}

/// Sign of θ^S·θ^T rewritten in canonical order, or `None` when S∩T ≠ ∅.
#[inline]
pub fn theta_product_sign(s: ThetaMask, t: ThetaMask) -> Option<i32> {
    if s & t != 0 {
        return None;
    }
    let mut swaps = 0;
    let mut rest = t;
    while rest != 0 {
        let j = rest.trailing_zeros() as u8 + 1;
        swaps += (s & above(j)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// Left derivative ∂_i θ^S = (-1)^{#{j∈S: j<i}} θ^{S∖i}.
#[inline]
pub fn theta_derivative_sign(i: u8, s: ThetaMask) -> Option<(i32, ThetaMask)> {
    if s & bit(i) == 0 {
        return None;
    }
    let sign = if (s & below(i)).count_ones() % 2 == 0 { 1 } else { -1 };
    Some((sign, s & !bit(i)))
}

/// Monomial x^x θ^mask.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mono {
    pub x: u32,
    pub mask: ThetaMask,
}

impl Mono {
    pub const ONE: Mono = Mono { x: 0, mask: 0 };

    pub fn new(x: u32, mask: ThetaMask) -> Self {
        Mono { x, mask }
    }

    pub fn parity(self) -> u32 {
        self.mask.count_ones() % 2
    }

    /// Product with sign, or `None` if it vanishes.
    #[inline]
    pub fn mul(self, o: Mono) -> Option<(i32, Mono)> {
        theta_product_sign(self.mask, o.mask).map(|s| (s, Mono::new(self.x + o.x, self.mask | o.mask)))
    }

    /// ∂_x^k as integer factor and monomial.
    #[inline]
    pub fn dx(self, k: u32) -> Option<(i128, Mono)> {
        if k > self.x {
            return None;
        }
        let mut f: i128 = 1;
        for j in 0..k {
            f *= (self.x - j) as i128;
        }
        Some((f, Mono::new(self.x - k, self.mask)))
    }

    /// η_i applied to the monomial; always a single monomial or zero.
    #[inline]
    pub fn eta(self, i: u8) -> Option<(i128, Mono)> {
        if let Some((s, m)) = theta_derivative_sign(i, self.mask) {
            return Some((s as i128, Mono::new(self.x, m)));
        }
        if self.x == 0 {
            return None;
        }
        // -θ_i · x·x^{x-1} θ^S
        let s = theta_product_sign(bit(i), self.mask).unwrap();
        Some((-(s as i128) * self.x as i128, Mono::new(self.x - 1, self.mask | bit(i))))
    }

    /// ∂_x^k η^ε (η factors in ascending order, the rightmost acting first).
    #[inline]
    pub fn word(self, k: u32, eps: ThetaMask) -> Option<(i128, Mono)> {
        let mut f: i128 = 1;
        let mut m = self;
        let mut rest = eps;
        while rest != 0 {
            let i = 8 - rest.leading_zeros() as u8;
            let (g, mm) = m.eta(i)?;
            f *= g;
            m = mm;
            rest &= !bit(i);
        }
        let (g, mm) = m.dx(k)?;
        Some((f * g, mm))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn of_bit(b: u32) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// 0 or 1 for homogeneous parities.
    pub fn bit(self) -> Option<u32> {
        match self {
            Parity::Even => Some(0),
            Parity::Odd => Some(1),
            Parity::Mixed => None,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Mixed => "mixed",
        })
    }
}

/// Grassmann polynomial in x, θ₁..θ_n. Terms are sorted by monomial with no
/// zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperPoly<C = ParamPoly> {
    n: u8,
    terms: Vec<(Mono, C)>,
}

impl<C: Ring> SuperPoly<C> {
    pub fn zero(n: u8) -> Self {
        SuperPoly { n, terms: vec![] }
    }

    pub fn one(n: u8) -> Self {
        Self::monomial(n, Mono::ONE, C::one())
    }

    pub fn monomial(n: u8, m: Mono, c: C) -> Self {
        debug_assert!(n >= 8 || m.mask >> n == 0);
        if c.is_zero() {
            return Self::zero(n);
        }
        SuperPoly { n, terms: vec![(m, c)] }
    }

    pub fn x(n: u8) -> Self {
        Self::monomial(n, Mono::new(1, 0), C::one())
    }

    pub fn theta(n: u8, i: u8) -> Result<Self> {
        if i == 0 || i > n {
            return usage(format!("θ index {i} out of range 1..={n}"));
        }
        Ok(Self::monomial(n, Mono::new(0, bit(i)), C::one()))
    }

    pub fn constant(n: u8, c: C) -> Self {
        Self::monomial(n, Mono::ONE, c)
    }

    /// Sum a list of terms, merging duplicates.
    pub fn from_terms(n: u8, mut terms: Vec<(Mono, C)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Mono, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some((lm, lc)) = out.last_mut() {
                if *lm == m {
                    lc.add_assign_ref(&c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        SuperPoly { n, terms: out }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> C {
        self.terms
            .binary_search_by(|t| t.0.cmp(&m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn parity(&self) -> Parity {
        let odd = self.terms.iter().any(|(m, _)| m.parity() == 1);
        let even = self.terms.iter().any(|(m, _)| m.parity() == 0);
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    /// (even part, odd part)
    pub fn split_parity(&self) -> (Self, Self) {
        let (e, o): (Vec<_>, Vec<_>) = self.terms.iter().cloned().partition(|(m, _)| m.parity() == 0);
        (SuperPoly { n: self.n, terms: e }, SuperPoly { n: self.n, terms: o })
    }

    fn check_n(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return usage(format!("arity mismatch: {} vs {}", self.n, o.n));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_n(o)?;
        Ok(self.add_unchecked(o))
    }

    pub(crate) fn add_unchecked(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        Self::from_terms(self.n, t)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        SuperPoly { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self::from_terms(self.n, self.terms.iter().map(|(m, d)| (*m, d.mul_ref(c))).collect())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(m, d)| (*m, d.scale(r))).collect())
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> SuperPoly<D> {
        SuperPoly::from_terms(self.n, self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    /// Supercommutative product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_n(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        let mut t = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if let Some((s, m)) = ma.mul(*mb) {
                    let c = ca.mul_ref(cb);
                    t.push((m, if s < 0 { c.neg_ref() } else { c }));
                }
            }
        }
        Self::from_terms(self.n, t)
    }

    /// Apply a per-monomial map that returns an integer factor and monomial.
    fn map_mono(&self, f: impl Fn(Mono) -> Option<(i128, Mono)>) -> Self {
        let t = self
            .terms
            .iter()
            .filter_map(|(m, c)| f(*m).map(|(k, mm)| (mm, scale_int(c, k))))
            .collect();
        Self::from_terms(self.n, t)
    }

    pub fn d_x(&self) -> Self {
        self.map_mono(|m| m.dx(1))
    }

    pub fn d_x_k(&self, k: u32) -> Self {
        self.map_mono(|m| m.dx(k))
    }

    fn check_index(&self, i: u8) -> Result<()> {
        if i == 0 || i > self.n {
            return usage(format!("θ index {i} out of range 1..={}", self.n));
        }
        Ok(())
    }

    /// Left Grassmann derivative ∂/∂θ_i.
    pub fn d_theta(&self, i: u8) -> Result<Self> {
        self.check_index(i)?;
        Ok(self.map_mono(|m| theta_derivative_sign(i, m.mask).map(|(s, mm)| (s as i128, Mono::new(m.x, mm)))))
    }

    /// η_i = ∂_i - θ_i ∂_x.
    pub fn eta(&self, i: u8) -> Result<Self> {
        self.check_index(i)?;
        Ok(self.eta_unchecked(i))
    }

    pub(crate) fn eta_unchecked(&self, i: u8) -> Self {
        self.map_mono(|m| m.eta(i))
    }

    /// ∂_x^k η^ε applied to the polynomial.
    pub fn apply_word(&self, k: u32, eps: ThetaMask) -> Self {
        self.map_mono(|m| m.word(k, eps))
    }

    /// σ(p) = (-1)^{|p|} p, the odd part negated.
    pub fn sigma(&self) -> Self {
        SuperPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.parity() == 1 { c.neg_ref() } else { c.clone() }))
                .collect(),
        }
    }

    /// Maximal x-degree present (0 for the zero polynomial).
    pub fn x_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.x).max().unwrap_or(0)
    }

    /// Same polynomial viewed with a different number of odd variables.
    pub fn with_arity(&self, n: u8) -> Result<Self> {
        if self.terms.iter().any(|(m, _)| n < 8 && m.mask >> n != 0) {
            return usage(format!("polynomial uses θ beyond index {n}"));
        }
        Ok(SuperPoly { n, terms: self.terms.clone() })
    }
}

pub(crate) fn scale_int<C: Ring>(c: &C, k: i128) -> C {
    match k {
        1 => c.clone(),
        -1 => c.neg_ref(),
        _ => c.scale(&Rational::from_int(i64::try_from(k).expect("factor overflow"))),
    }
}

impl<C: Ring + fmt::Display> SuperPoly<C> {
    /// Canonical text form, reparsable by [`crate::parse::parse_superpoly`].
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let cs = c.to_string();
            let atom = cs.trim_start_matches('-');
            let simple = !atom.contains(['+', '-', ' ', '*', '^']) || cs.is_empty();
            let (neg, body) = if simple && cs.starts_with('-') {
                (true, atom.to_string())
            } else if simple {
                (false, cs.clone())
            } else {
                (false, format!("({cs})"))
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = vec![];
            if m.x == 1 {
                factors.push("x".to_string());
            } else if m.x > 1 {
                factors.push(format!("x^{}", m.x));
            }
            for i in mask_indices(m.mask) {
                factors.push(format!("t{i}"));
            }
            if factors.is_empty() {
                out.push_str(&body);
            } else {
                if body != "1" {
                    out.push_str(&body);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl<C: Ring + fmt::Display> fmt::Display for SuperPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<C: Ring> fmt::Debug for SuperPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c:?})*x^{}", m.x)?;
            for i in mask_indices(m.mask) {
                write!(f, "*t{i}")?;
            }
        }
        Ok(())
    }
}

/// Every monomial with x-degree ≤ `max_x` over n odd variables.
pub fn monomials(n: u8, max_x: u32) -> Vec<Mono> {
    let mut out = vec![];
    for x in 0..=max_x {
        for mask in 0..(1u16 << n) {
            out.push(Mono::new(x, mask as ThetaMask));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = SuperPoly<Rational>;

    fn t(n: u8, i: u8) -> P {
        P::theta(n, i).unwrap()
    }

    fn xp(n: u8, k: u32) -> P {
        P::monomial(n, Mono::new(k, 0), Rational::one())
    }

    #[test]
    fn products() {
        assert!(t(1, 1).mul(&t(1, 1)).unwrap().is_zero());
        assert_eq!(t(2, 2).mul(&t(2, 1)).unwrap(), t(2, 1).mul(&t(2, 2)).unwrap().neg());
        let p = xp(2, 1).add(&t(2, 1).mul(&t(2, 2)).unwrap()).unwrap();
        assert_eq!(p.mul(&t(2, 1)).unwrap(), xp(2, 1).mul(&t(2, 1)).unwrap());
        assert!(t(1, 1).mul(&t(2, 1)).is_err());
    }

    #[test]
    fn derivatives() {
        assert_eq!(xp(0, 3).d_x(), xp(0, 2).scale_rational(&Rational::from_int(3)));
        assert!(t(1, 1).d_x().is_zero());
        let t12 = t(2, 1).mul(&t(2, 2)).unwrap();
        assert_eq!(t12.d_theta(1).unwrap(), t(2, 2));
        assert_eq!(t12.d_theta(2).unwrap(), t(2, 1).neg());
        assert!(xp(2, 2).d_theta(1).unwrap().is_zero());
        assert!(xp(2, 2).d_theta(3).is_err());
    }

    #[test]
    fn eta_examples() {
        assert_eq!(xp(1, 1).eta(1).unwrap(), t(1, 1).neg());
        assert_eq!(t(1, 1).eta(1).unwrap(), P::one(1));
        let p = xp(2, 2).mul(&t(2, 2)).unwrap();
        let twice = p.eta(1).unwrap().eta(1).unwrap();
        let expected = xp(2, 1).mul(&t(2, 2)).unwrap().scale_rational(&Rational::from_int(-2));
        assert_eq!(twice, expected);
    }

    #[test]
    fn parity_and_sigma() {
        let p = xp(1, 1).add(&t(1, 1)).unwrap();
        assert_eq!(p.parity(), Parity::Mixed);
        assert_eq!(p.sigma(), xp(1, 1).sub(&t(1, 1)).unwrap());
        assert_eq!(p.sigma().sigma(), p);
    }
}
