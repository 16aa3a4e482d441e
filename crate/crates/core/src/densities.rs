//! Weighted densities F α^λ, the action 𝕃^λ_{X_F} = X_F + λF′, tensor
//! products with the Leibniz action, parity reversal, and the splitting along
//! the last odd variable.

use std::fmt;

use crate::contact::field_apply;
use crate::error::{usage, Result};
use crate::scalars::{ParamPoly, Rational, Ring};
use crate::superpoly::{bit, Mono, Parity, SuperPoly};

/// A density: payload, weight, and a formal parity-reversal flag.
#[derive(Clone, PartialEq)]
pub struct Density<C: Ring = ParamPoly> {
    payload: SuperPoly<C>,
    weight: C,
    pi: bool,
}

impl<C: Ring> Density<C> {
    pub fn new(payload: SuperPoly<C>, weight: C, pi: bool) -> Self {
        Density { payload, weight, pi }
    }

    pub fn payload(&self) -> &SuperPoly<C> {
        &self.payload
    }

    pub fn weight(&self) -> &C {
        &self.weight
    }

    pub fn pi(&self) -> bool {
        self.pi
    }

    pub fn n(&self) -> u8 {
        self.payload.n()
    }

    /// Payload parity XOR the Π flag.
    pub fn parity(&self) -> Parity {
        match (self.payload.parity(), self.pi) {
            (p, false) => p,
            (Parity::Even, true) if self.payload.is_zero() => Parity::Odd,
            (Parity::Even, true) => Parity::Odd,
            (Parity::Odd, true) => Parity::Even,
            (Parity::Mixed, true) => Parity::Mixed,
        }
    }

    pub fn with_payload(&self, payload: SuperPoly<C>) -> Self {
        Density { payload, weight: self.weight.clone(), pi: self.pi }
    }

    /// Parity-homogeneous parts (one or two).
    pub fn split_parity(&self) -> Vec<Self> {
        let (e, o) = self.payload.split_parity();
        [e, o]
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| self.with_payload(p))
            .collect()
    }
}

/// 𝕃^λ_{X_F} on a payload: X_F(p) + λF′p.
pub fn lie_derivative<C: Ring>(lambda: &C, f: &SuperPoly<C>, p: &SuperPoly<C>) -> Result<SuperPoly<C>> {
    let xf = field_apply(f, p)?;
    Ok(xf.add_unchecked(&f.d_x().mul_unchecked(p).scale(lambda)))
}

/// Act by X_F on a density of weight `lambda`.
pub fn act<C: Ring>(lambda: &C, f: &SuperPoly<C>, d: &Density<C>) -> Result<Density<C>> {
    if *lambda != d.weight {
        return usage("density weight differs from the acting weight");
    }
    Ok(d.with_payload(lie_derivative(lambda, f, &d.payload)?))
}

/// Ordered tensor product of densities over the same arity.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorDensity<C: Ring = ParamPoly> {
    pub factors: Vec<Density<C>>,
}

impl<C: Ring> TensorDensity<C> {
    pub fn new(factors: Vec<Density<C>>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return usage("empty tensor product");
        };
        if factors.iter().any(|d| d.n() != first.n()) {
            return usage("tensor factors of different arities");
        }
        Ok(TensorDensity { factors })
    }

    /// Expand into a sum of tensors with parity-homogeneous factors.
    pub fn split_parity(&self) -> Vec<Self> {
        let mut acc: Vec<Vec<Density<C>>> = vec![vec![]];
        for d in &self.factors {
            let parts = d.split_parity();
            let mut next = vec![];
            for prefix in &acc {
                for p in &parts {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    next.push(v);
                }
            }
            acc = next;
        }
        acc.into_iter().map(|factors| TensorDensity { factors }).collect()
    }
}

/// Leibniz action of X_F on a tensor product: Σ_j ± id⊗…⊗𝕃^{λ_j}⊗…⊗id, with
/// (−1)^{|F|(|d₁|+…+|d_{j−1}|)} for passing F over earlier factors. Returns
/// the sum as a list of tensors.
pub fn act_tensor<C: Ring>(f: &SuperPoly<C>, weights: &[C], t: &TensorDensity<C>) -> Result<Vec<TensorDensity<C>>> {
    if weights.len() != t.factors.len() {
        return usage("one weight per tensor factor required");
    }
    for (w, d) in weights.iter().zip(&t.factors) {
        if *w != d.weight {
            return usage("tensor factor weight differs from the acting weight");
        }
    }
    let mut out = vec![];
    let (fe, fo) = f.split_parity();
    for (fpart, fpar) in [(fe, 0u32), (fo, 1u32)] {
        if fpart.is_zero() {
            continue;
        }
        for piece in t.split_parity() {
            let mut passed = 0u32;
            for j in 0..piece.factors.len() {
                let dj = &piece.factors[j];
                let mut payload = lie_derivative(&weights[j], &fpart, &dj.payload)?;
                if fpar * passed % 2 == 1 {
                    payload = payload.neg();
                }
                if !payload.is_zero() {
                    let mut factors = piece.factors.clone();
                    factors[j] = dj.with_payload(payload);
                    out.push(TensorDensity { factors });
                }
                passed += dj.parity().bit().unwrap_or(0);
            }
        }
    }
    Ok(out)
}

/// Toggle the Π flag.
pub fn pi<C: Ring>(d: &Density<C>) -> Density<C> {
    Density { payload: d.payload.clone(), weight: d.weight.clone(), pi: !d.pi }
}

/// σ(p) = (−1)^{|p|}p.
pub fn sigma<C: Ring>(p: &SuperPoly<C>) -> SuperPoly<C> {
    p.sigma()
}

/// Write F = F₁ + F₂θ_n (F₂ to the left of θ_n) and return the pair
/// (F₁ α^λ, Π(F₂ α^{λ+½})) over n−1 odd variables.
pub fn split<C: Ring>(d: &Density<C>) -> Result<(Density<C>, Density<C>)> {
    let n = d.n();
    if n == 0 {
        return usage("split needs at least one odd variable");
    }
    let (f1, f2) = split_payload(&d.payload);
    let w2 = d.weight.add_ref(&C::from_rational(&Rational::frac(1, 2)));
    Ok((
        Density { payload: f1, weight: d.weight.clone(), pi: d.pi },
        Density { payload: f2, weight: w2, pi: !d.pi },
    ))
}

/// (F₁, F₂) with F = F₁ + F₂θ_n, both over n−1 odd variables.
pub fn split_payload<C: Ring>(p: &SuperPoly<C>) -> (SuperPoly<C>, SuperPoly<C>) {
    let n = p.n();
    let top = bit(n);
    let mut t1 = vec![];
    let mut t2 = vec![];
    for (m, c) in p.terms() {
        // θ_n is the largest index, so it already sits rightmost in θ^S
        if m.mask & top == 0 {
            t1.push((*m, c.clone()));
        } else {
            t2.push((Mono::new(m.x, m.mask & !top), c.clone()));
        }
    }
    (SuperPoly::from_terms(n - 1, t1), SuperPoly::from_terms(n - 1, t2))
}

/// Inverse of [`split_payload`]: F₁ + F₂θ_n over n odd variables.
pub fn merge_payload<C: Ring>(f1: &SuperPoly<C>, f2: &SuperPoly<C>) -> SuperPoly<C> {
    let n = f1.n() + 1;
    let top = bit(n);
    let mut t: Vec<(Mono, C)> = f1.terms().to_vec();
    t.extend(f2.terms().iter().map(|(m, c)| (Mono::new(m.x, m.mask | top), c.clone())));
    SuperPoly::from_terms(n, t)
}

impl<C: Ring + fmt::Display> fmt::Display for Density<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.weight.to_string();
        write!(f, "{} @ {}{}", self.payload, w, if self.pi { " pi" } else { "" })
    }
}

impl<C: Ring> fmt::Debug for Density<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} @ {:?}{}", self.payload, self.weight, if self.pi { " pi" } else { "" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_density, parse_superpoly};

    fn sp(s: &str, n: u8) -> SuperPoly<ParamPoly> {
        parse_superpoly(s, Some(n)).unwrap()
    }

    fn lam() -> ParamPoly {
        ParamPoly::named("lambda")
    }

    #[test]
    fn act_examples() {
        let d = parse_density("x^3 + t1 @ lambda", 1).unwrap();
        assert_eq!(act(&lam(), &sp("1", 1), &d).unwrap().payload(), &sp("3*x^2", 1));
        let d = parse_density("x^4 @ lambda", 1).unwrap();
        assert_eq!(act(&lam(), &sp("x", 1), &d).unwrap().payload(), &sp("(lambda+4)*x^4", 1));
        let d = parse_density("t1 @ lambda", 1).unwrap();
        assert_eq!(act(&lam(), &sp("x", 1), &d).unwrap().payload(), &sp("(lambda+1/2)*t1", 1));
        let wrong = parse_density("t1 @ lambda + 1", 1).unwrap();
        assert!(act(&lam(), &sp("x", 1), &wrong).is_err());
    }

    #[test]
    fn tensor_signs() {
        let d1 = parse_density("t1 @ lambda", 1).unwrap();
        let d2 = parse_density("x @ lambda", 1).unwrap();
        let t = TensorDensity::new(vec![d1.clone(), d2.clone()]).unwrap();
        let w = [lam(), lam()];
        let out = act_tensor(&sp("t1", 1), &w, &t).unwrap();
        // second term: −d1 ⊗ 𝕃_θ(x)
        let second = out.iter().find(|t| t.factors[0] == d1).unwrap();
        let expected = lie_derivative(&lam(), &sp("t1", 1), d2.payload()).unwrap().neg();
        assert_eq!(second.factors[1].payload(), &expected);
        let even = act_tensor(&sp("1", 1), &w, &t).unwrap();
        assert_eq!(even.len(), 1);
    }

    #[test]
    fn pi_sigma_split() {
        let d = parse_density("x + t1 @ lambda", 1).unwrap();
        assert_eq!(pi(&pi(&d)), d);
        assert_eq!(sigma(d.payload()), sp("x - t1", 1));
        let d = parse_density("x^2 @ lambda", 2).unwrap();
        let (a, b) = split(&d).unwrap();
        assert_eq!(a.payload(), &sp("x^2", 1));
        assert!(b.payload().is_zero());
        let d = parse_density("t1*t2 @ lambda", 2).unwrap();
        let (a, b) = split(&d).unwrap();
        assert!(a.payload().is_zero());
        assert_eq!(b.payload(), &sp("t1", 1));
        assert!(b.pi());
        assert_eq!(b.weight(), &lam().add_ref(&ParamPoly::constant(Rational::frac(1, 2))));
        assert_eq!(merge_payload(a.payload(), b.payload()), *d.payload());
    }
}
