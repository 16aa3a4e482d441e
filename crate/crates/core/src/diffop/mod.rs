//! Differential operators on densities in the normal form x^aθ^S ∂_x^k η^ε.
//!
//! Operators with a Π-flagged slot read the payload of that slot through σ,
//! and a Π-flagged target is written through σ. With the action commuting
//! with the formal Π flag, this makes every splitting and identification map
//! a plain composition of words.

mod bi;
mod json;
mod structure;

use std::fmt;

use crate::error::{usage, Result};
use crate::scalars::{ParamPoly, Rational, Ring};
use crate::superpoly::{
    bit, mask_indices, mask_len, scale_int, theta_product_sign, Mono, SuperPoly, ThetaMask,
};

pub use bi::{BiDiffOp, BiPoly, BiWord, Slot};
pub use json::{BiDiffOpJson, SlotJson, TermJson};
pub use bi::{act_on_bi, apply_bi};
pub use structure::{decompose_psi, parity_swap, phi_decompose, phi_lift, psi_lift, PsiParts, PSI_FLAGS};

/// Merge duplicate keys and drop zeros.
pub(crate) fn collect<K: Ord + Copy, C: Ring>(mut v: Vec<(K, C)>) -> Vec<(K, C)> {
    v.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(K, C)> = Vec::with_capacity(v.len());
    for (k, c) in v {
        if let Some((lk, lc)) = out.last_mut() {
            if *lk == k {
                lc.add_assign_ref(&c);
                continue;
            }
        }
        out.push((k, c));
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn sign_of(parity: u32) -> i128 {
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

/// η_i ∘ ∂^k η^ε rewritten as ± ∂^{k'} η^{ε'}.
#[inline]
pub(crate) fn eta_left(i: u8, k: u32, e: ThetaMask) -> (i128, u32, ThetaMask) {
    let below = (e & (bit(i) - 1)).count_ones();
    if e & bit(i) == 0 {
        (sign_of(below), k, e | bit(i))
    } else {
        // η_i η_i = −∂_x
        (-sign_of(below), k + 1, e & !bit(i))
    }
}

/// Word x^a θ^S ∂_x^k η^ε.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpWord {
    pub a: u32,
    pub s: ThetaMask,
    pub k: u32,
    pub e: ThetaMask,
}

impl OpWord {
    pub const ID: OpWord = OpWord { a: 0, s: 0, k: 0, e: 0 };

    pub fn new(a: u32, s: ThetaMask, k: u32, e: ThetaMask) -> Self {
        OpWord { a, s, k, e }
    }

    pub fn coeff(self) -> Mono {
        Mono::new(self.a, self.s)
    }

    pub fn parity(self) -> u32 {
        (mask_len(self.s) + mask_len(self.e)) % 2
    }
}

/// One of the generators of the operator algebra.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    X,
    Theta(u8),
    Dx,
    Eta(u8),
}

/// A linear combination of words over n odd variables, without weights.
#[derive(Clone, PartialEq)]
pub struct OpPoly<C = ParamPoly> {
    n: u8,
    terms: Vec<(OpWord, C)>,
}

impl<C: Ring> OpPoly<C> {
    pub fn zero(n: u8) -> Self {
        OpPoly { n, terms: vec![] }
    }

    pub fn identity(n: u8) -> Self {
        Self::word(n, OpWord::ID, C::one())
    }

    pub fn word(n: u8, w: OpWord, c: C) -> Self {
        Self::from_terms(n, vec![(w, c)])
    }

    pub fn from_terms(n: u8, terms: Vec<(OpWord, C)>) -> Self {
        OpPoly { n, terms: collect(terms) }
    }

    /// Multiplication by a function.
    pub fn multiplication(p: &SuperPoly<C>) -> Self {
        Self::from_terms(
            p.n(),
            p.terms().iter().map(|(m, c)| (OpWord::new(m.x, m.mask, 0, 0), c.clone())).collect(),
        )
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn terms(&self) -> &[(OpWord, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        Self::from_terms(self.n, t)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        OpPoly { n: self.n, terms: self.terms.iter().map(|(w, c)| (*w, c.neg_ref())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(w, d)| (*w, d.mul_ref(c))).collect())
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> OpPoly<D> {
        OpPoly::from_terms(self.n, self.terms.iter().map(|(w, c)| (*w, f(c))).collect())
    }

    /// Parity of every term, if they agree.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|(w, _)| w.parity());
        let p = it.next().unwrap_or(0);
        it.all(|q| q == p).then_some(p)
    }

    /// Left-multiply by a single generator.
    pub fn left(&self, g: Generator) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * 2);
        for (w, c) in &self.terms {
            left_word(g, *w, &mut |f, w2| out.push((w2, scale_int(c, f))));
        }
        Self::from_terms(self.n, out)
    }

    /// self ∘ o
    pub fn compose(&self, o: &Self) -> Self {
        let mut acc = vec![];
        for (w, c) in &self.terms {
            let mut cur = o.clone();
            for g in word_generators(*w).into_iter().rev() {
                cur = cur.left(g);
            }
            acc.extend(cur.terms.into_iter().map(|(w2, d)| (w2, d.mul_ref(c))));
        }
        Self::from_terms(self.n, acc)
    }

    /// Apply to a polynomial.
    pub fn apply(&self, p: &SuperPoly<C>) -> SuperPoly<C> {
        let mut out = vec![];
        for (w, c) in &self.terms {
            let cm = w.coeff();
            for (m, d) in p.terms() {
                let Some((f, m1)) = m.word(w.k, w.e) else { continue };
                let Some((s, m2)) = cm.mul(m1) else { continue };
                out.push((m2, scale_int(&c.mul_ref(d), f * s as i128)));
            }
        }
        SuperPoly::from_terms(self.n, out)
    }

    /// Substitute η_n ↦ −θ_n∂_x, valid on inputs free of θ_n.
    pub(crate) fn restrict_last(&self) -> Self {
        let n = self.n;
        let top = bit(n);
        let mut out = vec![];
        for (w, c) in &self.terms {
            if w.e & top == 0 {
                out.push((*w, c.clone()));
                continue;
            }
            if w.s & top != 0 {
                continue;
            }
            let e = w.e & !top;
            let f = -sign_of(mask_len(e));
            out.push((OpWord::new(w.a, w.s | top, w.k + 1, e), scale_int(c, f)));
        }
        Self::from_terms(n, out)
    }

    pub(crate) fn with_arity(&self, n: u8) -> Self {
        OpPoly { n, terms: self.terms.clone() }
    }
}

/// x^aθ^S∂^kη^ε as a product of generators, leftmost first.
pub(crate) fn word_generators(w: OpWord) -> Vec<Generator> {
    let mut g = vec![Generator::X; w.a as usize];
    g.extend(mask_indices(w.s).map(Generator::Theta));
    g.extend(std::iter::repeat(Generator::Dx).take(w.k as usize));
    g.extend(mask_indices(w.e).map(Generator::Eta));
    g
}

/// g ∘ w in normal form, emitted as (integer factor, word).
#[inline]
pub(crate) fn left_word(g: Generator, w: OpWord, emit: &mut impl FnMut(i128, OpWord)) {
    match g {
        Generator::X => emit(1, OpWord { a: w.a + 1, ..w }),
        Generator::Theta(i) => {
            if let Some(s) = theta_product_sign(bit(i), w.s) {
                emit(s as i128, OpWord { s: w.s | bit(i), ..w });
            }
        }
        Generator::Dx => {
            if w.a > 0 {
                emit(w.a as i128, OpWord { a: w.a - 1, ..w });
            }
            emit(1, OpWord { k: w.k + 1, ..w });
        }
        Generator::Eta(i) => {
            if let Some((f, m)) = w.coeff().eta(i) {
                emit(f, OpWord { a: m.x, s: m.mask, ..w });
            }
            let (f, k, e) = eta_left(i, w.k, w.e);
            emit(sign_of(mask_len(w.s)) * f, OpWord { k, e, ..w });
        }
    }
}

/// Normal form of the composite g₁∘g₂∘…∘g_m.
pub fn normal_order(n: u8, gens: &[Generator]) -> Result<OpPoly<Rational>> {
    for g in gens {
        if let Generator::Theta(i) | Generator::Eta(i) = g {
            if *i == 0 || *i > n {
                return usage(format!("generator index {i} out of range 1..={n}"));
            }
        }
    }
    let mut cur = OpPoly::identity(n);
    for g in gens.iter().rev() {
        cur = cur.left(*g);
    }
    Ok(cur)
}

/// The operator 𝕃^λ_{X_F} = F∂_x − ½(−1)^{|F|}Σ η_i(F)η_i + λF′.
pub fn lie_operator<C: Ring>(f: &SuperPoly<C>, lambda: &C) -> OpPoly<C> {
    let n = f.n();
    let half = C::from_rational(&Rational::frac(1, 2));
    let mut t = vec![];
    for (m, c) in f.terms() {
        t.push((OpWord::new(m.x, m.mask, 1, 0), c.clone()));
    }
    for (m, c) in f.d_x().terms() {
        t.push((OpWord::new(m.x, m.mask, 0, 0), c.mul_ref(lambda)));
    }
    for i in 1..=n {
        for (m, c) in f.eta_unchecked(i).terms() {
            // η_i(F) has parity |F|+1, so (−1)^{|F|} = −(−1)^{|η_i F|}
            let h = if m.parity() == 1 { half.neg_ref() } else { half.clone() };
            t.push((OpWord::new(m.x, m.mask, 0, bit(i)), c.mul_ref(&h)));
        }
    }
    OpPoly::from_terms(n, t)
}

/// The lift of an aff(n|1) generator; other hamiltonians are rejected.
pub fn lift_generator<C: Ring>(h: &SuperPoly<C>, lambda: &C) -> Result<OpPoly<C>> {
    let ok = h.terms().len() == 1 && {
        let (m, c) = &h.terms()[0];
        *c == C::one()
            && match (m.x, mask_len(m.mask)) {
                (0, 0..=2) | (1, 0) => true,
                _ => false,
            }
    };
    if !ok {
        return usage("lift_generator expects one of 1, x, θ_i, θ_iθ_j");
    }
    Ok(lie_operator(h, lambda))
}

/// A linear differential operator between density modules.
#[derive(Clone, PartialEq)]
pub struct LinDiffOp<C = ParamPoly> {
    pub op: OpPoly<C>,
    pub lambda: C,
    pub mu: C,
    pub pi_src: bool,
    pub pi_tgt: bool,
}

impl<C: Ring> LinDiffOp<C> {
    pub fn new(op: OpPoly<C>, lambda: C, mu: C) -> Self {
        LinDiffOp { op, lambda, mu, pi_src: false, pi_tgt: false }
    }

    pub fn with_pi(mut self, src: bool, tgt: bool) -> Self {
        self.pi_src = src;
        self.pi_tgt = tgt;
        self
    }

    pub fn n(&self) -> u8 {
        self.op.n
    }

    pub fn is_zero(&self) -> bool {
        self.op.is_zero()
    }

    /// Parity counting the Π flags, if homogeneous.
    pub fn parity(&self) -> Option<u32> {
        self.op.parity().map(|p| (p + self.pi_src as u32 + self.pi_tgt as u32) % 2)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> LinDiffOp<D> {
        LinDiffOp {
            op: self.op.map_coeffs(&f),
            lambda: f(&self.lambda),
            mu: f(&self.mu),
            pi_src: self.pi_src,
            pi_tgt: self.pi_tgt,
        }
    }
}

/// Apply a linear operator to a density of matching weight.
pub fn apply_lin<C: Ring>(a: &LinDiffOp<C>, d: &crate::densities::Density<C>) -> Result<crate::densities::Density<C>> {
    if d.weight() != &a.lambda || d.pi() != a.pi_src {
        return usage("density does not match the operator source");
    }
    if d.n() != a.n() {
        return usage("arity mismatch");
    }
    let input = if a.pi_src { d.payload().sigma() } else { d.payload().clone() };
    let mut out = a.op.apply(&input);
    if a.pi_tgt {
        out = out.sigma();
    }
    Ok(crate::densities::Density::new(out, a.mu.clone(), a.pi_tgt))
}

/// X_H·A = 𝕃^μ_H∘A − (−1)^{|A||H|}A∘𝕃^λ_H, term by term.
pub fn act_on_lin<C: Ring>(h: &SuperPoly<C>, a: &LinDiffOp<C>) -> Result<LinDiffOp<C>> {
    if h.n() != a.n() {
        return usage("arity mismatch");
    }
    let (he, ho) = h.split_parity();
    let mut acc = OpPoly::zero(a.n());
    for (hp, hpar) in [(he, 0u32), (ho, 1u32)] {
        if hp.is_zero() {
            continue;
        }
        let lmu = lie_operator(&hp, &a.mu);
        let llam = lie_operator(&hp, &a.lambda);
        let left = lmu.compose(&a.op);
        let mut right = vec![];
        for (w, c) in &a.op.terms {
            let single = OpPoly::word(a.n(), *w, c.clone());
            let r = single.compose(&llam);
            let s = sign_of(hpar * w.parity());
            right.extend(r.terms.into_iter().map(|(w2, d)| (w2, scale_int(&d, s))));
        }
        let mut part = left.sub(&OpPoly::from_terms(a.n(), right));
        if a.pi_tgt && hpar == 1 {
            part = part.neg();
        }
        acc = acc.add(&part);
    }
    Ok(LinDiffOp { op: acc, ..a.clone() })
}

impl<C: Ring + fmt::Display> fmt::Display for OpPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            write_word(f, *w)?;
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for OpPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c:?})")?;
            write_word(f, *w)?;
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for LinDiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} : {:?}{} -> {:?}{}", self.op, self.lambda, pi_mark(self.pi_src), self.mu, pi_mark(self.pi_tgt))
    }
}

fn pi_mark(b: bool) -> &'static str {
    if b {
        " pi"
    } else {
        ""
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, w: OpWord) -> fmt::Result {
    match w.a {
        0 => {}
        1 => f.write_str("x")?,
        a => write!(f, "x^{a}")?,
    }
    for i in mask_indices(w.s) {
        write!(f, "θ{i}")?;
    }
    match w.k {
        0 => {}
        1 => f.write_str("∂")?,
        k => write!(f, "∂^{k}")?,
    }
    for i in mask_indices(w.e) {
        write!(f, "η{i}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpoly::monomials;
    use Generator::*;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_int(v)
    }

    fn apply_seq(n: u8, gens: &[Generator], p: &SuperPoly<Q>) -> SuperPoly<Q> {
        let mut cur = p.clone();
        for g in gens.iter().rev() {
            cur = match g {
                X => SuperPoly::monomial(n, Mono::new(1, 0), q(1)).mul(&cur).unwrap(),
                Theta(i) => SuperPoly::theta(n, *i).unwrap().mul(&cur).unwrap(),
                Dx => cur.d_x(),
                Eta(i) => cur.eta(*i).unwrap(),
            };
        }
        cur
    }

    #[test]
    fn normal_order_examples() {
        let e = normal_order(1, &[Eta(1), Eta(1)]).unwrap();
        assert_eq!(e, OpPoly::word(1, OpWord::new(0, 0, 1, 0), q(-1)));
        let d = normal_order(0, &[Dx, X]).unwrap();
        assert_eq!(
            d,
            OpPoly::from_terms(0, vec![(OpWord::new(1, 0, 1, 0), q(1)), (OpWord::ID, q(1))])
        );
        let t = normal_order(1, &[Eta(1), Theta(1)]).unwrap();
        assert_eq!(
            t,
            OpPoly::from_terms(1, vec![(OpWord::ID, q(1)), (OpWord::new(0, 1, 0, 1), q(-1))])
        );
    }

    #[test]
    fn normal_order_agrees_with_sequential_application() {
        let n = 2;
        let alphabet = [X, Theta(1), Theta(2), Dx, Eta(1), Eta(2)];
        let mut words: Vec<Vec<Generator>> = vec![vec![]];
        let mut frontier = words.clone();
        for _ in 0..4 {
            frontier = frontier
                .iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |g| {
                        let mut v = w.clone();
                        v.push(*g);
                        v
                    })
                })
                .collect();
            words.extend(frontier.iter().cloned());
        }
        for w in &words {
            let op = normal_order(n, w).unwrap();
            for m in monomials(n, 4) {
                let p = SuperPoly::monomial(n, m, q(1));
                assert_eq!(op.apply(&p), apply_seq(n, w, &p), "word {w:?} on {m:?}");
            }
        }
    }

    #[test]
    fn generator_lifts_match_density_action() {
        let lam = q(3);
        for n in 1..=2u8 {
            let gens = crate::contact::generators::<Q>(&crate::contact::SubalgebraSpec::aff(n), 0).unwrap();
            for h in &gens {
                let l = lift_generator(h, &lam).unwrap();
                for m in monomials(n, 3) {
                    let p = SuperPoly::monomial(n, m, q(1));
                    assert_eq!(l.apply(&p), crate::densities::lie_derivative(&lam, h, &p).unwrap(), "h={h:?} p={p:?}");
                }
            }
        }
        let th = SuperPoly::<Q>::theta(1, 1).unwrap();
        let x = SuperPoly::monomial(1, Mono::new(1, 0), q(1));
        assert_eq!(lift_generator(&th, &lam).unwrap().apply(&x), th.scale_rational(&Q::frac(1, 2)));
        assert_eq!(lift_generator(&x, &lam).unwrap().apply(&SuperPoly::one(1)), SuperPoly::constant(1, lam.clone()));
        assert!(lift_generator(&SuperPoly::monomial(1, Mono::new(2, 0), q(1)), &lam).is_err());
    }

    #[test]
    fn act_on_lin_examples() {
        let l = ParamPoly::named("lambda");
        let dx = OpPoly::word(1, OpWord::new(0, 0, 1, 0), ParamPoly::from_int(1));
        let a = LinDiffOp::new(dx.clone(), l.clone(), l.clone());
        assert!(act_on_lin(&SuperPoly::one(1), &a).unwrap().is_zero());
        // X_x·∂^k = (μ−λ−k)∂^k
        let mu = l.add_ref(&ParamPoly::from_int(5));
        let d3 = OpPoly::word(0, OpWord::new(0, 0, 3, 0), ParamPoly::from_int(1));
        let a = LinDiffOp::new(d3.clone(), l.clone(), mu);
        let r = act_on_lin(&SuperPoly::x(0), &a).unwrap();
        assert_eq!(r.op, d3.scale(&ParamPoly::from_int(2)));
        let id = LinDiffOp::new(OpPoly::identity(1), l.clone(), l.clone());
        assert!(act_on_lin(&SuperPoly::theta(1, 1).unwrap(), &id).unwrap().is_zero());
    }
}
