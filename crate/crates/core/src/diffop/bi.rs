//! Bilinear operators J(F,G) = Σ c·x^aθ^S·W₁(F)·W₂(G)·(−1)^{(|W₂|+π₂)·p(F)},
//! where p(F) is the parity of the first argument counting its Π flag.

use std::fmt;

use super::{collect, eta_left, left_word, lie_operator, sign_of, write_word, Generator, OpPoly, OpWord};
use crate::densities::Density;
use crate::error::{usage, Result};
use crate::scalars::{ParamPoly, Ring};
use crate::superpoly::{bit, mask_len, scale_int, theta_product_sign, Mono, SuperPoly, ThetaMask};

/// One slot word ∂_x^k η^ε.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub k: u32,
    pub e: ThetaMask,
}

impl Slot {
    pub const ID: Slot = Slot { k: 0, e: 0 };

    pub fn new(k: u32, e: ThetaMask) -> Self {
        Slot { k, e }
    }

    pub fn parity(self) -> u32 {
        mask_len(self.e) % 2
    }

    fn as_word(self) -> OpWord {
        OpWord::new(0, 0, self.k, self.e)
    }
}

/// Key of a bilinear term: coefficient monomial and the two slot words.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiWord {
    pub a: u32,
    pub s: ThetaMask,
    pub w1: Slot,
    pub w2: Slot,
}

impl BiWord {
    pub fn new(a: u32, s: ThetaMask, w1: Slot, w2: Slot) -> Self {
        BiWord { a, s, w1, w2 }
    }

    pub fn coeff(self) -> Mono {
        Mono::new(self.a, self.s)
    }

    pub fn parity(self) -> u32 {
        (mask_len(self.s) + self.w1.parity() + self.w2.parity()) % 2
    }

    /// Weight of the term under X_x: k₁ + k₂ + (|ε₁| + |ε₂| − |S|)/2 − a, doubled.
    pub fn twice_shift(self) -> i64 {
        2 * (self.w1.k as i64 + self.w2.k as i64 - self.a as i64) + mask_len(self.w1.e) as i64
            + mask_len(self.w2.e) as i64
            - mask_len(self.s) as i64
    }
}

/// Weightless sum of bilinear terms over n odd variables.
#[derive(Clone, PartialEq)]
pub struct BiPoly<C = ParamPoly> {
    n: u8,
    terms: Vec<(BiWord, C)>,
}

impl<C: Ring> BiPoly<C> {
    pub fn zero(n: u8) -> Self {
        BiPoly { n, terms: vec![] }
    }

    pub fn from_terms(n: u8, terms: Vec<(BiWord, C)>) -> Self {
        BiPoly { n, terms: collect(terms) }
    }

    pub fn term(n: u8, w: BiWord, c: C) -> Self {
        Self::from_terms(n, vec![(w, c)])
    }

    /// The product FG.
    pub fn product(n: u8) -> Self {
        Self::term(n, BiWord::new(0, 0, Slot::ID, Slot::ID), C::one())
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn terms(&self) -> &[(BiWord, C)] {
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
        BiPoly { n: self.n, terms: self.terms.iter().map(|(w, c)| (*w, c.neg_ref())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(w, d)| (*w, d.mul_ref(c))).collect())
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> BiPoly<D> {
        BiPoly::from_terms(self.n, self.terms.iter().map(|(w, c)| (*w, f(c))).collect())
    }

    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|(w, _)| w.parity());
        let p = it.next().unwrap_or(0);
        it.all(|q| q == p).then_some(p)
    }

    pub(crate) fn with_arity(&self, n: u8) -> Self {
        BiPoly { n, terms: self.terms.clone() }
    }

    /// g ∘ J with the product rule distributing over C·W₁(F)·W₂(G).
    pub fn left(&self, g: Generator, pi1: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * 3);
        for (w, c) in &self.terms {
            let mut push = |f: i128, bw: BiWord| out.push((bw, scale_int(c, f)));
            match g {
                Generator::X | Generator::Theta(_) => {
                    let ow = OpWord::new(w.a, w.s, 0, 0);
                    left_word(g, ow, &mut |f, o| push(f, BiWord { a: o.a, s: o.s, ..*w }));
                }
                Generator::Dx => {
                    if w.a > 0 {
                        push(w.a as i128, BiWord { a: w.a - 1, ..*w });
                    }
                    push(1, BiWord { w1: Slot::new(w.w1.k + 1, w.w1.e), ..*w });
                    push(1, BiWord { w2: Slot::new(w.w2.k + 1, w.w2.e), ..*w });
                }
                Generator::Eta(i) => {
                    if let Some((f, m)) = w.coeff().eta(i) {
                        push(f, BiWord { a: m.x, s: m.mask, ..*w });
                    }
                    let ss = sign_of(mask_len(w.s));
                    let (f, k, e) = eta_left(i, w.w1.k, w.w1.e);
                    push(ss * f, BiWord { w1: Slot::new(k, e), ..*w });
                    let s3 = ss * sign_of(w.w1.parity() + pi1 as u32);
                    let (f, k, e) = eta_left(i, w.w2.k, w.w2.e);
                    push(s3 * f, BiWord { w2: Slot::new(k, e), ..*w });
                }
            }
        }
        Self::from_terms(self.n, out)
    }

    /// L ∘ J for a linear operator L.
    pub fn left_op(&self, l: &OpPoly<C>, pi1: bool) -> Self {
        let mut acc = vec![];
        for (w, c) in l.terms() {
            let mut cur = self.clone();
            for g in super::word_generators(*w).into_iter().rev() {
                cur = cur.left(g, pi1);
            }
            acc.extend(cur.terms.into_iter().map(|(bw, d)| (bw, d.mul_ref(c))));
        }
        Self::from_terms(self.n, acc)
    }

    /// Terms of J(L·, ·) with the slot-1 word replaced by W₁∘L; no sign.
    pub fn compose_slot1(&self, l: &OpPoly<C>) -> Self {
        let mut acc = vec![];
        for (w, c) in &self.terms {
            let comp = OpPoly::word(self.n, w.w1.as_word(), c.clone()).compose(l);
            for (v, d) in comp.terms() {
                let Some(s) = theta_product_sign(w.s, v.s) else { continue };
                let bw = BiWord::new(w.a + v.a, w.s | v.s, Slot::new(v.k, v.e), w.w2);
                acc.push((bw, scale_int(d, s as i128)));
            }
        }
        Self::from_terms(self.n, acc)
    }

    /// J∘₂L: J(v₁, L v₂) = (−1)^{|L|p(v₁)} (J∘₂L)(v₁, v₂).
    pub fn compose_slot2(&self, l: &OpPoly<C>, pi1: bool) -> Self {
        let mut acc = vec![];
        for (w, c) in &self.terms {
            let comp = OpPoly::word(self.n, w.w2.as_word(), c.clone()).compose(l);
            for (v, d) in comp.terms() {
                let Some(s) = theta_product_sign(w.s, v.s) else { continue };
                let pass = sign_of(mask_len(v.s) * (w.w1.parity() + pi1 as u32));
                let bw = BiWord::new(w.a + v.a, w.s | v.s, w.w1, Slot::new(v.k, v.e));
                acc.push((bw, scale_int(d, s as i128 * pass)));
            }
        }
        Self::from_terms(self.n, acc)
    }

    /// Substitute η_n ↦ −θ_nη… in both slots, valid on θ_n-free arguments.
    pub(crate) fn restrict_last(&self, pi1: bool) -> Self {
        let n = self.n;
        let top = bit(n);
        let mut out = vec![];
        for (w, c) in &self.terms {
            let mut bw = *w;
            let mut f: i128 = 1;
            if bw.w1.e & top != 0 {
                if bw.s & top != 0 {
                    continue;
                }
                let e = bw.w1.e & !top;
                f *= -sign_of(mask_len(e));
                bw = BiWord { s: bw.s | top, w1: Slot::new(bw.w1.k + 1, e), ..bw };
            }
            if bw.w2.e & top != 0 {
                if bw.s & top != 0 {
                    continue;
                }
                let e = bw.w2.e & !top;
                f *= -sign_of(mask_len(e)) * sign_of(bw.w1.parity() + pi1 as u32);
                bw = BiWord { s: bw.s | top, w2: Slot::new(bw.w2.k + 1, e), ..bw };
            }
            out.push((bw, scale_int(c, f)));
        }
        Self::from_terms(n, out)
    }

    /// Evaluate on payloads u₁, u₂ as seen by the slots, with p₁ the
    /// effective parity of the first argument.
    pub(crate) fn eval_raw(&self, u1: &SuperPoly<C>, u2: &SuperPoly<C>, pi1: bool, pi2: bool) -> SuperPoly<C> {
        let mut out = vec![];
        let (e1, o1) = u1.split_parity();
        for (part, par) in [(e1, 0u32), (o1, 1u32)] {
            if part.is_zero() {
                continue;
            }
            let p1 = (par + pi1 as u32) % 2;
            for (w, c) in &self.terms {
                let a = part.apply_word(w.w1.k, w.w1.e);
                if a.is_zero() {
                    continue;
                }
                let b = u2.apply_word(w.w2.k, w.w2.e);
                if b.is_zero() {
                    continue;
                }
                let sign = sign_of((w.w2.parity() + pi2 as u32) * p1);
                let cm = w.coeff();
                for (ma, ca) in a.terms() {
                    let Some((s1, m1)) = cm.mul(*ma) else { continue };
                    let cc = c.mul_ref(ca);
                    for (mb, cb) in b.terms() {
                        let Some((s2, m2)) = m1.mul(*mb) else { continue };
                        out.push((m2, scale_int(&cc.mul_ref(cb), sign * s1 as i128 * s2 as i128)));
                    }
                }
            }
        }
        SuperPoly::from_terms(self.n, out)
    }

    /// Partial application in the first slot: v ↦ J(u₁, v) as a linear operator.
    pub fn apply_slot1(&self, u1: &SuperPoly<C>, pi1: bool, pi2: bool) -> OpPoly<C> {
        let mut out = vec![];
        let (e1, o1) = u1.split_parity();
        for (part, par) in [(e1, 0u32), (o1, 1u32)] {
            if part.is_zero() {
                continue;
            }
            let p1 = (par + pi1 as u32) % 2;
            for (w, c) in &self.terms {
                let a = part.apply_word(w.w1.k, w.w1.e);
                let sign = sign_of((w.w2.parity() + pi2 as u32) * p1);
                let cm = w.coeff();
                for (ma, ca) in a.terms() {
                    let Some((s1, m1)) = cm.mul(*ma) else { continue };
                    let word = OpWord::new(m1.x, m1.mask, w.w2.k, w.w2.e);
                    out.push((word, scale_int(&c.mul_ref(ca), sign * s1 as i128)));
                }
            }
        }
        OpPoly::from_terms(self.n, out)
    }
}

/// A bilinear differential operator F_τ ⊗ F_λ → F_μ with Π flags on the two
/// arguments and the target.
#[derive(Clone, PartialEq)]
pub struct BiDiffOp<C = ParamPoly> {
    pub op: BiPoly<C>,
    pub tau: C,
    pub lambda: C,
    pub mu: C,
    pub pi: [bool; 3],
}

impl<C: Ring> BiDiffOp<C> {
    pub fn new(op: BiPoly<C>, tau: C, lambda: C, mu: C) -> Self {
        BiDiffOp { op, tau, lambda, mu, pi: [false; 3] }
    }

    pub fn with_pi(mut self, pi: [bool; 3]) -> Self {
        self.pi = pi;
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
        let flags: u32 = self.pi.iter().map(|&b| b as u32).sum();
        self.op.parity().map(|p| (p + flags) % 2)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> BiDiffOp<D> {
        BiDiffOp { op: self.op.map_coeffs(&f), tau: f(&self.tau), lambda: f(&self.lambda), mu: f(&self.mu), pi: self.pi }
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.n() != o.n() || self.tau != o.tau || self.lambda != o.lambda || self.mu != o.mu || self.pi != o.pi {
            return usage("operators live in different spaces");
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(BiDiffOp { op: self.op.add(&o.op), ..self.clone() })
    }

    pub fn scale(&self, c: &C) -> Self {
        BiDiffOp { op: self.op.scale(c), ..self.clone() }
    }

    /// v ↦ J(u, v) for a payload u of the first argument, as an operator on
    /// the σ-read payload of the second argument, before any σ on the output.
    pub fn partial(&self, u: &SuperPoly<C>) -> OpPoly<C> {
        let read = if self.pi[0] { u.sigma() } else { u.clone() };
        self.op.apply_slot1(&read, self.pi[0], self.pi[1])
    }
}

/// Evaluate J on two densities.
pub fn apply_bi<C: Ring>(j: &BiDiffOp<C>, d1: &Density<C>, d2: &Density<C>) -> Result<Density<C>> {
    if d1.weight() != &j.tau || d2.weight() != &j.lambda || d1.pi() != j.pi[0] || d2.pi() != j.pi[1] {
        return usage("densities do not match the operator's source weights");
    }
    if d1.n() != j.n() || d2.n() != j.n() {
        return usage("arity mismatch");
    }
    let u1 = if j.pi[0] { d1.payload().sigma() } else { d1.payload().clone() };
    let u2 = if j.pi[1] { d2.payload().sigma() } else { d2.payload().clone() };
    let mut out = j.op.eval_raw(&u1, &u2, j.pi[0], j.pi[1]);
    if j.pi[2] {
        out = out.sigma();
    }
    Ok(Density::new(out, j.mu.clone(), j.pi[2]))
}

/// X_H·J = 𝕃^μ∘J − (−1)^{|H||J|}J∘(𝕃^τ⊗1) − (−1)^{|H|(|J|+|F|)}J∘(1⊗𝕃^λ),
/// computed term by term in the two-slot operator algebra.
pub fn act_on_bi<C: Ring>(h: &SuperPoly<C>, j: &BiDiffOp<C>) -> Result<BiDiffOp<C>> {
    if h.n() != j.n() {
        return usage("arity mismatch");
    }
    let [pi1, _, pio] = j.pi;
    let (he, ho) = h.split_parity();
    let mut acc = BiPoly::zero(j.n());
    for (hp, hpar) in [(he, 0u32), (ho, 1u32)] {
        if hp.is_zero() {
            continue;
        }
        let lmu = lie_operator(&hp, &j.mu);
        let ltau = lie_operator(&hp, &j.tau);
        let llam = lie_operator(&hp, &j.lambda);
        let mut part = j.op.left_op(&lmu, pi1);
        let mut rest = vec![];
        for (w, c) in j.op.terms() {
            let single = BiPoly::term(j.n(), *w, c.clone());
            let s1 = sign_of(hpar * (mask_len(w.s) + w.w1.parity()));
            let r1 = single.compose_slot1(&ltau);
            rest.extend(r1.terms.into_iter().map(|(bw, d)| (bw, scale_int(&d, s1))));
            let s2 = sign_of(hpar * (w.parity() + pi1 as u32));
            let r2 = single.compose_slot2(&llam, pi1);
            rest.extend(r2.terms.into_iter().map(|(bw, d)| (bw, scale_int(&d, s2))));
        }
        part = part.sub(&BiPoly::from_terms(j.n(), rest));
        if pio && hpar == 1 {
            part = part.neg();
        }
        acc = acc.add(&part);
    }
    Ok(BiDiffOp { op: acc, ..j.clone() })
}

impl<C: Ring> fmt::Debug for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c:?})")?;
            write_word(f, OpWord::new(w.a, w.s, 0, 0))?;
            f.write_str("[")?;
            write_word(f, w.w1.as_word())?;
            f.write_str("|")?;
            write_word(f, w.w2.as_word())?;
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for BiDiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} : ({:?}, {:?}; {:?}) pi={:?}", self.op, self.tau, self.lambda, self.mu, self.pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::act;
    use crate::scalars::Rational;
    use crate::superpoly::monomials;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_int(v)
    }

    fn random_bi(rng: &mut ChaCha8Rng, n: u8, parity: u32, terms: usize) -> BiPoly<Q> {
        let full = (1u16 << n) as u8;
        let mut t = vec![];
        while t.len() < terms {
            let w = BiWord::new(
                rng.gen_range(0..2),
                rng.gen_range(0..full),
                Slot::new(rng.gen_range(0..2), rng.gen_range(0..full)),
                Slot::new(rng.gen_range(0..2), rng.gen_range(0..full)),
            );
            if w.parity() == parity {
                t.push((w, q(rng.gen_range(-3..=3))));
            }
        }
        BiPoly::from_terms(n, t)
    }

    fn dens(n: u8, m: Mono, w: &Q, pi: bool) -> Density<Q> {
        Density::new(SuperPoly::monomial(n, m, q(1)), w.clone(), pi)
    }

    #[test]
    fn product_and_eta_square() {
        let n = 1;
        let j = BiDiffOp::new(BiPoly::product(n), q(1), q(2), q(3));
        let f = SuperPoly::monomial(n, Mono::new(2, 1), q(1));
        let g = SuperPoly::monomial(n, Mono::new(1, 0), q(1)).add(&SuperPoly::theta(n, 1).unwrap()).unwrap();
        let r = apply_bi(&j, &Density::new(f.clone(), q(1), false), &Density::new(g.clone(), q(2), false)).unwrap();
        assert_eq!(r.payload(), &f.mul(&g).unwrap());
        // η₁ in both slots: (−1)^{p(F)} η₁F·η₁G
        let w = BiWord::new(0, 0, Slot::new(0, 1), Slot::new(0, 1));
        let j = BiDiffOp::new(BiPoly::term(n, w, q(1)), q(1), q(2), q(3));
        let r = apply_bi(&j, &Density::new(f.clone(), q(1), false), &Density::new(g.clone(), q(2), false)).unwrap();
        let want = f.eta(1).unwrap().mul(&g.eta(1).unwrap()).unwrap().neg();
        assert_eq!(r.payload(), &want);
    }

    #[test]
    fn act_on_bi_matches_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 2;
        let (tau, lam) = (Q::frac(1, 2), q(-1));
        let hs: Vec<SuperPoly<Q>> = vec![
            SuperPoly::one(n),
            SuperPoly::x(n),
            SuperPoly::theta(n, 1).unwrap(),
            SuperPoly::theta(n, 2).unwrap(),
            SuperPoly::from_terms(n, vec![(Mono::new(0, 3), q(1))]),
            SuperPoly::from_terms(n, vec![(Mono::new(2, 0), q(1))]),
            SuperPoly::from_terms(n, vec![(Mono::new(1, 2), q(1))]),
        ];
        let monos = monomials(n, 2);
        for trial in 0..12 {
            let par = trial % 2;
            let pi = [rng.gen_bool(0.5), rng.gen_bool(0.5), rng.gen_bool(0.5)];
            let mu = Q::frac(rng.gen_range(-4..4), 2);
            let j = BiDiffOp::new(random_bi(&mut rng, n, par, 4), tau.clone(), lam.clone(), mu.clone()).with_pi(pi);
            let e = j.parity().unwrap();
            for h in &hs {
                let hp = h.parity().bit().unwrap();
                let hj = act_on_bi(h, &j).unwrap();
                for &m1 in &monos {
                    for &m2 in &monos {
                        let v1 = dens(n, m1, &tau, pi[0]);
                        let v2 = dens(n, m2, &lam, pi[1]);
                        let p1 = (m1.parity() + pi[0] as u32) % 2;
                        let lhs = apply_bi(&hj, &v1, &v2).unwrap();
                        let a = act(&mu, h, &apply_bi(&j, &v1, &v2).unwrap()).unwrap();
                        let b = apply_bi(&j, &act(&tau, h, &v1).unwrap(), &v2).unwrap();
                        let c = apply_bi(&j, &v1, &act(&lam, h, &v2).unwrap()).unwrap();
                        let sb = if hp * e % 2 == 1 { q(-1) } else { q(1) };
                        let sc = if hp * (e + p1) % 2 == 1 { q(-1) } else { q(1) };
                        let want = a
                            .payload()
                            .sub(&b.payload().scale(&sb))
                            .unwrap()
                            .sub(&c.payload().scale(&sc))
                            .unwrap();
                        assert_eq!(lhs.payload(), &want, "pi={pi:?} h={h:?} m1={m1:?} m2={m2:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn compose_and_partial_agree_with_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 2;
        let l = crate::diffop::lie_operator(&SuperPoly::<Q>::theta(n, 1).unwrap(), &q(2));
        for trial in 0..6 {
            let pi = [rng.gen_bool(0.5), rng.gen_bool(0.5), false];
            let j = BiDiffOp::new(random_bi(&mut rng, n, trial % 2, 4), q(0), q(0), q(0)).with_pi(pi);
            let c1 = j.op.compose_slot1(&l);
            let c2 = j.op.compose_slot2(&l, pi[0]);
            for m1 in monomials(n, 2) {
                for m2 in monomials(n, 2) {
                    let u1 = SuperPoly::monomial(n, m1, q(1));
                    let u2 = SuperPoly::monomial(n, m2, q(1));
                    let p1 = (m1.parity() + pi[0] as u32) % 2;
                    // slot 1: W₁(L u₁) with the Koszul sign of the slot-2 word against L u₁ (parity p₁ + 1)
                    let lhs = j.op.eval_raw(&l.apply(&u1), &u2, pi[0], pi[1]);
                    let mut rhs = SuperPoly::zero(n);
                    for (w, c) in c1.terms() {
                        let t = BiPoly::term(n, *w, c.clone()).eval_raw(&u1, &u2, pi[0], pi[1]);
                        let s = (w.w2.parity() + pi[1] as u32) % 2;
                        rhs = rhs.add(&if s == 1 { t.neg() } else { t }).unwrap();
                    }
                    assert_eq!(lhs, rhs);
                    let lhs = j.op.eval_raw(&u1, &l.apply(&u2), pi[0], pi[1]);
                    let rhs = c2.eval_raw(&u1, &u2, pi[0], pi[1]);
                    assert_eq!(lhs, if p1 == 1 { rhs.neg() } else { rhs });
                    let part = j.op.apply_slot1(&u1, pi[0], pi[1]);
                    assert_eq!(part.apply(&u2), j.op.eval_raw(&u1, &u2, pi[0], pi[1]));
                }
            }
        }
    }

    #[test]
    fn act_on_bi_examples() {
        let n = 1;
        let (t, l) = (ParamPoly::named("tau"), ParamPoly::named("lambda"));
        let mu = t.add_ref(&l);
        let j = BiDiffOp::new(BiPoly::product(n), t.clone(), l.clone(), mu.clone());
        for h in [SuperPoly::one(n), SuperPoly::x(n), SuperPoly::theta(n, 1).unwrap()] {
            assert!(act_on_bi(&h, &j).unwrap().is_zero());
        }
        // X_x scales a term of shift k by μ − τ − λ − k
        let w = BiWord::new(0, 0, Slot::new(2, 0), Slot::new(0, 1));
        let mu2 = ParamPoly::named("mu");
        let j = BiDiffOp::new(BiPoly::term(n, w, ParamPoly::from_int(1)), t.clone(), l.clone(), mu2.clone());
        let r = act_on_bi(&SuperPoly::x(n), &j).unwrap();
        let k = ParamPoly::constant(Q::frac(w.twice_shift(), 2));
        let f = mu2.sub_ref(&t).sub_ref(&l).sub_ref(&k);
        assert_eq!(r.op, j.op.scale(&f));
    }
}
