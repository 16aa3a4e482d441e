//! Splitting off the last odd variable, and the parity swap.
//!
//! A density over n splits as F = F₁ + F₂θ_n with F₁, F₂ free of θ_n; the
//! second summand is carried as Π(F₂) of weight λ+½. Component operators are
//! indexed by flags (i, j; l): 1 means the θ_n part of that argument/output.

use super::{BiDiffOp, BiPoly, LinDiffOp, OpPoly, OpWord};
use crate::error::{usage, Result};
use crate::scalars::{Rational, Ring};
use crate::superpoly::{bit, mask_len, theta_product_sign};

/// Flags (i, j, l) of the eight components, in the order they are stored.
pub const PSI_FLAGS: [[bool; 3]; 8] = [
    [false, false, false],
    [true, true, false],
    [false, true, true],
    [true, false, true],
    [false, false, true],
    [false, true, false],
    [true, false, false],
    [true, true, true],
];

/// The eight components of a bilinear operator over n, as operators over n−1.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiParts<C: Ring> {
    pub parts: Vec<BiDiffOp<C>>,
}

fn half<C: Ring>(b: bool) -> C {
    if b {
        C::from_rational(&Rational::frac(1, 2))
    } else {
        C::zero()
    }
}

impl<C: Ring> PsiParts<C> {
    /// All-zero components for an operator F_τ⊗F_λ → F_μ over n.
    pub fn zero(n_minus_1: u8, tau: &C, lambda: &C, mu: &C) -> Self {
        let parts = PSI_FLAGS
            .iter()
            .map(|f| {
                BiDiffOp::new(
                    BiPoly::zero(n_minus_1),
                    tau.add_ref(&half(f[0])),
                    lambda.add_ref(&half(f[1])),
                    mu.add_ref(&half(f[2])),
                )
                .with_pi(*f)
            })
            .collect();
        PsiParts { parts }
    }

    pub fn base_weights(&self) -> (C, C, C) {
        let p = &self.parts[0];
        (p.tau.clone(), p.lambda.clone(), p.mu.clone())
    }
}

/// θ_n as a multiplication operator.
fn theta_last<C: Ring>(n: u8) -> OpPoly<C> {
    OpPoly::word(n, OpWord::new(0, bit(n), 0, 0), C::one())
}

/// 1 − θ_nη_n, the projection onto the θ_n-free part.
fn proj_even<C: Ring>(n: u8) -> OpPoly<C> {
    OpPoly::from_terms(n, vec![(OpWord::ID, C::one()), (OpWord::new(0, bit(n), 0, bit(n)), C::one().neg_ref())])
}

/// ∂_{θ_n} = η_n + θ_n∂_x, reading F₂ through σ.
fn proj_odd<C: Ring>(n: u8) -> OpPoly<C> {
    OpPoly::from_terms(n, vec![(OpWord::new(0, 0, 0, bit(n)), C::one()), (OpWord::new(0, bit(n), 1, 0), C::one())])
}

fn output_lin<C: Ring>(op: &OpPoly<C>, l: bool) -> OpPoly<C> {
    let top = bit(op.n());
    let terms = op
        .terms()
        .iter()
        .filter(|(w, _)| (w.s & top != 0) == l)
        .map(|(w, c)| {
            if !l {
                return (*w, c.clone());
            }
            let s = w.s & !top;
            let c = if mask_len(s) % 2 == 1 { c.neg_ref() } else { c.clone() };
            (OpWord { s, ..*w }, c)
        })
        .collect();
    OpPoly::from_terms(op.n(), terms)
}

fn output_bi<C: Ring>(op: &BiPoly<C>, l: bool) -> BiPoly<C> {
    let top = bit(op.n());
    let terms = op
        .terms()
        .iter()
        .filter(|(w, _)| (w.s & top != 0) == l)
        .map(|(w, c)| {
            if !l {
                return (*w, c.clone());
            }
            let s = w.s & !top;
            let c = if mask_len(s) % 2 == 1 { c.neg_ref() } else { c.clone() };
            (super::BiWord { s, ..*w }, c)
        })
        .collect();
    BiPoly::from_terms(op.n(), terms)
}

/// The four components of a linear operator over n ≥ 1, in the order
/// (λ→μ), (λ+½→μ+½), Π(λ→μ+½), Π(λ+½→μ).
pub fn phi_decompose<C: Ring>(a: &LinDiffOp<C>) -> Result<[LinDiffOp<C>; 4]> {
    let n = a.n();
    if n == 0 {
        return usage("phi_decompose needs at least one odd variable");
    }
    if a.pi_src || a.pi_tgt {
        return usage("phi_decompose expects an operator without parity flags");
    }
    let comp = |i: bool, l: bool| {
        let mut op = a.op.clone();
        if i {
            op = op.compose(&theta_last(n));
        }
        let op = output_lin(&op.restrict_last(), l).with_arity(n - 1);
        LinDiffOp::new(op, a.lambda.add_ref(&half(i)), a.mu.add_ref(&half(l))).with_pi(i, l)
    };
    Ok([comp(false, false), comp(true, true), comp(false, true), comp(true, false)])
}

/// Inverse of [`phi_decompose`].
pub fn phi_lift<C: Ring>(parts: &[LinDiffOp<C>; 4]) -> Result<LinDiffOp<C>> {
    let n = parts[0].n() + 1;
    let (lambda, mu) = (parts[0].lambda.clone(), parts[0].mu.clone());
    let flags = [(false, false), (true, true), (false, true), (true, false)];
    let mut acc = OpPoly::zero(n);
    for (p, &(i, l)) in parts.iter().zip(&flags) {
        if p.n() + 1 != n
            || p.lambda != lambda.add_ref(&half(i))
            || p.mu != mu.add_ref(&half(l))
            || (p.pi_src, p.pi_tgt) != (i, l)
        {
            return usage("component weights do not follow the splitting pattern");
        }
        let mut op = p.op.with_arity(n).compose(&if i { proj_odd(n) } else { proj_even(n) });
        if l {
            op = theta_last(n).compose(&op);
        }
        acc = acc.add(&op);
    }
    Ok(LinDiffOp::new(acc, lambda, mu))
}

/// The eight components of a bilinear operator over n ≥ 1, ordered as
/// [`PSI_FLAGS`].
pub fn decompose_psi<C: Ring>(a: &BiDiffOp<C>) -> Result<PsiParts<C>> {
    let n = a.n();
    if n == 0 {
        return usage("decompose_psi needs at least one odd variable");
    }
    if a.pi != [false; 3] {
        return usage("decompose_psi expects an operator without parity flags");
    }
    let th = theta_last::<C>(n);
    let parts = PSI_FLAGS
        .iter()
        .map(|&[i, j, l]| {
            let mut op = a.op.clone();
            if i {
                op = op.compose_slot1(&th);
            }
            if j {
                op = op.compose_slot2(&th, i);
            }
            let op = output_bi(&op.restrict_last(i), l).with_arity(n - 1);
            BiDiffOp::new(op, a.tau.add_ref(&half(i)), a.lambda.add_ref(&half(j)), a.mu.add_ref(&half(l)))
                .with_pi([i, j, l])
        })
        .collect();
    Ok(PsiParts { parts })
}

/// Assemble an operator over n from its eight components over n−1.
pub fn psi_lift<C: Ring>(parts: &PsiParts<C>) -> Result<BiDiffOp<C>> {
    if parts.parts.len() != 8 {
        return usage("psi_lift expects eight components");
    }
    let n = parts.parts[0].n() + 1;
    let (tau, lambda, mu) = parts.base_weights();
    let mut acc = BiPoly::zero(n);
    for (p, &[i, j, l]) in parts.parts.iter().zip(&PSI_FLAGS) {
        if p.n() + 1 != n
            || p.tau != tau.add_ref(&half(i))
            || p.lambda != lambda.add_ref(&half(j))
            || p.mu != mu.add_ref(&half(l))
            || p.pi != [i, j, l]
        {
            return usage("component weights do not follow the splitting pattern");
        }
        let proj = |b: bool| if b { proj_odd::<C>(n) } else { proj_even::<C>(n) };
        let mut op = p.op.with_arity(n).compose_slot1(&proj(i));
        op = op.compose_slot2(&proj(j), false);
        if l {
            let top = bit(n);
            let terms = op
                .terms()
                .iter()
                .filter_map(|(w, c)| {
                    let s = theta_product_sign(top, w.s)?;
                    let c = if s < 0 { c.neg_ref() } else { c.clone() };
                    Some((super::BiWord { s: w.s | top, ..*w }, c))
                })
                .collect();
            op = BiPoly::from_terms(n, terms);
        }
        acc = acc.add(&op);
    }
    Ok(BiDiffOp::new(acc, tau, lambda, mu))
}

/// Π(A∘(σ⊗σ)): the same words with every parity flag toggled and the
/// coefficient of each term multiplied by (−1)^{|W₂|}. Applying it twice
/// gives back the original operator, and X_H·swap(A) = (−1)^{|H|}swap(X_H·A),
/// so invariant operators go to invariant operators.
pub fn parity_swap<C: Ring>(a: &BiDiffOp<C>) -> BiDiffOp<C> {
    let terms = a
        .op
        .terms()
        .iter()
        .map(|(w, c)| (*w, if w.w2.parity() == 1 { c.neg_ref() } else { c.clone() }))
        .collect();
    let [p1, p2, p3] = a.pi;
    BiDiffOp { op: BiPoly::from_terms(a.n(), terms), pi: [!p1, !p2, !p3], ..a.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::{split, Density};
    use crate::diffop::{act_on_bi, act_on_lin, apply_bi, apply_lin, Slot};
    use crate::superpoly::{monomials, Mono, SuperPoly};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_int(v)
    }

    fn random_op(rng: &mut ChaCha8Rng, n: u8) -> OpPoly<Q> {
        let full = (1u16 << n) as u8;
        let t = (0..4)
            .map(|_| {
                let w = OpWord::new(rng.gen_range(0..2), rng.gen_range(0..full), rng.gen_range(0..3), rng.gen_range(0..full));
                (w, q(rng.gen_range(-3..=3)))
            })
            .collect();
        OpPoly::from_terms(n, t)
    }

    fn random_bi(rng: &mut ChaCha8Rng, n: u8) -> BiPoly<Q> {
        let full = (1u16 << n) as u8;
        let t = (0..5)
            .map(|_| {
                let w = super::super::BiWord::new(
                    rng.gen_range(0..2),
                    rng.gen_range(0..full),
                    Slot::new(rng.gen_range(0..2), rng.gen_range(0..full)),
                    Slot::new(rng.gen_range(0..2), rng.gen_range(0..full)),
                );
                (w, q(rng.gen_range(-3..=3)))
            })
            .collect();
        BiPoly::from_terms(n, t)
    }

    /// Density over n assembled from a component over n−1.
    fn embed(d: &Density<Q>, n: u8, weight: &Q) -> Density<Q> {
        let p = d.payload().with_arity(n).unwrap();
        let p = if d.pi() { p.mul(&SuperPoly::theta(n, n).unwrap()).unwrap() } else { p };
        Density::new(p, weight.clone(), false)
    }

    fn project(d: &Density<Q>, l: bool) -> Density<Q> {
        let (a, b) = split(d).unwrap();
        let c = if l { b } else { a };
        Density::new(c.payload().with_arity(d.n() - 1).unwrap(), c.weight().clone(), c.pi())
    }

    #[test]
    fn phi_examples() {
        let n = 2;
        let l = q(3);
        let id = LinDiffOp::new(OpPoly::identity(n), l.clone(), l.clone());
        let [a, b, c, d] = phi_decompose(&id).unwrap();
        assert_eq!(a.op, OpPoly::identity(1));
        assert_eq!(b.op, OpPoly::identity(1));
        assert!(c.is_zero() && d.is_zero());
        let dx = LinDiffOp::new(OpPoly::word(n, OpWord::new(0, 0, 1, 0), q(1)), l.clone(), l.clone());
        let [a, b, c, d] = phi_decompose(&dx).unwrap();
        assert_eq!(a.op, OpPoly::word(1, OpWord::new(0, 0, 1, 0), q(1)));
        assert_eq!(b.op, a.op);
        assert!(c.is_zero() && d.is_zero());
        let eta = LinDiffOp::new(OpPoly::word(n, OpWord::new(0, 0, 0, bit(n)), q(1)), l.clone(), l.clone());
        let [a, b, c, d] = phi_decompose(&eta).unwrap();
        assert!(a.is_zero() && b.is_zero());
        assert!(!c.is_zero() && !d.is_zero());
    }

    #[test]
    fn phi_components_match_evaluation_and_invert() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 2;
        let (lam, mu) = (Q::frac(1, 2), q(2));
        let flags = [(false, false), (true, true), (false, true), (true, false)];
        for _ in 0..8 {
            let a = LinDiffOp::new(random_op(&mut rng, n), lam.clone(), mu.clone());
            let parts = phi_decompose(&a).unwrap();
            for (p, &(i, l)) in parts.iter().zip(&flags) {
                for m in monomials(n - 1, 3) {
                    let src = Density::new(SuperPoly::monomial(n - 1, m, q(1)), p.lambda.clone(), i);
                    let want = project(&apply_lin(&a, &embed(&src, n, &lam)).unwrap(), l);
                    assert_eq!(apply_lin(p, &src).unwrap(), want, "component {i} {l}");
                }
            }
            assert_eq!(phi_lift(&parts).unwrap(), a);
        }
    }

    #[test]
    fn phi_is_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 2;
        let (lam, mu) = (q(-1), Q::frac(3, 2));
        let gens = crate::contact::generators::<Q>(&crate::contact::SubalgebraSpec::aff(n - 1), 0).unwrap();
        for _ in 0..6 {
            let a = LinDiffOp::new(random_op(&mut rng, n), lam.clone(), mu.clone());
            let parts = phi_decompose(&a).unwrap();
            for h in &gens {
                let big = act_on_lin(&h.with_arity(n).unwrap(), &a).unwrap();
                let want = phi_decompose(&big).unwrap();
                for (p, w) in parts.iter().zip(&want) {
                    assert_eq!(&act_on_lin(h, p).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn psi_components_match_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 2;
        let (tau, lam, mu) = (q(1), Q::frac(-1, 2), q(0));
        for _ in 0..6 {
            let a = BiDiffOp::new(random_bi(&mut rng, n), tau.clone(), lam.clone(), mu.clone());
            let parts = decompose_psi(&a).unwrap();
            for p in &parts.parts {
                let [i, j, l] = p.pi;
                for m1 in monomials(n - 1, 2) {
                    for m2 in monomials(n - 1, 2) {
                        let d1 = Density::new(SuperPoly::monomial(n - 1, m1, q(1)), p.tau.clone(), i);
                        let d2 = Density::new(SuperPoly::monomial(n - 1, m2, q(1)), p.lambda.clone(), j);
                        let full = apply_bi(&a, &embed(&d1, n, &tau), &embed(&d2, n, &lam)).unwrap();
                        assert_eq!(apply_bi(p, &d1, &d2).unwrap(), project(&full, l), "flags {:?}", p.pi);
                    }
                }
            }
            assert_eq!(psi_lift(&parts).unwrap(), a);
        }
    }

    #[test]
    fn psi_round_trip_and_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let n = 2;
        let (tau, lam, mu) = (Q::frac(1, 2), q(1), Q::frac(5, 2));
        let gens = crate::contact::generators::<Q>(&crate::contact::SubalgebraSpec::aff(n - 1), 0).unwrap();
        for _ in 0..4 {
            let mut parts = PsiParts::zero(n - 1, &tau, &lam, &mu);
            for p in parts.parts.iter_mut() {
                p.op = random_bi(&mut rng, n - 1);
            }
            let lifted = psi_lift(&parts).unwrap();
            assert_eq!(decompose_psi(&lifted).unwrap(), parts);
            for h in &gens {
                let moved = PsiParts { parts: parts.parts.iter().map(|p| act_on_bi(h, p).unwrap()).collect() };
                let big = act_on_bi(&h.with_arity(n).unwrap(), &lifted).unwrap();
                assert_eq!(big, psi_lift(&moved).unwrap(), "h={h:?}");
            }
        }
        let zero = PsiParts::zero(n - 1, &tau, &lam, &mu);
        assert!(psi_lift(&zero).unwrap().is_zero());
        let mut bad = zero.clone();
        bad.parts[1].mu = q(7);
        assert!(psi_lift(&bad).is_err());
    }

    #[test]
    fn psi_of_product_restricts_to_product() {
        let n = 1;
        let (tau, lam) = (q(1), q(2));
        let mut parts = PsiParts::zero(0, &tau, &lam, &tau.add_ref(&lam));
        parts.parts[0].op = BiPoly::product(0);
        let a = psi_lift(&parts).unwrap();
        for m1 in monomials(0, 3) {
            for m2 in monomials(0, 3) {
                let f = SuperPoly::monomial(n, m1, q(1));
                let g = SuperPoly::monomial(n, m2, q(1));
                let r = apply_bi(&a, &Density::new(f.clone(), tau.clone(), false), &Density::new(g.clone(), lam.clone(), false));
                assert_eq!(r.unwrap().payload(), &f.mul(&g).unwrap());
            }
        }
        let t = SuperPoly::monomial(n, Mono::new(0, 1), q(1));
        let r = apply_bi(&a, &Density::new(t.clone(), tau.clone(), false), &Density::new(t, lam.clone(), false));
        assert!(r.unwrap().payload().is_zero());
    }

    #[test]
    fn parity_swap_is_an_equivariant_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 2;
        let gens = crate::contact::generators::<Q>(&crate::contact::SubalgebraSpec::k(n), 2).unwrap();
        for _ in 0..6 {
            let pi = [rng.gen_bool(0.5), rng.gen_bool(0.5), rng.gen_bool(0.5)];
            let a = BiDiffOp::new(random_bi(&mut rng, n), q(1), q(2), q(4)).with_pi(pi);
            assert_eq!(parity_swap(&parity_swap(&a)), a);
            for h in &gens {
                let lhs = act_on_bi(h, &parity_swap(&a)).unwrap();
                let mut rhs = parity_swap(&act_on_bi(h, &a).unwrap());
                if h.parity().bit() == Some(1) {
                    rhs = rhs.scale(&q(-1));
                }
                assert_eq!(lhs, rhs, "h={h:?}");
            }
        }
    }
}
