//! Plain-text rendering of cochains as Υ(X_G)(F) = Σ c·W₁(G)·W₂(F).

use std::fmt::Display;

use crate::diffop::{BiPoly, Slot};
use crate::scalars::{Rational, Ring, UPoly};
use crate::superpoly::mask_indices;

fn primes(x: &str, k: u32) -> String {
    match k {
        0 => x.to_string(),
        1..=3 => format!("{x}{}", "'".repeat(k as usize)),
        _ => format!("{x}^({k})"),
    }
}

pub fn slot_text(x: &str, s: Slot) -> String {
    let inner = primes(x, s.k);
    if s.e == 0 {
        return inner;
    }
    let etas: String = mask_indices(s.e).map(|i| format!("η{i}")).collect();
    format!("{etas}({inner})")
}

/// One term per line-free summand; the Koszul sign (−1)^{|G|} is shown
/// explicitly when the second slot is odd.
pub fn render_bi<C: Ring + Display>(op: &BiPoly<C>) -> String {
    if op.is_zero() {
        return "0".into();
    }
    let mut parts = vec![];
    for (w, c) in op.terms() {
        let mut t = String::new();
        let cs = c.to_string();
        if cs != "1" {
            t.push_str(&format!("({cs})·"));
        }
        if w.w2.parity() == 1 {
            t.push_str("(−1)^|G|·");
        }
        if w.a > 0 {
            t.push('x');
            if w.a > 1 {
                t.push_str(&format!("^{}", w.a));
            }
            t.push('·');
        }
        for i in mask_indices(w.s) {
            t.push_str(&format!("θ{i}·"));
        }
        t.push_str(&slot_text("G", w.w1));
        t.push('·');
        t.push_str(&slot_text("F", w.w2));
        parts.push(t);
    }
    parts.join(" + ")
}

/// Text of a univariate polynomial in λ, primitive with positive leading
/// coefficient.
pub fn lambda_poly_text(p: &UPoly) -> String {
    let p = p.primitive();
    let p = if p.lead() < Rational::ZERO { p.scale(&Rational::from_int(-1)) } else { p };
    p.fmt_with("lambda")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::BiWord;
    use crate::scalars::Rational;

    #[test]
    fn renders_words() {
        let op = BiPoly::from_terms(
            1,
            vec![
                (BiWord::new(0, 0, Slot::new(2, 1), Slot::ID), Rational::ONE),
                (BiWord::new(0, 0, Slot::new(2, 0), Slot::new(0, 1)), Rational::frac(-2, 3)),
            ],
        );
        let s = render_bi(&op);
        assert!(s.contains("η1(G'')·F"), "{s}");
        assert!(s.contains("(-2/3)·(−1)^|G|·G''·η1(F)"), "{s}");
        assert_eq!(slot_text("F", Slot::new(5, 3)), "η1η2(F^(5))");
    }
}
