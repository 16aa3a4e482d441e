//! Exhaustive identity checks on bounded monomial sets: the aff(1|1)
//! bracket table, super-antisymmetry and super-Jacobi for the contact
//! bracket, and the representation property of 𝕃^λ.

use serde::{Deserialize, Serialize};

use crate::contact::{contact_bracket, field_apply};
use crate::densities::lie_derivative;
use crate::error::Result;
use crate::parse::parse_superpoly;
use crate::scalars::ParamPoly;
use crate::superpoly::{monomials, SuperPoly};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub name: String,
    pub n: u8,
    pub max_x: u32,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl AxiomResult {
    fn new(name: &str, n: u8, max_x: u32) -> Self {
        AxiomResult { name: name.into(), n, max_x, cases: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketRow {
    pub f: String,
    pub g: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

/// The four relations of aff(1|1) on hamiltonians: {1,x} = 1,
/// {x,θ} = −½θ, {1,θ} = 0, {θ,θ} = ½.
pub fn bracket_table() -> Result<Vec<BracketRow>> {
    let rows = [("1", "x", "1"), ("x", "t1", "-1/2*t1"), ("1", "t1", "0"), ("t1", "t1", "1/2")];
    let mut out = vec![];
    for (f, g, e) in rows {
        let fp: SuperPoly<ParamPoly> = parse_superpoly(f, Some(1))?;
        let gp = parse_superpoly(g, Some(1))?;
        let ep = parse_superpoly(e, Some(1))?;
        let c = contact_bracket(&fp, &gp)?;
        out.push(BracketRow { f: f.into(), g: g.into(), expected: ep.to_text(), computed: c.to_text(), ok: c == ep });
    }
    Ok(out)
}

fn mons(n: u8, max_x: u32) -> Vec<SuperPoly<ParamPoly>> {
    monomials(n, max_x).into_iter().map(|m| SuperPoly::monomial(n, m, ParamPoly::from_int(1))).collect()
}

fn par(p: &SuperPoly<ParamPoly>) -> u32 {
    p.parity().bit().unwrap_or(0)
}

fn signed(p: SuperPoly<ParamPoly>, odd: bool) -> SuperPoly<ParamPoly> {
    if odd {
        p.neg()
    } else {
        p
    }
}

/// {F,G} = −(−1)^{|F||G|}{G,F}.
pub fn antisymmetry(n: u8, max_x: u32) -> Result<AxiomResult> {
    let ms = mons(n, max_x);
    let mut r = AxiomResult::new("super-antisymmetry", n, max_x);
    for f in &ms {
        for g in &ms {
            let lhs = contact_bracket(f, g)?;
            let rhs = signed(contact_bracket(g, f)?, par(f) * par(g) == 0);
            r.record(lhs == rhs, || format!("F = {f}, G = {g}"));
        }
    }
    Ok(r)
}

/// {F,{G,H}} = {{F,G},H} + (−1)^{|F||G|}{G,{F,H}}.
pub fn super_jacobi(n: u8, max_x: u32) -> Result<AxiomResult> {
    let ms = mons(n, max_x);
    let mut r = AxiomResult::new("super-Jacobi", n, max_x);
    for f in &ms {
        for g in &ms {
            let fg = contact_bracket(f, g)?;
            for h in &ms {
                let lhs = contact_bracket(f, &contact_bracket(g, h)?)?;
                let a = contact_bracket(&fg, h)?;
                let b = signed(contact_bracket(g, &contact_bracket(f, h)?)?, par(f) * par(g) == 1);
                r.record(lhs == a.add(&b)?, || format!("F = {f}, G = {g}, H = {h}"));
            }
        }
    }
    Ok(r)
}

/// [X_F, X_G] = X_{F,G} as operators on functions.
pub fn homomorphism(n: u8, max_x: u32) -> Result<AxiomResult> {
    let ms = mons(n, max_x);
    let mut r = AxiomResult::new("X_{F,G} = [X_F, X_G]", n, max_x);
    for f in &ms {
        for g in &ms {
            let fg = contact_bracket(f, g)?;
            let odd = par(f) * par(g) == 1;
            for h in &ms {
                let lhs = field_apply(&fg, h)?;
                let rhs = field_apply(f, &field_apply(g, h)?)?.sub(&signed(field_apply(g, &field_apply(f, h)?)?, odd))?;
                r.record(lhs == rhs, || format!("F = {f}, G = {g}, h = {h}"));
            }
        }
    }
    Ok(r)
}

/// [𝕃^λ_{X_F}, 𝕃^λ_{X_G}] = 𝕃^λ_{X_{F,G}} on payloads, λ symbolic.
pub fn representation(n: u8, max_x: u32) -> Result<AxiomResult> {
    let lam = ParamPoly::named("lambda");
    let ms = mons(n, max_x);
    let mut r = AxiomResult::new("representation of 𝕃^λ", n, max_x);
    let ld = |f: &SuperPoly<ParamPoly>, p: &SuperPoly<ParamPoly>| lie_derivative(&lam, f, p);
    for f in &ms {
        for g in &ms {
            let fg = contact_bracket(f, g)?;
            let odd = par(f) * par(g) == 1;
            for p in &ms {
                let lhs = ld(f, &ld(g, p)?)?.sub(&signed(ld(g, &ld(f, p)?)?, odd))?;
                r.record(lhs == ld(&fg, p)?, || format!("F = {f}, G = {g}, payload = {p}"));
            }
        }
    }
    Ok(r)
}

/// Every suite for n = 0, 1, 2.
pub fn run_all(max_x: u32) -> Result<Vec<AxiomResult>> {
    let mut out = vec![];
    for n in 0..=2 {
        out.push(antisymmetry(n, max_x)?);
        out.push(super_jacobi(n, max_x)?);
        out.push(homomorphism(n, max_x)?);
        out.push(representation(n, max_x)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_holds() {
        assert!(bracket_table().unwrap().iter().all(|r| r.ok));
    }

    #[test]
    fn small_suites_pass() {
        for n in 0..=2 {
            assert_eq!(super_jacobi(n, 1).unwrap().failures, 0);
            assert_eq!(representation(n, 1).unwrap().failures, 0);
        }
    }

    #[test]
    fn odd_self_bracket_is_nonzero() {
        // a plain antisymmetric bracket would kill {θ,θ}
        let f: SuperPoly<ParamPoly> = parse_superpoly("t1", Some(1)).unwrap();
        assert!(!contact_bracket(&f, &f).unwrap().is_zero());
    }
}
