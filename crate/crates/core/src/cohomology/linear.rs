//! Cross-check of the aff(n|1)-invariant linear operators against the two
//! families ∂^k and D₁⋯D_n∂^k, where D_i is an odd first-order operator.
//!
//! The invariance solve always uses the full θ-coefficient ansatz here.
//! Two candidate meanings of D_i are tested for membership: η_i, and
//! η̄_i = ∂_i + θ_i∂_x. Only the first commutes with the odd translations.

use serde::{Deserialize, Serialize};

use crate::contact::SubalgebraSpec;
use crate::diffop::{OpPoly, OpWord};
use crate::error::Result;
use crate::scalars::ParamPoly;
use crate::superpoly::bit;

use super::ansatz::{build_lin_ansatz, LinAnsatz};
use super::invariants::solve_invariance_lin;
use super::solve::{Backend, Generic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OddFactor {
    Eta,
    EtaBar,
}

/// D₁⋯D_n∂^k, or ∂^k when `factor` is `None`.
pub fn family_operator(n: u8, k: u32, factor: Option<OddFactor>) -> OpPoly<ParamPoly> {
    let one = ParamPoly::from_int(1);
    let mut op = OpPoly::identity(n);
    if let Some(f) = factor {
        for i in 1..=n {
            let mut d = OpPoly::word(n, OpWord::new(0, 0, 0, bit(i)), one.clone());
            if f == OddFactor::EtaBar {
                d = d.add(&OpPoly::word(n, OpWord::new(0, bit(i), 1, 0), ParamPoly::from_int(2)));
            }
            op = op.compose(&d);
        }
    }
    op.compose(&OpPoly::word(n, OpWord::new(0, 0, k, 0), one))
}

fn coords(a: &LinAnsatz, op: &OpPoly<ParamPoly>) -> Option<Vec<ParamPoly>> {
    let mut v = vec![ParamPoly::zero(); a.len()];
    for (w, c) in op.terms() {
        v[a.words.iter().position(|x| x == w)?] = c.clone();
    }
    Some(v)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Membership {
    pub family: String,
    pub operator: String,
    pub in_span: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearCell {
    pub n: u8,
    pub shift: String,
    pub twice_shift: u32,
    pub dimension: usize,
    /// Dimension with constant coefficients only.
    pub dimension_constant: usize,
    /// Number of families landing on this shift.
    pub predicted: usize,
    pub members: Vec<Membership>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearCheck {
    pub cells: Vec<LinearCell>,
    /// Every ∂^k and η₁⋯η_n∂^k lies in the solver span.
    pub eta_matches: bool,
    /// Every η̄₁⋯η̄_n∂^k lies in the solver span.
    pub eta_bar_matches: bool,
    pub ok: bool,
}

/// One (n, 2s) cell.
pub fn linear_cell(n: u8, twice: u32) -> Result<LinearCell> {
    let b = Generic::lambda();
    let lam = ParamPoly::named("lambda");
    let spec = SubalgebraSpec::aff(n);
    let a = build_lin_ansatz(n, twice, n as u32)?;
    let fam = solve_invariance_lin(&b, &a, &lam, &spec)?;
    let a0 = build_lin_ansatz(n, twice, 0)?;
    let dim0 = solve_invariance_lin(&b, &a0, &lam, &spec)?.dimension();

    let mut cands: Vec<(String, OpPoly<ParamPoly>, bool)> = vec![];
    if twice % 2 == 0 {
        cands.push((format!("∂^{}", twice / 2), family_operator(n, twice / 2, None), true));
    }
    // for n = 0 the product family is ∂^k again
    if n > 0 && twice >= n as u32 && (twice - n as u32) % 2 == 0 {
        let k = (twice - n as u32) / 2;
        cands.push((format!("η-product ∂^{k}"), family_operator(n, k, Some(OddFactor::Eta)), true));
        cands.push((format!("η̄-product ∂^{k}"), family_operator(n, k, Some(OddFactor::EtaBar)), false));
    }
    let predicted = cands.iter().filter(|c| c.2).count();

    let mut members = vec![];
    let mut ok = fam.dimension() == predicted && dim0 == fam.dimension();
    for (family, op, counted) in cands {
        let in_span = match coords(&a, &op) {
            Some(v) => {
                let mut vs = fam.basis.clone();
                vs.push(v);
                b.rank(&vs)?.0 == fam.dimension()
            }
            None => false,
        };
        if counted {
            ok &= in_span;
        }
        members.push(Membership { family, operator: op.to_string(), in_span });
    }
    Ok(LinearCell {
        n,
        shift: super::invariants::half(twice).to_string(),
        twice_shift: twice,
        dimension: fam.dimension(),
        dimension_constant: dim0,
        predicted,
        members,
        ok,
    })
}

/// All cells with n ≤ `max_n` and F^{(k)}, k ≤ `max_k`.
pub fn linear_check(max_n: u8, max_k: u32) -> Result<LinearCheck> {
    let mut cells = vec![];
    for n in 0..=max_n {
        for twice in 0..=2 * max_k + n as u32 {
            cells.push(linear_cell(n, twice)?);
        }
    }
    let all = |pred: &dyn Fn(&Membership) -> bool| cells.iter().flat_map(|c| &c.members).filter(|m| pred(m)).all(|m| m.in_span);
    let eta_matches = all(&|m| !m.family.starts_with("η̄"));
    let eta_bar_matches = all(&|m| m.family.starts_with("η̄"));
    let ok = cells.iter().all(|c| c.ok);
    Ok(LinearCheck { cells, eta_matches, eta_bar_matches, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_cells() {
        let c = linear_cell(1, 3).unwrap();
        assert_eq!((c.dimension, c.predicted), (1, 1));
        assert!(c.ok);
        assert!(!c.members.iter().find(|m| m.family.starts_with("η̄")).unwrap().in_span);
        assert_eq!(linear_cell(1, 4).unwrap().dimension, 1);
    }

    #[test]
    fn n2_families_share_integer_shifts() {
        let c = linear_cell(2, 4).unwrap();
        assert_eq!((c.dimension, c.predicted), (2, 2));
        assert!(c.ok);
        assert_eq!(linear_cell(2, 3).unwrap().dimension, 0);
    }

    #[test]
    fn eta_bar_squares_to_plus_dx() {
        let one = family_operator(1, 0, Some(OddFactor::EtaBar));
        let sq = one.compose(&one);
        assert_eq!(sq, family_operator(1, 1, None));
    }
}
