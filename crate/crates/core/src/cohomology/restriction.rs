//! Restricting a cocycle over n to K(n−1): the θ_n-free first argument
//! splits the values into four blocks, each of which must be a relative
//! cocycle of the smaller theory.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::contact::{generators, SubalgebraSpec};
use crate::diffop::{decompose_psi, BiDiffOp, PSI_FLAGS};
use crate::error::Result;
use crate::scalars::Ring;

use super::cell::{first_cocycle_failure, CellOutcome};
use super::claims::FailingPair;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentCheck {
    /// (second argument, output) take the θ_n part.
    pub flags: [bool; 2],
    pub lambda: String,
    pub mu: String,
    pub zero: bool,
    pub vanishes_on_aff: bool,
    pub cocycle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_pair: Option<FailingPair>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub n: u8,
    pub twice_shift: u32,
    pub class: usize,
    pub components: Vec<ComponentCheck>,
    pub ok: bool,
}

/// Check the four blocks of one operator; `d` is the monomial degree bound.
pub fn check_components<C: Ring + Display>(j: &BiDiffOp<C>, d: u32) -> Result<Vec<ComponentCheck>> {
    let parts = decompose_psi(j)?;
    let gens = generators::<C>(&SubalgebraSpec::aff(j.n() - 1), 0)?;
    let mut out = vec![];
    for (p, flags) in parts.parts.iter().zip(PSI_FLAGS) {
        if flags[0] {
            continue;
        }
        let vanishes = gens.iter().all(|h| p.partial(h).is_zero());
        let failing = if p.is_zero() {
            None
        } else {
            first_cocycle_failure(p, d)?.map(|(f, g, e)| FailingPair { f: f.to_text(), g: g.to_text(), defect: e.to_string() })
        };
        out.push(ComponentCheck {
            flags: [flags[1], flags[2]],
            lambda: p.lambda.to_string(),
            mu: p.mu.to_string(),
            zero: p.is_zero(),
            vanishes_on_aff: vanishes,
            cocycle: failing.is_none(),
            failing_pair: failing,
        });
    }
    Ok(out)
}

/// Run [`check_components`] on every class of a cell with n ≥ 1.
pub fn restriction_checks<C: Ring + Display>(cell: &CellOutcome<C>) -> Result<Vec<RestrictionReport>> {
    let mut out = vec![];
    if cell.n == 0 {
        return Ok(out);
    }
    for i in 0..cell.classes.len() {
        let components = check_components(&cell.class_op(i), cell.degree_bound)?;
        let ok = components.iter().all(|c| c.vanishes_on_aff && c.cocycle);
        out.push(RestrictionReport { n: cell.n, twice_shift: cell.twice_shift, class: i, components, ok });
    }
    Ok(out)
}
