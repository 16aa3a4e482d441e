//! JSON form of bilinear operators. Scalars are written as parseable text.

use serde::{Deserialize, Serialize};

use super::{BiDiffOp, BiPoly, BiWord, Slot};
use crate::error::{usage, Result};
use crate::parse::parse_scalar;
use crate::superpoly::{Parity, MAX_N};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotJson {
    pub dx: u32,
    pub eta_mask: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub x_deg: u32,
    pub theta_mask: u8,
    pub slot1: SlotJson,
    pub slot2: SlotJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiDiffOpJson {
    pub n: u8,
    pub tau: String,
    pub lambda: String,
    pub mu: String,
    pub parity: Parity,
    #[serde(default)]
    pub pi: [bool; 3],
    pub terms: Vec<TermJson>,
}

impl BiDiffOp {
    pub fn to_json(&self) -> BiDiffOpJson {
        let slot = |s: Slot| SlotJson { dx: s.k, eta_mask: s.e };
        BiDiffOpJson {
            n: self.n(),
            tau: self.tau.to_string(),
            lambda: self.lambda.to_string(),
            mu: self.mu.to_string(),
            parity: match self.parity() {
                Some(p) => Parity::of_bit(p),
                None => Parity::Mixed,
            },
            pi: self.pi,
            terms: self
                .op
                .terms()
                .iter()
                .map(|(w, c)| TermJson {
                    coeff: c.to_string(),
                    x_deg: w.a,
                    theta_mask: w.s,
                    slot1: slot(w.w1),
                    slot2: slot(w.w2),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &BiDiffOpJson) -> Result<Self> {
        if j.n > MAX_N {
            return usage(format!("at most {MAX_N} odd variables are supported"));
        }
        let full: u16 = (1u16 << j.n) - 1;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            for m in [t.theta_mask, t.slot1.eta_mask, t.slot2.eta_mask] {
                if m as u16 & !full != 0 {
                    return usage(format!("mask {m:#b} uses an index above {}", j.n));
                }
            }
            let w = BiWord::new(
                t.x_deg,
                t.theta_mask,
                Slot::new(t.slot1.dx, t.slot1.eta_mask),
                Slot::new(t.slot2.dx, t.slot2.eta_mask),
            );
            terms.push((w, parse_scalar(&t.coeff)?));
        }
        let op = BiDiffOp::new(
            BiPoly::from_terms(j.n, terms),
            parse_scalar(&j.tau)?,
            parse_scalar(&j.lambda)?,
            parse_scalar(&j.mu)?,
        )
        .with_pi(j.pi);
        let declared = j.parity;
        let actual = op.to_json().parity;
        if declared != actual && !op.is_zero() {
            return usage(format!("declared parity {declared} but terms have parity {actual}"));
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ParamPoly, Rational, Ring};

    #[test]
    fn round_trip_is_exact() {
        let l = crate::parse::parse_scalar("lambda").unwrap();
        let t = crate::parse::parse_scalar("tau").unwrap();
        let mu = t.add_ref(&l).add_ref(&ParamPoly::constant(Rational::frac(3, 2)));
        let terms = vec![
            (BiWord::new(0, 0, Slot::new(1, 0), Slot::new(0, 1)), l.scale(&Rational::frac(-2, 3))),
            (BiWord::new(2, 3, Slot::new(0, 2), Slot::new(0, 0)), ParamPoly::from_int(5)),
            (BiWord::new(0, 1, Slot::new(0, 0), Slot::new(1, 0)), t.mul_ref(&l).add_ref(&ParamPoly::from_int(1))),
        ];
        let op = BiDiffOp::new(BiPoly::from_terms(2, terms), t, l, mu).with_pi([false, true, false]);
        let text = serde_json::to_string(&op.to_json()).unwrap();
        let back = BiDiffOp::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, op);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    }

    #[test]
    fn rejects_bad_masks_and_parity() {
        let mut j = BiDiffOp::new(BiPoly::product(1), ParamPoly::zero(), ParamPoly::zero(), ParamPoly::zero()).to_json();
        j.terms[0].theta_mask = 2;
        assert!(BiDiffOp::from_json(&j).is_err());
        j.terms[0].theta_mask = 1;
        assert!(BiDiffOp::from_json(&j).is_err());
    }
}
