//! Weight-homogeneous operator ansätze: every word pair whose X_x-weight is
//! the requested shift, with θ-monomial coefficients and no x-dependence.

use crate::diffop::{BiWord, OpWord, Slot};
use crate::error::{usage, Result};
use crate::superpoly::{mask_len, ThetaMask, MAX_N};

/// Largest doubled shift accepted by the builders.
pub const MAX_TWICE_SHIFT: u32 = 16;

/// Unknown-coefficient bilinear operator of shift k = twice_k/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ansatz {
    pub n: u8,
    pub twice_k: u32,
    pub max_theta: u32,
    pub words: Vec<BiWord>,
}

impl Ansatz {
    pub fn parity(&self) -> u32 {
        self.twice_k % 2
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &BiWord) -> Option<usize> {
        self.words.binary_search(w).ok()
    }
}

/// Unknown-coefficient linear operator of shift s = twice_shift/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinAnsatz {
    pub n: u8,
    pub twice_shift: u32,
    pub max_theta: u32,
    pub words: Vec<OpWord>,
}

impl LinAnsatz {
    pub fn parity(&self) -> u32 {
        self.twice_shift % 2
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn masks(n: u8) -> impl Iterator<Item = ThetaMask> + Clone {
    0..(1u16 << n) as ThetaMask
}

fn check(n: u8, twice: u32) -> Result<()> {
    if n > MAX_N {
        return usage(format!("at most {MAX_N} odd variables are supported"));
    }
    if twice > MAX_TWICE_SHIFT {
        return usage(format!("shift {}/2 is above the supported range {}/2", twice, MAX_TWICE_SHIFT));
    }
    Ok(())
}

/// All x^0θ^S W₁ ⊗ W₂ with k₁ + k₂ + (|ε₁| + |ε₂| − |S|)/2 = k and |S| ≤ max_theta.
pub fn build_ansatz(n: u8, twice_k: u32, max_theta: u32) -> Result<Ansatz> {
    check(n, twice_k)?;
    let mut words = vec![];
    for s in masks(n).filter(|s| mask_len(*s) <= max_theta) {
        for e1 in masks(n) {
            for e2 in masks(n) {
                let num = twice_k as i64 + mask_len(s) as i64 - mask_len(e1) as i64 - mask_len(e2) as i64;
                if num < 0 || num % 2 != 0 {
                    continue;
                }
                let total = (num / 2) as u32;
                for k1 in 0..=total {
                    words.push(BiWord::new(0, s, Slot::new(k1, e1), Slot::new(total - k1, e2)));
                }
            }
        }
    }
    words.sort();
    Ok(Ansatz { n, twice_k, max_theta, words })
}

/// All θ^S ∂^k η^ε with k + (|ε| − |S|)/2 = s and |S| ≤ max_theta.
pub fn build_lin_ansatz(n: u8, twice_shift: u32, max_theta: u32) -> Result<LinAnsatz> {
    check(n, twice_shift)?;
    let mut words = vec![];
    for s in masks(n).filter(|s| mask_len(*s) <= max_theta) {
        for e in masks(n) {
            let num = twice_shift as i64 + mask_len(s) as i64 - mask_len(e) as i64;
            if num >= 0 && num % 2 == 0 {
                words.push(OpWord::new(0, s, (num / 2) as u32, e));
            }
        }
    }
    words.sort();
    Ok(LinAnsatz { n, twice_shift, max_theta, words })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_counts() {
        assert_eq!(build_ansatz(0, 4, 0).unwrap().len(), 3);
        assert_eq!(build_ansatz(1, 1, 0).unwrap().len(), 2);
        assert_eq!(build_ansatz(2, 2, 0).unwrap().len(), 8);
        assert!(build_ansatz(0, 3, 0).unwrap().is_empty());
        assert!(build_ansatz(1, 17, 0).is_err());
    }

    #[test]
    fn parity_and_weight_are_uniform() {
        for n in 0..=2 {
            for t in 0..=9 {
                let a = build_ansatz(n, t, n as u32).unwrap();
                for w in &a.words {
                    assert_eq!(w.parity(), a.parity());
                    assert_eq!(w.twice_shift(), t as i64);
                }
            }
        }
    }

    #[test]
    fn linear_words() {
        let a = build_lin_ansatz(1, 1, 0).unwrap();
        assert_eq!(a.words, vec![OpWord::new(0, 0, 0, 1)]);
        assert_eq!(build_lin_ansatz(2, 2, 0).unwrap().len(), 2);
        assert_eq!(build_lin_ansatz(2, 2, 2).unwrap().len(), 2 + 4 + 2);
    }
}
