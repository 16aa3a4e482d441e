//! Contact vector fields X_F on ℝ^{1|n}, the contact bracket, and the
//! subalgebras aff(n|1) and K(n).

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::scalars::{Rational, Ring};
use crate::superpoly::{bit, mask_indices, Mono, SuperPoly};

fn half<C: Ring>() -> C {
    C::from_rational(&Rational::frac(1, 2))
}

/// Σ_i η_i(F)·η_i(G)
fn eta_pairing<C: Ring>(f: &SuperPoly<C>, g: &SuperPoly<C>) -> SuperPoly<C> {
    let mut acc = SuperPoly::zero(f.n());
    for i in 1..=f.n() {
        acc = acc.add_unchecked(&f.eta_unchecked(i).mul_unchecked(&g.eta_unchecked(i)));
    }
    acc
}

/// X_F(G) = F·G′ − ½(−1)^{|F|} Σ η_i(F)·η_i(G); mixed F is split by parity.
pub fn field_apply<C: Ring>(f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<SuperPoly<C>> {
    if f.n() != g.n() {
        return usage(format!("arity mismatch: {} vs {}", f.n(), g.n()));
    }
    let (fe, fo) = f.split_parity();
    let mut acc = f.mul_unchecked(&g.d_x());
    let pe = eta_pairing(&fe, g).scale(&half::<C>().neg_ref());
    let po = eta_pairing(&fo, g).scale(&half::<C>());
    acc = acc.add_unchecked(&pe).add_unchecked(&po);
    Ok(acc)
}

/// {F,G} = F·G′ − F′·G − ½(−1)^{|F|} Σ η_i(F)·η_i(G).
pub fn contact_bracket<C: Ring>(f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<SuperPoly<C>> {
    let xf = field_apply(f, g)?;
    Ok(xf.sub(&f.d_x().mul_unchecked(g))?)
}

/// The contact field X_F.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactField<C: Ring> {
    pub hamiltonian: SuperPoly<C>,
}

impl<C: Ring> ContactField<C> {
    pub fn new(hamiltonian: SuperPoly<C>) -> Self {
        ContactField { hamiltonian }
    }

    pub fn apply(&self, g: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        field_apply(&self.hamiltonian, g)
    }

    /// [X_F, X_G] = X_{F,G}
    pub fn bracket(&self, o: &Self) -> Result<Self> {
        Ok(ContactField::new(contact_bracket(&self.hamiltonian, &o.hamiltonian)?))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubalgebraName {
    Aff,
    K,
    Vect,
}

/// A distinguished subalgebra of K(n), optionally the copy that does not
/// involve θ_i.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraSpec {
    pub name: SubalgebraName,
    pub n: u8,
    pub excluded: Option<u8>,
}

impl SubalgebraSpec {
    pub fn aff(n: u8) -> Self {
        SubalgebraSpec { name: SubalgebraName::Aff, n, excluded: None }
    }

    pub fn k(n: u8) -> Self {
        SubalgebraSpec { name: SubalgebraName::K, n, excluded: None }
    }
}

/// Hamiltonians spanning the subalgebra: for aff exactly 1, x, θ_i, θ_iθ_j
/// (i<j); for K and vect all monomials with x-degree ≤ `max_degree`.
pub fn generators<C: Ring>(spec: &SubalgebraSpec, max_degree: u32) -> Result<Vec<SuperPoly<C>>> {
    let n = spec.n;
    if let Some(i) = spec.excluded {
        if i == 0 || i > n {
            return usage(format!("excluded index {i} out of range"));
        }
    }
    let allowed = |m: Mono| spec.excluded.is_none_or(|i| m.mask & bit(i) == 0);
    let monos: Vec<Mono> = match spec.name {
        SubalgebraName::Aff => {
            let mut v = vec![Mono::new(0, 0), Mono::new(1, 0)];
            for i in 1..=n {
                v.push(Mono::new(0, bit(i)));
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    v.push(Mono::new(0, bit(i) | bit(j)));
                }
            }
            v
        }
        SubalgebraName::K | SubalgebraName::Vect => crate::superpoly::monomials(n, max_degree),
    };
    Ok(monos
        .into_iter()
        .filter(|m| allowed(*m))
        .map(|m| SuperPoly::monomial(n, m, C::one()))
        .collect())
}

/// Display name of an aff generator, e.g. `θ1θ2`.
pub fn generator_label(m: Mono) -> String {
    let mut s = match m.x {
        0 if m.mask == 0 => "1".to_string(),
        0 => String::new(),
        1 => "x".into(),
        k => format!("x^{k}"),
    };
    for i in mask_indices(m.mask) {
        s.push_str(&format!("θ{i}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = SuperPoly<Rational>;

    fn mono(n: u8, x: u32, mask: u8) -> P {
        P::monomial(n, Mono::new(x, mask), Rational::one())
    }

    #[test]
    fn aff11_table() {
        let one = mono(1, 0, 0);
        let x = mono(1, 1, 0);
        let th = mono(1, 0, 1);
        assert_eq!(contact_bracket(&one, &x).unwrap(), one);
        assert_eq!(
            contact_bracket(&x, &th).unwrap(),
            th.scale_rational(&Rational::frac(-1, 2))
        );
        assert!(contact_bracket(&one, &th).unwrap().is_zero());
        assert_eq!(
            contact_bracket(&th, &th).unwrap(),
            one.scale_rational(&Rational::frac(1, 2))
        );
    }

    #[test]
    fn field_examples() {
        let p = mono(2, 2, 0).add(&mono(2, 0, 3)).unwrap();
        assert_eq!(field_apply(&mono(2, 0, 0), &p).unwrap(), mono(2, 1, 0).scale_rational(&Rational::from_int(2)));
        assert_eq!(
            field_apply(&mono(1, 1, 0), &mono(1, 0, 1)).unwrap(),
            mono(1, 0, 1).scale_rational(&Rational::frac(1, 2))
        );
        // X_θ(x) = θ·1 − ½(−1)·η(θ)η(x) = θ − ½θ
        assert_eq!(
            field_apply(&mono(1, 0, 1), &mono(1, 1, 0)).unwrap(),
            mono(1, 0, 1).scale_rational(&Rational::frac(1, 2))
        );
    }

    #[test]
    fn aff_generators() {
        assert_eq!(generators::<Rational>(&SubalgebraSpec::aff(1), 0).unwrap().len(), 3);
        assert_eq!(generators::<Rational>(&SubalgebraSpec::aff(2), 0).unwrap().len(), 5);
        assert_eq!(generators::<Rational>(&SubalgebraSpec::aff(0), 0).unwrap().len(), 2);
        let restricted = SubalgebraSpec { excluded: Some(2), ..SubalgebraSpec::aff(2) };
        assert_eq!(generators::<Rational>(&restricted, 0).unwrap().len(), 3);
    }
}
