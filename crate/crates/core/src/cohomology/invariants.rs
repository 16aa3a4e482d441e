//! Operators annihilated by a subalgebra: the unknown coefficients of an
//! ansatz are constrained by expanding X_H·J = 0 in normal form.

use crate::contact::{generators, SubalgebraSpec};
use crate::diffop::{act_on_bi, act_on_lin, BiDiffOp, BiPoly, LinDiffOp, OpPoly};
use crate::error::{usage, Result};
use crate::scalars::{ParamPoly, Rational, Ring};

use super::ansatz::{Ansatz, LinAnsatz};
use super::solve::{Backend, Generic, Row, RowBuilder};

pub fn bi_from_coords<C: Ring>(a: &Ansatz, coords: &[C]) -> BiPoly<C> {
    BiPoly::from_terms(a.n, a.words.iter().zip(coords).map(|(w, c)| (*w, c.clone())).collect())
}

pub fn lin_from_coords<C: Ring>(a: &LinAnsatz, coords: &[C]) -> OpPoly<C> {
    OpPoly::from_terms(a.n, a.words.iter().zip(coords).map(|(w, c)| (*w, c.clone())).collect())
}

/// Coordinates of an operator in an ansatz; words outside it are an error.
pub fn bi_coords<C: Ring>(a: &Ansatz, j: &BiPoly<C>) -> Result<Vec<C>> {
    let mut v = vec![C::zero(); a.len()];
    for (w, c) in j.terms() {
        match a.index_of(w) {
            Some(i) => v[i] = c.clone(),
            None => return usage(format!("term {w:?} lies outside the ansatz")),
        }
    }
    Ok(v)
}

/// Bilinear invariants of a fixed shift.
#[derive(Clone, Debug)]
pub struct BiFamily<C: Ring> {
    pub ansatz: Ansatz,
    pub tau: C,
    pub lambda: C,
    pub mu: C,
    pub basis: Vec<Vec<C>>,
    pub locus: ParamPoly,
}

impl<C: Ring> BiFamily<C> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn member(&self, i: usize) -> BiDiffOp<C> {
        BiDiffOp::new(bi_from_coords(&self.ansatz, &self.basis[i]), self.tau.clone(), self.lambda.clone(), self.mu.clone())
    }
}

/// Linear invariants of a fixed shift.
#[derive(Clone, Debug)]
pub struct LinFamily<C: Ring> {
    pub ansatz: LinAnsatz,
    pub lambda: C,
    pub mu: C,
    pub basis: Vec<Vec<C>>,
    pub locus: ParamPoly,
}

impl<C: Ring> LinFamily<C> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn member(&self, i: usize) -> LinDiffOp<C> {
        LinDiffOp::new(lin_from_coords(&self.ansatz, &self.basis[i]), self.lambda.clone(), self.mu.clone())
    }
}

pub(crate) fn half(twice: u32) -> Rational {
    Rational::frac(twice as i64, 2)
}

/// Rows of X_H·J = 0 for every generator H, one column per ansatz word.
pub fn invariance_rows_bi<C: Ring>(a: &Ansatz, tau: &C, lambda: &C, mu: &C, spec: &SubalgebraSpec) -> Result<Vec<Row<C>>> {
    let gens = generators::<C>(spec, 0)?;
    let mut rows = RowBuilder::default();
    for (col, w) in a.words.iter().enumerate() {
        let j = BiDiffOp::new(BiPoly::term(a.n, *w, C::one()), tau.clone(), lambda.clone(), mu.clone());
        for (g, h) in gens.iter().enumerate() {
            let out = act_on_bi(h, &j)?;
            rows.extend(col, out.op.terms().iter().map(|(bw, c)| ((g, *bw), c.clone())));
        }
    }
    Ok(rows.finish())
}

pub fn invariance_rows_lin<C: Ring>(a: &LinAnsatz, lambda: &C, mu: &C, spec: &SubalgebraSpec) -> Result<Vec<Row<C>>> {
    let gens = generators::<C>(spec, 0)?;
    let mut rows = RowBuilder::default();
    for (col, w) in a.words.iter().enumerate() {
        let op = LinDiffOp::new(OpPoly::word(a.n, *w, C::one()), lambda.clone(), mu.clone());
        for (g, h) in gens.iter().enumerate() {
            let out = act_on_lin(h, &op)?;
            rows.extend(col, out.op.terms().iter().map(|(ow, c)| ((g, *ow), c.clone())));
        }
    }
    Ok(rows.finish())
}

/// Bilinear operators F_τ ⊗ F_λ → F_{τ+λ+k} annihilated by `spec`.
pub fn solve_invariance_bi<B: Backend>(
    b: &B,
    a: &Ansatz,
    tau: &B::C,
    lambda: &B::C,
    spec: &SubalgebraSpec,
) -> Result<BiFamily<B::C>> {
    if spec.n != a.n {
        return usage("subalgebra and ansatz have different arities");
    }
    let mu = tau.add_ref(lambda).add_ref(&B::C::from_rational(&half(a.twice_k)));
    let rows = invariance_rows_bi(a, tau, lambda, &mu, spec)?;
    let s = b.solve(rows, a.len())?;
    Ok(BiFamily { ansatz: a.clone(), tau: tau.clone(), lambda: lambda.clone(), mu, basis: s.basis, locus: s.locus })
}

/// Linear operators F_λ → F_{λ+s} annihilated by `spec`.
pub fn solve_invariance_lin<B: Backend>(b: &B, a: &LinAnsatz, lambda: &B::C, spec: &SubalgebraSpec) -> Result<LinFamily<B::C>> {
    if spec.n != a.n {
        return usage("subalgebra and ansatz have different arities");
    }
    let mu = lambda.add_ref(&B::C::from_rational(&half(a.twice_shift)));
    let rows = invariance_rows_lin(a, lambda, &mu, spec)?;
    let s = b.solve(rows, a.len())?;
    Ok(LinFamily { ansatz: a.clone(), lambda: lambda.clone(), mu, basis: s.basis, locus: s.locus })
}

/// aff(n|1)-invariant bilinear operators with τ and λ free.
pub fn classify_invariants(n: u8, twice_k: u32) -> Result<BiFamily<ParamPoly>> {
    let a = super::ansatz::build_ansatz(n, twice_k, 0)?;
    let b = Generic::new(&["tau", "lambda"], 0x7a0);
    solve_invariance_bi(&b, &a, &ParamPoly::named("tau"), &ParamPoly::named("lambda"), &SubalgebraSpec::aff(n))
}

/// aff(n|1)-invariant linear operators F_λ → F_{λ+s} with λ free.
pub fn classify_linear(n: u8, twice_shift: u32) -> Result<LinFamily<ParamPoly>> {
    let a = super::ansatz::build_lin_ansatz(n, twice_shift, 0)?;
    solve_invariance_lin(&Generic::lambda(), &a, &ParamPoly::named("lambda"), &SubalgebraSpec::aff(n))
}
