//! Tall sparse systems: independent rows are picked modulo a prime, the
//! selection is solved exactly, and every remaining row is checked against
//! the exact answer. Rows that fail the check join the selection.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::param_linalg::{determinant_locus, eval_single, generic_nullspace, ParamMatrix, RowSelector};
use crate::scalars::modp::{sqrt_mod, Fp2, P};
use crate::scalars::{AlgebraicScalar, Field, ParamPoly, Rational, Ring};

pub type Row<C> = Vec<(usize, C)>;

/// Collects (key, column, value) contributions; each key becomes one row.
pub struct RowBuilder<K: Ord, C: Ring> {
    map: BTreeMap<K, Vec<(usize, C)>>,
}

impl<K: Ord, C: Ring> Default for RowBuilder<K, C> {
    fn default() -> Self {
        RowBuilder { map: BTreeMap::new() }
    }
}

impl<K: Ord, C: Ring> RowBuilder<K, C> {
    pub fn add(&mut self, key: K, col: usize, v: C) {
        if !v.is_zero() {
            self.map.entry(key).or_default().push((col, v));
        }
    }

    pub fn extend(&mut self, col: usize, terms: impl IntoIterator<Item = (K, C)>) {
        for (k, v) in terms {
            self.add(k, col, v);
        }
    }

    pub fn finish(self) -> Vec<Row<C>> {
        self.map.into_values().filter_map(|r| merge_row(r)).collect()
    }
}

fn merge_row<C: Ring>(mut r: Vec<(usize, C)>) -> Option<Row<C>> {
    r.sort_by_key(|(j, _)| *j);
    let mut out: Row<C> = Vec::with_capacity(r.len());
    for (j, c) in r {
        match out.last_mut() {
            Some((lj, lc)) if *lj == j => lc.add_assign_ref(&c),
            _ => out.push((j, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    (!out.is_empty()).then_some(out)
}

/// Result of a solve: a nullspace basis and, for parametric solves, the
/// polynomial whose roots are the only places the dimension can jump.
#[derive(Clone, Debug)]
pub struct Solved<C> {
    pub basis: Vec<Vec<C>>,
    pub locus: ParamPoly,
}

/// Where a computation happens: over ℚ(λ) or at a fixed weight.
pub trait Backend: Sync {
    type C: Ring;

    /// Value of a polynomial in the weight parameters.
    fn eval(&self, p: &ParamPoly) -> Result<Self::C>;
    fn solve(&self, rows: Vec<Row<Self::C>>, ncols: usize) -> Result<Solved<Self::C>>;
    /// Rank of a family of vectors, with the locus where it may drop.
    fn rank(&self, vectors: &[Vec<Self::C>]) -> Result<(usize, ParamPoly)>;
    fn reduce(&self, c: &Self::C) -> Option<Fp2>;
}

fn dot<C: Ring>(row: &[(usize, C)], v: &[C]) -> C {
    let mut acc = C::zero();
    for (j, c) in row {
        if !v[*j].is_zero() {
            acc.add_assign_ref(&c.mul_ref(&v[*j]));
        }
    }
    acc
}

/// Pick rows independent modulo P, in order. Rows that cannot be reduced
/// are always kept.
fn select<C: Ring>(rows: &[Row<C>], ncols: usize, reduce: impl Fn(&C) -> Option<Fp2>) -> Vec<usize> {
    let mut sel = RowSelector::<Fp2>::new(ncols);
    let mut out = vec![];
    for (i, r) in rows.iter().enumerate() {
        if sel.rank() == ncols {
            break;
        }
        let red: Option<Vec<(usize, Fp2)>> = r.iter().map(|(j, c)| reduce(c).map(|f| (*j, f))).collect();
        match red {
            Some(red) => {
                if sel.offer(&red) {
                    out.push(i);
                }
            }
            None => out.push(i),
        }
    }
    out
}

/// Rows failing the exact check, up to `limit`.
fn failures<C: Ring>(rows: &[Row<C>], chosen: &HashSet<usize>, basis: &[Vec<C>], limit: usize) -> Vec<usize> {
    let mut bad = vec![];
    for (i, r) in rows.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        if basis.iter().any(|b| !dot(r, b).is_zero()) {
            bad.push(i);
            if bad.len() >= limit {
                break;
            }
        }
    }
    bad
}

fn dedupe_param(rows: Vec<Row<ParamPoly>>) -> Vec<Row<ParamPoly>> {
    let mut seen = HashSet::new();
    let mut out = vec![];
    for r in rows {
        let lead = r[0].1.leading().map(|(_, c)| c.clone()).unwrap_or(Rational::ONE);
        let inv = lead.recip().expect("nonzero entry");
        let key: Row<ParamPoly> = r.iter().map(|(j, c)| (*j, c.scale(&inv))).collect();
        if seen.insert(key) {
            out.push(r);
        }
    }
    out
}

/// Computation over ℚ(params) with a fixed list of parameter names.
pub struct Generic {
    vars: Vec<String>,
    point: Vec<Fp2>,
}

impl Generic {
    pub fn new(vars: &[&str], seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Generic {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            point: vars.iter().map(|_| Fp2::new(rng.gen_range(1..P), 0, 0)).collect(),
        }
    }

    pub fn lambda() -> Self {
        Self::new(&["lambda"], 0x5eed)
    }

    fn reduce_poly(&self, p: &ParamPoly) -> Option<Fp2> {
        let vals: Vec<Fp2> = p
            .vars()
            .names()
            .iter()
            .map(|n| self.vars.iter().position(|v| v == n).map(|i| self.point[i]))
            .collect::<Option<_>>()?;
        for (_, c) in p.terms() {
            c.mod_p(P)?;
        }
        Some(p.eval_in(&vals))
    }
}

impl Backend for Generic {
    type C = ParamPoly;

    fn eval(&self, p: &ParamPoly) -> Result<ParamPoly> {
        for i in p.used_vars() {
            let n = &p.vars().names()[i];
            if !self.vars.contains(n) {
                return Err(Error::Usage(format!("unexpected parameter {n}")));
            }
        }
        Ok(p.clone())
    }

    fn solve(&self, rows: Vec<Row<ParamPoly>>, ncols: usize) -> Result<Solved<ParamPoly>> {
        let rows = dedupe_param(rows);
        let mut chosen: Vec<usize> = select(&rows, ncols, |c| self.reduce_poly(c));
        loop {
            let mut m = ParamMatrix::new(ncols);
            for &i in &chosen {
                m.push_row(rows[i].clone());
            }
            let s = generic_nullspace(&m);
            let set: HashSet<usize> = chosen.iter().copied().collect();
            let bad = failures(&rows, &set, &s.basis, 8);
            if bad.is_empty() {
                let locus = if self.vars.len() == 1 { determinant_locus(&s)? } else { ParamPoly::from_int(1) };
                return Ok(Solved { basis: s.basis, locus });
            }
            chosen.extend(bad);
        }
    }

    fn rank(&self, vectors: &[Vec<ParamPoly>]) -> Result<(usize, ParamPoly)> {
        let Some(first) = vectors.first() else { return Ok((0, ParamPoly::from_int(1))) };
        let mut m = ParamMatrix::new(first.len());
        for v in vectors {
            m.push_row(v.iter().cloned().enumerate().collect());
        }
        let s = generic_nullspace(&m);
        let locus = if self.vars.len() == 1 { determinant_locus(&s)? } else { ParamPoly::from_int(1) };
        Ok((s.rank, locus))
    }

    fn reduce(&self, c: &ParamPoly) -> Option<Fp2> {
        self.reduce_poly(c)
    }
}

/// Computation at a fixed value of the single weight parameter.
pub struct Special<F: Field> {
    pub value: F,
    reducer: Box<dyn Fn(&F) -> Option<Fp2> + Send + Sync>,
}

impl Special<Rational> {
    pub fn rational(value: Rational) -> Self {
        Special { value, reducer: Box::new(|r: &Rational| r.mod_p(P).map(|a| Fp2::new(a, 0, 0))) }
    }
}

impl Special<AlgebraicScalar> {
    pub fn algebraic(value: AlgebraicScalar) -> Self {
        let reducer: Box<dyn Fn(&AlgebraicScalar) -> Option<Fp2> + Send + Sync> = match value.field() {
            None => Box::new(|x: &AlgebraicScalar| x.coords().0.mod_p(P).map(|a| Fp2::new(a, 0, 0))),
            Some(field) => {
                // t² + c1·t + c0 = 0 with t = (−c1 + √disc)/2
                let [_, m1, m2] = field.minpoly().clone();
                let c1 = m1.checked_div(&m2).unwrap().mod_p(P).unwrap();
                let disc = field.discriminant().mod_p(P).unwrap();
                let half = Fp2::new(crate::scalars::modp::inv_mod(2, P), 0, 0);
                let t = match sqrt_mod(disc) {
                    Some(r) => Fp2::new(r, 0, 0).sub_ref(&Fp2::new(c1, 0, 0)).mul_ref(&half),
                    None => Fp2::new(0, 1, disc).sub_ref(&Fp2::new(c1, 0, 0)).mul_ref(&half),
                };
                Box::new(move |x: &AlgebraicScalar| {
                    let (a, b) = x.coords();
                    Some(Fp2::new(a.mod_p(P)?, 0, 0).add_ref(&Fp2::new(b.mod_p(P)?, 0, 0).mul_ref(&t)))
                })
            }
        };
        Special { value, reducer }
    }
}

impl<F: Field> Backend for Special<F> {
    type C = F;

    fn eval(&self, p: &ParamPoly) -> Result<F> {
        eval_single(p, &self.value)
    }

    fn solve(&self, rows: Vec<Row<F>>, ncols: usize) -> Result<Solved<F>> {
        let mut chosen = select(&rows, ncols, |c| (self.reducer)(c));
        loop {
            let mut sel = RowSelector::<F>::new(ncols);
            for &i in &chosen {
                sel.offer(&rows[i]);
            }
            let basis = sel.nullspace();
            let set: HashSet<usize> = chosen.iter().copied().collect();
            let bad = failures(&rows, &set, &basis, 8);
            if bad.is_empty() {
                return Ok(Solved { basis, locus: ParamPoly::from_int(1) });
            }
            chosen.extend(bad);
        }
    }

    fn rank(&self, vectors: &[Vec<F>]) -> Result<(usize, ParamPoly)> {
        let Some(first) = vectors.first() else { return Ok((0, ParamPoly::from_int(1))) };
        let mut sel = RowSelector::<F>::new(first.len());
        for v in vectors {
            sel.offer_dense(v.clone());
        }
        Ok((sel.rank(), ParamPoly::from_int(1)))
    }

    fn reduce(&self, c: &F) -> Option<Fp2> {
        (self.reducer)(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;
    use crate::scalars::{QuadraticField, UPoly};

    fn p(s: &str) -> ParamPoly {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn generic_solve_with_redundant_rows() {
        // x0 + λ x1 = 0 repeated many times, plus (λ+1) x2 = 0
        let mut rows = vec![];
        for k in 1..20 {
            rows.push(vec![(0, ParamPoly::from_int(k)), (1, p("lambda").scale(&Rational::from_int(k)))]);
        }
        rows.push(vec![(2, p("lambda + 1"))]);
        let s = Generic::lambda().solve(rows, 3).unwrap();
        assert_eq!(s.basis.len(), 1);
        assert_eq!(s.locus, p("lambda + 1"));
    }

    #[test]
    fn special_solve_in_quadratic_field() {
        // (2λ² + 10λ + 3)·x0 = 0 vanishes at a root
        let f = QuadraticField::new(&UPoly::from_ints(&[3, 10, 2])).unwrap();
        let b = Special::algebraic(f.root(1));
        let row = vec![(0, b.eval(&p("2*lambda^2 + 10*lambda + 3")).unwrap()), (1, b.eval(&p("lambda")).unwrap())];
        let s = b.solve(vec![row.clone(), row], 2).unwrap();
        assert_eq!(s.basis.len(), 1);
        assert!(s.basis[0][1].is_zero());
        let r = Special::rational(Rational::from_int(2));
        assert_eq!(r.solve(vec![vec![(0, Rational::ONE)]], 2).unwrap().basis.len(), 1);
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let f = QuadraticField::new(&UPoly::from_ints(&[-19, 0, 1])).unwrap();
        let b = Special::algebraic(f.gen());
        let x = f.gen();
        let y = x.mul_ref(&x).add_ref(&AlgebraicScalar::rational(Rational::frac(1, 3)));
        assert_eq!(b.reduce(&y), Some(b.reduce(&x).unwrap().mul_ref(&b.reduce(&x).unwrap()).add_ref(&Fp2::new(Rational::frac(1, 3).mod_p(P).unwrap(), 0, 0))));
        assert_eq!(b.reduce(&x.mul_ref(&x)), b.reduce(&AlgebraicScalar::rational(Rational::from_int(19))));
    }
}
