//! One (n, μ−λ) cell: relative 1-cochains as bilinear operators
//! J: F_{−1} ⊗ F_λ → F_μ with Υ(X_G)(f) = J(G, f), the cocycle condition,
//! coboundaries of invariant linear operators, and the resulting H¹.

use crate::contact::{contact_bracket, generators, SubalgebraSpec};
use crate::diffop::{act_on_bi, act_on_lin, BiDiffOp, BiPoly, BiWord, LinDiffOp, OpPoly, OpWord, Slot};
use crate::error::{usage, Result};
use crate::scalars::{ParamPoly, Rational, Ring};
use crate::superpoly::{bit, monomials, SuperPoly};

use super::ansatz::{build_ansatz, build_lin_ansatz, Ansatz, MAX_TWICE_SHIFT};
use super::invariants::{bi_coords, bi_from_coords, half, invariance_rows_bi, solve_invariance_lin, LinFamily};
use super::solve::{Backend, Row, RowBuilder};

/// Weight of the first argument: K(n) ≅ F_{−1} as a module over itself.
pub const TAU: i64 = -1;

/// Environment variable overriding the default degree bound.
pub const DEGREE_BOUND_ENV: &str = "SUPERDENSITY_DEGREE_BOUND";

/// D = 2k + 4 for the cochain shift k = μ − λ + 1, unless overridden.
pub fn degree_bound(twice_shift: u32) -> u32 {
    if let Some(d) = std::env::var(DEGREE_BOUND_ENV).ok().and_then(|v| v.trim().parse().ok()) {
        return d;
    }
    twice_shift + 2 + 4
}

fn scale_op<C: Ring>(op: &OpPoly<C>, parity: u32) -> OpPoly<C> {
    if parity % 2 == 1 {
        op.neg()
    } else {
        op.clone()
    }
}

fn parity_of<C: Ring>(p: &SuperPoly<C>) -> Result<u32> {
    p.parity().bit().ok_or_else(|| crate::Error::Usage("argument is not homogeneous".into()))
}

/// L^λ(G, f) = 𝕃^λ_{X_G} f as a bilinear operator.
pub fn lie_bilinear<C: Ring>(n: u8, lambda: &C) -> BiPoly<C> {
    let mut terms = vec![
        (BiWord::new(0, 0, Slot::ID, Slot::new(1, 0)), C::one()),
        (BiWord::new(0, 0, Slot::new(1, 0), Slot::ID), lambda.clone()),
    ];
    for i in 1..=n {
        terms.push((BiWord::new(0, 0, Slot::new(0, bit(i)), Slot::new(0, bit(i))), C::from_rational(&Rational::frac(-1, 2))));
    }
    BiPoly::from_terms(n, terms)
}

/// δA: X_G ↦ (−1)^{|G||A|} X_G·A as a bilinear operator F_{−1} ⊗ F_λ → F_μ.
pub fn coboundary<C: Ring>(a: &LinDiffOp<C>) -> BiDiffOp<C> {
    let n = a.n();
    let lmu = lie_bilinear(n, &a.mu);
    let llam = lie_bilinear(n, &a.lambda);
    let op = lmu.compose_slot2(&a.op, false).sub(&llam.left_op(&a.op, false));
    BiDiffOp::new(op, C::from_int(TAU), a.lambda.clone(), a.mu.clone())
}

/// The cochain X_G ↦ J(G, ·).
pub fn cochain_value<C: Ring>(j: &BiDiffOp<C>, g: &SuperPoly<C>) -> LinDiffOp<C> {
    LinDiffOp::new(j.partial(g), j.lambda.clone(), j.mu.clone()).with_pi(j.pi[1], j.pi[2])
}

/// Left side of the cocycle identity on homogeneous F, G, computed directly:
/// (−1)^{|F||Υ|} X_F·Υ(G) − (−1)^{|G|(|F|+|Υ|)} X_G·Υ(F) − Υ({F,G}).
pub fn osp1_defect<C: Ring>(j: &BiDiffOp<C>, f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<OpPoly<C>> {
    let pj = j.parity().ok_or_else(|| crate::Error::Usage("cochain is not homogeneous".into()))?;
    let (pf, pg) = (parity_of(f)?, parity_of(g)?);
    let t1 = act_on_lin(f, &cochain_value(j, g))?.op;
    let t2 = act_on_lin(g, &cochain_value(j, f))?.op;
    let t3 = j.partial(&contact_bracket(f, g)?);
    Ok(scale_op(&t1, pf * pj).sub(&scale_op(&t2, pg * (pf + pj))).sub(&t3))
}

/// The same quantity through K_F = X_F·J:
/// (−1)^{|F||J|} K_F(G, ·) − (−1)^{|G|(|F|+|J|)} K_G(F, ·) + J({F,G}, ·).
fn defect_from<C: Ring>(
    j: &BiDiffOp<C>,
    pj: u32,
    (f, kf, pf): (&SuperPoly<C>, &BiDiffOp<C>, u32),
    (g, kg, pg): (&SuperPoly<C>, &BiDiffOp<C>, u32),
    bracket: &SuperPoly<C>,
) -> OpPoly<C> {
    let a = scale_op(&kf.partial(g), pf * pj);
    let b = scale_op(&kg.partial(f), pg * (pf + pj));
    a.sub(&b).add(&j.partial(bracket))
}

pub fn cocycle_defect<C: Ring>(j: &BiDiffOp<C>, f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<OpPoly<C>> {
    let pj = j.parity().ok_or_else(|| crate::Error::Usage("cochain is not homogeneous".into()))?;
    let (pf, pg) = (parity_of(f)?, parity_of(g)?);
    let kf = act_on_bi(f, j)?;
    let kg = act_on_bi(g, j)?;
    Ok(defect_from(j, pj, (f, &kf, pf), (g, &kg, pg), &contact_bracket(f, g)?))
}

/// Monomial pairs (F, G), F before G in the monomial order, with
/// x-degrees summing to at most D.
pub fn monomial_pairs(n: u8, d: u32) -> Vec<(usize, usize)> {
    let mons = monomials(n, d);
    let mut out = vec![];
    for i in 0..mons.len() {
        for j in i..mons.len() {
            if mons[i].x + mons[j].x <= d {
                out.push((i, j));
            }
        }
    }
    out
}

/// The first pair (in monomial order) on which the cocycle identity fails.
/// Operators with Π flags go through the direct form.
pub fn first_cocycle_failure<C: Ring>(j: &BiDiffOp<C>, d: u32) -> Result<Option<(SuperPoly<C>, SuperPoly<C>, OpPoly<C>)>> {
    let n = j.n();
    let mons: Vec<SuperPoly<C>> = monomials(n, d).into_iter().map(|m| SuperPoly::monomial(n, m, C::one())).collect();
    let flagged = j.pi != [false; 3];
    for (a, b) in monomial_pairs(n, d) {
        let e = if flagged { osp1_defect(j, &mons[a], &mons[b])? } else { cocycle_defect(j, &mons[a], &mons[b])? };
        if !e.is_zero() {
            return Ok(Some((mons[a].clone(), mons[b].clone(), e)));
        }
    }
    Ok(None)
}

/// Rows of the cocycle identity over all monomial pairs, one column per
/// operator in `ops` (all of one parity).
pub fn cocycle_rows<C: Ring>(ops: &[BiDiffOp<C>], d: u32) -> Result<Vec<Row<C>>> {
    let Some(first) = ops.first() else { return Ok(vec![]) };
    let n = first.n();
    let pj = first.parity().unwrap_or(0);
    let mons: Vec<SuperPoly<C>> = monomials(n, d).into_iter().map(|m| SuperPoly::monomial(n, m, C::one())).collect();
    let pars: Vec<u32> = monomials(n, d).iter().map(|m| m.parity()).collect();
    let ks: Vec<Vec<BiDiffOp<C>>> =
        ops.iter().map(|j| mons.iter().map(|f| act_on_bi(f, j)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let mut rows: RowBuilder<(usize, OpWord), C> = RowBuilder::default();
    for (p, (a, b)) in monomial_pairs(n, d).into_iter().enumerate() {
        let br = contact_bracket(&mons[a], &mons[b])?;
        for (col, j) in ops.iter().enumerate() {
            let e = defect_from(j, pj, (&mons[a], &ks[col][a], pars[a]), (&mons[b], &ks[col][b], pars[b]), &br);
            rows.extend(col, e.terms().iter().map(|(w, c)| ((p, *w), c.clone())));
        }
    }
    Ok(rows.finish())
}

/// Rows of {J(H, ·) = 0 for H ∈ aff(n|1)}, one column per ansatz word.
pub fn vanishing_rows<C: Ring>(a: &Ansatz, lambda: &C, mu: &C) -> Result<Vec<Row<C>>> {
    let gens = generators::<C>(&SubalgebraSpec::aff(a.n), 0)?;
    let mut rows = RowBuilder::default();
    for (col, w) in a.words.iter().enumerate() {
        let j = BiDiffOp::new(BiPoly::term(a.n, *w, C::one()), C::from_int(TAU), lambda.clone(), mu.clone());
        for (g, h) in gens.iter().enumerate() {
            rows.extend(col, j.partial(h).terms().iter().map(|(ow, c)| ((g, *ow), c.clone())));
        }
    }
    Ok(rows.finish())
}

/// Relative cochains of one shift: aff-invariant and vanishing on aff.
#[derive(Clone, Debug)]
pub struct CochainSpace<C: Ring> {
    pub ansatz: Ansatz,
    pub lambda: C,
    pub mu: C,
    pub basis: Vec<Vec<C>>,
    pub locus: ParamPoly,
}

impl<C: Ring> CochainSpace<C> {
    pub fn op(&self, coords: &[C]) -> BiDiffOp<C> {
        BiDiffOp::new(bi_from_coords(&self.ansatz, coords), C::from_int(TAU), self.lambda.clone(), self.mu.clone())
    }
}

fn check_shift(twice_shift: u32) -> Result<()> {
    if twice_shift + 2 > MAX_TWICE_SHIFT {
        return usage(format!("μ−λ = {}/2 is above the supported range", twice_shift));
    }
    Ok(())
}

/// Relative 1-cochains with values in D_{λ,λ+s}, s = twice_shift/2.
pub fn relative_cochains<B: Backend>(b: &B, n: u8, twice_shift: u32, lambda: &B::C) -> Result<CochainSpace<B::C>> {
    check_shift(twice_shift)?;
    let a = build_ansatz(n, twice_shift + 2, 0)?;
    let mu = lambda.add_ref(&B::C::from_rational(&half(twice_shift)));
    let mut rows = invariance_rows_bi(&a, &B::C::from_int(TAU), lambda, &mu, &SubalgebraSpec::aff(n))?;
    rows.extend(vanishing_rows(&a, lambda, &mu)?);
    let s = b.solve(rows, a.len())?;
    Ok(CochainSpace { ansatz: a, lambda: lambda.clone(), mu, basis: s.basis, locus: s.locus })
}

fn combine<C: Ring>(coeffs: &[C], vectors: &[Vec<C>]) -> Vec<C> {
    let len = vectors.first().map_or(0, |v| v.len());
    let mut out = vec![C::zero(); len];
    for (y, v) in coeffs.iter().zip(vectors) {
        if y.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                o.add_assign_ref(&y.mul_ref(x));
            }
        }
    }
    out
}

/// Cocycles inside a cochain space, in ansatz coordinates.
pub fn cocycles<B: Backend>(b: &B, space: &CochainSpace<B::C>, d: u32) -> Result<(Vec<Vec<B::C>>, ParamPoly)> {
    if space.basis.is_empty() {
        return Ok((vec![], ParamPoly::from_int(1)));
    }
    let ops: Vec<_> = space.basis.iter().map(|v| space.op(v)).collect();
    let rows = cocycle_rows(&ops, d)?;
    let s = b.solve(rows, ops.len())?;
    Ok((s.basis.iter().map(|y| combine(y, &space.basis)).collect(), s.locus))
}

/// Polynomials whose roots contain every weight where a dimension can jump.
#[derive(Clone, Debug, Default)]
pub struct Loci {
    pub cochain: ParamPoly,
    pub cocycle: ParamPoly,
    pub linear: ParamPoly,
    pub coboundary: ParamPoly,
}

impl Loci {
    pub fn product(&self) -> ParamPoly {
        self.cochain.mul_ref(&self.cocycle).mul_ref(&self.linear).mul_ref(&self.coboundary)
    }
}

#[derive(Clone, Debug)]
pub struct CellOutcome<C: Ring> {
    pub n: u8,
    pub twice_shift: u32,
    pub degree_bound: u32,
    pub cochains: CochainSpace<C>,
    pub cocycles: Vec<Vec<C>>,
    pub linear: LinFamily<C>,
    /// δA for each linear invariant A, in ansatz coordinates.
    pub coboundaries: Vec<Vec<C>>,
    pub dim_b: usize,
    /// Cocycles independent modulo the coboundaries.
    pub classes: Vec<Vec<C>>,
    pub b_in_z: bool,
    /// Dimension of the cocycle space at the degree bound D + 2, if computed.
    pub dim_z_extended: Option<usize>,
    pub loci: Loci,
}

impl<C: Ring> CellOutcome<C> {
    pub fn dim_cochains(&self) -> usize {
        self.cochains.basis.len()
    }

    pub fn dim_z(&self) -> usize {
        self.cocycles.len()
    }

    pub fn dim_h1(&self) -> usize {
        self.dim_z() - self.dim_b
    }

    pub fn stable(&self) -> Option<bool> {
        self.dim_z_extended.map(|e| e == self.dim_z())
    }

    pub fn class_op(&self, i: usize) -> BiDiffOp<C> {
        self.cochains.op(&self.classes[i])
    }

    pub fn cocycle_op(&self, i: usize) -> BiDiffOp<C> {
        self.cochains.op(&self.cocycles[i])
    }
}

/// Invariant linear operators of the ansatz's shift and their coboundaries
/// in ansatz coordinates.
pub fn coboundary_vectors<B: Backend>(b: &B, a: &Ansatz, lambda: &B::C) -> Result<(LinFamily<B::C>, Vec<Vec<B::C>>)> {
    let twice_shift = a.twice_k.checked_sub(2).ok_or_else(|| crate::Error::Usage("ansatz shift below 1".into()))?;
    let lin = solve_invariance_lin(b, &build_lin_ansatz(a.n, twice_shift, 0)?, lambda, &SubalgebraSpec::aff(a.n))?;
    let mut bs = vec![];
    for i in 0..lin.dimension() {
        bs.push(bi_coords(a, &coboundary(&lin.member(i)).op)?);
    }
    Ok((lin, bs))
}

/// Cocycles found with and without the invariance equations.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct InvarianceRedundancy {
    pub n: u8,
    pub twice_shift: u32,
    /// Cochains vanishing on aff, invariance not imposed.
    pub dim_vanishing: usize,
    pub dim_z_without_invariance: usize,
    pub dim_z: usize,
    /// Every cocycle of the larger system is invariant.
    pub redundant: bool,
}

/// Solve {vanishing on aff} + {cocycle identity} alone and check that the
/// solutions already satisfy the invariance equations.
pub fn invariance_redundancy<B: Backend>(b: &B, n: u8, twice_shift: u32, lambda: &B::C, d: u32) -> Result<InvarianceRedundancy> {
    check_shift(twice_shift)?;
    let a = build_ansatz(n, twice_shift + 2, 0)?;
    let mu = lambda.add_ref(&B::C::from_rational(&half(twice_shift)));
    let s = b.solve(vanishing_rows(&a, lambda, &mu)?, a.len())?;
    let loose = CochainSpace { ansatz: a, lambda: lambda.clone(), mu, basis: s.basis, locus: s.locus };
    let (z_loose, _) = cocycles(b, &loose, d)?;
    let (z, _) = cocycles(b, &relative_cochains(b, n, twice_shift, lambda)?, d)?;
    let rank_z = b.rank(&z)?.0;
    let mut all = z.clone();
    all.extend(z_loose.iter().cloned());
    let redundant = b.rank(&all)?.0 == rank_z;
    Ok(InvarianceRedundancy {
        n,
        twice_shift,
        dim_vanishing: loose.basis.len(),
        dim_z_without_invariance: z_loose.len(),
        dim_z: z.len(),
        redundant,
    })
}

/// Everything for one cell at the backend's weight.
pub fn compute_cell<B: Backend>(
    b: &B,
    n: u8,
    twice_shift: u32,
    lambda: &B::C,
    d: u32,
    extended: bool,
) -> Result<CellOutcome<B::C>> {
    let space = relative_cochains(b, n, twice_shift, lambda)?;
    let (zs, cocycle_locus) = cocycles(b, &space, d)?;
    let dim_z_extended = if extended { Some(cocycles(b, &space, d + 2)?.0.len()) } else { None };

    let (lin, bs) = coboundary_vectors(b, &space.ansatz, lambda)?;
    let (dim_b, coboundary_locus) = b.rank(&bs)?;

    let (rank_z, _) = b.rank(&zs)?;
    let mut all = zs.clone();
    all.extend(bs.iter().cloned());
    let b_in_z = b.rank(&all)?.0 == rank_z;

    let mut span = bs.clone();
    let mut r = dim_b;
    let mut classes = vec![];
    for z in &zs {
        span.push(z.clone());
        let r2 = b.rank(&span)?.0;
        if r2 > r {
            classes.push(z.clone());
            r = r2;
        } else {
            span.pop();
        }
    }

    let loci = Loci { cochain: space.locus.clone(), cocycle: cocycle_locus, linear: lin.locus.clone(), coboundary: coboundary_locus };
    Ok(CellOutcome {
        n,
        twice_shift,
        degree_bound: d,
        cochains: space,
        cocycles: zs,
        linear: lin,
        coboundaries: bs,
        dim_b,
        classes,
        b_in_z,
        dim_z_extended,
        loci,
    })
}
