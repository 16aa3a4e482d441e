//! Exact linear algebra over ℚ[params]: generic nullspaces by fraction-free
//! Gauss–Jordan elimination, resonance loci, and re-solving at special values.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::parse::parse_scalar;
use crate::scalars::{factor_locus, AlgebraicScalar, Field, ParamPoly, Rational, Ring, UPoly};

/// Sparse matrix of parameter polynomials; rows are sorted by column.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, ParamPoly)>>,
}

impl ParamMatrix {
    pub fn new(cols: usize) -> Self {
        ParamMatrix { cols, rows: vec![] }
    }

    pub fn from_dense(rows: Vec<Vec<ParamPoly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = ParamMatrix::new(cols);
        for r in rows {
            if r.len() != cols {
                return usage("ragged matrix");
            }
            m.push_row(r.into_iter().enumerate().collect());
        }
        Ok(m)
    }

    /// Append a row given as (column, entry) pairs; zero entries are dropped.
    pub fn push_row(&mut self, mut row: Vec<(usize, ParamPoly)>) {
        debug_assert!(row.iter().all(|(j, _)| *j < self.cols));
        row.retain(|(_, c)| !c.is_zero());
        row.sort_by_key(|(j, _)| *j);
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, ParamPoly)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> ParamPoly {
        self.rows[i].iter().find(|(k, _)| *k == j).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// M·v with polynomial entries.
    pub fn mul_vec(&self, v: &[ParamPoly]) -> Vec<ParamPoly> {
        self.rows
            .iter()
            .map(|r| r.iter().fold(ParamPoly::zero(), |acc, (j, c)| acc.add_ref(&c.mul_ref(&v[*j]))))
            .collect()
    }

    /// Entries evaluated at a value of the single parameter.
    pub fn specialize<F: Ring>(&self, at: &F) -> Result<Vec<Vec<(usize, F)>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(j, c)| Ok((*j, eval_single(c, at)?))).collect())
            .collect()
    }

    pub fn to_json(&self) -> Vec<Vec<String>> {
        (0..self.nrows())
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn from_json(rows: &[Vec<String>]) -> Result<Self> {
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_dense(dense)
    }
}

/// Evaluate a polynomial in at most one parameter.
pub fn eval_single<F: Ring>(p: &ParamPoly, at: &F) -> Result<F> {
    match p.vars().len() {
        0 => Ok(F::from_rational(&p.constant_value().unwrap_or_default())),
        1 => Ok(p.eval_in(std::slice::from_ref(at))),
        _ => Err(Error::Usage(format!("{p} depends on more than one parameter"))),
    }
}

/// Evaluate at named parameter values; parameters not listed are an error.
pub fn eval_named<F: Ring>(p: &ParamPoly, values: &[(&str, F)]) -> Result<F> {
    let vals = p
        .vars()
        .names()
        .iter()
        .map(|n| {
            values
                .iter()
                .find(|(m, _)| m == n)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::Usage(format!("no value for parameter {n}")))
        })
        .collect::<Result<Vec<F>>>()?;
    Ok(p.eval_in(&vals))
}

/// Nullspace over the fraction field of the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSpace {
    pub generic_dimension: usize,
    /// Basis vectors with polynomial entries, content 1, first nonzero
    /// coordinate having a positive leading coefficient.
    pub basis: Vec<Vec<ParamPoly>>,
    /// Pivots in elimination order, one list per independent block.
    pub pivot_polynomials: Vec<ParamPoly>,
    /// Last pivot of each block: the rank drops only on its zero set.
    pub determinants: Vec<ParamPoly>,
    pub rank: usize,
}

fn pivot_cost(p: &ParamPoly) -> (u32, usize) {
    (p.total_degree(), p.terms().len())
}

/// Group columns that share a row.
fn blocks(m: &ParamMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut parent: Vec<usize> = (0..m.cols).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut c = i;
        while p[c] != r {
            let n = p[c];
            p[c] = r;
            c = n;
        }
        r
    }
    for r in &m.rows {
        if let Some((first, _)) = r.first() {
            let a = find(&mut parent, *first);
            for (j, _) in &r[1..] {
                let b = find(&mut parent, *j);
                parent[b] = a;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
    for j in 0..m.cols {
        let root = find(&mut parent, j);
        groups.entry(root).or_default().0.push(j);
    }
    for (i, r) in m.rows.iter().enumerate() {
        if let Some((first, _)) = r.first() {
            let root = find(&mut parent, *first);
            groups.get_mut(&root).unwrap().1.push(i);
        }
    }
    let mut out: Vec<_> = groups.into_values().collect();
    out.sort();
    out
}

/// Make a polynomial vector primitive with a positive leading first entry.
pub fn normalize_vector(v: &mut [ParamPoly]) {
    let mut g = ParamPoly::zero();
    for c in v.iter() {
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if g.is_zero() {
        return;
    }
    let first = v.iter().find(|c| !c.is_zero()).unwrap();
    let mut g = g.mul_ref(&ParamPoly::constant(first.div_exact(&g).unwrap().rational_content()));
    if first.div_exact(&g).unwrap().leading().unwrap().1.is_negative() {
        g = g.neg();
    }
    for c in v.iter_mut() {
        *c = c.div_exact(&g).expect("gcd divides every entry");
    }
}

/// Fraction-free Gauss–Jordan on a dense block. Returns pivot (row, col)
/// positions in order, the pivots, and the reduced block.
fn montante(mut a: Vec<Vec<ParamPoly>>) -> (Vec<usize>, Vec<ParamPoly>, Vec<Vec<ParamPoly>>) {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut used_row = vec![false; nr];
    let mut used_col = vec![false; nc];
    let mut pivot_rows = vec![];
    let mut pivot_cols = vec![];
    let mut pivots = vec![];
    let mut prev = ParamPoly::from_int(1);
    loop {
        let mut best: Option<((u32, usize), usize, usize)> = None;
        for (i, row) in a.iter().enumerate() {
            if used_row[i] {
                continue;
            }
            for (j, c) in row.iter().enumerate() {
                if used_col[j] || c.is_zero() {
                    continue;
                }
                let cost = pivot_cost(c);
                if best.as_ref().map_or(true, |(b, bj, _)| (cost, j) < (*b, *bj)) {
                    best = Some((cost, j, i));
                }
            }
        }
        let Some((_, pc, pr)) = best else { break };
        used_row[pr] = true;
        used_col[pc] = true;
        let p = a[pr][pc].clone();
        let prow = a[pr].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == pr {
                continue;
            }
            let f = row[pc].clone();
            for (j, x) in row.iter_mut().enumerate() {
                let t = p.mul_ref(x);
                let t = if f.is_zero() || prow[j].is_zero() { t } else { t.sub_ref(&f.mul_ref(&prow[j])) };
                *x = if t.is_zero() { t } else { t.div_exact(&prev).expect("fraction-free division is exact") };
            }
        }
        pivot_rows.push(pr);
        pivot_cols.push(pc);
        pivots.push(p.clone());
        prev = p;
    }
    let reduced = pivot_rows.iter().map(|&r| a[r].clone()).collect();
    (pivot_cols, pivots, reduced)
}

/// Nullspace over ℚ(params).
pub fn generic_nullspace(m: &ParamMatrix) -> SolutionSpace {
    let mut basis = vec![];
    let mut pivot_polynomials = vec![];
    let mut determinants = vec![];
    let mut rank = 0;
    for (cols, rows) in blocks(m) {
        let index: std::collections::HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let dense: Vec<Vec<ParamPoly>> = rows
            .iter()
            .map(|&i| {
                let mut r = vec![ParamPoly::zero(); cols.len()];
                for (j, c) in &m.rows[i] {
                    r[index[j]] = c.clone();
                }
                r
            })
            .collect();
        let (pcols, pivots, reduced) = montante(dense);
        rank += pcols.len();
        let d = pivots.last().cloned().unwrap_or_else(|| ParamPoly::from_int(1));
        for f in 0..cols.len() {
            if pcols.contains(&f) {
                continue;
            }
            let mut v = vec![ParamPoly::zero(); m.cols];
            v[cols[f]] = d.clone();
            for (k, &pc) in pcols.iter().enumerate() {
                v[cols[pc]] = reduced[k][f].neg();
            }
            normalize_vector(&mut v);
            basis.push(v);
        }
        if !pivots.is_empty() {
            determinants.push(d);
        }
        pivot_polynomials.extend(pivots);
    }
    basis.sort_by_key(|v| v.iter().position(|c| !c.is_zero()));
    SolutionSpace { generic_dimension: m.cols - rank, basis, pivot_polynomials, determinants, rank }
}

fn single_param(ps: &[ParamPoly]) -> Result<Option<String>> {
    let mut name: Option<String> = None;
    for p in ps {
        for i in p.used_vars() {
            let n = &p.vars().names()[i];
            match &name {
                None => name = Some(n.clone()),
                Some(m) if m == n => {}
                Some(_) => return usage("resonance analysis needs a single-parameter system"),
            }
        }
    }
    Ok(name)
}

fn square_free_product<'a>(ps: impl Iterator<Item = &'a ParamPoly>) -> Result<ParamPoly> {
    let mut acc = ParamPoly::from_int(1);
    for p in ps {
        if p.is_constant() {
            continue;
        }
        acc = acc.mul_ref(&crate::scalars::square_free(p)?);
    }
    if acc.is_constant() {
        return Ok(ParamPoly::from_int(1));
    }
    Ok(crate::scalars::square_free(&acc)?.primitive())
}

/// Square-free product of the nonconstant pivot polynomials.
pub fn resonance_candidates(s: &SolutionSpace) -> Result<ParamPoly> {
    single_param(&s.pivot_polynomials)?;
    square_free_product(s.pivot_polynomials.iter())
}

/// The tighter locus cut out by the block determinants alone.
pub fn determinant_locus(s: &SolutionSpace) -> Result<ParamPoly> {
    single_param(&s.determinants)?;
    square_free_product(s.determinants.iter())
}

/// Reduced row echelon form over a field; returns the nullspace basis with
/// free coordinates set to 1.
pub fn nullspace<F: Field>(rows: &[Vec<(usize, F)>], ncols: usize) -> Vec<Vec<F>> {
    let mut sel = RowSelector::new(ncols);
    for r in rows {
        sel.offer(r);
    }
    sel.nullspace()
}

/// Incremental echelon form over a field, used to pick independent rows.
#[derive(Clone, Debug)]
pub struct RowSelector<F: Field> {
    ncols: usize,
    // (pivot column, row with pivot entry 1)
    echelon: Vec<(usize, Vec<F>)>,
}

impl<F: Field> RowSelector<F> {
    pub fn new(ncols: usize) -> Self {
        RowSelector { ncols, echelon: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce a row against the current echelon form; keep it if it is
    /// independent and report whether it was kept.
    pub fn offer(&mut self, row: &[(usize, F)]) -> bool {
        if self.echelon.len() == self.ncols || row.is_empty() {
            return false;
        }
        let mut v = vec![F::zero(); self.ncols];
        for (j, c) in row {
            v[*j].add_assign_ref(c);
        }
        self.insert(v)
    }

    pub fn offer_dense(&mut self, v: Vec<F>) -> bool {
        if self.echelon.len() == self.ncols {
            return false;
        }
        self.insert(v)
    }

    fn insert(&mut self, mut v: Vec<F>) -> bool {
        for (pc, r) in &self.echelon {
            let f = v[*pc].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
        let Some(pc) = v.iter().position(|c| !c.is_zero()) else { return false };
        let inv = v[pc].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for (_, r) in self.echelon.iter_mut() {
            let f = r[pc].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
        self.echelon.push((pc, v));
        true
    }

    /// Whether a vector lies in the row span.
    pub fn contains(&self, row: &[F]) -> bool {
        let mut v = row.to_vec();
        for (pc, r) in &self.echelon {
            let f = v[*pc].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(r) {
                *x = x.sub_ref(&f.mul_ref(y));
            }
        }
        v.iter().all(|c| c.is_zero())
    }

    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let pcs: Vec<usize> = self.echelon.iter().map(|(p, _)| *p).collect();
        (0..self.ncols)
            .filter(|f| !pcs.contains(f))
            .map(|f| {
                let mut v = vec![F::zero(); self.ncols];
                v[f] = F::one();
                for (pc, r) in &self.echelon {
                    v[*pc] = r[f].neg_ref();
                }
                v
            })
            .collect()
    }
}

/// Dimension and basis of the nullspace at a value of the single parameter.
pub fn specialize_and_solve<F: Field>(m: &ParamMatrix, at: &F) -> Result<(usize, Vec<Vec<F>>)> {
    let rows = m.specialize(at)?;
    let basis = nullspace(&rows, m.cols);
    Ok((basis.len(), basis))
}

/// A root of the candidate locus with the dimension found there.
#[derive(Clone, Debug, PartialEq)]
pub struct ResonantValue {
    pub value: AlgebraicScalar,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResonanceReport {
    pub generic_dimension: usize,
    pub candidate_locus: ParamPoly,
    /// Roots where the dimension exceeds the generic one.
    pub confirmed: Vec<ResonantValue>,
    /// Roots where it does not.
    pub rejected: Vec<ResonantValue>,
}

/// Roots of a single-parameter locus, rational ones first.
pub fn locus_roots(locus: &ParamPoly) -> Result<Vec<AlgebraicScalar>> {
    if locus.is_constant() {
        return Ok(vec![]);
    }
    let (_, u): (_, UPoly) = locus.to_upoly().ok_or_else(|| Error::Usage("locus is not univariate".into()))?;
    Ok(factor_locus(&u)?.iter().flat_map(|f| f.roots()).collect())
}

/// Solve at every root of the candidate locus and sort the roots into
/// confirmed and rejected.
pub fn resonances(m: &ParamMatrix, s: &SolutionSpace) -> Result<ResonanceReport> {
    let locus = determinant_locus(s)?;
    let mut confirmed = vec![];
    let mut rejected = vec![];
    for r in locus_roots(&locus)? {
        let (dim, _) = specialize_and_solve(m, &r)?;
        let rv = ResonantValue { value: r, dimension: dim };
        if dim > s.generic_dimension {
            confirmed.push(rv);
        } else {
            rejected.push(rv);
        }
    }
    Ok(ResonanceReport { generic_dimension: s.generic_dimension, candidate_locus: locus, confirmed, rejected })
}

/// JSON form of a solution space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub generic_dimension: usize,
    pub basis: Vec<Vec<String>>,
    pub pivot_polynomials: Vec<String>,
}

impl SolutionSpace {
    pub fn to_json(&self) -> SolutionJson {
        SolutionJson {
            generic_dimension: self.generic_dimension,
            basis: self.basis.iter().map(|v| v.iter().map(|c| c.to_string()).collect()).collect(),
            pivot_polynomials: self.pivot_polynomials.iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// A rational value avoiding the zero set of `locus`, drawn from `rng`.
pub fn random_rational_off(locus: &ParamPoly, rng: &mut impl rand::Rng) -> Rational {
    loop {
        let r = Rational::frac(rng.gen_range(-500..500), rng.gen_range(1..40));
        if eval_single(locus, &r).map_or(true, |v| !v.is_zero()) {
            return r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;
    use rand::SeedableRng;

    fn p(s: &str) -> ParamPoly {
        parse_scalar(s).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> ParamMatrix {
        ParamMatrix::from_dense(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn small_examples() {
        let id = mat(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        assert_eq!(generic_nullspace(&id).generic_dimension, 0);
        let l = mat(&[&["lambda"]]);
        let s = generic_nullspace(&l);
        assert_eq!(s.generic_dimension, 0);
        assert_eq!(s.pivot_polynomials, vec![p("lambda")]);
        assert_eq!(specialize_and_solve(&l, &Rational::zero()).unwrap().0, 1);
        assert_eq!(specialize_and_solve(&l, &Rational::one()).unwrap().0, 0);
        let m = mat(&[&["lambda", "1"], &["lambda^2", "lambda"]]);
        let s = generic_nullspace(&m);
        assert_eq!(s.generic_dimension, 1);
        for v in &s.basis {
            assert!(m.mul_vec(v).iter().all(|c| c.is_zero()));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let r = random_rational_off(&ParamPoly::from_int(1), &mut rng);
            assert_eq!(specialize_and_solve(&m, &r).unwrap().0, 1);
        }
    }

    #[test]
    fn candidates_are_square_free_products() {
        let s = SolutionSpace {
            generic_dimension: 0,
            basis: vec![],
            pivot_polynomials: vec![p("1"), p("lambda"), p("lambda")],
            determinants: vec![],
            rank: 3,
        };
        assert_eq!(resonance_candidates(&s).unwrap(), p("lambda"));
        let s = SolutionSpace { pivot_polynomials: vec![p("lambda*(lambda+4)")], ..s };
        assert_eq!(resonance_candidates(&s).unwrap(), p("lambda^2+4*lambda"));
        let q = p("2*lambda^2+10*lambda+3");
        let s = SolutionSpace { pivot_polynomials: vec![q.clone()], ..s };
        assert_eq!(resonance_candidates(&s).unwrap(), q);
        let s = SolutionSpace { pivot_polynomials: vec![p("lambda*tau")], ..s };
        assert!(resonance_candidates(&s).is_err());
    }

    #[test]
    fn quadratic_resonance_is_found() {
        // determinant 2λ²+10λ+3
        let m = mat(&[&["2*lambda+10", "3"], &["-1", "lambda"]]);
        let s = generic_nullspace(&m);
        assert_eq!(s.generic_dimension, 0);
        let rep = resonances(&m, &s).unwrap();
        assert_eq!(rep.candidate_locus, p("2*lambda^2+10*lambda+3"));
        assert_eq!(rep.confirmed.len(), 2);
        assert!(rep.confirmed.iter().all(|r| r.dimension == 1));
        // the basis at the root is an exact kernel element over ℚ(√19)
        let r = &rep.confirmed[0].value;
        let (_, basis) = specialize_and_solve(&m, r).unwrap();
        let rows = m.specialize(r).unwrap();
        for v in &basis {
            for row in &rows {
                let dot = row.iter().fold(AlgebraicScalar::zero(), |a, (j, c)| a.add_ref(&c.mul_ref(&v[*j])));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn blocks_are_solved_independently() {
        let m = mat(&[&["lambda", "0", "0"], &["0", "1", "1"]]);
        let s = generic_nullspace(&m);
        assert_eq!(s.generic_dimension, 1);
        assert_eq!(s.basis, vec![vec![p("0"), p("1"), p("-1")]]);
        assert_eq!(s.determinants.len(), 2);
    }

    #[test]
    fn selector_over_fp() {
        use crate::scalars::modp::Fp;
        let mut sel = RowSelector::<Fp>::new(3);
        assert!(sel.offer(&[(0, Fp(1)), (1, Fp(2))]));
        assert!(!sel.offer(&[(0, Fp(2)), (1, Fp(4))]));
        assert!(sel.offer(&[(2, Fp(5))]));
        assert_eq!(sel.rank(), 2);
        assert_eq!(sel.nullspace().len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let m = mat(&[&["lambda", "1/2"], &["0", "lambda^2-3"]]);
        let j = m.to_json();
        assert_eq!(ParamMatrix::from_json(&j).unwrap(), m);
    }
}
