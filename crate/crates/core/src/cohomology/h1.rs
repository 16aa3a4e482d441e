//! H¹ reports: generic dimensions over ℚ(λ), every candidate special weight
//! recomputed exactly, property checks, and comparison with the reference
//! tables.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diffop::BiDiffOpJson;
use crate::error::Result;
use crate::param_linalg::{locus_roots, random_rational_off};
use crate::scalars::{square_free, AlgebraicScalar, ParamPoly, Rational, Ring, UPoly};

use super::cell::{coboundary, compute_cell, degree_bound, first_cocycle_failure, CellOutcome};
use super::claims::{ExpectedCell, ReferenceClaims};
use super::invariants::half;
use super::render::{lambda_poly_text, render_bi};
use super::solve::{Backend, Generic, Special};

#[derive(Clone, Debug)]
pub struct H1Options {
    /// Monomial degree bound; `None` uses [`degree_bound`].
    pub degree_bound: Option<u32>,
    /// Random rational weights compared against the generic answer.
    pub random_checks: usize,
    /// Recompute cocycles at D + 2.
    pub stability: bool,
    pub seed: u64,
}

impl Default for H1Options {
    fn default() -> Self {
        H1Options { degree_bound: None, random_checks: 5, stability: true, seed: 0x5ca1ab1e }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub h1: usize,
}

impl Dims {
    fn of<C: Ring>(c: &CellOutcome<C>) -> Self {
        Dims { cochains: c.dim_cochains(), cocycles: c.dim_z(), coboundaries: c.dim_b, h1: c.dim_h1() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LociText {
    pub cochain: String,
    pub cocycle: String,
    pub linear: String,
    pub coboundary: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecialPoint {
    pub lambda: String,
    pub minimal_polynomial: String,
    pub dims: Dims,
    pub resonant: bool,
    pub b_in_z: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<bool>,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Resonance {
    pub polynomial: String,
    pub lambdas: Vec<String>,
    pub h1: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisEntry {
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<BiDiffOpJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Checks {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<bool>,
    pub b_in_z: bool,
    pub delta_squared_zero: bool,
    pub random_points: Vec<String>,
    pub random_agree: bool,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        self.stable != Some(false) && self.b_in_z && self.delta_squared_zero && self.random_agree
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct H1Report {
    pub n: u8,
    pub shift: String,
    pub twice_shift: u32,
    pub degree_bound: u32,
    /// Set when the report is for one fixed weight.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub dims: Dims,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loci: Option<LociText>,
    pub special_points: Vec<SpecialPoint>,
    pub resonances: Vec<Resonance>,
    pub resonance_polynomial: String,
    pub basis: Vec<BasisEntry>,
    pub checks: Checks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedCell>,
    pub discrepancies: Vec<String>,
}

/// Minimal polynomial over ℚ of a rational or quadratic value, primitive
/// with positive leading coefficient.
pub fn minimal_polynomial(v: &AlgebraicScalar) -> UPoly {
    match v.field() {
        None => {
            let r = v.as_rational().expect("rational value").clone();
            UPoly::linear_root(&r).primitive()
        }
        Some(f) => f.minpoly_upoly().primitive(),
    }
}

fn positive(p: UPoly) -> UPoly {
    let p = p.primitive();
    if p.lead() < Rational::ZERO {
        p.scale(&Rational::from_int(-1))
    } else {
        p
    }
}

fn class_entries<C: Ring + std::fmt::Display>(c: &CellOutcome<C>, json: impl Fn(usize) -> Option<BiDiffOpJson>) -> Vec<BasisEntry> {
    (0..c.classes.len()).map(|i| BasisEntry { text: render_bi(&c.class_op(i).op), operator: json(i) }).collect()
}

fn delta_squared_zero<B: Backend>(c: &CellOutcome<B::C>) -> Result<bool> {
    for i in 0..c.linear.dimension() {
        if first_cocycle_failure(&coboundary(&c.linear.member(i)), c.degree_bound)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which expected special polynomial, if any, vanishes at `v`.
fn expected_at(exp: &ExpectedCell, v: &AlgebraicScalar) -> Result<Option<usize>> {
    for s in &exp.special {
        let p = crate::parse::parse_scalar(&s.polynomial)?;
        let (_, u) = p.to_upoly().ok_or_else(|| crate::Error::Usage("expected polynomial is not univariate".into()))?;
        if u.eval(v).is_zero() {
            return Ok(Some(s.h1));
        }
    }
    Ok(None)
}

/// H¹ with λ free: generic dimensions, then every root of the candidate
/// locus recomputed exactly.
pub fn h1(n: u8, twice_shift: u32, opts: &H1Options) -> Result<H1Report> {
    let d = opts.degree_bound.unwrap_or_else(|| degree_bound(twice_shift));
    let b = Generic::lambda();
    let lam = ParamPoly::named("lambda");
    let cell = compute_cell(&b, n, twice_shift, &lam, d, opts.stability)?;
    let dims = Dims::of(&cell);
    let locus = cell.loci.product();
    let candidates = if locus.is_constant() { vec![] } else { locus_roots(&square_free(&locus)?)? };

    let mut special_points = vec![];
    let mut all_b_in_z = cell.b_in_z;
    let mut all_d2 = delta_squared_zero::<Generic>(&cell)?;
    let mut stable = cell.stable();
    for r in &candidates {
        let s = Special::algebraic(r.clone());
        let c = compute_cell(&s, n, twice_shift, r, d, opts.stability)?;
        all_b_in_z &= c.b_in_z;
        all_d2 &= delta_squared_zero::<Special<AlgebraicScalar>>(&c)?;
        if let Some(st) = c.stable() {
            stable = Some(stable.unwrap_or(true) && st);
        }
        let sd = Dims::of(&c);
        special_points.push(SpecialPoint {
            lambda: r.pretty(),
            minimal_polynomial: lambda_poly_text(&minimal_polynomial(r)),
            dims: sd,
            resonant: sd.h1 != dims.h1,
            b_in_z: c.b_in_z,
            stable: c.stable(),
            basis: class_entries(&c, |_| None).into_iter().map(|e| e.text).collect(),
        });
    }

    let mut resonances: Vec<Resonance> = vec![];
    let mut res_poly = UPoly::constant(Rational::ONE);
    for (r, sp) in candidates.iter().zip(&special_points) {
        if !sp.resonant {
            continue;
        }
        let mp = minimal_polynomial(r);
        match resonances.iter_mut().find(|g| g.polynomial == sp.minimal_polynomial && g.h1 == sp.dims.h1) {
            Some(g) => g.lambdas.push(sp.lambda.clone()),
            None => {
                res_poly = res_poly.mul(&mp);
                resonances.push(Resonance { polynomial: sp.minimal_polynomial.clone(), lambdas: vec![sp.lambda.clone()], h1: sp.dims.h1 });
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((n as u64) << 32) ^ twice_shift as u64);
    let mut random_points = vec![];
    let mut random_agree = true;
    for _ in 0..opts.random_checks {
        let r = random_rational_off(&locus, &mut rng);
        let c = compute_cell(&Special::rational(r.clone()), n, twice_shift, &r, d, false)?;
        random_agree &= Dims::of(&c) == dims;
        random_points.push(r.to_string());
    }

    let basis = class_entries(&cell, |i| Some(cell.class_op(i).to_json()));
    let mut report = H1Report {
        n,
        shift: half(twice_shift).to_string(),
        twice_shift,
        degree_bound: d,
        lambda: None,
        dims,
        loci: Some(LociText {
            cochain: cell.loci.cochain.to_string(),
            cocycle: cell.loci.cocycle.to_string(),
            linear: cell.loci.linear.to_string(),
            coboundary: cell.loci.coboundary.to_string(),
        }),
        special_points,
        resonances,
        resonance_polynomial: lambda_poly_text(&positive(res_poly)),
        basis,
        checks: Checks { stable, b_in_z: all_b_in_z, delta_squared_zero: all_d2, random_points, random_agree },
        expected: ReferenceClaims::get().expected_cell(n, twice_shift),
        discrepancies: vec![],
    };
    report.discrepancies = compare_generic(&report, &candidates)?;
    Ok(report)
}

fn compare_generic(r: &H1Report, candidates: &[AlgebraicScalar]) -> Result<Vec<String>> {
    let Some(exp) = &r.expected else { return Ok(vec![]) };
    let mut out = vec![];
    if exp.generic != r.dims.h1 {
        out.push(format!("generic dim H¹ is {}, reference table has {}", r.dims.h1, exp.generic));
    }
    for (v, sp) in candidates.iter().zip(&r.special_points) {
        match expected_at(exp, v)? {
            Some(h) if h != sp.dims.h1 => {
                out.push(format!("dim H¹ at λ = {} is {}, reference table has {h}", sp.lambda, sp.dims.h1))
            }
            None if sp.resonant => out.push(format!("resonance at λ = {} (dim {}) is not in the reference table", sp.lambda, sp.dims.h1)),
            _ => {}
        }
    }
    for s in &exp.special {
        let p = crate::parse::parse_scalar(&s.polynomial)?;
        let (_, u) = p.to_upoly().ok_or_else(|| crate::Error::Usage("expected polynomial is not univariate".into()))?;
        let found = candidates.iter().any(|v| u.eval(v).is_zero());
        if !found && s.h1 != r.dims.h1 {
            out.push(format!("reference resonance at the roots of {} was not found among the candidates", s.polynomial));
        }
    }
    Ok(out)
}

/// H¹ at one weight.
pub fn h1_at(n: u8, twice_shift: u32, value: &AlgebraicScalar, opts: &H1Options) -> Result<H1Report> {
    let d = opts.degree_bound.unwrap_or_else(|| degree_bound(twice_shift));
    let s = Special::algebraic(value.clone());
    let cell = compute_cell(&s, n, twice_shift, value, d, opts.stability)?;
    let dims = Dims::of(&cell);
    let rational = value.as_rational().cloned();
    let basis = class_entries(&cell, |i| {
        rational.as_ref().map(|_| cell.class_op(i).map_coeffs(|c| ParamPoly::constant(c.as_rational().expect("rational").clone())).to_json())
    });
    let expected = ReferenceClaims::get().expected_cell(n, twice_shift).map(|e| {
        let h = expected_at(&e, value).ok().flatten().unwrap_or(e.generic);
        ExpectedCell { generic: h, special: vec![] }
    });
    let mut discrepancies = vec![];
    if let Some(e) = &expected {
        if e.generic != dims.h1 {
            discrepancies.push(format!("dim H¹ is {}, reference table has {}", dims.h1, e.generic));
        }
    }
    Ok(H1Report {
        n,
        shift: half(twice_shift).to_string(),
        twice_shift,
        degree_bound: d,
        lambda: Some(value.pretty()),
        dims,
        loci: None,
        special_points: vec![],
        resonances: vec![],
        resonance_polynomial: "1".into(),
        basis,
        checks: Checks {
            stable: cell.stable(),
            b_in_z: cell.b_in_z,
            delta_squared_zero: delta_squared_zero::<Special<AlgebraicScalar>>(&cell)?,
            random_points: vec![],
            random_agree: true,
        },
        expected,
        discrepancies,
    })
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

/// One Markdown table per n: generic dimension and every resonance.
pub fn markdown_tables(reports: &[H1Report]) -> String {
    let mut out = String::new();
    let mut ns: Vec<u8> = reports.iter().map(|r| r.n).collect();
    ns.dedup();
    for n in ns {
        out.push_str(&format!("### H¹(K({n}), aff({n}|1); D_λ,μ)\n\n"));
        out.push_str("| μ − λ | λ | dim H¹ | dim Z | dim B | checks | reference |\n|---|---|---|---|---|---|---|\n");
        for r in reports.iter().filter(|r| r.n == n) {
            let checks = if r.checks.all_pass() { "pass" } else { "FAIL" };
            let reference = match (&r.expected, r.discrepancies.is_empty()) {
                (None, _) => "n/a",
                (Some(_), true) => "match",
                (Some(_), false) => "DIFFERS",
            };
            let lam = r.lambda.clone().unwrap_or_else(|| "generic".into());
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                r.shift,
                md_escape(&lam),
                r.dims.h1,
                r.dims.cocycles,
                r.dims.coboundaries,
                checks,
                reference
            ));
            for res in &r.resonances {
                out.push_str(&format!(
                    "| {} | {} (roots of {}) | {} | | | | |\n",
                    r.shift,
                    res.lambdas.join(", "),
                    res.polynomial,
                    res.h1
                ));
            }
        }
        out.push('\n');
    }
    out
}

/// Markdown for a single report, including its basis.
pub fn markdown_report(r: &H1Report) -> String {
    let mut out = markdown_tables(std::slice::from_ref(r));
    if !r.basis.is_empty() {
        out.push_str("Basis of H¹:\n\n");
        for b in &r.basis {
            out.push_str(&format!("- {}\n", b.text));
        }
        out.push('\n');
    }
    for sp in r.special_points.iter().filter(|s| s.resonant) {
        out.push_str(&format!("At λ = {}:\n\n", sp.lambda));
        for b in &sp.basis {
            out.push_str(&format!("- {b}\n"));
        }
        out.push('\n');
    }
    for d in &r.discrepancies {
        out.push_str(&format!("- discrepancy: {d}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::QuadraticField;

    fn quick() -> H1Options {
        H1Options { random_checks: 2, ..H1Options::default() }
    }

    #[test]
    fn n0_shift6_resonances() {
        let r = h1(0, 12, &quick()).unwrap();
        assert_eq!(r.dims.h1, 0);
        assert_eq!(r.resonances.len(), 1);
        assert_eq!(r.resonance_polynomial, "2*lambda^2 + 10*lambda + 3");
        assert!(r.discrepancies.is_empty(), "{:?}", r.discrepancies);
        assert!(r.checks.all_pass());
    }

    #[test]
    fn fixed_weight_report() {
        let f = QuadraticField::new(&UPoly::from_ints(&[2, 7, 2])).unwrap();
        let r = h1_at(1, 8, &f.root(1), &quick()).unwrap();
        assert_eq!(r.dims.h1, 1);
        assert!(r.discrepancies.is_empty());
        let r = h1_at(1, 3, &AlgebraicScalar::rational(Rational::frac(1, 3)), &quick()).unwrap();
        assert_eq!(r.dims.h1, 1);
        assert!(r.basis[0].operator.is_some());
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(lambda_poly_text(&minimal_polynomial(&AlgebraicScalar::rational(Rational::frac(-5, 2)))), "2*lambda + 5");
    }
}
