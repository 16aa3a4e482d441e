use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::{Rational, Ring, UPoly};
use crate::error::{Error, Result};

pub type Exps = SmallVec<[u32; 2]>;

/// Ordered list of parameter names. The empty list is the constant ring ℚ and
/// is compatible with every other list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn empty() -> Self {
        Vars(Arc::from(Vec::<String>::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Polynomial over ℚ in named parameters. Terms are kept sorted
/// lexicographically by exponent vector (first variable most significant), so
/// the last term is the leading one.
#[derive(Clone)]
pub struct ParamPoly {
    vars: Vars,
    terms: Vec<(Exps, Rational)>,
}

// equal polynomials compare equal whatever variable lists they carry
impl PartialEq for ParamPoly {
    fn eq(&self, o: &Self) -> bool {
        if self.vars == o.vars {
            return self.terms == o.terms;
        }
        self.canonical() == o.canonical()
    }
}

impl Eq for ParamPoly {}

impl std::hash::Hash for ParamPoly {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.canonical().hash(h)
    }
}

impl Default for ParamPoly {
    fn default() -> Self {
        Self::zero()
    }
}

fn lex(a: &Exps, b: &Exps) -> Ordering {
    a.as_slice().cmp(b.as_slice())
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { vars: Vars::empty(), terms: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly { vars: Vars::empty(), terms: vec![(Exps::new(), c)] }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_int(c))
    }

    /// The polynomial consisting of the `i`th variable of `vars`.
    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e: Exps = SmallVec::from_elem(0, vars.len());
        e[i] = 1;
        ParamPoly { vars: vars.clone(), terms: vec![(e, Rational::one())] }
    }

    /// Single-variable polynomial `name`.
    pub fn named(name: &str) -> Self {
        Self::var(&Vars::new(&[name]), 0)
    }

    /// Build from raw terms; zero coefficients are dropped and like terms merged.
    pub fn from_terms(vars: &Vars, terms: Vec<(Exps, Rational)>) -> Result<Self> {
        if terms.iter().any(|(e, _)| e.len() != vars.len()) {
            return Err(Error::Usage("exponent arity does not match variable list".into()));
        }
        Ok(Self::normalize(vars.clone(), terms))
    }

    fn normalize(vars: Vars, terms: Vec<(Exps, Rational)>) -> Self {
        Self::normalize_raw(vars, terms).shrink_vars()
    }

    // keeps the full variable list, for lifting before arithmetic
    fn normalize_raw(vars: Vars, mut terms: Vec<(Exps, Rational)>) -> Self {
        terms.sort_by(|a, b| lex(&a.0, &b.0));
        let mut out: Vec<(Exps, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some((le, lc)) = out.last_mut() {
                if *le == e {
                    *lc = &*lc + &c;
                    continue;
                }
            }
            out.push((e, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        ParamPoly { vars, terms: out }
    }

    // constants carry no variable list
    fn shrink_vars(mut self) -> Self {
        if !self.vars.is_empty() && self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0)) {
            self.vars = Vars::empty();
            for t in &mut self.terms {
                t.0.clear();
            }
        }
        self
    }

    /// Used variables sorted by name, with terms re-expressed over them.
    fn canonical(&self) -> (Vec<&str>, Vec<(Exps, &Rational)>) {
        let mut used: Vec<(&str, usize)> = (0..self.vars.len())
            .filter(|&i| self.terms.iter().any(|(e, _)| e[i] != 0))
            .map(|i| (self.vars.names()[i].as_str(), i))
            .collect();
        used.sort();
        let mut terms: Vec<(Exps, &Rational)> =
            self.terms.iter().map(|(e, c)| (used.iter().map(|&(_, i)| e[i]).collect(), c)).collect();
        terms.sort_by(|a, b| lex(&a.0, &b.0));
        (used.into_iter().map(|(n, _)| n).collect(), terms)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &[(Exps, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.first().map(|t| t.1.clone()).unwrap_or_default())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Exps, Rational)> {
        self.terms.last()
    }

    /// Re-express over a different variable list that contains every variable
    /// actually used by `self`.
    pub fn with_vars(&self, vars: &Vars) -> Result<Self> {
        if self.vars == *vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match vars.index_of(name) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.terms.iter().any(|(e, _)| e[i] != 0) {
                        return Err(Error::Usage(format!(
                            "variable {name} is not in target list {vars:?}"
                        )));
                    }
                    map.push(None)
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne: Exps = SmallVec::from_elem(0, vars.len());
                for (i, m) in map.iter().enumerate() {
                    if let Some(j) = m {
                        ne[*j] = e[i];
                    }
                }
                (ne, c.clone())
            })
            .collect();
        Ok(Self::normalize_raw(vars.clone(), terms))
    }

    fn unify(&self, o: &Self) -> Result<Vars> {
        if self.vars == o.vars || o.vars.is_empty() {
            Ok(self.vars.clone())
        } else if self.vars.is_empty() {
            Ok(o.vars.clone())
        } else {
            let mut names = self.vars.names().to_vec();
            names.extend(o.vars.names().iter().cloned());
            Ok(crate::parse::canonical_vars(&names))
        }
    }

    fn lifted(&self, vars: &Vars) -> std::borrow::Cow<'_, Self> {
        if self.vars == *vars {
            std::borrow::Cow::Borrowed(self)
        } else if self.vars.is_empty() {
            let zero: Exps = SmallVec::from_elem(0, vars.len());
            std::borrow::Cow::Owned(ParamPoly {
                vars: vars.clone(),
                terms: self.terms.iter().map(|(_, c)| (zero.clone(), c.clone())).collect(),
            })
        } else {
            std::borrow::Cow::Owned(self.with_vars(vars).expect("compatible variables"))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let vars = self.unify(o)?;
        let (a, b) = (self.lifted(&vars), o.lifted(&vars));
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let ord = match (a.terms.get(i), b.terms.get(j)) {
                (Some(x), Some(y)) => lex(&x.0, &y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.terms[i].1 + &b.terms[j].1;
                    if !c.is_zero() {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(ParamPoly { vars, terms: out }.shrink_vars())
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let vars = self.unify(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero());
        }
        let (a, b) = (self.lifted(&vars), o.lifted(&vars));
        if a.terms.len() == 1 && a.terms[0].0.iter().all(|&e| e == 0) {
            return Ok(b.scale(&a.terms[0].1));
        }
        if b.terms.len() == 1 && b.terms[0].0.iter().all(|&e| e == 0) {
            return Ok(a.scale(&b.terms[0].1));
        }
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                terms.push((e, ca * cb));
            }
        }
        Ok(Self::normalize(vars, terms))
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
        .shrink_vars()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        if self.vars.is_empty() {
            return 0;
        }
        self.terms.iter().map(|(e, _)| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.iter().any(|(e, _)| e[i] != 0))
            .collect()
    }

    /// Evaluate every variable, mapping coefficients into `R`.
    pub fn eval_in<R: Ring>(&self, values: &[R]) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = R::from_rational(c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul_ref(&values[i]);
                }
            }
            acc.add_assign_ref(&t);
        }
        acc
    }

    /// Substitute a rational value for variable `name` (if present).
    pub fn subst(&self, name: &str, value: &Rational) -> Self {
        let Some(i) = self.vars.index_of(name) else {
            return self.clone();
        };
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[i] = 0;
                (ne, c * &value.pow(e[i]))
            })
            .collect();
        Self::normalize(self.vars.clone(), terms)
    }

    /// Substitute a polynomial for variable `name`.
    pub fn subst_poly(&self, name: &str, value: &ParamPoly) -> Result<Self> {
        let Some(i) = self.vars.index_of(name) else {
            return Ok(self.clone());
        };
        let value = value.with_vars(&self.vars)?;
        let mut acc = ParamPoly::zero();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = 0;
            let mono = ParamPoly { vars: self.vars.clone(), terms: vec![(ne, c.clone())] };
            acc = acc.add_ref(&mono.mul_ref(&value.pow(e[i])));
        }
        Ok(acc)
    }

    /// Univariate view when at most one variable occurs; returns the variable
    /// index used (if any).
    pub fn to_upoly(&self) -> Option<(Option<usize>, UPoly)> {
        let used = self.used_vars();
        match used.as_slice() {
            [] => Some((None, UPoly::constant(self.constant_value().unwrap()))),
            [i] => {
                let d = self.degree_in(*i) as usize;
                let mut cs = vec![Rational::zero(); d + 1];
                for (e, c) in &self.terms {
                    cs[e[*i] as usize] = c.clone();
                }
                Some((Some(*i), UPoly::new(cs)))
            }
            _ => None,
        }
    }

    pub fn from_upoly(vars: &Vars, i: usize, p: &UPoly) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mut e: Exps = SmallVec::from_elem(0, vars.len());
                e[i] = k as u32;
                (e, c.clone())
            })
            .collect();
        Self::normalize(vars.clone(), terms)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let vars = self.unify(d).ok()?;
        let d = d.lifted(&vars).into_owned();
        let mut r = self.lifted(&vars).into_owned();
        if let Some(c) = d.constant_value() {
            return Some(r.scale(&c.recip().unwrap()));
        }
        let (ld_e, ld_c) = d.terms.last().unwrap().clone();
        let ld_inv = ld_c.recip().unwrap();
        let mut q_terms = Vec::new();
        while let Some((re, rc)) = r.terms.last().cloned() {
            if re.iter().zip(ld_e.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exps = re.iter().zip(ld_e.iter()).map(|(a, b)| a - b).collect();
            let c = &rc * &ld_inv;
            let t = ParamPoly { vars: vars.clone(), terms: vec![(e.clone(), c.clone())] };
            r = r.sub_ref(&t.mul_ref(&d));
            q_terms.push((e, c));
        }
        Some(Self::normalize(vars, q_terms))
    }

    /// Least common multiple of coefficient denominators over gcd of numerators.
    pub fn rational_content(&self) -> Rational {
        content_of(self.terms.iter().map(|(_, c)| c))
    }

    /// Rational multiple with integer coefficients of gcd 1 and positive
    /// leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content();
        if self.terms.last().unwrap().1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip().unwrap())
    }

    pub fn monic(&self) -> Self {
        match self.terms.last() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip().unwrap()),
        }
    }

    fn main_var(&self, o: &Self) -> Option<usize> {
        let n = self.vars.len().max(o.vars.len());
        (0..n).find(|&i| self.degree_in(i) > 0 || o.degree_in(i) > 0)
    }

    /// Coefficients with respect to variable `v` (index = power of `v`).
    fn coeffs_in(&self, v: usize) -> Vec<ParamPoly> {
        if self.vars.is_empty() {
            return vec![self.clone()];
        }
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exps, Rational)>> = vec![vec![]; d + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[v] = 0;
            buckets[e[v] as usize].push((ne, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Self::normalize(self.vars.clone(), t))
            .collect()
    }

    fn var_pow(&self, v: usize, k: u32) -> Self {
        let mut e: Exps = SmallVec::from_elem(0, self.vars.len());
        e[v] = k;
        ParamPoly { vars: self.vars.clone(), terms: vec![(e, Rational::one())] }
    }

    fn content_in(&self, v: usize) -> Self {
        let mut g = ParamPoly::zero();
        for c in self.coeffs_in(v) {
            if !c.is_zero() {
                g = g.gcd(&c);
                if g.is_constant() {
                    break;
                }
            }
        }
        g
    }

    fn pseudo_rem(&self, g: &Self, v: usize) -> Self {
        let dg = g.degree_in(v);
        let lcg = g.coeffs_in(v).pop().unwrap();
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dg {
            let dr = r.degree_in(v);
            let lcr = r.coeffs_in(v).pop().unwrap();
            let s = lcr.mul_ref(&r.var_pow(v, dr - dg));
            r = lcg.mul_ref(&r).sub_ref(&s.mul_ref(g));
        }
        r
    }

    /// Monic gcd (leading term in lexicographic order has coefficient 1).
    /// Multivariate inputs go through content/primitive-part recursion.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let Some(v) = self.main_var(o) else {
            return ParamPoly::from_int(1);
        };
        let vars = self.unify(o).expect("gcd of polynomials over different variables");
        let a = self.lifted(&vars).into_owned();
        let b = o.lifted(&vars).into_owned();
        if let (Some((Some(_), ua)), Some((Some(_), ub))) = (a.to_upoly(), b.to_upoly()) {
            if a.used_vars() == b.used_vars() {
                return ParamPoly::from_upoly(&vars, v, &ua.gcd(&ub));
            }
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let g_cont = ca.gcd(&cb);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");
        let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
        while !g.is_zero() && g.degree_in(v) > 0 {
            let r = f.pseudo_rem(&g, v);
            f = g;
            g = if r.is_zero() {
                r
            } else {
                let c = r.content_in(v);
                r.div_exact(&c).expect("content divides")
            };
        }
        let prim = if g.is_zero() { f } else { ParamPoly::from_int(1) };
        let prim = if prim.degree_in(v) == 0 {
            ParamPoly::from_int(1)
        } else {
            let c = prim.content_in(v);
            prim.div_exact(&c).unwrap()
        };
        prim.mul_ref(&g_cont).monic()
    }

    /// Render with the given variable display names.
    pub fn fmt_terms(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = vec![];
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.vars.names()[i].clone()),
                    _ => factors.push(format!("{}^{k}", self.vars.names()[i])),
                }
            }
            if factors.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

pub(crate) fn content_of<'a>(cs: impl Iterator<Item = &'a Rational>) -> Rational {
    let mut lcm = BigInt::one();
    let mut g = BigInt::zero();
    let cs: Vec<&Rational> = cs.collect();
    for c in &cs {
        lcm = super::rational::big_lcm(&lcm, &c.denom());
    }
    for c in &cs {
        g = super::rational::big_gcd(&g, &(c.numer() * (&lcm / c.denom())));
    }
    if g.is_zero() {
        return Rational::one();
    }
    Rational::from_bigints(g, lcm).unwrap()
}

impl Ring for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.checked_add(o).expect("polynomials over different variables")
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.checked_add(&o.neg()).expect("polynomials over different variables")
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("polynomials over different variables")
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn from_rational(r: &Rational) -> Self {
        ParamPoly::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        ParamPoly::scale(self, r)
    }
}

impl From<Rational> for ParamPoly {
    fn from(r: Rational) -> Self {
        ParamPoly::constant(r)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_terms())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_terms())
    }
}
