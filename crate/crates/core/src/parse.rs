//! Text grammar for scalars, Grassmann polynomials, and densities.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' integer]
//! atom   := integer | 'x' | 't'<index> | parameter | '(' expr ')'
//! ```
//! Division is only by nonzero rational constants. `t_i^2` is rejected.

use crate::error::{Error, Result};
use crate::scalars::{ParamPoly, Rational, Vars};
use crate::superpoly::{Mono, SuperPoly, MAX_N};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    X,
    Theta(u8),
    Param(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, column, message: message.into() })
}

/// Canonical spelling of a parameter name.
pub fn canonical_param(name: &str) -> String {
    match name {
        "l" | "λ" | "lam" => "lambda".into(),
        "τ" => "tau".into(),
        "μ" => "mu".into(),
        other => other.into(),
    }
}

/// Canonical variable order: tau, lambda, mu, then the rest alphabetically.
pub fn canonical_vars(names: &[String]) -> Vars {
    let rank = |s: &str| match s {
        "tau" => 0,
        "lambda" => 1,
        "mu" => 2,
        _ => 3,
    };
    let mut v: Vec<String> = names.to_vec();
    v.sort_by(|a, b| (rank(a), a).cmp(&(rank(b), b)));
    v.dedup();
    Vars::new(&v)
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = vec![];
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l0, col: c0 });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            push(&mut out, Tok::Num(s.parse().unwrap()));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = if s == "x" {
                Tok::X
            } else if let Some(d) = s.strip_prefix('t').filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit())) {
                match d.parse::<u8>() {
                    Ok(k) if (1..=MAX_N).contains(&k) => Tok::Theta(k),
                    _ => return err(l0, c0, format!("θ index out of range in {s:?}")),
                }
            } else {
                Tok::Param(canonical_param(&s))
            };
            push(&mut out, tok);
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return err(l0, c0, format!("unexpected character {c:?}")),
        };
        push(&mut out, tok);
        i += 1;
        col += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(num_bigint::BigInt),
    X,
    Theta(u8),
    Param(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, (usize, usize)),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ast::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.factor()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let atom = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let (l, c) = self.here();
            let e = match self.peek() {
                Some(Tok::Num(k)) => u32::try_from(k.clone())
                    .map_err(|_| Error::Parse { line: l, column: c, message: "exponent too large".into() })?,
                _ => return err(l, c, "expected a nonnegative integer exponent"),
            };
            self.pos += 1;
            if let Ast::Theta(i) = atom {
                if e > 1 {
                    return err(l, c, format!("t{i}^{e}: odd variables square to zero and powers above 1 are rejected"));
                }
            }
            return Ok(Ast::Pow(Box::new(atom), e));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Ast> {
        let (l, c) = self.here();
        let Some(tok) = self.peek().cloned() else {
            return err(l, c, "unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Ast::Num(v)),
            Tok::X => Ok(Ast::X),
            Tok::Theta(i) => Ok(Ast::Theta(i)),
            Tok::Param(s) => Ok(Ast::Param(s)),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    let (l, c) = self.here();
                    return err(l, c, "expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            other => err(l, c, format!("unexpected token {other:?}")),
        }
    }
}

fn parse_ast(src: &str) -> Result<Ast> {
    let toks = tokenize(src)?;
    let last_line = src.lines().count().max(1);
    let last_col = src.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1);
    let mut p = Parser { toks, pos: 0, end: (last_line, last_col) };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        let (l, c) = p.here();
        return err(l, c, "unexpected trailing input");
    }
    Ok(ast)
}

fn collect(ast: &Ast, params: &mut Vec<String>, max_theta: &mut u8) {
    match ast {
        Ast::Param(s) => params.push(s.clone()),
        Ast::Theta(i) => *max_theta = (*max_theta).max(*i),
        Ast::Neg(a) | Ast::Pow(a, _) => collect(a, params, max_theta),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b, _) => {
            collect(a, params, max_theta);
            collect(b, params, max_theta);
        }
        _ => {}
    }
}

fn eval(ast: &Ast, n: u8, vars: &Vars) -> Result<SuperPoly<ParamPoly>> {
    Ok(match ast {
        Ast::Num(v) => SuperPoly::constant(n, ParamPoly::constant(Rational::from(v.clone()))),
        Ast::X => SuperPoly::x(n),
        Ast::Theta(i) => SuperPoly::theta(n, *i)?,
        Ast::Param(s) => SuperPoly::constant(n, ParamPoly::var(vars, vars.index_of(s).unwrap())),
        Ast::Neg(a) => eval(a, n, vars)?.neg(),
        Ast::Add(a, b) => eval(a, n, vars)?.add(&eval(b, n, vars)?)?,
        Ast::Sub(a, b) => eval(a, n, vars)?.sub(&eval(b, n, vars)?)?,
        Ast::Mul(a, b) => eval(a, n, vars)?.mul(&eval(b, n, vars)?)?,
        Ast::Div(a, b, (l, c)) => {
            let d = eval(b, n, vars)?;
            let r = match d.terms() {
                [(m, coef)] if *m == Mono::ONE => coef.constant_value(),
                _ => None,
            };
            match r {
                Some(r) if !r.is_zero() => eval(a, n, vars)?.scale_rational(&r.recip()?),
                _ => return err(*l, *c, "division is only by nonzero rational constants"),
            }
        }
        Ast::Pow(a, e) => {
            let base = eval(a, n, vars)?;
            let mut acc = SuperPoly::one(n);
            for _ in 0..*e {
                acc = acc.mul(&base)?;
            }
            acc
        }
    })
}

/// Parse a Grassmann polynomial. With `n = None` the arity is the largest θ
/// index used.
pub fn parse_superpoly(src: &str, n: Option<u8>) -> Result<SuperPoly<ParamPoly>> {
    let ast = parse_ast(src)?;
    let mut params = vec![];
    let mut max_theta = 0;
    collect(&ast, &mut params, &mut max_theta);
    let n = match n {
        Some(n) if max_theta > n => {
            return Err(Error::Usage(format!("t{max_theta} used but n = {n}")));
        }
        Some(n) => n,
        None => max_theta,
    };
    eval(&ast, n, &canonical_vars(&params))
}

/// Parse a scalar expression in named parameters (no x or θ).
pub fn parse_scalar(src: &str) -> Result<ParamPoly> {
    let p = parse_superpoly(src, Some(MAX_N))?;
    match p.terms() {
        [] => Ok(ParamPoly::zero()),
        [(m, c)] if *m == Mono::ONE => Ok(c.clone()),
        _ => Err(Error::Usage(format!("{src:?} is not a scalar"))),
    }
}

/// Parse a rational literal such as `3/2` or `-1`.
pub fn parse_rational(src: &str) -> Result<Rational> {
    parse_scalar(src)?
        .constant_value()
        .ok_or_else(|| Error::Usage(format!("{src:?} is not a rational number")))
}

/// Parse `poly @ weight [pi]`.
pub fn parse_density(src: &str, n: u8) -> Result<crate::densities::Density> {
    let (poly, rest) = src
        .split_once('@')
        .ok_or_else(|| Error::Usage(format!("density {src:?} lacks '@ weight'")))?;
    let rest = rest.trim();
    let (weight, pi) = match rest.strip_suffix("pi") {
        Some(w) if w.ends_with(char::is_whitespace) || w.is_empty() => (w.trim(), true),
        _ => (rest, false),
    };
    let payload = parse_superpoly(poly, Some(n))?;
    let weight = parse_scalar(weight)?;
    Ok(crate::densities::Density::new(payload, weight, pi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_theta_order() {
        let p = parse_superpoly("t2*t1", Some(2)).unwrap();
        assert_eq!(p.to_text(), "-t1*t2");
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_superpoly("x^2 + 3/2*t1", Some(1)).unwrap();
        assert_eq!(p.to_text(), "x^2 + 3/2*t1");
        assert_eq!(parse_superpoly(&p.to_text(), Some(1)).unwrap(), p);
    }

    #[test]
    fn rejects_theta_squares() {
        match parse_superpoly("t1^2", Some(1)) {
            Err(Error::Parse { line: 1, column: 4, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_superpoly("x +", Some(1)).is_err());
        assert!(parse_superpoly("x $ 2", Some(1)).is_err());
    }

    #[test]
    fn parameters_and_densities() {
        let s = parse_scalar("l + 1/2").unwrap();
        assert_eq!(s.to_string(), "lambda + 1/2");
        let d = parse_density("x^2*t1 @ l+1/2 pi", 1).unwrap();
        assert!(d.pi());
        assert_eq!(d.weight(), &s);
        let q = parse_superpoly("(lambda+1)*x - lambda*t1", Some(1)).unwrap();
        assert_eq!(parse_superpoly(&q.to_text(), Some(1)).unwrap(), q);
    }
}
