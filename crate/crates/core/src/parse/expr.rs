//! Polynomial expressions in t, s, x, y, z with integer coefficients and
//! named parameters.

use std::collections::BTreeMap;

use crate::algebra::{Fe, Field};

use super::lexer::{lex, Tok, Token, VARS};
use super::ParseError;

pub const MAX_EXPONENT: u32 = 64;
const MAX_DEGREE: u32 = 128;
const MAX_WORK: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(String),
    Var(usize),
    Param(String, usize),
    Delta(usize),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

pub type Mono5 = [u16; 5];

/// Sparse polynomial in (t, s, x, y, z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly5 {
    pub field: Field,
    pub terms: BTreeMap<Mono5, Fe>,
}

impl Poly5 {
    pub fn zero(field: &Field) -> Poly5 {
        Poly5 { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, c: Fe) -> Poly5 {
        let mut p = Poly5::zero(field);
        p.add_term([0; 5], c);
        p
    }

    pub fn var(field: &Field, v: usize) -> Poly5 {
        let mut e = [0; 5];
        e[v] = 1;
        let mut p = Poly5::zero(field);
        p.add_term(e, Fe::ONE);
        p
    }

    fn add_term(&mut self, e: Mono5, c: Fe) {
        let cur = self.terms.get(&e).copied().unwrap_or(Fe::ZERO);
        let v = self.field.add(cur, c);
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Fe> {
        match self.terms.len() {
            0 => Some(Fe::ZERO),
            1 => self.terms.get(&[0; 5]).copied(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Poly5) -> Poly5 {
        let mut r = self.clone();
        for (&e, &c) in &o.terms {
            r.add_term(e, c);
        }
        r
    }

    pub fn neg(&self) -> Poly5 {
        Poly5 { field: self.field.clone(), terms: self.terms.iter().map(|(&e, &c)| (e, self.field.neg(c))).collect() }
    }

    pub fn sub(&self, o: &Poly5) -> Poly5 {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly5) -> Poly5 {
        let mut r = Poly5::zero(&self.field);
        for (a, &c) in &self.terms {
            for (b, &d) in &o.terms {
                let e = std::array::from_fn(|i| a[i] + b[i]);
                r.add_term(e, self.field.mul(c, d));
            }
        }
        r
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&k| k as u32).sum()).max().unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> Poly5 {
        (0..k).fold(Poly5::constant(&self.field, Fe::ONE), |acc, _| acc.mul(self))
    }

    /// Variables with a nonzero exponent somewhere.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..5).filter(|&v| self.terms.keys().any(|e| e[v] > 0)).collect()
    }
}

/// Text of a monomial with its coefficient, as in error messages.
pub fn term_text(field: &Field, e: &Mono5, c: Fe) -> String {
    let mono: Vec<String> = (0..5)
        .filter(|&v| e[v] > 0)
        .map(|v| if e[v] == 1 { VARS[v].to_string() } else { format!("{}^{}", VARS[v], e[v]) })
        .collect();
    let mono = mono.join("*");
    let coeff = if field.degree() == 1 {
        let p = field.characteristic() as i64;
        let v = c.0 as i64;
        let v = if p > 2 && v > p / 2 { v - p } else { v };
        v.to_string()
    } else {
        format!("({})", field.format(c))
    };
    match (mono.is_empty(), coeff.as_str()) {
        (true, _) => coeff,
        (false, "1") => mono,
        (false, "-1") => format!("-{}", mono),
        _ => format!("{}*{}", coeff, mono),
    }
}

pub(crate) struct Parser {
    pub(crate) toks: Vec<Token>,
    pub(crate) i: usize,
    end: usize,
    pub(crate) depth: usize,
}

pub(crate) const MAX_NESTING: usize = 64;

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(src)?, i: 0, end: src.len(), depth: 0 })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|t| t.tok.clone());
        self.i += 1;
        t
    }

    pub(crate) fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {}", what)))
        }
    }

    pub(crate) fn error(&self, msg: String) -> ParseError {
        ParseError::at(self.pos(), msg)
    }

    pub(crate) fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut parts = Vec::new();
        let mut neg = match self.peek() {
            Some(Tok::Minus) => {
                self.i += 1;
                true
            }
            Some(Tok::Plus) => {
                self.i += 1;
                false
            }
            _ => false,
        };
        loop {
            parts.push((neg, self.term()?));
            match self.peek() {
                Some(Tok::Plus) => neg = false,
                Some(Tok::Minus) => neg = true,
                _ => break,
            }
            self.i += 1;
        }
        Ok(if parts.len() == 1 && !parts[0].0 { parts.pop().expect("one part").1 } else { Expr::Sum(parts) })
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Var(_) | Tok::Param(_) | Tok::LParen | Tok::Keyword("Delta")))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.i += 1;
                factors.push(self.factor()?);
            } else if self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.i += 1;
        let close = match self.peek() {
            Some(Tok::LBrace) => Some(Tok::RBrace),
            Some(Tok::LParen) => Some(Tok::RParen),
            _ => None,
        };
        if close.is_some() {
            self.i += 1;
        }
        let pos = self.pos();
        let Some(Tok::Num(digits)) = self.bump() else {
            return Err(ParseError::at(pos, "expected an exponent".to_string()));
        };
        let k: u32 = digits
            .parse()
            .ok()
            .filter(|&k| k <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::at(pos, format!("exponent {} exceeds {}", digits, MAX_EXPONENT)))?;
        if let Some(c) = close {
            self.expect(c, "closing bracket")?;
        }
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(d)) => Ok(Expr::Num(d)),
            Some(Tok::Var(v)) => Ok(Expr::Var(v)),
            Some(Tok::Param(p)) => Ok(Expr::Param(p, pos)),
            Some(Tok::Keyword("Delta")) => Ok(Expr::Delta(pos)),
            Some(Tok::LParen) => {
                if self.depth >= MAX_NESTING {
                    return Err(ParseError::at(pos, "nesting too deep".to_string()));
                }
                self.depth += 1;
                let e = self.expr()?;
                self.depth -= 1;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(t) => Err(ParseError::at(pos, format!("unexpected {}", describe(&t)))),
            None => Err(ParseError::at(pos, "unexpected end of input".to_string())),
        }
    }
}

pub(crate) fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(d) => format!("number {}", d),
        Tok::Var(v) => format!("variable {}", VARS[*v]),
        Tok::Param(p) => format!("parameter {}", p),
        Tok::Keyword(k) => format!("keyword {}", k),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBrace => "'{'".into(),
        Tok::RBrace => "'}'".into(),
        Tok::Comma => "','".into(),
        Tok::Eq => "'='".into(),
        Tok::Ne => "'!='".into(),
    }
}

/// Values for parameters and for `Delta`.
pub trait Bindings {
    fn param(&self, name: &str) -> Option<Poly5>;
    fn delta(&self) -> Option<Poly5> {
        None
    }
}

/// No parameters; over an extension field `g` names the field generator.
pub struct NoBindings;

impl Bindings for NoBindings {
    fn param(&self, _: &str) -> Option<Poly5> {
        None
    }
}

impl<F: Fn(&str) -> Option<Poly5>> Bindings for F {
    fn param(&self, name: &str) -> Option<Poly5> {
        self(name)
    }
}

/// Reduce a decimal string mod p.
pub fn reduce_digits(field: &Field, digits: &str) -> Fe {
    let p = field.characteristic();
    let r = digits.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
    field.from_i64(r as i64)
}

impl Expr {
    pub fn eval(&self, field: &Field, b: &dyn Bindings) -> Result<Poly5, ParseError> {
        let out = match self {
            Expr::Num(d) => Poly5::constant(field, reduce_digits(field, d)),
            Expr::Var(v) => Poly5::var(field, *v),
            Expr::Param(name, pos) => match b.param(name) {
                Some(v) => v,
                None if name == "g" && field.degree() > 1 => Poly5::constant(field, field.generator()),
                None => return Err(ParseError::at(*pos, format!("unknown symbol {}", name))),
            },
            Expr::Delta(pos) => b.delta().ok_or_else(|| ParseError::at(*pos, "Delta is not bound here".into()))?,
            Expr::Sum(parts) => {
                let mut acc = Poly5::zero(field);
                for (neg, e) in parts {
                    let v = e.eval(field, b)?;
                    acc = if *neg { acc.sub(&v) } else { acc.add(&v) };
                }
                acc
            }
            Expr::Product(fs) => {
                let mut acc = Poly5::constant(field, Fe::ONE);
                for e in fs {
                    acc = checked_mul(&acc, &e.eval(field, b)?)?;
                }
                acc
            }
            Expr::Pow(e, k) => {
                let base = e.eval(field, b)?;
                if base.total_degree() * k > MAX_DEGREE {
                    return Err(ParseError::new(format!("degree exceeds {}", MAX_DEGREE)));
                }
                let mut acc = Poly5::constant(field, Fe::ONE);
                for _ in 0..*k {
                    acc = checked_mul(&acc, &base)?;
                }
                acc
            }
        };
        check_degree(&out)?;
        Ok(out)
    }

    /// Parameter names in order of first appearance.
    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match self {
            Expr::Param(p, _) => {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
            Expr::Sum(parts) => parts.iter().for_each(|(_, e)| e.collect_params(out)),
            Expr::Product(fs) => fs.iter().for_each(|e| e.collect_params(out)),
            Expr::Pow(e, _) => e.collect_params(out),
            _ => {}
        }
    }
}

fn checked_mul(a: &Poly5, b: &Poly5) -> Result<Poly5, ParseError> {
    if a.terms.len() * b.terms.len() > MAX_WORK {
        return Err(ParseError::new("expression too large".to_string()));
    }
    let r = a.mul(b);
    check_degree(&r)?;
    Ok(r)
}

fn check_degree(p: &Poly5) -> Result<(), ParseError> {
    if p.total_degree() > MAX_DEGREE {
        Err(ParseError::new(format!("degree exceeds {}", MAX_DEGREE)))
    } else {
        Ok(())
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    if !p.at_end() {
        let t = p.peek().cloned().expect("not at end");
        return Err(p.error(format!("unexpected {}", describe(&t))));
    }
    Ok(e)
}

/// `A` or `A / B` with B nonempty.
pub fn parse_ratio(src: &str) -> Result<(Expr, Option<Expr>), ParseError> {
    let mut p = Parser::new(src)?;
    let num = p.expr()?;
    let den = if p.peek() == Some(&Tok::Slash) {
        p.i += 1;
        Some(p.expr()?)
    } else {
        None
    };
    if !p.at_end() {
        let t = p.peek().cloned().expect("not at end");
        return Err(p.error(format!("unexpected {}", describe(&t))));
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(src: &str, p: u64) -> Poly5 {
        let f = Field::prime(p).unwrap();
        parse_expr(src).unwrap().eval(&f, &NoBindings).unwrap()
    }

    #[test]
    fn implicit_products_and_powers() {
        let a = eval("2t^10 s^2", 5);
        let b = eval("2*t^{10}*s^(2)", 5);
        assert_eq!(a, b);
        assert_eq!(a.terms.len(), 1);
        let c = eval("t^10(t^2-2s^2)", 5);
        assert_eq!(c.terms.len(), 2);
        assert_eq!(eval("(t+s)^2 - t^2 - s^2", 2), Poly5::zero(&Field::prime(2).unwrap()));
    }

    #[test]
    fn large_integers_reduce() {
        let f = Field::prime(7).unwrap();
        let a = eval("123456789012345678901234567890", 7);
        let r = (123456789012345678901234567890u128 % 7) as i64;
        assert_eq!(a.as_constant(), Some(f.from_i64(r)));
    }

    #[test]
    fn unknown_param_reports_position() {
        let f = Field::prime(3).unwrap();
        let e = parse_expr("x + b7").unwrap().eval(&f, &NoBindings).unwrap_err();
        assert_eq!(e.pos, Some(4));
    }

    #[test]
    fn exponent_cap() {
        assert!(parse_expr("x^65").is_err());
        let f = Field::prime(3).unwrap();
        assert!(parse_expr("(x^64)^64").unwrap().eval(&f, &NoBindings).is_err());
    }
}
