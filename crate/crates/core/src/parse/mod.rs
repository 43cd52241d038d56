//! The input language: Weierstrass equations, local polynomials, parameter
//! conditions and RDP configurations.

mod expr;
mod lexer;
mod predicate;

pub use expr::{parse_expr, parse_ratio, reduce_digits, term_text, Bindings, Expr, Mono5, NoBindings, Poly5};
pub use predicate::{parse_predicate, Predicate};

use std::fmt;

use crate::algebra::{BiPoly, Fe, Field, LocalPoly, MPoly};
use crate::lattice::RdpConfiguration;
use crate::weierstrass::WeierstrassEq;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending token, when there is one.
    pub pos: Option<usize>,
    pub msg: String,
}

impl ParseError {
    pub fn new(msg: String) -> ParseError {
        ParseError { pos: None, msg }
    }

    pub fn at(pos: usize, msg: String) -> ParseError {
        ParseError { pos: Some(pos), msg }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(p) => write!(f, "at position {}: {}", p, self.msg),
            None => write!(f, "{}", self.msg),
        }
    }
}

impl std::error::Error for ParseError {}

const T: usize = 0;
const S: usize = 1;
const X: usize = 2;
const Y: usize = 3;
const Z: usize = 4;

fn not_weierstrass() -> ParseError {
    ParseError::new("not a Weierstraß sextic".to_string())
}

/// Split `lhs = rhs` at its single top-level `=`.
fn split_equation(src: &str) -> Result<(&str, &str, usize), ParseError> {
    let mut it = src.match_indices('=');
    match (it.next(), it.next()) {
        (Some((i, _)), None) => Ok((&src[..i], &src[i + 1..], i + 1)),
        (None, _) => Err(ParseError::new("expected '='".to_string())),
        (Some(_), Some((j, _))) => Err(ParseError::at(j, "more than one '='".to_string())),
    }
}

fn shift(e: ParseError, by: usize) -> ParseError {
    ParseError { pos: e.pos.map(|p| p + by), msg: e.msg }
}

/// Parse `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6` with the aᵢ forms
/// in t and s, over `field`, with parameter values from `b`.
pub fn parse_equation_with(src: &str, field: &Field, b: &dyn Bindings) -> Result<WeierstrassEq, ParseError> {
    let (lhs, rhs, off) = split_equation(src)?;
    let l = parse_expr(lhs)?.eval(field, b)?;
    let r = parse_expr(rhs).map_err(|e| shift(e, off))?.eval(field, b).map_err(|e| shift(e, off))?;
    check_weights(&l, field)?;
    check_weights(&r, field)?;
    weierstrass_from(&l.sub(&r), field)
}

pub fn parse_equation(src: &str, p: u64) -> Result<WeierstrassEq, ParseError> {
    let field = Field::prime(p).map_err(|e| ParseError::new(e.to_string()))?;
    parse_equation_with(src, &field, &NoBindings)
}

fn check_weights(d: &Poly5, field: &Field) -> Result<(), ParseError> {
    for (e, &c) in &d.terms {
        if e[Z] > 0 {
            return Err(ParseError::new(format!("variable z in term {}", term_text(field, e, c))));
        }
        let w = e[T] as u32 + e[S] as u32 + 2 * e[X] as u32 + 3 * e[Y] as u32;
        if w != 6 {
            return Err(ParseError::new(format!(
                "inhomogeneous term {} (weighted degree {} ≠ 6)",
                term_text(field, e, c),
                w
            )));
        }
    }
    Ok(())
}

/// Read off a₁..a₆ from lhs − rhs.
fn weierstrass_from(d: &Poly5, field: &Field) -> Result<WeierstrassEq, ParseError> {
    let coeff = |xe: u16, ye: u16| -> BiPoly {
        d.terms
            .iter()
            .filter(|(e, _)| e[X] == xe && e[Y] == ye)
            .fold(BiPoly::zero(field), |acc, (e, &c)| acc.add(&BiPoly::monomial(field, c, e[T] as u32, e[S] as u32)))
    };
    let allowed = [(0, 2), (1, 1), (0, 1), (3, 0), (2, 0), (1, 0), (0, 0)];
    if d.terms.keys().any(|e| !allowed.contains(&(e[X], e[Y]))) {
        return Err(not_weierstrass());
    }
    let one = BiPoly::constant(field, Fe::ONE);
    if coeff(0, 2) != one || coeff(3, 0) != one.neg() {
        return Err(not_weierstrass());
    }
    let a = [coeff(1, 1), coeff(2, 0).neg(), coeff(0, 1), coeff(1, 0).neg(), coeff(0, 0).neg()];
    WeierstrassEq::new(field, a).map_err(|e| ParseError::new(e.to_string()))
}

/// Names of the local coordinates chosen for a polynomial, in order.
pub fn local_variable_names(used: &[usize]) -> Vec<char> {
    let order = [X, Y, Z, T, S];
    let mut names: Vec<char> = order.iter().filter(|v| used.contains(v)).map(|&v| lexer::VARS[v]).collect();
    for v in order {
        if names.len() >= 3 {
            break;
        }
        if !names.contains(&lexer::VARS[v]) {
            names.push(lexer::VARS[v]);
        }
    }
    names.sort_by_key(|c| order.iter().position(|&v| lexer::VARS[v] == *c));
    names
}

/// A polynomial in at most three of the variables, as a local equation.
/// Variables are taken in the order x, y, z, t, s.
pub fn parse_local_poly_with(src: &str, field: &Field, b: &dyn Bindings) -> Result<LocalPoly, ParseError> {
    let p = parse_expr(src)?.eval(field, b)?;
    let used = p.used_vars();
    if used.len() > 3 {
        return Err(ParseError::new("more than three variables".to_string()));
    }
    let names = local_variable_names(&used);
    let slot: Vec<usize> =
        (0..5).map(|v| names.iter().position(|&c| c == lexer::VARS[v]).unwrap_or(usize::MAX)).collect();
    let mut out = MPoly::zero(field);
    for (e, &c) in &p.terms {
        let mut m = [0u16; 3];
        for v in 0..5 {
            if e[v] > 0 {
                m[slot[v]] = e[v];
            }
        }
        out.add_term(m, c);
    }
    Ok(out)
}

pub fn parse_local_poly(src: &str, p: u64) -> Result<LocalPoly, ParseError> {
    let field = Field::prime(p).map_err(|e| ParseError::new(e.to_string()))?;
    parse_local_poly_with(src, &field, &NoBindings)
}

pub fn parse_config(src: &str, p: u64) -> Result<RdpConfiguration, ParseError> {
    RdpConfiguration::parse(src, p).map_err(|e| ParseError::new(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_equations() {
        let e = parse_equation("y^2 = x^3 + t^5*s", 5).unwrap();
        assert_eq!(e.to_string(), "y^2 = x^3 + t^5*s");
        let e = parse_equation("y^2 + t*x*y = x^3 + t^5*s", 2).unwrap();
        assert_eq!(e.a(1), &BiPoly::t(e.field()));
        assert!(e.a(3).is_zero());
    }

    #[test]
    fn inhomogeneous_term_named() {
        let err = parse_equation("y^2 = x^3 + t^3", 7).unwrap_err();
        assert_eq!(err.msg, "inhomogeneous term t^3 (weighted degree 3 ≠ 6)");
    }

    #[test]
    fn shape_violations() {
        for src in ["y^2 = 2x^3 + t^6", "y^3 = x^3", "x*y^2 = x^3", "y^2 + x^2*t^2 = x^3 + s^6 + x^3"] {
            assert!(parse_equation(src, 5).is_err(), "{}", src);
        }
        let err = parse_equation("y^2 = 2x^3 + t^6", 5).unwrap_err();
        assert_eq!(err.msg, "not a Weierstraß sextic");
    }

    #[test]
    fn local_polys_pick_variables() {
        let f = parse_local_poly("z^2 + x^2*y + x*y^4", 2).unwrap();
        assert_eq!(f.num_terms(), 3);
        let g = parse_local_poly("y^2 - (x^3 + t^2*x^2 - t^4 + t^3)", 3).unwrap();
        assert_eq!(g.order(), Some(2));
        assert!(parse_local_poly("x + y + z + t", 3).is_err());
    }
}
