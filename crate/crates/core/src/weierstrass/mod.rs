//! Weierstrass sextics y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆ in
//! P(1,1,2,3), with aᵢ homogeneous of degree i in (t, s).

mod substitution;

pub use substitution::{apply_substitution, expand_substitution, SubstKind, Substitution};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{BiPoly, Embedding, Fe, Field, MPoly, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeierstrassError {
    #[error("coefficient a{0} has degree {1}, expected {0}")]
    Degree(u32, u32),
    #[error("form mismatch: {0}")]
    FormMismatch(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("unit must be nonzero")]
    ZeroUnit,
    #[error("singular linear substitution")]
    SingularMatrix,
}

/// Indices of a₁, a₂, a₃, a₄, a₆.
pub const INDICES: [u32; 5] = [1, 2, 3, 4, 6];

#[derive(Clone, PartialEq, Eq)]
pub struct WeierstrassEq {
    field: Field,
    a: [BiPoly; 5],
}

fn slot(i: u32) -> usize {
    INDICES.iter().position(|&k| k == i).expect("index in 1,2,3,4,6")
}

impl WeierstrassEq {
    pub fn new(field: &Field, a: [BiPoly; 5]) -> Result<WeierstrassEq, WeierstrassError> {
        for (k, c) in a.iter().enumerate() {
            if c.field() != field {
                return Err(WeierstrassError::FieldMismatch);
            }
            if let Some(d) = c.degree() {
                if d != INDICES[k] {
                    return Err(WeierstrassError::Degree(INDICES[k], d));
                }
            }
        }
        Ok(WeierstrassEq { field: field.clone(), a })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    /// Coefficient aᵢ for i ∈ {1, 2, 3, 4, 6}.
    pub fn a(&self, i: u32) -> &BiPoly {
        &self.a[slot(i)]
    }

    pub fn coefficients(&self) -> &[BiPoly; 5] {
        &self.a
    }

    pub fn lift(&self, e: &Embedding) -> WeierstrassEq {
        WeierstrassEq { field: e.target().clone(), a: self.a.clone().map(|c| c.lift(e)) }
    }

    /// Coefficients after (t, s) ↦ (at + bs, ct + ds).
    pub fn substitute_linear(&self, m: [[Fe; 2]; 2]) -> WeierstrassEq {
        WeierstrassEq { field: self.field.clone(), a: self.a.clone().map(|c| c.substitute_linear(m)) }
    }

    /// The affine equation F(t, x, y) in the chart s = 1, variables (t, x, y).
    pub fn chart_s(&self) -> MPoly {
        self.chart(|c| c.dehomogenize_s())
    }

    /// The affine equation F(s, x, y) in the chart t = 1, variables (s, x, y).
    pub fn chart_t(&self) -> MPoly {
        self.chart(|c| c.dehomogenize_t())
    }

    fn chart(&self, dehom: impl Fn(&BiPoly) -> UPoly) -> MPoly {
        let f = &self.field;
        let c = |i: u32| MPoly::from_univariate(&dehom(self.a(i)), 0);
        let x = MPoly::var(f, 1);
        let y = MPoly::var(f, 2);
        y.pow(2)
            .add(&c(1).mul(&x).mul(&y))
            .add(&c(3).mul(&y))
            .sub(&x.pow(3))
            .sub(&c(2).mul(&x.pow(2)))
            .sub(&c(4).mul(&x))
            .sub(&c(6))
    }
}

fn coefficient_text(c: &BiPoly) -> String {
    let s = c.to_string();
    if c.terms().len() > 1 {
        format!("({})", s)
    } else {
        s
    }
}

fn push_term(out: &mut String, c: &BiPoly, var: &str) {
    if c.is_zero() {
        return;
    }
    let text = coefficient_text(c);
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) if !text.starts_with('(') => (" - ", rest.to_string()),
        _ => (" + ", text),
    };
    out.push_str(sign);
    if var.is_empty() {
        out.push_str(&body);
    } else if body == "1" {
        out.push_str(var);
    } else {
        out.push_str(&body);
        out.push('*');
        out.push_str(var);
    }
}

impl fmt::Display for WeierstrassEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lhs = String::from("y^2");
        push_term(&mut lhs, self.a(1), "x*y");
        push_term(&mut lhs, self.a(3), "y");
        let mut rhs = String::from("x^3");
        push_term(&mut rhs, self.a(2), "x^2");
        push_term(&mut rhs, self.a(4), "x");
        push_term(&mut rhs, self.a(6), "");
        write!(f, "{} = {}", lhs, rhs)
    }
}

impl fmt::Debug for WeierstrassEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

/// j-invariant as a reduced ratio of forms, or undefined when Δ = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JInvariant {
    Undefined,
    Ratio { num: BiPoly, den: BiPoly },
}

impl JInvariant {
    /// c4³/Δ with common factors removed and the denominator's leading
    /// coefficient normalized to 1.
    pub fn from_ratio(num: &BiPoly, den: &BiPoly) -> JInvariant {
        if den.is_zero() {
            return JInvariant::Undefined;
        }
        let f = den.field().clone();
        if num.is_zero() {
            return JInvariant::Ratio { num: num.clone(), den: BiPoly::constant(&f, Fe::ONE) };
        }
        let g = num.gcd(den);
        let n = num.div_exact(&g).expect("gcd divides");
        let d = den.div_exact(&g).expect("gcd divides");
        let u = f.inv(d.lead());
        JInvariant::Ratio { num: n.scale(u), den: d.scale(u) }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, JInvariant::Ratio { num, .. } if num.is_zero())
    }
}

impl fmt::Display for JInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JInvariant::Undefined => write!(f, "undefined"),
            JInvariant::Ratio { num, den } => {
                if den.degree() == Some(0) {
                    // den is the constant 1
                    return write!(f, "{}", num);
                }
                let wrap = |p: &BiPoly| {
                    if p.terms().len() > 1 {
                        format!("({})", p)
                    } else {
                        p.to_string()
                    }
                };
                write!(f, "{}/{}", wrap(num), wrap(den))
            }
        }
    }
}

impl Serialize for JInvariant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub b2: BiPoly,
    pub b4: BiPoly,
    pub b6: BiPoly,
    pub b8: BiPoly,
    pub c4: BiPoly,
    pub c6: BiPoly,
    pub delta: BiPoly,
    pub j: JInvariant,
}

fn sum(terms: &[BiPoly]) -> BiPoly {
    terms.iter().fold(BiPoly::zero(terms[0].field()), |acc, t| acc.add(t))
}

pub fn compute_invariants(eq: &WeierstrassEq) -> SurfaceInvariants {
    let (a1, a2, a3, a4, a6) = (eq.a(1), eq.a(2), eq.a(3), eq.a(4), eq.a(6));
    let b2 = sum(&[a1.pow(2), a2.scale_int(4)]);
    let b4 = sum(&[a4.scale_int(2), a1.mul(a3)]);
    let b6 = sum(&[a3.pow(2), a6.scale_int(4)]);
    let b8 = sum(&[
        a1.pow(2).mul(a6),
        a2.mul(a6).scale_int(4),
        a1.mul(a3).mul(a4).neg(),
        a2.mul(&a3.pow(2)),
        a4.pow(2).neg(),
    ]);
    let c4 = sum(&[b2.pow(2), b4.scale_int(-24)]);
    let c6 = sum(&[b2.pow(3).neg(), b2.mul(&b4).scale_int(36), b6.scale_int(-216)]);
    let delta = sum(&[
        b2.pow(2).mul(&b8).neg(),
        b4.pow(3).scale_int(-8),
        b6.pow(2).scale_int(-27),
        b2.mul(&b4).mul(&b6).scale_int(9),
    ]);
    let syzygy = b8.scale_int(4).sub(&b2.mul(&b6)).add(&b4.pow(2));
    assert!(syzygy.is_zero(), "4b8 = b2 b6 - b4^2 must hold");
    let j = JInvariant::from_ratio(&c4.pow(3), &delta);
    SurfaceInvariants { b2, b4, b6, b8, c4, c6, delta, j }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FibrationKind {
    Elliptic,
    QuasiElliptic,
    Invalid,
}

impl fmt::Display for FibrationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FibrationKind::Elliptic => "elliptic",
            FibrationKind::QuasiElliptic => "quasi-elliptic",
            FibrationKind::Invalid => "invalid",
        };
        write!(f, "{}", s)
    }
}

/// Elliptic when Δ ≠ 0; quasi-elliptic when Δ = 0 in characteristic 2 or 3
/// and the surface has only isolated singularities; invalid otherwise.
pub fn fibration_kind(eq: &WeierstrassEq) -> FibrationKind {
    if !compute_invariants(eq).delta.is_zero() {
        return FibrationKind::Elliptic;
    }
    if matches!(eq.characteristic(), 2 | 3) && crate::singularity::singular_locus_is_finite(eq) {
        FibrationKind::QuasiElliptic
    } else {
        FibrationKind::Invalid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(p: u64, a: [&[(i64, u32, u32)]; 5]) -> WeierstrassEq {
        let f = Field::prime(p).unwrap();
        let forms = a.map(|terms| {
            terms.iter().fold(BiPoly::zero(&f), |acc, &(c, i, j)| acc.add(&BiPoly::monomial(&f, f.from_i64(c), i, j)))
        });
        WeierstrassEq::new(&f, forms).unwrap()
    }

    #[test]
    fn char5_x22() {
        let e = eq(5, [&[], &[], &[], &[], &[(1, 5, 1)]]);
        let inv = compute_invariants(&e);
        let f = e.field();
        assert_eq!(inv.delta, BiPoly::monomial(f, f.from_i64(-2), 10, 2));
        assert!(inv.j.is_zero());
        assert_eq!(e.to_string(), "y^2 = x^3 + t^5*s");
    }

    #[test]
    fn char2_e8_4() {
        let e = eq(2, [&[(1, 1, 0)], &[], &[], &[], &[(1, 5, 1)]]);
        let inv = compute_invariants(&e);
        let f = e.field();
        assert_eq!(inv.delta, BiPoly::monomial(f, Fe::ONE, 11, 1));
        assert_eq!(inv.j.to_string(), "t/s");
        assert_eq!(e.to_string(), "y^2 + t*x*y = x^3 + t^5*s");
    }

    #[test]
    fn char3_6c() {
        let e = eq(3, [&[], &[], &[], &[(1, 4, 0)], &[(1, 4, 2)]]);
        let inv = compute_invariants(&e);
        let f = e.field();
        assert_eq!(inv.delta, BiPoly::monomial(f, f.from_i64(-1), 12, 0));
        assert!(inv.j.is_zero());
    }

    #[test]
    fn degree_checked() {
        let f = Field::prime(5).unwrap();
        let z = BiPoly::zero(&f);
        let bad = [BiPoly::t(&f).pow(2), z.clone(), z.clone(), z.clone(), z];
        assert_eq!(WeierstrassEq::new(&f, bad), Err(WeierstrassError::Degree(1, 2)));
    }
}
