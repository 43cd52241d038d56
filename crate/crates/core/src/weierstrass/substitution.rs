//! Coordinate changes preserving the simplified Weierstrass forms.

use std::collections::BTreeMap;

use crate::algebra::{BiPoly, Fe, Field};

use super::{WeierstrassEq, WeierstrassError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstKind {
    /// x ↦ λ²x, y ↦ λ³y, for p ≠ 2, 3.
    W0,
    /// x ↦ λ²x + f, y ↦ λ³y, for p = 3.
    W3,
    /// x ↦ λ²x, y ↦ λ³y + fx + g, for p = 2 and a₃ = 0.
    W2,
    /// x ↦ λ²x + f, y ↦ λ³y + gx + h, for p = 2 and a₁ = 0.
    W2Prime,
    /// (t, s) ↦ M(t, s).
    Mobius,
}

/// x ↦ λ²x + r, y ↦ λ³y + σx + τ, or a linear change of (t, s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub kind: SubstKind,
    pub unit: Fe,
    /// Degree 2 shift of x.
    pub r: BiPoly,
    /// Degree 1 coefficient of x in the image of y.
    pub sigma: BiPoly,
    /// Degree 3 shift of y.
    pub tau: BiPoly,
    pub matrix: [[Fe; 2]; 2],
}

impl Substitution {
    fn base(field: &Field, kind: SubstKind, unit: Fe) -> Substitution {
        Substitution {
            kind,
            unit,
            r: BiPoly::zero(field),
            sigma: BiPoly::zero(field),
            tau: BiPoly::zero(field),
            matrix: [[Fe::ONE, Fe::ZERO], [Fe::ZERO, Fe::ONE]],
        }
    }

    pub fn w0(field: &Field, unit: Fe) -> Substitution {
        Substitution::base(field, SubstKind::W0, unit)
    }

    pub fn w3(field: &Field, unit: Fe, f: BiPoly) -> Substitution {
        Substitution { r: f, ..Substitution::base(field, SubstKind::W3, unit) }
    }

    pub fn w2(field: &Field, unit: Fe, f: BiPoly, g: BiPoly) -> Substitution {
        Substitution { sigma: f, tau: g, ..Substitution::base(field, SubstKind::W2, unit) }
    }

    pub fn w2_prime(field: &Field, unit: Fe, f: BiPoly, g: BiPoly, h: BiPoly) -> Substitution {
        Substitution { r: f, sigma: g, tau: h, ..Substitution::base(field, SubstKind::W2Prime, unit) }
    }

    pub fn mobius(field: &Field, matrix: [[Fe; 2]; 2]) -> Substitution {
        Substitution { matrix, ..Substitution::base(field, SubstKind::Mobius, Fe::ONE) }
    }

    fn check(&self, field: &Field) -> Result<(), WeierstrassError> {
        if self.unit.is_zero() {
            return Err(WeierstrassError::ZeroUnit);
        }
        for (c, d) in [(&self.r, 2), (&self.sigma, 1), (&self.tau, 3)] {
            if c.field() != field {
                return Err(WeierstrassError::FieldMismatch);
            }
            if c.degree().is_some_and(|e| e != d) {
                return Err(WeierstrassError::FormMismatch(format!("substitution datum of degree {d} expected")));
            }
        }
        Ok(())
    }
}

fn mismatch(msg: &str) -> WeierstrassError {
    WeierstrassError::FormMismatch(msg.to_string())
}

/// Apply a substitution using the closed transformation formulas of each
/// simplified form.
pub fn apply_substitution(eq: &WeierstrassEq, sub: &Substitution) -> Result<WeierstrassEq, WeierstrassError> {
    let field = eq.field().clone();
    sub.check(&field)?;
    let p = field.characteristic();
    let lam = sub.unit;
    let li = |k: u64| field.inv(field.pow(lam, k));
    let (a1, a2, a3, a4, a6) = (eq.a(1), eq.a(2), eq.a(3), eq.a(4), eq.a(6));
    let zero = BiPoly::zero(&field);
    let lp = |k: u64| field.pow(lam, k);
    let coeffs = match sub.kind {
        SubstKind::Mobius => {
            let m = sub.matrix;
            let det = field.sub(field.mul(m[0][0], m[1][1]), field.mul(m[0][1], m[1][0]));
            if det.is_zero() {
                return Err(WeierstrassError::SingularMatrix);
            }
            return Ok(eq.substitute_linear(m));
        }
        SubstKind::W0 => {
            if matches!(p, 2 | 3) || !a1.is_zero() || !a2.is_zero() || !a3.is_zero() {
                return Err(mismatch("W0 needs p ≠ 2, 3 and a1 = a2 = a3 = 0"));
            }
            if !sub.r.is_zero() || !sub.sigma.is_zero() || !sub.tau.is_zero() {
                return Err(mismatch("W0 substitutions only rescale"));
            }
            [zero.clone(), zero.clone(), zero, a4.scale(li(4)), a6.scale(li(6))]
        }
        SubstKind::W3 => {
            if p != 3 || !a1.is_zero() || !a3.is_zero() {
                return Err(mismatch("W3 needs p = 3 and a1 = a3 = 0"));
            }
            if !sub.sigma.is_zero() || !sub.tau.is_zero() {
                return Err(mismatch("W3 substitutions fix y up to scaling"));
            }
            let f = &sub.r;
            [
                zero.clone(),
                a2.scale(li(2)),
                zero,
                a4.add(&a2.mul(f).scale_int(2)).scale(li(4)),
                a6.add(&a4.mul(f)).add(&a2.mul(&f.pow(2))).add(&f.pow(3)).scale(li(6)),
            ]
        }
        SubstKind::W2 => {
            if p != 2 || !a3.is_zero() {
                return Err(mismatch("W2 needs p = 2 and a3 = 0"));
            }
            if !sub.r.is_zero() {
                return Err(mismatch("W2 substitutions do not shift x"));
            }
            let (f, g) = (&sub.sigma, &sub.tau);
            [
                a1.scale(li(1)),
                a2.scale(lp(4)).add(&a1.mul(f).scale(lp(2))).add(&f.pow(2)).scale(li(6)),
                zero,
                a4.add(&a1.mul(g)).scale(li(4)),
                a6.add(&g.pow(2)).scale(li(6)),
            ]
        }
        SubstKind::W2Prime => {
            if p != 2 || !a1.is_zero() {
                return Err(mismatch("W2' needs p = 2 and a1 = 0"));
            }
            let (f, g, h) = (&sub.r, &sub.sigma, &sub.tau);
            [
                zero,
                a2.scale(lp(4)).add(&g.pow(2)).add(&f.scale(lp(4))).scale(li(6)),
                a3.scale(li(3)),
                a4.scale(lp(2)).add(&a3.mul(g)).add(&f.pow(2).scale(lp(2))).scale(li(6)),
                a6.add(&a4.mul(f)).add(&a3.mul(h)).add(&a2.mul(&f.pow(2))).add(&f.pow(3)).add(&h.pow(2)).scale(li(6)),
            ]
        }
    };
    WeierstrassEq::new(&field, coeffs)
}

/// Polynomials in X, Y with form coefficients, keyed by (deg X, deg Y).
type XYPoly = BTreeMap<(u32, u32), BiPoly>;

fn xy_add(a: &XYPoly, b: &XYPoly) -> XYPoly {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.remove(k).map_or(v.clone(), |w| w.add(v));
        if !e.is_zero() {
            out.insert(*k, e);
        }
    }
    out
}

fn xy_mul(a: &XYPoly, b: &XYPoly) -> XYPoly {
    let mut out = XYPoly::new();
    for (&(i, j), u) in a {
        for (&(k, l), v) in b {
            out = xy_add(&out, &XYPoly::from([((i + k, j + l), u.mul(v))]));
        }
    }
    out
}

fn xy_scale(a: &XYPoly, c: &BiPoly) -> XYPoly {
    a.iter().map(|(&k, v)| (k, v.mul(c))).filter(|(_, v)| !v.is_zero()).collect()
}

fn xy_pow(a: &XYPoly, e: u32, one: &XYPoly) -> XYPoly {
    (0..e).fold(one.clone(), |acc, _| xy_mul(&acc, a))
}

/// Apply a substitution by expanding the sextic in new coordinates and
/// reading off coefficients; independent of the closed formulas.
pub fn expand_substitution(eq: &WeierstrassEq, sub: &Substitution) -> Result<WeierstrassEq, WeierstrassError> {
    let field = eq.field().clone();
    sub.check(&field)?;
    if sub.kind == SubstKind::Mobius {
        return apply_substitution(eq, sub);
    }
    let c = |v: Fe| BiPoly::constant(&field, v);
    let lam = sub.unit;
    let mut x = XYPoly::from([((1, 0), c(field.pow(lam, 2)))]);
    if !sub.r.is_zero() {
        x.insert((0, 0), sub.r.clone());
    }
    let mut y = XYPoly::from([((0, 1), c(field.pow(lam, 3)))]);
    if !sub.sigma.is_zero() {
        y.insert((1, 0), sub.sigma.clone());
    }
    if !sub.tau.is_zero() {
        y.insert((0, 0), sub.tau.clone());
    }
    let one = XYPoly::from([((0, 0), c(Fe::ONE))]);
    let neg = |p: &XYPoly| xy_scale(p, &c(field.neg(Fe::ONE)));
    // F = y² + a1 xy + a3 y - x³ - a2 x² - a4 x - a6
    let mut total = xy_pow(&y, 2, &one);
    total = xy_add(&total, &xy_scale(&xy_mul(&x, &y), eq.a(1)));
    total = xy_add(&total, &xy_scale(&y, eq.a(3)));
    total = xy_add(&total, &neg(&xy_pow(&x, 3, &one)));
    total = xy_add(&total, &neg(&xy_scale(&xy_pow(&x, 2, &one), eq.a(2))));
    total = xy_add(&total, &neg(&xy_scale(&x, eq.a(4))));
    total = xy_add(&total, &neg(&xy_scale(&one, eq.a(6))));
    let l6 = field.inv(field.pow(lam, 6));
    let read = |k: (u32, u32), sign: bool| -> BiPoly {
        let v = total.get(&k).cloned().unwrap_or_else(|| BiPoly::zero(&field)).scale(l6);
        if sign {
            v.neg()
        } else {
            v
        }
    };
    let allowed = [(0, 2), (1, 1), (0, 1), (3, 0), (2, 0), (1, 0), (0, 0)];
    if total.keys().any(|k| !allowed.contains(k)) {
        return Err(mismatch("substitution leaves the Weierstrass shape"));
    }
    if read((0, 2), false) != c(Fe::ONE) || read((3, 0), true) != c(Fe::ONE) {
        return Err(mismatch("substitution leaves the Weierstrass shape"));
    }
    WeierstrassEq::new(
        &field,
        [read((1, 1), false), read((2, 0), true), read((0, 1), false), read((1, 0), true), read((0, 0), true)],
    )
}
