//! Dense univariate polynomials over a finite field.

use std::cmp::Ordering;
use std::fmt;

use super::field::{Fe, Field};

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format("u"))
    }
}

impl UPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { field: field.clone(), coeffs }
    }

    pub fn from_i64(field: &Field, coeffs: &[i64]) -> UPoly {
        UPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> UPoly {
        UPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> UPoly {
        UPoly::constant(field, Fe::ONE)
    }

    pub fn constant(field: &Field, c: Fe) -> UPoly {
        UPoly::new(field, vec![c])
    }

    /// The variable itself.
    pub fn x(field: &Field) -> UPoly {
        UPoly::monomial(field, Fe::ONE, 1)
    }

    pub fn monomial(field: &Field, c: Fe, d: usize) -> UPoly {
        let mut v = vec![Fe::ZERO; d + 1];
        v[d] = c;
        UPoly::new(field, v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fe::ONE
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial treated as degree 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    /// Exponent of the lowest nonzero term; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        UPoly::new(f, v)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        UPoly::new(f, v)
    }

    pub fn neg(&self) -> UPoly {
        let f = &self.field;
        UPoly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Fe) -> UPoly {
        let f = &self.field;
        UPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        UPoly::new(f, v)
    }

    pub fn shift(&self, d: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Fe::ZERO; d];
        v.extend_from_slice(&self.coeffs);
        UPoly::new(&self.field, v)
    }

    pub fn pow(&self, mut e: u64) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.field;
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return (UPoly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, b));
            }
        }
        r.truncate(dd);
        (UPoly::new(f, q), UPoly::new(f, r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        let f = &self.field;
        let v = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_i64(i as i64), c)).collect();
        UPoly::new(f, v)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// self(g).
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UPoly::constant(&self.field, c));
        }
        acc
    }

    /// self(x + a).
    pub fn taylor_shift(&self, a: Fe) -> UPoly {
        let g = UPoly::new(&self.field, vec![a, Fe::ONE]);
        self.compose(&g)
    }

    pub fn mul_mod(&self, other: &UPoly, m: &UPoly) -> UPoly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &UPoly) -> UPoly {
        let mut base = self.rem(m);
        let mut acc = UPoly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// Inverse of the Frobenius on a polynomial all of whose exponents are
    /// multiples of p.
    pub fn pth_root(&self) -> UPoly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let v = self.coeffs.iter().step_by(p).map(|&c| f.pth_root(c)).collect();
        UPoly::new(f, v)
    }

    /// Apply a coefficient map into another field.
    pub fn map(&self, target: &Field, phi: impl Fn(Fe) -> Fe) -> UPoly {
        UPoly::new(target, self.coeffs.iter().map(|&c| phi(c)).collect())
    }

    /// Canonical order: degree first, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &UPoly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format(c);
            let cs = if cs.contains('+') { format!("({})", cs) } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            parts.push(match (i, c == Fe::ONE) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("{}*{}", cs, mono),
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let f = Field::new(3, 2).unwrap();
        let a = UPoly::new(&f, vec![Fe(1), Fe(4), Fe(0), Fe(7), Fe(2)]);
        let b = UPoly::new(&f, vec![Fe(5), Fe(1), Fe(3)]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_of_products() {
        let f = Field::prime(5).unwrap();
        let x1 = UPoly::from_i64(&f, &[-1, 1]);
        let x2 = UPoly::from_i64(&f, &[2, 1]);
        let x3 = UPoly::from_i64(&f, &[3, 0, 1]);
        let g = x1.mul(&x2).gcd(&x1.mul(&x3));
        assert_eq!(g, x1);
    }

    #[test]
    fn taylor_shift_moves_roots() {
        let f = Field::prime(7).unwrap();
        let p = UPoly::from_i64(&f, &[-3, 1]).mul(&UPoly::from_i64(&f, &[-5, 1]));
        let q = p.taylor_shift(Fe(3));
        assert!(q.eval(Fe(0)).is_zero());
        assert!(q.eval(Fe(2)).is_zero());
    }
}
