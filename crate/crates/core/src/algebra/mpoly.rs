//! Sparse polynomials in at most three variables.

use std::collections::BTreeMap;
use std::fmt;

use super::bipoly::{format_terms, monomial_name};
use super::field::{Fe, Field};
use super::poly::UPoly;
use super::tower::Embedding;

pub type Exp = [u16; 3];

/// Sparse polynomial in variables 0, 1, 2. Terms are kept in lexicographic
/// order of exponent vectors; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    terms: BTreeMap<Exp, Fe>,
}

/// Local equations of singular points use the same representation.
pub type LocalPoly = MPoly;

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format(["u", "v", "w"]))
    }
}

impl MPoly {
    pub fn zero(field: &Field) -> MPoly {
        MPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, c: Fe) -> MPoly {
        MPoly::monomial(field, c, [0, 0, 0])
    }

    pub fn one(field: &Field) -> MPoly {
        MPoly::constant(field, Fe::ONE)
    }

    pub fn var(field: &Field, i: usize) -> MPoly {
        let mut e = [0u16; 3];
        e[i] = 1;
        MPoly::monomial(field, Fe::ONE, e)
    }

    pub fn monomial(field: &Field, c: Fe, e: Exp) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { field: field.clone(), terms }
    }

    pub fn from_terms(field: &Field, it: impl IntoIterator<Item = (Exp, Fe)>) -> MPoly {
        let mut p = MPoly::zero(field);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Polynomial in variable `var` with the given univariate coefficients.
    pub fn from_univariate(f: &UPoly, var: usize) -> MPoly {
        let field = f.field();
        MPoly::from_terms(
            field,
            f.coeffs().iter().enumerate().map(|(i, &c)| {
                let mut e = [0u16; 3];
                e[var] = i as u16;
                (e, c)
            }),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Fe)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exp) -> Fe {
        self.terms.get(e).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    pub fn add_term(&mut self, e: Exp, c: Fe) {
        if c.is_zero() {
            return;
        }
        let f = self.field.clone();
        let entry = self.terms.entry(e).or_insert(Fe::ZERO);
        *entry = f.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, self.field.neg(c));
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        self.scale(self.field.neg(Fe::ONE))
    }

    pub fn scale(&self, c: Fe) -> MPoly {
        let f = &self.field;
        MPoly::from_terms(f, self.terms.iter().map(|(&e, &a)| (e, f.mul(a, c))))
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let f = &self.field;
        let mut out = MPoly::zero(f);
        for (ea, &a) in &self.terms {
            for (eb, &b) in &other.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], f.mul(a, b));
            }
        }
        out
    }

    /// Product truncated to total degree < `bound`.
    pub fn mul_truncated(&self, other: &MPoly, bound: u32) -> MPoly {
        let f = &self.field;
        let mut out = MPoly::zero(f);
        for (ea, &a) in &self.terms {
            let da = deg(ea);
            if da >= bound {
                continue;
            }
            for (eb, &b) in &other.terms {
                if da + deg(eb) >= bound {
                    continue;
                }
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], f.mul(a, b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, c: Fe, m: Exp) -> MPoly {
        let f = &self.field;
        MPoly::from_terms(f, self.terms.iter().map(|(e, &a)| ([e[0] + m[0], e[1] + m[1], e[2] + m[2]], f.mul(a, c))))
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let f = &self.field;
        MPoly::from_terms(
            f,
            self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, &c)| {
                let mut e2 = *e;
                e2[var] -= 1;
                (e2, f.mul(c, f.from_i64(e[var] as i64)))
            }),
        )
    }

    pub fn eval(&self, x: &[Fe]) -> Fe {
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (i, &xi) in x.iter().enumerate().take(3) {
                if e[i] > 0 {
                    t = f.mul(t, f.pow(xi, e[i] as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Substitute a value for one variable.
    pub fn specialize(&self, var: usize, value: Fe) -> MPoly {
        let f = &self.field;
        MPoly::from_terms(
            f,
            self.terms.iter().map(|(e, &c)| {
                let mut e2 = *e;
                e2[var] = 0;
                (e2, f.mul(c, f.pow(value, e[var] as u64)))
            }),
        )
    }

    /// Rename variables: old variable i becomes variable perm[i].
    pub fn permute(&self, perm: [usize; 3]) -> MPoly {
        MPoly::from_terms(
            &self.field,
            self.terms.iter().map(|(e, &c)| {
                let mut e2 = [0u16; 3];
                for i in 0..3 {
                    e2[perm[i]] += e[i];
                }
                (e2, c)
            }),
        )
    }

    /// Substitute polynomials for all three variables.
    pub fn compose(&self, images: &[MPoly; 3]) -> MPoly {
        let f = &self.field;
        let max: [u16; 3] = std::array::from_fn(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0));
        let powers: Vec<Vec<MPoly>> = (0..3)
            .map(|i| {
                let mut v = vec![MPoly::one(f)];
                for k in 1..=max[i] as usize {
                    let next = v[k - 1].mul(&images[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MPoly::zero(f);
        for (e, &c) in &self.terms {
            let t = powers[0][e[0] as usize].mul(&powers[1][e[1] as usize]).mul(&powers[2][e[2] as usize]).scale(c);
            out = out.add(&t);
        }
        out
    }

    /// f(x + a).
    pub fn translate(&self, a: &[Fe; 3]) -> MPoly {
        let f = &self.field;
        let images: [MPoly; 3] = std::array::from_fn(|i| MPoly::var(f, i).add(&MPoly::constant(f, a[i])));
        self.compose(&images)
    }

    /// Image under the monomial substitution x_i -> prod_j x_j^{m[i][j]}.
    pub fn monomial_map(&self, m: [[u16; 3]; 3]) -> MPoly {
        MPoly::from_terms(
            &self.field,
            self.terms.iter().map(|(e, &c)| {
                let mut e2 = [0u16; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        e2[j] += e[i] * m[i][j];
                    }
                }
                (e2, c)
            }),
        )
    }

    /// Divide by x_var^k when every term is divisible.
    pub fn div_var_power(&self, var: usize, k: u16) -> Option<MPoly> {
        if self.terms.keys().any(|e| e[var] < k) {
            return None;
        }
        Some(MPoly::from_terms(
            &self.field,
            self.terms.iter().map(|(e, &c)| {
                let mut e2 = *e;
                e2[var] -= k;
                (e2, c)
            }),
        ))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(deg).max()
    }

    /// Lowest total degree of a term (order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(deg).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn weighted_degrees(&self, w: [u32; 3]) -> Vec<u32> {
        let mut v: Vec<u32> =
            self.terms.keys().map(|e| e[0] as u32 * w[0] + e[1] as u32 * w[1] + e[2] as u32 * w[2]).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly::from_terms(&self.field, self.terms.iter().filter(|(e, _)| deg(e) == d).map(|(&e, &c)| (e, c)))
    }

    /// Drop terms of total degree >= bound.
    pub fn truncate(&self, bound: u32) -> MPoly {
        MPoly::from_terms(&self.field, self.terms.iter().filter(|(e, _)| deg(e) < bound).map(|(&e, &c)| (e, c)))
    }

    /// Coefficients with respect to `var`: result[k] is the coefficient of
    /// x_var^k (itself free of x_var).
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let n = self.degree_in(var).map(|d| d as usize + 1).unwrap_or(0);
        let mut out = vec![MPoly::zero(&self.field); n];
        for (e, &c) in &self.terms {
            let mut e2 = *e;
            e2[var] = 0;
            out[e[var] as usize].add_term(e2, c);
        }
        out
    }

    pub fn from_coefficients_in(field: &Field, coeffs: &[MPoly], var: usize) -> MPoly {
        let mut out = MPoly::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, &a) in &c.terms {
                let mut e2 = *e;
                e2[var] += k as u16;
                out.add_term(e2, a);
            }
        }
        out
    }

    /// As a univariate polynomial when only `var` occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UPoly> {
        let mut v = vec![Fe::ZERO; self.degree_in(var).map(|d| d as usize + 1).unwrap_or(0)];
        for (e, &c) in &self.terms {
            if (0..3).any(|i| i != var && e[i] > 0) {
                return None;
            }
            v[e[var] as usize] = c;
        }
        Some(UPoly::new(&self.field, v))
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(Exp, Fe)> {
        self.terms.iter().next_back().map(|(&e, &c)| (e, c))
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (ld, lc) = d.leading_term()?;
        let f = &self.field;
        let inv = f.inv(lc);
        let mut rem = self.clone();
        let mut q = MPoly::zero(f);
        while let Some((e, c)) = rem.leading_term() {
            if (0..3).any(|i| e[i] < ld[i]) {
                return None;
            }
            let m = [e[0] - ld[0], e[1] - ld[1], e[2] - ld[2]];
            let k = f.mul(c, inv);
            q.add_term(m, k);
            rem = rem.sub(&d.mul_monomial(k, m));
        }
        Some(q)
    }

    pub fn lift(&self, e: &Embedding) -> MPoly {
        MPoly::from_terms(e.target(), self.terms.iter().map(|(&x, &c)| (x, e.apply(c))))
    }

    pub fn map_coeffs(&self, f: impl Fn(Fe) -> Fe) -> MPoly {
        MPoly::from_terms(&self.field, self.terms.iter().map(|(&x, &c)| (x, f(c))))
    }

    pub fn format(&self, names: [&str; 3]) -> String {
        let mut terms: Vec<(Exp, Fe)> = self.terms.iter().map(|(&e, &c)| (e, c)).collect();
        terms.sort_by(|a, b| deg(&b.0).cmp(&deg(&a.0)).then(b.0.cmp(&a.0)));
        let named: Vec<(String, Fe)> = terms
            .into_iter()
            .map(|(e, c)| {
                (monomial_name(&[(names[0], e[0] as u32), (names[1], e[1] as u32), (names[2], e[2] as u32)]), c)
            })
            .collect();
        format_terms(&self.field, &named)
    }
}

pub fn deg(e: &Exp) -> u32 {
    e[0] as u32 + e[1] as u32 + e[2] as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division_roundtrip() {
        let f = Field::prime(5).unwrap();
        let x = MPoly::var(&f, 0);
        let y = MPoly::var(&f, 1);
        let z = MPoly::var(&f, 2);
        let a = x.mul(&y).add(&z.pow(3)).add(&MPoly::constant(&f, Fe(2)));
        let b = x.add(&y.mul(&z)).sub(&MPoly::one(&f));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(p.add(&x).div_exact(&a).is_none());
    }

    #[test]
    fn translate_and_back() {
        let f = Field::new(3, 2).unwrap();
        let x = MPoly::var(&f, 0);
        let y = MPoly::var(&f, 1);
        let p = x.pow(3).add(&x.mul(&y)).add(&y.pow(2));
        let a = [Fe(4), Fe(7), Fe(0)];
        let back = [f.neg(a[0]), f.neg(a[1]), Fe(0)];
        assert_eq!(p.translate(&a).translate(&back), p);
    }

    #[test]
    fn formatting() {
        let f = Field::prime(3).unwrap();
        let x = MPoly::var(&f, 0);
        let z = MPoly::var(&f, 2);
        let p = z.pow(2).sub(&x.pow(3));
        assert_eq!(p.format(["x", "y", "z"]), "-x^3 + z^2");
    }
}
