//! Homogeneous binary forms in (t, s).

use std::fmt;

use super::factor::{factor_univariate, roots};
use super::field::{Fe, Field};
use super::poly::UPoly;
use super::tower::Embedding;
use super::AlgebraError;

/// Homogeneous form `sum c_i t^i s^(d-i)`. The zero form carries no degree.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    degree: Option<u32>,
    /// Indexed by the exponent of t; length degree + 1.
    coeffs: Vec<Fe>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly { field: field.clone(), degree: None, coeffs: Vec::new() }
    }

    /// Form of the given degree from coefficients indexed by the t-exponent.
    pub fn from_coeffs(field: &Field, degree: u32, mut coeffs: Vec<Fe>) -> BiPoly {
        coeffs.resize(degree as usize + 1, Fe::ZERO);
        if coeffs.iter().all(|c| c.is_zero()) {
            return BiPoly::zero(field);
        }
        BiPoly { field: field.clone(), degree: Some(degree), coeffs }
    }

    /// c * t^i * s^j
    pub fn monomial(field: &Field, c: Fe, i: u32, j: u32) -> BiPoly {
        let mut v = vec![Fe::ZERO; (i + j) as usize + 1];
        v[i as usize] = c;
        BiPoly::from_coeffs(field, i + j, v)
    }

    pub fn constant(field: &Field, c: Fe) -> BiPoly {
        BiPoly::monomial(field, c, 0, 0)
    }

    pub fn t(field: &Field) -> BiPoly {
        BiPoly::monomial(field, Fe::ONE, 1, 0)
    }

    pub fn s(field: &Field) -> BiPoly {
        BiPoly::monomial(field, Fe::ONE, 0, 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    /// Coefficient of t^i s^(d-i).
    pub fn coeff(&self, i: u32) -> Fe {
        self.coeffs.get(i as usize).copied().unwrap_or(Fe::ZERO)
    }

    /// Nonzero terms as ((i, j), c) for t^i s^j, highest t-power first.
    pub fn terms(&self) -> Vec<((u32, u32), Fe)> {
        let Some(d) = self.degree else {
            return Vec::new();
        };
        (0..=d)
            .rev()
            .filter(|&i| !self.coeffs[i as usize].is_zero())
            .map(|i| ((i, d - i), self.coeffs[i as usize]))
            .collect()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        match (self.degree, other.degree) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "adding forms of different degrees");
                let f = &self.field;
                let v = (0..=a as usize).map(|i| f.add(self.coeffs[i], other.coeffs[i])).collect();
                BiPoly::from_coeffs(f, a, v)
            }
        }
    }

    pub fn neg(&self) -> BiPoly {
        self.scale(self.field.neg(Fe::ONE))
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> BiPoly {
        let Some(d) = self.degree else {
            return self.clone();
        };
        let f = &self.field;
        BiPoly::from_coeffs(f, d, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn scale_int(&self, n: i64) -> BiPoly {
        self.scale(self.field.from_i64(n))
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let (Some(a), Some(b)) = (self.degree, other.degree) else {
            return BiPoly::zero(&self.field);
        };
        let f = &self.field;
        let mut v = vec![Fe::ZERO; (a + b) as usize + 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(x, y));
            }
        }
        BiPoly::from_coeffs(f, a + b, v)
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::constant(&self.field, Fe::ONE);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, t: Fe, s: Fe) -> Fe {
        let Some(d) = self.degree else {
            return Fe::ZERO;
        };
        let f = &self.field;
        (0..=d).fold(Fe::ZERO, |acc, i| {
            let term = f.mul(self.coeffs[i as usize], f.mul(f.pow(t, i as u64), f.pow(s, (d - i) as u64)));
            f.add(acc, term)
        })
    }

    /// F(t, 1) as a polynomial in t.
    pub fn dehomogenize_s(&self) -> UPoly {
        UPoly::new(&self.field, self.coeffs.clone())
    }

    /// F(1, s) as a polynomial in s.
    pub fn dehomogenize_t(&self) -> UPoly {
        UPoly::new(&self.field, self.coeffs.iter().rev().copied().collect())
    }

    /// The form of degree `d` whose dehomogenization at s = 1 is `f`.
    pub fn homogenize(f: &UPoly, d: u32) -> Result<BiPoly, AlgebraError> {
        if f.deg() > d as usize {
            return Err(AlgebraError::DegreeMismatch);
        }
        Ok(BiPoly::from_coeffs(f.field(), d, f.coeffs().to_vec()))
    }

    /// Exponent of s dividing the form.
    pub fn s_valuation(&self) -> Option<u32> {
        let d = self.degree?;
        (0..=d).rev().position(|i| !self.coeffs[i as usize].is_zero()).map(|k| k as u32)
    }

    /// Exponent of t dividing the form.
    pub fn t_valuation(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|k| k as u32)
    }

    /// F(a t + b s, c t + d s).
    pub fn substitute_linear(&self, m: [[Fe; 2]; 2]) -> BiPoly {
        let Some(d) = self.degree else {
            return self.clone();
        };
        let f = &self.field;
        let l1 = BiPoly::from_coeffs(f, 1, vec![m[0][1], m[0][0]]);
        let l2 = BiPoly::from_coeffs(f, 1, vec![m[1][1], m[1][0]]);
        let mut acc = BiPoly::zero(f);
        for i in 0..=d {
            let c = self.coeffs[i as usize];
            if c.is_zero() {
                continue;
            }
            let term = l1.pow(i).mul(&l2.pow(d - i)).scale(c);
            acc = if acc.is_zero() { term } else { acc.add(&term) };
        }
        acc
    }

    /// Monic greatest common divisor, leading coefficient taken at the
    /// highest t-power present.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let a = self.s_valuation().unwrap_or(0).min(other.s_valuation().unwrap_or(0));
        let g = self.dehomogenize_s().gcd(&other.dehomogenize_s());
        let g = BiPoly::homogenize(&g, g.deg() as u32).expect("degree fits");
        g.mul(&BiPoly::monomial(&self.field, Fe::ONE, 0, a))
    }

    /// Quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let (Some(a), Some(b)) = (self.degree, d.degree) else {
            return if self.is_zero() { Some(self.clone()) } else { None };
        };
        if b > a {
            return None;
        }
        let q = self.dehomogenize_s().div_exact(&d.dehomogenize_s())?;
        if q.deg() > (a - b) as usize {
            return None;
        }
        BiPoly::homogenize(&q, a - b).ok()
    }

    /// Leading coefficient: the coefficient of the highest t-power present.
    pub fn lead(&self) -> Fe {
        self.coeffs.iter().rev().find(|c| !c.is_zero()).copied().unwrap_or(Fe::ZERO)
    }

    pub fn normalized(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    pub fn lift(&self, e: &Embedding) -> BiPoly {
        match self.degree {
            None => BiPoly::zero(e.target()),
            Some(d) => BiPoly::from_coeffs(e.target(), d, self.coeffs.iter().map(|&c| e.apply(c)).collect()),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(Fe) -> Fe) -> BiPoly {
        match self.degree {
            None => self.clone(),
            Some(d) => BiPoly::from_coeffs(&self.field, d, self.coeffs.iter().map(|&c| f(c)).collect()),
        }
    }
}

/// Integer representative used for printing prime-field coefficients:
/// symmetric residues for odd p.
pub(crate) fn signed_residue(field: &Field, c: Fe) -> Option<i64> {
    if field.degree() != 1 {
        return None;
    }
    let p = field.characteristic() as i64;
    let v = c.0 as i64;
    Some(if p > 2 && v > p / 2 { v - p } else { v })
}

pub(crate) fn format_terms(field: &Field, terms: &[(String, Fe)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (mono, c)) in terms.iter().enumerate() {
        let (negative, mag) = match signed_residue(field, *c) {
            Some(v) if v < 0 => (true, (-v).to_string()),
            Some(v) => (false, v.to_string()),
            None => (false, format!("({})", field.format(*c))),
        };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        match (mono.is_empty(), mag == "1") {
            (true, _) => out.push_str(&mag),
            (false, true) => out.push_str(mono),
            (false, false) => {
                out.push_str(&mag);
                out.push('*');
                out.push_str(mono);
            }
        }
    }
    out
}

pub(crate) fn monomial_name(vars: &[(&str, u32)]) -> String {
    vars.iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{}^{}", v, e) })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Fe)> =
            self.terms().into_iter().map(|((i, j), c)| (monomial_name(&[("t", i), ("s", j)]), c)).collect();
        write!(f, "{}", format_terms(&self.field, &terms))
    }
}

/// An irreducible factor of a binary form together with a chosen root.
#[derive(Clone, Debug)]
pub struct BinaryFactor {
    /// Irreducible over the base field, normalized.
    pub form: BiPoly,
    pub multiplicity: u32,
    /// Field of definition of one linear factor over the closure.
    pub splitting_field: Field,
    /// For `[s]` the point t:s = 1:0 is encoded by `at_infinity`; otherwise the
    /// roots α of form(t, 1) in the splitting field, smallest first.
    pub roots: Vec<Fe>,
    pub at_infinity: bool,
}

impl BinaryFactor {
    pub fn degree(&self) -> u32 {
        self.form.degree().unwrap_or(0)
    }
}

/// Factor a nonzero form over its field; returns the leading unit and the
/// irreducible factors sorted by degree then coefficients.
pub fn factor_binary_form(form: &BiPoly) -> Result<(Fe, Vec<BinaryFactor>), AlgebraError> {
    let Some(_) = form.degree else {
        return Err(AlgebraError::IdenticallyZero);
    };
    let field = form.field.clone();
    let sv = form.s_valuation().unwrap_or(0);
    let affine = form.dehomogenize_s();
    let fac = factor_univariate(&affine)?;
    let mut out = Vec::new();
    for (g, m) in fac.factors {
        let d = g.deg() as u32;
        let splitting_field = Field::new(field.characteristic(), field.degree() * d)?;
        let e = Embedding::new(&field, &splitting_field)?;
        let rts = roots(&e.apply_poly(&g));
        out.push(BinaryFactor {
            form: BiPoly::homogenize(&g, d)?,
            multiplicity: m,
            splitting_field,
            roots: rts,
            at_infinity: false,
        });
    }
    if sv > 0 {
        out.push(BinaryFactor {
            form: BiPoly::s(&field),
            multiplicity: sv,
            splitting_field: field.clone(),
            roots: Vec::new(),
            at_infinity: true,
        });
    }
    out.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| a.form.coeffs.iter().rev().cmp(b.form.coeffs.iter().rev()))
    });
    Ok((fac.unit, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char3_discriminant_places() {
        let f = Field::prime(3).unwrap();
        let d = BiPoly::monomial(&f, f.from_i64(-1), 9, 3);
        let (unit, facs) = factor_binary_form(&d).unwrap();
        assert_eq!(unit, f.from_i64(-1));
        let got: Vec<(String, u32)> = facs.iter().map(|b| (b.form.to_string(), b.multiplicity)).collect();
        assert_eq!(got, vec![("s".to_string(), 3), ("t".to_string(), 9)]);
    }

    #[test]
    fn char5_conjugate_places() {
        let f = Field::prime(5).unwrap();
        let t2 = BiPoly::monomial(&f, Fe::ONE, 2, 0);
        let s2 = BiPoly::monomial(&f, f.from_i64(-2), 0, 2);
        let d = BiPoly::monomial(&f, Fe::ONE, 10, 0).mul(&t2.add(&s2));
        let (_, facs) = factor_binary_form(&d).unwrap();
        assert_eq!(facs.len(), 2);
        assert_eq!(facs[0].form.to_string(), "t");
        assert_eq!(facs[0].multiplicity, 10);
        assert_eq!(facs[1].form.to_string(), "t^2 - 2*s^2");
        assert_eq!(facs[1].splitting_field.order(), 25);
        assert_eq!(facs[1].roots.len(), 2);
        let total: u32 = facs.iter().map(|b| b.multiplicity * b.degree()).sum();
        assert_eq!(total, 12);
    }

    #[test]
    fn zero_form() {
        let f = Field::prime(7).unwrap();
        assert!(matches!(factor_binary_form(&BiPoly::zero(&f)), Err(AlgebraError::IdenticallyZero)));
    }

    #[test]
    fn linear_substitution_and_gcd() {
        let f = Field::prime(7).unwrap();
        let t = BiPoly::t(&f);
        let s = BiPoly::s(&f);
        let g = t.mul(&s).mul(&t.add(&s));
        let swapped = g.substitute_linear([[Fe(0), Fe(1)], [Fe(1), Fe(0)]]);
        assert_eq!(swapped, g);
        assert_eq!(g.gcd(&t.mul(&t.add(&s))), t.mul(&t.add(&s)));
        assert_eq!(g.div_exact(&s).unwrap(), t.mul(&t.add(&s)));
    }
}
