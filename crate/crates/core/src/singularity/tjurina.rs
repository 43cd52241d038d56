//! Dimension of the Tjurina algebra k[x,y,z]_(x,y,z) / (f, ∂f) by linear
//! algebra on truncated monomial spaces.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::mpoly::{deg, Exp};
use crate::algebra::{Fe, Field, LocalPoly};

use super::SingularityError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TjurinaResult {
    pub dimension: usize,
    /// Degree d with m^d contained in the ideal.
    pub truncation: u32,
    pub certified: bool,
}

pub const TRUNCATIONS: [u32; 3] = [8, 16, 24];

/// Monomials of degree < n, ordered by degree then lexicographically.
fn monomials_below(n: u32) -> Vec<Exp> {
    let mut out = Vec::new();
    for d in 0..n {
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push([a as u16, b as u16, (d - a - b) as u16]);
            }
        }
    }
    out
}

/// Echelon basis keyed by the lowest monomial of each row.
struct Echelon {
    field: Field,
    pivots: HashMap<u32, BTreeMap<u32, Fe>>,
}

impl Echelon {
    /// Whether a single monomial lies in the span.
    fn contains_monomial(&self, idx: u32) -> bool {
        let f = &self.field;
        let mut row = BTreeMap::from([(idx, Fe::ONE)]);
        while let Some((&lead, &c)) = row.iter().next() {
            let Some(piv) = self.pivots.get(&lead) else {
                return false;
            };
            for (&k, &v) in piv {
                let e = row.entry(k).or_insert(Fe::ZERO);
                *e = f.sub(*e, f.mul(c, v));
                if e.is_zero() {
                    row.remove(&k);
                }
            }
        }
        true
    }

    fn insert(&mut self, mut row: BTreeMap<u32, Fe>) {
        let f = self.field.clone();
        while let Some((&lead, &c)) = row.iter().next() {
            let Some(piv) = self.pivots.get(&lead) else {
                let inv = f.inv(c);
                for v in row.values_mut() {
                    *v = f.mul(*v, inv);
                }
                self.pivots.insert(lead, row);
                return;
            };
            for (&k, &v) in piv {
                let e = row.entry(k).or_insert(Fe::ZERO);
                *e = f.sub(*e, f.mul(c, v));
                if e.is_zero() {
                    row.remove(&k);
                }
            }
        }
    }
}

/// dim k[x,y,z] / (gens + m^n), with the smallest degree d below n whose
/// monomials all lie in gens + m^n.
fn truncated_colength(gens: &[LocalPoly], field: &Field, n: u32) -> (usize, Option<u32>) {
    let monos = monomials_below(n);
    let index: HashMap<Exp, u32> = monos.iter().enumerate().map(|(i, e)| (*e, i as u32)).collect();
    let mut ech = Echelon { field: field.clone(), pivots: HashMap::new() };
    let mut rows: Vec<(u32, BTreeMap<u32, Fe>)> = Vec::new();
    for g in gens {
        let Some(ord) = g.order() else { continue };
        for m in monos.iter().filter(|m| deg(m) + ord < n) {
            let row: BTreeMap<u32, Fe> = g
                .terms()
                .filter(|(e, _)| deg(e) + deg(m) < n)
                .map(|(e, &c)| (index[&[e[0] + m[0], e[1] + m[1], e[2] + m[2]]], c))
                .collect();
            if let Some((&low, _)) = row.iter().next() {
                rows.push((low, row));
            }
        }
    }
    // sparse rows with low leading monomials first keep fill-in small
    rows.sort_by_key(|(low, r)| (*low, r.len()));
    for (_, r) in rows {
        ech.insert(r);
    }
    let full = (0..n)
        .find(|&d| monos.iter().enumerate().filter(|(_, m)| deg(m) == d).all(|(i, _)| ech.contains_monomial(i as u32)));
    (monos.len() - ech.pivots.len(), full)
}

pub fn tjurina_dimension(f: &LocalPoly) -> Result<TjurinaResult, SingularityError> {
    let field = f.field().clone();
    if f.is_zero() {
        return Err(SingularityError::NotCertified);
    }
    let mut gens = vec![f.clone()];
    for v in 0..3 {
        let d = f.derivative(v);
        if !d.is_zero() {
            gens.push(d);
        }
    }
    for n in TRUNCATIONS {
        let (a, full) = truncated_colength(&gens, &field, n);
        let (b, _) = truncated_colength(&gens, &field, n + 1);
        if let (true, Some(d)) = (a == b, full) {
            return Ok(TjurinaResult { dimension: a, truncation: d, certified: true });
        }
    }
    Err(SingularityError::NotCertified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MPoly;

    fn poly(p: u64, terms: &[(i64, Exp)]) -> LocalPoly {
        let f = Field::prime(p).unwrap();
        MPoly::from_terms(&f, terms.iter().map(|&(c, e)| (e, f.from_i64(c))))
    }

    #[test]
    fn a1_and_smooth() {
        // xy + z^2 in char 3: ideal (x, y, z)
        let f = poly(3, &[(1, [1, 1, 0]), (1, [0, 0, 2])]);
        assert_eq!(tjurina_dimension(&f).unwrap().dimension, 1);
        let smooth = poly(3, &[(1, [1, 0, 0])]);
        assert_eq!(tjurina_dimension(&smooth).unwrap().dimension, 0);
    }

    #[test]
    fn d8_char2() {
        // z^2 + x^2 y + x y^4
        let f = poly(2, &[(1, [0, 0, 2]), (1, [2, 1, 0]), (1, [1, 4, 0])]);
        let r = tjurina_dimension(&f).unwrap();
        assert_eq!(r.dimension, 16);
        assert!(r.certified);
    }

    #[test]
    fn non_isolated_fails() {
        // x^2 singular along the plane x = 0
        let f = poly(5, &[(1, [2, 0, 0])]);
        assert!(matches!(tjurina_dimension(&f), Err(SingularityError::NotCertified)));
    }
}
