//! Solving zero-dimensional polynomial systems in up to three variables by
//! resultant projection, univariate factorization and back-substitution.

use super::factor::{factor_univariate, roots};
use super::field::{Fe, Field};
use super::mpoly::MPoly;
use super::poly::UPoly;
use super::resultant::resultant;
use super::tower::{Embedding, FieldTower};
use super::AlgebraError;

const MAX_PAIRS: usize = 12;

/// A common zero of a system, with coordinates in the top level of `tower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub tower: FieldTower,
    pub coords: Vec<Fe>,
}

impl Solution {
    pub fn field(&self) -> &Field {
        self.tower.top()
    }
}

/// All common zeros over the algebraic closure of the system's field.
/// Variables are 0..nvars; every polynomial must share one field.
pub fn eliminate(system: &[MPoly], nvars: usize) -> Result<Vec<Solution>, AlgebraError> {
    assert!(nvars <= 3, "at most three variables");
    let Some(first) = system.first() else {
        return if nvars == 0 { Ok(Vec::new()) } else { Err(AlgebraError::PositiveDimensional) };
    };
    let field = first.field().clone();
    let tower = FieldTower::new(&field);
    let mut sols = solve(system.to_vec(), nvars, &tower)?;
    for sol in &sols {
        for f in system {
            let lifted = f.map_coeffs(|c| sol.tower.lift(c, 0).expect("tower levels embed"));
            let lifted = MPoly::from_terms(sol.field(), lifted.terms().map(|(&e, &c)| (e, c)));
            assert!(lifted.eval(&sol.coords).is_zero(), "eliminate produced a non-solution");
        }
    }
    sols.sort_by(|a, b| a.field().degree().cmp(&b.field().degree()).then_with(|| a.coords.cmp(&b.coords)));
    Ok(sols)
}

fn solve(polys: Vec<MPoly>, n: usize, tower: &FieldTower) -> Result<Vec<Solution>, AlgebraError> {
    let polys: Vec<MPoly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(Vec::new());
    }
    if n == 0 {
        return Ok(vec![Solution { tower: tower.clone(), coords: Vec::new() }]);
    }
    if polys.is_empty() {
        return Err(AlgebraError::PositiveDimensional);
    }
    let h = univariate_eliminant(&polys, n)?;
    let field = tower.top().clone();
    let q = field.order();
    let mut out = Vec::new();
    for factor in factor_univariate(&h)?.factors.into_iter().map(|(g, _)| g) {
        let d = factor.deg() as u32;
        let (ext, alpha) = if d == 1 {
            (tower.clone(), field.neg(factor.coeff(0)))
        } else {
            let ext = tower.extend(d)?;
            let e = Embedding::new(&field, ext.top())?;
            let alpha = roots(&e.apply_poly(&factor))[0];
            (ext, alpha)
        };
        let top = ext.top().clone();
        let e = Embedding::new(&field, &top)?;
        let sub: Vec<MPoly> = polys.iter().map(|p| p.lift(&e).specialize(0, alpha).permute([2, 0, 1])).collect();
        let level = ext.levels().len() - 1;
        for s in solve(sub, n - 1, &ext)? {
            let a = lift_from(&s.tower, alpha, level)?;
            let mut coords = vec![a];
            coords.extend(s.coords.iter().copied());
            let sf = s.tower.top().clone();
            let mut point = coords.clone();
            out.push(Solution { tower: s.tower.clone(), coords });
            for _ in 1..d {
                point = point.iter().map(|&c| sf.pow(c, q)).collect();
                out.push(Solution { tower: s.tower.clone(), coords: point.clone() });
            }
        }
    }
    Ok(out)
}

fn lift_from(tower: &FieldTower, a: Fe, level: usize) -> Result<Fe, AlgebraError> {
    tower.lift(a, level)
}

/// A nonzero polynomial in variable 0 vanishing on the projection of the
/// solution set, or "positive-dimensional" if none can be found.
fn univariate_eliminant(polys: &[MPoly], n: usize) -> Result<UPoly, AlgebraError> {
    let field = polys[0].field().clone();
    let uni: Vec<UPoly> = polys.iter().filter_map(|p| p.to_univariate(0)).collect();
    if !uni.is_empty() {
        return Ok(uni.iter().fold(UPoly::zero(&field), |g, u| g.gcd(u)));
    }
    let mut set = polys.to_vec();
    for v in (1..n).rev() {
        set = project(&set, v);
        let uni: Vec<UPoly> = set.iter().filter_map(|p| p.to_univariate(0)).collect();
        if !uni.is_empty() {
            return Ok(uni.iter().fold(UPoly::zero(&field), |g, u| g.gcd(u)));
        }
    }
    Err(AlgebraError::PositiveDimensional)
}

/// Polynomials free of variable `v` whose common zeros contain the
/// projection of the common zeros of `set`.
fn project(set: &[MPoly], v: usize) -> Vec<MPoly> {
    let mut out: Vec<MPoly> = set.iter().filter(|p| !p.uses_var(v)).cloned().collect();
    let mut with: Vec<MPoly> = set.iter().filter(|p| p.uses_var(v)).cloned().collect();
    with.sort_by_key(|p| (p.degree_in(v), p.total_degree(), p.num_terms()));
    with.dedup();
    if with.len() >= 2 {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for j in 1..with.len() {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        pairs.sort_by_key(|&(i, j)| {
            let di = with[i].degree_in(v).unwrap_or(0) as u32;
            let dj = with[j].degree_in(v).unwrap_or(0) as u32;
            (di * with[j].total_degree().unwrap_or(0) + dj * with[i].total_degree().unwrap_or(0), i, j)
        });
        let mut found = false;
        for &(i, j) in pairs.iter().take(MAX_PAIRS) {
            let r = resultant(&with[i], &with[j], v);
            if !r.is_zero() {
                found = true;
                push_unique(&mut out, r);
            }
        }
        if !found {
            let field = with[0].field().clone();
            let mut comb = MPoly::zero(&field);
            let mut c = Fe::ONE;
            let g = if field.degree() > 1 { field.generator() } else { field.from_i64(2) };
            for (k, p) in with.iter().enumerate().skip(1) {
                let mut m = [0u16; 3];
                m[(v + 1) % 3] = k as u16 - 1;
                comb = comb.add(&p.mul_monomial(c, m));
                c = if c.is_zero() { Fe::ONE } else { field.mul(c, g) };
            }
            let r = resultant(&with[0], &comb, v);
            if !r.is_zero() {
                push_unique(&mut out, r);
            }
        }
    }
    out
}

fn push_unique(out: &mut Vec<MPoly>, p: MPoly) {
    if !out.contains(&p) {
        out.push(p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(f: &Field) -> (MPoly, MPoly, MPoly) {
        (MPoly::var(f, 0), MPoly::var(f, 1), MPoly::var(f, 2))
    }

    #[test]
    fn coordinate_hyperplanes() {
        let f = Field::prime(3).unwrap();
        let (u, v, w) = vars(&f);
        let sols = eliminate(&[u, v, w], 3).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].coords, vec![Fe(0); 3]);
    }

    #[test]
    fn jacobian_system_char2() {
        let f = Field::prime(2).unwrap();
        let (t, x, y) = vars(&f);
        let sys = vec![
            x.mul(&y).add(&t.pow(4)),
            t.mul(&y).add(&x.pow(2)),
            t.mul(&x),
            y.pow(2).add(&t.mul(&x).mul(&y)).add(&x.pow(3)).add(&t.pow(5)),
        ];
        let sols = eliminate(&sys, 3).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].coords, vec![Fe(0); 3]);
    }

    #[test]
    fn curve_is_positive_dimensional() {
        let f = Field::prime(5).unwrap();
        let (u, v, _) = vars(&f);
        assert!(matches!(eliminate(&[u.mul(&v)], 2), Err(AlgebraError::PositiveDimensional)));
    }

    #[test]
    fn conjugate_solutions_in_extension() {
        let f = Field::prime(2).unwrap();
        let (u, v, _) = vars(&f);
        // u^2 + u + 1 = 0, v = u^2
        let sys = vec![u.pow(2).add(&u).add(&MPoly::one(&f)), v.add(&u.pow(2))];
        let sols = eliminate(&sys, 2).unwrap();
        assert_eq!(sols.len(), 2);
        assert!(sols.iter().all(|s| s.field().order() == 4));
        assert_ne!(sols[0].coords, sols[1].coords);
    }
}
