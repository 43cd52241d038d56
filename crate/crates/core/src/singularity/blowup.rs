//! Point blow-ups of double points and the resulting resolution trees.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::{eliminate, AlgebraError, Embedding, Fe, Field, LocalPoly, MPoly};

use super::tjurina::tjurina_dimension;
use super::SingularityError;

/// Maximal depth of the blow-up recursion.
pub const MAX_DEPTH: usize = 12;

/// Resolution data of one singular point: Tjurina dimension, number of
/// exceptional curves of its blow-up and the singular points lying over it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub tjurina: usize,
    pub components: usize,
    pub children: Vec<Fingerprint>,
}

impl Fingerprint {
    /// Number of exceptional curves in the full resolution.
    pub fn rank(&self) -> usize {
        self.components + self.children.iter().map(|c| c.rank()).sum::<usize>()
    }

    pub fn blowups(&self) -> usize {
        1 + self.children.iter().map(|c| c.blowups()).sum::<usize>()
    }
}

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{}", self.tjurina, self.components)?;
        if !self.children.is_empty() {
            write!(f, ";")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", c)?;
            }
        }
        write!(f, ")")
    }
}

fn vars(f: &Field) -> [MPoly; 3] {
    std::array::from_fn(|i| MPoly::var(f, i))
}

/// A singular point found by elimination.
#[derive(Clone, Debug)]
pub(crate) struct Located {
    /// Equation translated so that the point is the origin.
    pub local: LocalPoly,
    pub orbit: usize,
    pub coords: [Fe; 3],
    pub field: Field,
}

/// Singular points of `g` on the locus cut out by `extra`, one representative
/// per orbit of Frobenius over `g`'s field.
pub(crate) fn singular_points_on(g: &LocalPoly, extra: &[LocalPoly]) -> Result<Vec<Located>, SingularityError> {
    let field = g.field().clone();
    let mut system = vec![g.clone(), g.derivative(0), g.derivative(1), g.derivative(2)];
    system.extend(extra.iter().cloned());
    let sols = match eliminate(&system, 3) {
        Ok(s) => s,
        Err(AlgebraError::PositiveDimensional) => return Err(SingularityError::PositiveDimensional),
        Err(e) => return Err(e.into()),
    };
    let q = field.order();
    let mut seen: HashSet<(u64, Vec<Fe>)> = HashSet::new();
    let mut out = Vec::new();
    for sol in sols {
        let top = sol.field().clone();
        if seen.contains(&(top.order(), sol.coords.clone())) {
            continue;
        }
        let mut orbit = 0;
        let mut pt = sol.coords.clone();
        loop {
            seen.insert((top.order(), pt.clone()));
            orbit += 1;
            pt = pt.iter().map(|&c| top.pow(c, q)).collect();
            if pt == sol.coords {
                break;
            }
        }
        let e = Embedding::new(&field, &top)?;
        let coords: [Fe; 3] = [sol.coords[0], sol.coords[1], sol.coords[2]];
        out.push(Located { local: g.lift(&e).translate(&coords), orbit, coords, field: top });
    }
    Ok(out)
}

/// Number of irreducible components over the closure of the conic q = 0,
/// for a nonzero quadratic form q.
fn conic_components(q: &LocalPoly) -> Result<usize, SingularityError> {
    let f = q.field().clone();
    let grads = [q.derivative(0), q.derivative(1), q.derivative(2)];
    let mut points = 0usize;
    for chart in 0..3 {
        // chart: x_chart = 1 and earlier coordinates zero
        let one = MPoly::one(&f);
        let v = vars(&f);
        let images: [MPoly; 3] = std::array::from_fn(|i| if i == chart { one.clone() } else { v[i].clone() });
        let mut system: Vec<MPoly> = std::iter::once(q).chain(grads.iter()).map(|p| p.compose(&images)).collect();
        system.push(v[chart].clone());
        for earlier in 0..chart {
            system.push(v[earlier].clone());
        }
        match eliminate(&system, 3) {
            Ok(sols) => points += sols.len(),
            Err(AlgebraError::PositiveDimensional) => return Ok(1),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(if points == 1 { 2 } else { 1 })
}

/// Blow up the origin of a double point: the singular points of the strict
/// transform on the exceptional curve (with Frobenius orbit sizes) and the
/// number of exceptional curve components.
pub fn blow_up_once(f: &LocalPoly) -> Result<(Vec<(LocalPoly, usize)>, usize), SingularityError> {
    match f.order() {
        None => return Err(SingularityError::NotDoublePoint),
        Some(0) => return Err(SingularityError::NotOnSurface),
        Some(1) => return Err(SingularityError::AlreadySmooth),
        Some(2) => {}
        Some(_) => return Err(SingularityError::NotDoublePoint),
    }
    let field = f.field().clone();
    let components = conic_components(&f.homogeneous_part(2))?;
    let v = vars(&field);
    let mut children = Vec::new();
    for chart in 0..3 {
        let images: [MPoly; 3] = std::array::from_fn(|i| if i == chart { v[i].clone() } else { v[i].mul(&v[chart]) });
        let strict = f.compose(&images).div_var_power(chart, 2).expect("double point");
        // points on the exceptional divisor not already seen in earlier charts
        let mut extra = vec![v[chart].clone()];
        for earlier in 0..chart {
            extra.push(v[earlier].clone());
        }
        children.extend(singular_points_on(&strict, &extra)?.into_iter().map(|l| (l.local, l.orbit)));
    }
    Ok((children, components))
}

pub fn fingerprint(f: &LocalPoly) -> Result<Fingerprint, SingularityError> {
    fingerprint_at_depth(f, 0)
}

fn fingerprint_at_depth(f: &LocalPoly, depth: usize) -> Result<Fingerprint, SingularityError> {
    if depth > MAX_DEPTH {
        return Err(SingularityError::NotRdp);
    }
    let tjurina = tjurina_dimension(f)?.dimension;
    let (kids, components) = blow_up_once(f)?;
    let mut children = Vec::new();
    for (g, orbit) in kids {
        let fp = fingerprint_at_depth(&g, depth + 1)?;
        children.extend(std::iter::repeat_n(fp, orbit));
    }
    children.sort();
    Ok(Fingerprint { tjurina, components, children })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, terms: &[(i64, [u16; 3])]) -> LocalPoly {
        let f = Field::prime(p).unwrap();
        MPoly::from_terms(&f, terms.iter().map(|&(c, e)| (e, f.from_i64(c))))
    }

    #[test]
    fn a1_char2() {
        let f = poly(2, &[(1, [0, 0, 2]), (1, [1, 1, 0])]);
        let (kids, comps) = blow_up_once(&f).unwrap();
        assert!(kids.is_empty());
        assert_eq!(comps, 1);
    }

    #[test]
    fn smooth_rejected() {
        let f = poly(3, &[(1, [1, 0, 0]), (1, [0, 2, 0])]);
        assert!(matches!(blow_up_once(&f), Err(SingularityError::AlreadySmooth)));
    }

    #[test]
    fn e8_char2_has_one_child() {
        let f = poly(2, &[(1, [0, 0, 2]), (1, [3, 0, 0]), (1, [0, 5, 0])]);
        let (kids, comps) = blow_up_once(&f).unwrap();
        assert_eq!(comps, 1);
        assert_eq!(kids.len(), 1);
        assert_eq!(kids[0].1, 1);
        assert_eq!(fingerprint(&f).unwrap().rank(), 8);
    }

    #[test]
    fn a3_splits_into_two_lines() {
        let f = poly(5, &[(1, [1, 1, 0]), (1, [0, 0, 4])]);
        let fp = fingerprint(&f).unwrap();
        assert_eq!(fp.components, 2);
        assert_eq!(fp.rank(), 3);
    }
}
