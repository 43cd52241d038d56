//! Tate's algorithm over the local ring k[u]_(u), with the coefficients kept
//! as exact polynomials in the uniformizer u.

use crate::algebra::{eliminate, roots, Fe, Field, MPoly, UPoly};

use super::{FiberError, KodairaType};

/// A Weierstrass model [a1, a2, a3, a4, a6] over k[u].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModel {
    pub field: Field,
    pub a: [UPoly; 5],
}

/// Valuation of a polynomial in u, with v(0) = ∞.
fn val(f: &UPoly) -> u32 {
    f.valuation().map_or(u32::MAX, |v| v as u32)
}

impl LocalModel {
    pub fn new(field: &Field, a: [UPoly; 5]) -> LocalModel {
        LocalModel { field: field.clone(), a }
    }

    fn int(&self, n: i64) -> Fe {
        self.field.from_i64(n)
    }

    fn c(&self, i: usize, k: usize) -> Fe {
        self.a[i].coeff(k)
    }

    pub fn b_invariants(&self) -> [UPoly; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1.mul(a1).add(&a2.scale(self.int(4)));
        let b4 = a4.scale(self.int(2)).add(&a1.mul(a3));
        let b6 = a3.mul(a3).add(&a6.scale(self.int(4)));
        let b8 = a1
            .mul(a1)
            .mul(a6)
            .add(&a2.mul(a6).scale(self.int(4)))
            .sub(&a1.mul(a3).mul(a4))
            .add(&a2.mul(a3).mul(a3))
            .sub(&a4.mul(a4));
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> UPoly {
        let [b2, b4, b6, b8] = self.b_invariants();
        b2.mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&b4.pow(3).scale(self.int(8)))
            .sub(&b6.mul(&b6).scale(self.int(27)))
            .add(&b2.mul(&b4).mul(&b6).scale(self.int(9)))
    }

    /// Substitute x = x' + r, y = y' + s x' + t.
    pub fn transform(&self, r: &UPoly, s: &UPoly, t: &UPoly) -> LocalModel {
        let [a1, a2, a3, a4, a6] = &self.a;
        let n = |k: i64| self.int(k);
        let na1 = a1.add(&s.scale(n(2)));
        let na2 = a2.sub(&s.mul(a1)).add(&r.scale(n(3))).sub(&s.mul(s));
        let na3 = a3.add(&r.mul(a1)).add(&t.scale(n(2)));
        let na4 = a4
            .sub(&s.mul(a3))
            .add(&r.mul(a2).scale(n(2)))
            .sub(&t.add(&r.mul(s)).mul(a1))
            .add(&r.mul(r).scale(n(3)))
            .sub(&s.mul(t).scale(n(2)));
        let na6 = a6
            .add(&r.mul(a4))
            .add(&r.mul(r).mul(a2))
            .add(&r.pow(3))
            .sub(&t.mul(a3))
            .sub(&t.mul(t))
            .sub(&r.mul(t).mul(a1));
        LocalModel { field: self.field.clone(), a: [na1, na2, na3, na4, na6] }
    }

    /// The cubic y² + a1 xy + a3 y − x³ − a2 x² − a4 x − a6 at (x, y, u).
    pub fn eval(&self, x: Fe, y: Fe, u: Fe) -> Fe {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a.clone().map(|p| p.eval(u));
        let lhs = f.add(f.add(f.square(y), f.mul(f.mul(a1, x), y)), f.mul(a3, y));
        let x2 = f.square(x);
        let rhs = [f.mul(x2, x), f.mul(a2, x2), f.mul(a4, x), a6].into_iter().fold(Fe::ZERO, |acc, v| f.add(acc, v));
        f.sub(lhs, rhs)
    }

    fn monomial(&self, c: Fe, k: usize) -> UPoly {
        UPoly::monomial(&self.field, c, k)
    }

    fn zero(&self) -> UPoly {
        UPoly::zero(&self.field)
    }

    /// Divide aᵢ by u^i.
    fn rescale(&self) -> Option<LocalModel> {
        let weights = [1usize, 2, 3, 4, 6];
        let mut a = self.a.clone();
        for (p, &w) in a.iter_mut().zip(&weights) {
            if p.is_zero() {
                continue;
            }
            if p.valuation()? < w {
                return None;
            }
            *p = UPoly::new(&self.field, p.coeffs()[w..].to_vec());
        }
        Some(LocalModel { field: self.field.clone(), a })
    }

    /// The singular point of the reduction mod u.
    fn reduced_singular_point(&self) -> Result<(Fe, Fe), FiberError> {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = [0, 1, 2, 3, 4].map(|i| self.c(i, 0));
        let x = MPoly::var(f, 0);
        let y = MPoly::var(f, 1);
        let k = |c: Fe| MPoly::constant(f, c);
        let cubic = y
            .mul(&y)
            .add(&k(a1).mul(&x).mul(&y))
            .add(&k(a3).mul(&y))
            .sub(&x.pow(3))
            .sub(&k(a2).mul(&x).mul(&x))
            .sub(&k(a4).mul(&x))
            .sub(&k(a6));
        let system = [cubic.clone(), cubic.derivative(0), cubic.derivative(1)];
        let sols = eliminate(&system, 2)?;
        match sols.as_slice() {
            [s] if s.tower.levels().len() == 1 => Ok((s.coords[0], s.coords[1])),
            _ => Err(FiberError::Internal("reduction has no unique rational singular point".to_string())),
        }
    }
}

/// A root of multiplicity at least two of a nonzero polynomial over a perfect
/// field, with its multiplicity.
fn repeated_root(p: &UPoly) -> Option<(Fe, usize)> {
    let d = p.derivative();
    let g = if d.is_zero() { p.clone() } else { p.gcd(&d) };
    if g.deg() == 0 {
        return None;
    }
    let r = *roots(&g).first()?;
    let lin = UPoly::new(p.field(), vec![p.field().neg(r), Fe::ONE]);
    let mut m = 0;
    let mut q = p.clone();
    while let Some(next) = q.div_exact(&lin) {
        m += 1;
        q = next;
    }
    Some((r, m))
}

/// Double root of a X² + b X + c with a ≠ 0, if any.
fn double_root(field: &Field, a: Fe, b: Fe, c: Fe) -> Option<Fe> {
    repeated_root(&UPoly::new(field, vec![c, b, a])).map(|(r, _)| r)
}

const MAX_RESCALES: usize = 5;
const MAX_STAR_STEPS: u32 = 24;

/// Run Tate's algorithm; returns the Kodaira type and the valuation of the
/// discriminant of the minimal model.
pub fn tate_local(model: &LocalModel) -> Result<(KodairaType, u32), FiberError> {
    let mut m = model.clone();
    let f = m.field.clone();
    let p = f.characteristic();
    for _ in 0..=MAX_RESCALES {
        let vd = val(&m.discriminant());
        if vd == u32::MAX {
            return Err(FiberError::SingularGenericFiber);
        }
        if vd == 0 {
            return Ok((KodairaType::I(0), 0));
        }
        let (x0, y0) = m.reduced_singular_point()?;
        m = m.transform(&UPoly::constant(&f, x0), &m.zero(), &UPoly::constant(&f, y0));
        let [b2, _, b6, b8] = m.b_invariants();
        if val(&b2) == 0 {
            return Ok((KodairaType::I(vd), vd));
        }
        if val(&m.a[4]) < 2 {
            return Ok((KodairaType::II, vd));
        }
        if val(&b8) < 3 {
            return Ok((KodairaType::III, vd));
        }
        if val(&b6) < 3 {
            return Ok((KodairaType::IV, vd));
        }
        let (s, t) = match p {
            2 => (UPoly::constant(&f, f.sqrt_char2(m.c(1, 0))), m.monomial(f.sqrt_char2(m.c(4, 2)), 1)),
            3 => (m.a[0].clone(), m.a[2].clone()),
            _ => {
                let h = f.inv(f.from_i64(2));
                (m.a[0].scale(f.neg(h)), m.a[2].scale(f.neg(h)))
            }
        };
        m = m.transform(&m.zero(), &s, &t);
        let need = [1u32, 1, 2, 2, 3];
        if m.a.iter().zip(need).any(|(a, n)| val(a) < n) {
            return Err(FiberError::Internal("additive reduction not in standard position".to_string()));
        }
        let cubic = UPoly::new(&f, vec![m.c(4, 3), m.c(3, 2), m.c(1, 1), Fe::ONE]);
        match repeated_root(&cubic) {
            None => return Ok((KodairaType::IStar(0), vd)),
            Some((r0, 2)) => {
                m = m.transform(&m.monomial(r0, 1), &m.zero(), &m.zero());
                return star_loop(m, vd);
            }
            Some((r0, _)) => {
                m = m.transform(&m.monomial(r0, 1), &m.zero(), &m.zero());
                match double_root(&f, Fe::ONE, m.c(2, 2), f.neg(m.c(4, 4))) {
                    None => return Ok((KodairaType::IVStar, vd)),
                    Some(y0) => m = m.transform(&m.zero(), &m.zero(), &m.monomial(y0, 2)),
                }
                if val(&m.a[3]) < 4 {
                    return Ok((KodairaType::IIIStar, vd));
                }
                if val(&m.a[4]) < 6 {
                    return Ok((KodairaType::IIStar, vd));
                }
                m = m.rescale().ok_or_else(|| FiberError::Internal("rescaling a non-minimal model".to_string()))?;
            }
        }
    }
    Err(FiberError::NotMinimal)
}

/// Subprocedure for I_n*: alternate quadratics in Y and X until one has
/// distinct roots.
fn star_loop(mut m: LocalModel, vd: u32) -> Result<(KodairaType, u32), FiberError> {
    let f = m.field.clone();
    let (mut mx, mut my) = (2usize, 2usize);
    let mut n = 1;
    while n <= MAX_STAR_STEPS {
        match double_root(&f, Fe::ONE, m.c(2, my), f.neg(m.c(4, mx + my))) {
            None => return Ok((KodairaType::IStar(n), vd)),
            Some(y0) => m = m.transform(&m.zero(), &m.zero(), &m.monomial(y0, my)),
        }
        my += 1;
        n += 1;
        match double_root(&f, m.c(1, 1), m.c(3, mx + 1), m.c(4, mx + my)) {
            None => return Ok((KodairaType::IStar(n), vd)),
            Some(x0) => m = m.transform(&m.monomial(x0, mx), &m.zero(), &m.zero()),
        }
        mx += 1;
        n += 1;
    }
    Err(FiberError::Internal("I_n* subprocedure did not terminate".to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_poly(f: &Field, rng: &mut ChaCha8Rng, deg: usize) -> UPoly {
        UPoly::new(f, (0..=deg).map(|_| Fe(rng.gen_range(0..f.order()))).collect())
    }

    #[test]
    fn transform_is_the_coordinate_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 5, 7] {
            let f = Field::new(p, 2).unwrap();
            for _ in 0..40 {
                let m = LocalModel::new(&f, [0, 1, 2, 3, 4].map(|_| rand_poly(&f, &mut rng, 3)));
                let [r, s, t] = [0, 1, 2].map(|_| rand_poly(&f, &mut rng, 2));
                let n = m.transform(&r, &s, &t);
                for _ in 0..5 {
                    let [x, y, u] = [0, 1, 2].map(|_| Fe(rng.gen_range(0..f.order())));
                    let (rv, sv, tv) = (r.eval(u), s.eval(u), t.eval(u));
                    let xx = f.add(x, rv);
                    let yy = f.add(f.add(y, f.mul(sv, x)), tv);
                    assert_eq!(n.eval(x, y, u), m.eval(xx, yy, u));
                }
                assert_eq!(n.discriminant(), m.discriminant());
            }
        }
    }

    fn model(p: u64, a: [&[i64]; 5]) -> LocalModel {
        let f = Field::prime(p).unwrap();
        LocalModel::new(&f, a.map(|c| UPoly::from_i64(&f, c)))
    }

    #[test]
    fn textbook_types() {
        // y² = x³ + u^k in characteristic 7
        let cases = [(1, KodairaType::II), (2, KodairaType::IV), (4, KodairaType::IVStar), (5, KodairaType::IIStar)];
        for (k, want) in cases {
            let mut a6 = vec![0i64; k + 1];
            a6[k] = 1;
            let m = model(7, [&[], &[], &[], &[], &a6]);
            assert_eq!(tate_local(&m).unwrap().0, want, "u^{}", k);
        }
        // y² = x³ + u x
        assert_eq!(tate_local(&model(7, [&[], &[], &[], &[0, 1], &[]])).unwrap().0, KodairaType::III);
        assert_eq!(tate_local(&model(7, [&[], &[], &[], &[0, 0, 0, 1], &[]])).unwrap().0, KodairaType::IIIStar);
        // y² = x³ + x² + u³
        assert_eq!(tate_local(&model(7, [&[], &[1], &[], &[], &[0, 0, 0, 1]])).unwrap().0, KodairaType::I(3));
        // y² = x³ + u x² + u³: P(T) = T³ + T² + 1 ... with a6,3 = 1
        assert_eq!(tate_local(&model(7, [&[], &[0, 1], &[], &[], &[0, 0, 0, 1]])).unwrap().0, KodairaType::IStar(0));
        // y² = x³ + u x² + u^(3+n): v(Δ) = 6 + n
        for n in 1..=4u32 {
            let mut a6 = vec![0i64; 4 + n as usize];
            a6[3 + n as usize] = 1;
            let m = model(7, [&[], &[0, 1], &[], &[], &a6]);
            assert_eq!(tate_local(&m).unwrap(), (KodairaType::IStar(n), 6 + n));
        }
    }

    #[test]
    fn non_minimal_models_rescale() {
        // y² = x³ + u^7: non-minimal, becomes y² = x³ + u (type II)
        let m = model(5, [&[], &[], &[], &[], &[0, 0, 0, 0, 0, 0, 0, 1]]);
        assert_eq!(tate_local(&m).unwrap(), (KodairaType::II, 2));
    }

    #[test]
    fn repeated_roots_in_small_characteristic() {
        let f = Field::prime(2).unwrap();
        // T²(T + 1)
        let p = UPoly::from_i64(&f, &[0, 0, 1, 1]);
        assert_eq!(repeated_root(&p), Some((Fe::ZERO, 2)));
        let f3 = Field::prime(3).unwrap();
        // (T − 1)³ = T³ − 1
        let q = UPoly::from_i64(&f3, &[-1, 0, 0, 1]);
        assert_eq!(repeated_root(&q), Some((Fe::ONE, 3)));
        assert_eq!(repeated_root(&UPoly::from_i64(&f3, &[0, 1, 0, 1])), None);
    }
}
