//! Factorization of univariate polynomials over GF(q): squarefree
//! decomposition, distinct-degree splitting, then Cantor–Zassenhaus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Fe, Field};
use super::poly::UPoly;
use super::AlgebraError;

/// `f = unit * prod(factor^multiplicity)` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(UPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &Field) -> UPoly {
        self.factors.iter().fold(UPoly::constant(field, self.unit), |acc, (g, e)| acc.mul(&g.pow(*e as u64)))
    }
}

pub fn factor_univariate(f: &UPoly) -> Result<Factorization, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let unit = f.lead();
    let mut factors: Vec<(UPoly, u32)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (part, mult) in squarefree(&f.monic()) {
        for (g, d) in distinct_degree(&part) {
            for h in equal_degree(&g, d, &mut rng) {
                match factors.iter_mut().find(|(q, _)| *q == h) {
                    Some(entry) => entry.1 += mult,
                    None => factors.push((h, mult)),
                }
            }
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { unit, factors })
}

/// Squarefree decomposition of a monic polynomial: pairs (part, multiplicity)
/// with pairwise coprime squarefree parts.
pub fn squarefree(f: &UPoly) -> Vec<(UPoly, u32)> {
    let field = f.field().clone();
    let p = field.characteristic() as u32;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree(&f.pth_root()) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut r = f.gcd(&df);
    let mut c = f.div_exact(&r).expect("gcd divides");
    let mut i = 1u32;
    while c.deg() > 0 {
        let y = r.gcd(&c);
        let fac = c.div_exact(&y).expect("gcd divides");
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        r = r.div_exact(&y).expect("gcd divides");
        c = y;
        i += 1;
    }
    if r.deg() > 0 {
        for (g, m) in squarefree(&r.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Split a monic squarefree polynomial into products of irreducibles of
/// equal degree: pairs (product, degree).
pub fn distinct_degree(f: &UPoly) -> Vec<(UPoly, usize)> {
    let field = f.field().clone();
    let q = field.order();
    let x = UPoly::x(&field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1usize;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg() > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Split a monic squarefree product of irreducibles of degree `d`.
pub fn equal_degree(f: &UPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    loop {
        let a = random_poly(&field, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = splitting_witness(&a, f, d);
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

fn random_poly(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> UPoly {
    let q = field.order();
    UPoly::new(field, (0..n).map(|_| Fe(rng.gen_range(0..q))).collect())
}

/// Polynomial whose gcd with `f` is a proper factor with probability ~1/2.
fn splitting_witness(a: &UPoly, f: &UPoly, d: usize) -> UPoly {
    let field = f.field();
    let q = field.order();
    if field.characteristic() == 2 {
        // absolute trace of a over GF(2^{k d})
        let steps = field.degree() as usize * d;
        let mut t = a.rem(f);
        let mut acc = t.clone();
        for _ in 1..steps {
            t = t.mul_mod(&t, f);
            acc = acc.add(&t);
        }
        acc
    } else {
        // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q - 1)/2)
        let mut conj = a.rem(f);
        let mut norm = conj.clone();
        for _ in 1..d {
            conj = conj.pow_mod(q, f);
            norm = norm.mul_mod(&conj, f);
        }
        norm.pow_mod((q - 1) / 2, f).sub(&UPoly::one(field))
    }
}

/// Distinct roots in the coefficient field, sorted by encoding.
pub fn roots(f: &UPoly) -> Vec<Fe> {
    if f.is_zero() {
        return Vec::new();
    }
    let field = f.field().clone();
    let x = UPoly::x(&field);
    let m = f.monic();
    if m.deg() == 0 {
        return Vec::new();
    }
    let split = x.pow_mod(field.order(), &m).sub(&x).gcd(&m);
    if split.deg() == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out: Vec<Fe> = equal_degree(&split, 1, &mut rng).into_iter().map(|g| field.neg(g.coeff(0))).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares_mod_5() {
        let f = Field::prime(5).unwrap();
        let u = UPoly::from_i64(&f, &[-1, 0, 1]);
        let fac = factor_univariate(&u).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.contains(&(UPoly::from_i64(&f, &[-1, 1]), 1)));
        assert!(fac.factors.contains(&(UPoly::from_i64(&f, &[1, 1]), 1)));
    }

    #[test]
    fn irreducible_cubic_mod_2() {
        let f = Field::prime(2).unwrap();
        let u = UPoly::from_i64(&f, &[1, 1, 0, 1]);
        assert_eq!(factor_univariate(&u).unwrap().factors, vec![(u, 1)]);
    }

    #[test]
    fn non_residue_stays_irreducible() {
        let f = Field::prime(5).unwrap();
        let squares: Vec<u64> = (0..5u64).map(|a| a * a % 5).collect();
        assert!(!squares.contains(&2));
        let u = UPoly::from_i64(&f, &[-2, 0, 1]);
        assert_eq!(factor_univariate(&u).unwrap().factors, vec![(u, 1)]);
    }

    #[test]
    fn pth_powers_and_repeated_factors() {
        let f = Field::new(2, 2).unwrap();
        let a = UPoly::from_i64(&f, &[1, 1]);
        let b = UPoly::from_i64(&f, &[1, 1, 0, 1]);
        let u = a.pow(6).mul(&b.pow(3));
        let fac = factor_univariate(&u).unwrap();
        assert_eq!(fac.expand(&f), u);
        let mults: Vec<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![6, 3]);
    }

    #[test]
    fn zero_is_rejected() {
        let f = Field::prime(3).unwrap();
        assert!(matches!(factor_univariate(&UPoly::zero(&f)), Err(AlgebraError::ZeroPolynomial)));
    }

    #[test]
    fn roots_agree_with_scan() {
        let f = Field::new(3, 2).unwrap();
        let u = UPoly::from_i64(&f, &[1, 0, 1]).mul(&UPoly::from_i64(&f, &[2, 1]));
        let scan: Vec<Fe> = f.elements().filter(|&a| u.eval(a).is_zero()).collect();
        assert_eq!(roots(&u), scan);
    }
}
