//! Resultants of sparse multivariate polynomials with respect to one
//! variable: subresultant pseudo-remainder sequence, with a fraction-free
//! Sylvester determinant as fallback.

use super::field::Fe;
use super::mpoly::MPoly;

fn trim(v: &mut Vec<MPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn lc(v: &[MPoly]) -> &MPoly {
    v.last().expect("nonzero polynomial")
}

fn pow(p: &MPoly, e: usize) -> MPoly {
    p.pow(e as u32)
}

/// lc(b)^(deg a - deg b + 1) * a mod b.
fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let mut r: Vec<MPoly> = a.to_vec();
    let l = lc(b).clone();
    let mut steps = a.len() - b.len() + 1;
    while r.len() > db && !r.is_empty() {
        let c = lc(&r).clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x = x.mul(&l);
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&c.mul(bj));
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let k = pow(&l, steps);
        for x in r.iter_mut() {
            *x = x.mul(&k);
        }
    }
    r
}

/// Resultant of `f` and `g` with respect to variable `var`. Returns `None`
/// only if an exact division in both schemes fails, which indicates a bug.
pub fn resultant(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    subresultant(f, g, var).or_else(|| sylvester_resultant(f, g, var)).expect("resultant exact divisions")
}

pub fn subresultant(f: &MPoly, g: &MPoly, var: usize) -> Option<MPoly> {
    let field = f.field().clone();
    let zero = MPoly::zero(&field);
    if f.is_zero() || g.is_zero() {
        return Some(zero);
    }
    let mut a = f.coefficients_in(var);
    let mut b = g.coefficients_in(var);
    let mut s_neg = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s_neg = true;
        }
    }
    let sign = |p: MPoly, neg: bool| if neg { p.neg() } else { p };
    let da = a.len() - 1;
    if b.len() == 1 {
        return Some(sign(pow(&b[0], da), s_neg));
    }
    let mut g_ = MPoly::one(&field);
    let mut h = MPoly::one(&field);
    loop {
        let dega = a.len() - 1;
        let degb = b.len() - 1;
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            s_neg = !s_neg;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return Some(zero);
        }
        let denom = g_.mul(&pow(&h, delta));
        b = r.iter().map(|c| c.div_exact(&denom)).collect::<Option<Vec<_>>>()?;
        g_ = lc(&a).clone();
        h = if delta == 0 { h } else { pow(&g_, delta).div_exact(&pow(&h, delta - 1))? };
        if b.len() == 1 {
            break;
        }
    }
    let dega = a.len() - 1;
    let num = pow(&b[0], dega);
    let res = if dega == 0 { num } else { num.div_exact(&pow(&h, dega - 1))? };
    Some(sign(res, s_neg))
}

/// Determinant of the Sylvester matrix, by Bareiss elimination.
pub fn sylvester_resultant(f: &MPoly, g: &MPoly, var: usize) -> Option<MPoly> {
    let field = f.field().clone();
    if f.is_zero() || g.is_zero() {
        return Some(MPoly::zero(&field));
    }
    let a = f.coefficients_in(var);
    let b = g.coefficients_in(var);
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return Some(MPoly::one(&field));
    }
    let mut mat = vec![vec![MPoly::zero(&field); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    let mut negate = false;
    let mut prev = MPoly::one(&field);
    for k in 0..size {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&i| !mat[i][k].is_zero()) else {
                return Some(MPoly::zero(&field));
            };
            mat.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = v.div_exact(&prev)?;
            }
            mat[i][k] = MPoly::zero(&field);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Some(if negate { det.neg() } else { det })
}

/// Evaluate a coefficient-list polynomial; helper for tests and callers that
/// hold constants.
pub fn constant_value(p: &MPoly) -> Option<Fe> {
    if p.is_zero() {
        return Some(Fe::ZERO);
    }
    p.is_constant().then(|| p.coeff(&[0, 0, 0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;

    #[test]
    fn schemes_agree() {
        let f = Field::prime(7).unwrap();
        let x = MPoly::var(&f, 0);
        let y = MPoly::var(&f, 1);
        let z = MPoly::var(&f, 2);
        let c = |n: i64| MPoly::constant(&f, f.from_i64(n));
        let p = z.pow(3).mul(&x).add(&z.mul(&y)).add(&c(3));
        let q = z.pow(2).add(&x.mul(&y).mul(&z)).sub(&y.pow(2));
        let r1 = subresultant(&p, &q, 2).unwrap();
        let r2 = sylvester_resultant(&p, &q, 2).unwrap();
        assert_eq!(r1, r2);
        // degrees 3 and 2 in z: swapping multiplies by (-1)^6
        assert_eq!(subresultant(&q, &p, 2).unwrap(), r1);
    }

    #[test]
    fn common_factor_gives_zero() {
        let f = Field::prime(5).unwrap();
        let x = MPoly::var(&f, 0);
        let y = MPoly::var(&f, 1);
        let common = y.sub(&x);
        let p = common.mul(&y.add(&MPoly::one(&f)));
        let q = common.mul(&y.pow(2).add(&x));
        assert!(resultant(&p, &q, 1).is_zero());
    }

    #[test]
    fn univariate_resultant_is_product_of_differences() {
        let f = Field::prime(11).unwrap();
        let y = MPoly::var(&f, 1);
        let c = |n: i64| MPoly::constant(&f, f.from_i64(n));
        // (y-1)(y-2) and (y-3): Res = (1-3)(2-3) = 2
        let p = y.sub(&c(1)).mul(&y.sub(&c(2)));
        let q = y.sub(&c(3));
        assert_eq!(constant_value(&resultant(&p, &q, 1)), Some(f.from_i64(2)));
    }
}
