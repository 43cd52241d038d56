//! Finite fields GF(p^k) with a canonical choice of modulus.
//!
//! An element of GF(p^k) = GF(p)[X]/(m) is encoded as the integer
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where `c_0 + c_1 X + ...` is its
//! reduced representative. The modulus `m` is the irreducible monic of degree
//! `k` whose lower coefficients have the smallest such encoding.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::AlgebraError;

/// Largest extension degree over the prime field that may be constructed.
pub const MAX_DEGREE: u32 = 12;

const TABLE_LIMIT: u64 = 1 << 17;

/// A field element, encoded in base p (see module docs).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

struct FieldData {
    p: u64,
    degree: u32,
    order: u64,
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// Handle to GF(p^k). Cheap to clone; equal handles describe the same field.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.degree == other.0.degree
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.degree == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.degree)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn cache() -> &'static Mutex<HashMap<(u64, u32), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field, AlgebraError> {
        Field::new(p, 1)
    }

    /// GF(p^degree), built once per process and shared afterwards.
    pub fn new(p: u64, degree: u32) -> Result<Field, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if degree == 0 || degree > MAX_DEGREE {
            return Err(AlgebraError::ExtensionBudget);
        }
        let order = (p as u128).checked_pow(degree).filter(|&q| q < (1u128 << 62));
        let Some(order) = order else {
            return Err(AlgebraError::FieldTooLarge);
        };
        let order = order as u64;
        if let Some(f) = cache().lock().expect("field cache poisoned").get(&(p, degree)) {
            return Ok(f.clone());
        }
        let modulus = if degree == 1 { vec![0, 1] } else { smallest_irreducible(p, degree as usize) };
        let mut data = FieldData { p, degree, order, modulus, tables: None };
        if degree > 1 && order <= TABLE_LIMIT {
            data.tables = Some(build_tables(&data));
        }
        let field = Field(Arc::new(data));
        cache().lock().expect("field cache poisoned").entry((p, degree)).or_insert_with(|| field.clone());
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// The class of X in GF(p)[X]/(m). Equals 0 for the prime field.
    pub fn generator(&self) -> Fe {
        if self.0.degree == 1 {
            Fe::ZERO
        } else {
            Fe(self.0.p)
        }
    }

    pub fn from_i64(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u64)
    }

    /// Element with the given coordinates in the power basis of the generator.
    pub fn from_digits(&self, digits: &[u64]) -> Fe {
        let p = self.0.p;
        let mut acc = 0u64;
        for &d in digits.iter().take(self.0.degree as usize).rev() {
            acc = acc * p + d % p;
        }
        Fe(acc)
    }

    pub fn digits(&self, a: Fe) -> Vec<u64> {
        let p = self.0.p;
        let mut v = Vec::with_capacity(self.0.degree as usize);
        let mut x = a.0;
        for _ in 0..self.0.degree {
            v.push(x % p);
            x /= p;
        }
        v
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.0.order
    }

    /// Elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.order).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let d = &*self.0;
        if d.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if d.degree == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= d.p { s - d.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut acc = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            let s = (x % d.p + y % d.p) % d.p;
            acc += s * place;
            place = place.wrapping_mul(d.p);
            x /= d.p;
            y /= d.p;
        }
        Fe(acc)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let d = &*self.0;
        if d.p == 2 || a.0 == 0 {
            return a;
        }
        if d.degree == 1 {
            return Fe(d.p - a.0);
        }
        let mut x = a.0;
        let mut acc = 0u64;
        let mut place = 1u64;
        while x > 0 {
            let c = x % d.p;
            acc += ((d.p - c) % d.p) * place;
            place = place.wrapping_mul(d.p);
            x /= d.p;
        }
        Fe(acc)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let d = &*self.0;
        if d.degree == 1 {
            return Fe(((a.0 as u128 * b.0 as u128) % d.p as u128) as u64);
        }
        if let Some(t) = &d.tables {
            let l = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            return Fe(t.exp[l]);
        }
        slow_mul(d, a.0, b.0)
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(!a.is_zero(), "inverse of zero in {}", self);
        let d = &*self.0;
        if let Some(t) = &d.tables {
            let n = d.order as usize - 1;
            let l = t.log[a.0 as usize] as usize;
            return Fe(t.exp[(n - l) % n]);
        }
        self.pow(a, d.order - 2)
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.0.p)
    }

    /// The unique p-th root (inverse Frobenius).
    pub fn pth_root(&self, a: Fe) -> Fe {
        self.pow(a, self.0.order / self.0.p)
    }

    /// Square root in characteristic 2 (always exists and is unique).
    pub fn sqrt_char2(&self, a: Fe) -> Fe {
        debug_assert_eq!(self.0.p, 2);
        self.pth_root(a)
    }

    /// Degree over GF(p) of the smallest subfield containing `a`.
    pub fn element_degree(&self, a: Fe) -> u32 {
        let mut x = self.frobenius(a);
        let mut d = 1;
        while x != a {
            x = self.frobenius(x);
            d += 1;
        }
        d
    }

    pub fn format(&self, a: Fe) -> String {
        if self.0.degree == 1 {
            return a.0.to_string();
        }
        let digits = self.digits(a);
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{}", i),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{}{}", c, mono),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Elements of GF(p^sub) inside this field, `sub` dividing the degree.
    pub fn subfield_elements(&self, sub: u32) -> Vec<Fe> {
        let q = self.0.p.pow(sub);
        self.elements().filter(|&a| self.pow(a, q) == a).collect()
    }
}

fn digits_of(p: u64, mut x: u64, k: usize) -> [u64; MAX_DEGREE as usize] {
    let mut out = [0u64; MAX_DEGREE as usize];
    for slot in out.iter_mut().take(k) {
        *slot = x % p;
        x /= p;
    }
    out
}

fn slow_mul(d: &FieldData, a: u64, b: u64) -> Fe {
    let k = d.degree as usize;
    let p = d.p;
    let da = digits_of(p, a, k);
    let db = digits_of(p, b, k);
    let mut prod = [0u64; 2 * MAX_DEGREE as usize];
    for i in 0..k {
        if da[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for i in (k..2 * k - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            let m = d.modulus[j];
            prod[i - k + j] = (prod[i - k + j] + (p - c) * m) % p;
        }
    }
    let mut acc = 0u64;
    for i in (0..k).rev() {
        acc = acc * p + prod[i];
    }
    Fe(acc)
}

fn build_tables(d: &FieldData) -> Tables {
    let n = d.order - 1;
    let factors = prime_factors(n);
    let slow_pow = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = slow_mul(d, acc, base).0;
            }
            base = slow_mul(d, base, base).0;
            e >>= 1;
        }
        acc
    };
    let g = (2..d.order)
        .find(|&c| factors.iter().all(|&r| slow_pow(c, n / r) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u64; 2 * n as usize];
    let mut log = vec![0u32; d.order as usize];
    let mut x = 1u64;
    for i in 0..n as usize {
        exp[i] = x;
        exp[i + n as usize] = x;
        log[x as usize] = i as u32;
        x = slow_mul(d, x, g).0;
    }
    Tables { exp, log }
}

// Dense polynomial helpers over GF(p), used only to pick moduli.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = mod_inv(m[dm], p);
    while r.len() > dm {
        let c = r.last().copied().unwrap_or(0) * inv_lead % p;
        let shift = r.len() - 1 - dm;
        for (j, &mj) in m.iter().enumerate() {
            r[shift + j] = (r[shift + j] + (p - c) * mj % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// x^(p^i) mod m for i = 0..=k.
fn frobenius_orbit(m: &[u64], p: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = vec![poly_rem(&[0, 1], m, p)];
    for _ in 0..k {
        let last = out.last().expect("nonempty");
        out.push(poly_powmod(last, p, m, p));
    }
    out
}

/// Rabin's irreducibility test over GF(p) for a monic polynomial of degree k.
pub(crate) fn is_irreducible_mod_p(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    let orbit = frobenius_orbit(m, p, k);
    let x = poly_rem(&[0, 1], m, p);
    if orbit[k] != x {
        return false;
    }
    for q in prime_factors(k as u64) {
        let mut h = orbit[k / q as usize].clone();
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        let g = poly_gcd(m, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let count = p.pow(k as u32);
    for code in 0..count {
        let mut m: Vec<u64> = digits_of(p, code, k)[..k].to_vec();
        m.push(1);
        if is_irreducible_mod_p(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
