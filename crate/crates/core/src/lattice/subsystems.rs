//! Root subsystems of E8 by the Borel–de Siebenthal recursion, with
//! quotient invariants and the torsion conditions.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::Serialize;

use super::ade::{AdeType, Dynkin, Letter};
use super::e8::{e8, Vec8};
use super::snf::smith_normal_form;
use super::LatticeError;

pub const ELLS: [u64; 4] = [2, 3, 5, 7];

/// One embedding shape of a root lattice in E8.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsystemClass {
    pub ade: AdeType,
    /// Indices into the E8 root list, one simple system of the subsystem.
    pub basis: Vec<usize>,
    pub free_rank: usize,
    /// Invariant factors of the torsion of E8/Γ, entries equal to 1 removed.
    pub torsion: Vec<i64>,
}

impl SubsystemClass {
    pub fn basis_vectors(&self) -> Vec<Vec8> {
        let e = e8();
        self.basis.iter().map(|&i| *e.root(i)).collect()
    }

    /// (E8+T[ℓ]): the ℓ-torsion of the quotient lies in (Z/ℓ)².
    pub fn satisfies_t_ell(&self, ell: u64) -> bool {
        self.torsion.iter().filter(|&&d| d % ell as i64 == 0).count() <= 2
    }

    /// (E8+T[p]): the p-torsion lies in Z/p, or the quotient is (Z/p)^n.
    /// Vacuous in characteristic 0.
    pub fn satisfies_t_p(&self, p: u64) -> bool {
        if p == 0 {
            return true;
        }
        let divisible = self.torsion.iter().filter(|&&d| d % p as i64 == 0).count();
        divisible <= 1 || (self.free_rank == 0 && self.torsion.iter().all(|&d| d == p as i64))
    }
}

/// Results of the three lattice conditions for one type and characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionFlags {
    pub e8: bool,
    pub t_ell2: bool,
    pub t_p: bool,
}

/// Invariants of Z^8 / span(basis), with the basis given in simple-root
/// coordinates of E8.
pub fn quotient_invariants(basis: &[Vec8]) -> Result<(usize, Vec<i64>), LatticeError> {
    let e = e8();
    let cols: Vec<Vec8> = basis
        .iter()
        .map(|v| match e.index_of(v) {
            Some(i) => *e.coords(i),
            None => coordinates(v),
        })
        .collect();
    let matrix: Vec<Vec<i64>> = (0..8).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let d = smith_normal_form(&matrix);
    if d.len() < basis.len() {
        return Err(LatticeError::NotABasis);
    }
    Ok((8 - d.len(), d.into_iter().filter(|&x| x != 1).collect()))
}

/// Coordinates in the simple-root basis of an arbitrary lattice vector
/// (doubled model): c = C^{-1} b with b_i = (α_i, v).
fn coordinates(v: &Vec8) -> Vec8 {
    let e = e8();
    let simple = e.simple_roots();
    let b: Vec8 = std::array::from_fn(|i| super::e8::dot(e.root(simple[i]), v));
    let inv = cartan_inverse();
    let c: Vec8 = std::array::from_fn(|i| (0..8).map(|j| inv[i][j] * b[j]).sum());
    let mut rest = *v;
    for (i, &s) in simple.iter().enumerate() {
        for k in 0..8 {
            rest[k] -= c[i] * e.root(s)[k];
        }
    }
    assert!(rest.iter().all(|&x| x == 0), "vector outside the E8 lattice");
    c
}

/// Adjugate of the Cartan matrix, which is its inverse since det C = 1.
fn cartan_inverse() -> [[i64; 8]; 8] {
    let e = e8();
    let simple = e.simple_roots();
    let c: Vec<Vec<i64>> = (0..8).map(|i| (0..8).map(|j| e.inner(simple[i], simple[j])).collect()).collect();
    let mut inv = [[0i64; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let minor: Vec<Vec<i64>> =
                (0..8).filter(|&r| r != j).map(|r| (0..8).filter(|&s| s != i).map(|s| c[r][s]).collect()).collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = sign * det(&minor);
        }
    }
    inv
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Connected components of the Dynkin diagram of a simple system.
fn components(basis: &[usize]) -> Vec<Vec<usize>> {
    let e = e8();
    let mut seen = vec![false; basis.len()];
    let mut out = Vec::new();
    for start in 0..basis.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![basis[start]];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..basis.len() {
                if !seen[j] && e.inner(basis[i], basis[j]) != 0 {
                    seen[j] = true;
                    comp.push(basis[j]);
                    stack.push(j);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Dynkin type of a connected simply-laced diagram.
fn component_type(comp: &[usize]) -> Result<Dynkin, LatticeError> {
    let e = e8();
    let n = comp.len();
    let adj = |i: usize, j: usize| i != j && e.inner(comp[i], comp[j]) != 0;
    let degree = |i: usize| (0..n).filter(|&j| adj(i, j)).count();
    let edges: usize = (0..n).map(degree).sum::<usize>() / 2;
    if edges + 1 != n || (0..n).any(|i| e.inner(comp[i], comp[i]) != 2) {
        return Err(LatticeError::BadType("not a Dynkin diagram".into()));
    }
    let Some(branch) = (0..n).find(|&i| degree(i) >= 3) else {
        return Dynkin::new(Letter::A, n as u32);
    };
    if degree(branch) != 3 || (0..n).filter(|&i| degree(i) >= 3).count() != 1 {
        return Err(LatticeError::BadType("not a Dynkin diagram".into()));
    }
    let mut arms: Vec<u32> = Vec::new();
    for start in (0..n).filter(|&j| adj(branch, j)) {
        let (mut prev, mut cur, mut len) = (branch, start, 1);
        loop {
            let next = (0..n).find(|&j| j != prev && adj(cur, j));
            match next {
                Some(nx) => {
                    prev = cur;
                    cur = nx;
                    len += 1;
                }
                None => break,
            }
        }
        arms.push(len);
    }
    arms.sort();
    match arms.as_slice() {
        [1, 1, k] => Dynkin::new(Letter::D, k + 3),
        [1, 2, 2] => Dynkin::new(Letter::E, 6),
        [1, 2, 3] => Dynkin::new(Letter::E, 7),
        [1, 2, 4] => Dynkin::new(Letter::E, 8),
        _ => Err(LatticeError::BadType("not a Dynkin diagram".into())),
    }
}

/// Type of the lattice spanned by a simple system of roots.
pub fn type_of_basis(basis: &[usize]) -> Result<AdeType, LatticeError> {
    let comps = components(basis);
    let types = comps.iter().map(|c| component_type(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(AdeType::new(types))
}

/// The highest root of the irreducible subsystem with simple system `comp`:
/// the unique root of the subsystem pairing non-negatively with every
/// simple root.
fn highest_root(comp: &[usize]) -> usize {
    let e = e8();
    let mut all: BTreeSet<usize> = comp.iter().copied().collect();
    let mut queue: VecDeque<usize> = comp.iter().copied().collect();
    while let Some(r) = queue.pop_front() {
        for &a in comp {
            let s = e.reflect(a, r);
            if all.insert(s) {
                queue.push_back(s);
            }
        }
    }
    let dominant: Vec<usize> = all.into_iter().filter(|&r| comp.iter().all(|&a| e.inner(a, r) >= 0)).collect();
    assert_eq!(dominant.len(), 1, "irreducible root system has one dominant root");
    dominant[0]
}

/// Number of E8 roots in the rational span of the basis; distinguishes
/// shapes such as A7 inside E7 from A7 not inside E7.
fn saturation(basis: &[usize]) -> usize {
    let e = e8();
    let rank_of = |rows: &[Vec8]| -> usize {
        let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut rank = 0;
        for c in 0..8 {
            let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..m.len() {
                let (a, b) = (m[rank][c], m[i][c]);
                if b != 0 {
                    for k in 0..8 {
                        m[i][k] = m[i][k] * a - m[rank][k] * b;
                    }
                    let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x));
                    if g > 1 {
                        for x in m[i].iter_mut() {
                            *x /= g;
                        }
                    }
                }
            }
            rank += 1;
        }
        rank
    };
    let rows: Vec<Vec8> = basis.iter().map(|&i| *e.root(i)).collect();
    let r = rank_of(&rows);
    (0..e.roots().len())
        .filter(|&i| {
            let mut ext = rows.clone();
            ext.push(*e.root(i));
            rank_of(&ext) == r
        })
        .count()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn children(basis: &[usize]) -> Vec<Vec<usize>> {
    let e = e8();
    let mut out = Vec::new();
    for i in 0..basis.len() {
        let mut b = basis.to_vec();
        b.remove(i);
        if !b.is_empty() {
            out.push(b);
        }
    }
    for comp in components(basis) {
        let rest: Vec<usize> = basis.iter().copied().filter(|r| !comp.contains(r)).collect();
        let mut affine = comp.clone();
        affine.push(e.negate(highest_root(&comp)));
        for drop in 0..affine.len() - 1 {
            let mut b = rest.clone();
            b.extend(affine.iter().enumerate().filter(|&(k, _)| k != drop).map(|(_, &r)| r));
            out.push(b);
        }
    }
    out
}

fn enumerate() -> Vec<SubsystemClass> {
    let e = e8();
    let start: Vec<usize> = e.simple_roots().to_vec();
    let mut seen: HashSet<(AdeType, Vec<i64>, usize)> = HashSet::new();
    let mut classes: Vec<SubsystemClass> = Vec::new();
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(basis) = queue.pop_front() {
        let ade = type_of_basis(&basis).expect("recursion keeps simple systems");
        let vecs: Vec<Vec8> = basis.iter().map(|&i| *e.root(i)).collect();
        let (free_rank, torsion) = quotient_invariants(&vecs).expect("simple systems are independent");
        let key = (ade.clone(), torsion.clone(), saturation(&basis));
        if !seen.insert(key) {
            continue;
        }
        if !classes.iter().any(|c| c.ade == ade && c.torsion == torsion) {
            classes.push(SubsystemClass { ade, basis: basis.clone(), free_rank, torsion });
        }
        queue.extend(children(&basis));
    }
    classes.sort_by(|a, b| b.ade.rank().cmp(&a.ade.rank()).then(a.ade.cmp(&b.ade)).then(a.torsion.cmp(&b.torsion)));
    classes
}

/// Every embedding shape of every root lattice in E8, computed once.
pub fn enumerate_subsystems() -> &'static [SubsystemClass] {
    static CELL: OnceLock<Vec<SubsystemClass>> = OnceLock::new();
    CELL.get_or_init(enumerate)
}

pub fn classes_of(ade: &AdeType) -> Vec<&'static SubsystemClass> {
    enumerate_subsystems().iter().filter(|c| &c.ade == ade).collect()
}

/// All types that embed in E8, each once.
pub fn embeddable_types() -> Vec<AdeType> {
    let mut out: Vec<AdeType> = Vec::new();
    for c in enumerate_subsystems() {
        if !out.contains(&c.ade) {
            out.push(c.ade.clone());
        }
    }
    out
}

pub fn check_conditions(ade: &AdeType, p: u64) -> ConditionFlags {
    if ade.is_empty() {
        return ConditionFlags { e8: true, t_ell2: true, t_p: true };
    }
    let classes = classes_of(ade);
    ConditionFlags {
        e8: !classes.is_empty(),
        t_ell2: classes.iter().any(|c| c.satisfies_t_ell(2)),
        t_p: classes.iter().any(|c| c.satisfies_t_p(p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> AdeType {
        s.parse().unwrap()
    }

    #[test]
    fn e8_itself() {
        let e = e8();
        let vecs: Vec<Vec8> = e.simple_roots().iter().map(|&i| *e.root(i)).collect();
        assert_eq!(quotient_invariants(&vecs).unwrap(), (0, vec![]));
        assert_eq!(type_of_basis(&e.simple_roots()).unwrap(), ty("E8"));
    }

    #[test]
    fn dependent_basis_rejected() {
        let e = e8();
        let a = e.simple_roots()[0];
        let v = vec![*e.root(a), e.root(a).map(|x| -x)];
        assert!(matches!(quotient_invariants(&v), Err(LatticeError::NotABasis)));
    }

    #[test]
    fn adjugate_inverts_cartan() {
        let e = e8();
        let s = e.simple_roots();
        let inv = cartan_inverse();
        for i in 0..8 {
            for j in 0..8 {
                let v: i64 = (0..8).map(|k| inv[i][k] * e.inner(s[k], s[j])).sum();
                assert_eq!(v, (i == j) as i64);
            }
        }
    }
}
