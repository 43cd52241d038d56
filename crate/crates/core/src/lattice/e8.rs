//! The E8 root system in the even coordinate model.
//!
//! Vectors are stored doubled, so every coordinate is an integer: the roots
//! are the 112 vectors with two entries ±2 and the 128 vectors with all
//! entries ±1 and an even number of minus signs. The positive definite
//! inner product of the true vectors is the integer dot product divided by 4.

use std::collections::HashMap;
use std::sync::OnceLock;

pub type Vec8 = [i64; 8];

pub struct E8 {
    roots: Vec<Vec8>,
    coords: Vec<Vec8>,
    index: HashMap<Vec8, usize>,
    simple: [usize; 8],
}

pub fn dot(a: &Vec8, b: &Vec8) -> i64 {
    let s: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    debug_assert_eq!(s % 4, 0);
    s / 4
}

fn simple_vectors() -> [Vec8; 8] {
    let mut out = [[0i64; 8]; 8];
    out[0] = [1, -1, -1, -1, -1, -1, -1, 1];
    out[1][0] = 2;
    out[1][1] = 2;
    out[2][0] = -2;
    out[2][1] = 2;
    for i in 3..8 {
        out[i][i - 2] = -2;
        out[i][i - 1] = 2;
    }
    out
}

fn all_roots() -> Vec<Vec8> {
    let mut roots = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            for si in [2, -2] {
                for sj in [2, -2] {
                    let mut v = [0; 8];
                    v[i] = si;
                    v[j] = sj;
                    roots.push(v);
                }
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let mut v = [1; 8];
            for (i, x) in v.iter_mut().enumerate() {
                if mask >> i & 1 == 1 {
                    *x = -1;
                }
            }
            roots.push(v);
        }
    }
    roots.sort();
    roots
}

/// Exact solution of C x = b for the E8 Cartan matrix (det 1).
fn solve_cartan(cartan: &[[i64; 8]; 8], b: &Vec8) -> Vec8 {
    let mut m: Vec<Vec<f64>> = (0..8)
        .map(|i| {
            let mut row: Vec<f64> = cartan[i].iter().map(|&x| x as f64).collect();
            row.push(b[i] as f64);
            row
        })
        .collect();
    for c in 0..8 {
        let piv = (c..8).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs())).expect("rows left");
        m.swap(c, piv);
        for r in 0..8 {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..9 {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    let mut x = [0i64; 8];
    for i in 0..8 {
        x[i] = (m[i][8] / m[i][i]).round() as i64;
    }
    x
}

impl E8 {
    fn build() -> E8 {
        let roots = all_roots();
        assert_eq!(roots.len(), 240);
        let index: HashMap<Vec8, usize> = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let sv = simple_vectors();
        let simple = sv.map(|v| index[&v]);
        let mut cartan = [[0i64; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                cartan[i][j] = dot(&sv[i], &sv[j]);
            }
        }
        let coords: Vec<Vec8> = roots
            .iter()
            .map(|r| {
                let b: Vec8 = std::array::from_fn(|i| dot(&sv[i], r));
                let x = solve_cartan(&cartan, &b);
                let back: Vec8 = std::array::from_fn(|k| (0..8).map(|i| x[i] * sv[i][k]).sum());
                assert_eq!(&back, r, "simple-root coordinates must be exact");
                x
            })
            .collect();
        E8 { roots, coords, index, simple }
    }

    pub fn roots(&self) -> &[Vec8] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Vec8 {
        &self.roots[i]
    }

    /// Coordinates of root `i` in the basis of simple roots.
    pub fn coords(&self, i: usize) -> &Vec8 {
        &self.coords[i]
    }

    pub fn index_of(&self, v: &Vec8) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn simple_roots(&self) -> [usize; 8] {
        self.simple
    }

    /// Positive definite inner product of roots `i` and `j`.
    pub fn inner(&self, i: usize, j: usize) -> i64 {
        dot(&self.roots[i], &self.roots[j])
    }

    pub fn negate(&self, i: usize) -> usize {
        self.index[&self.roots[i].map(|x| -x)]
    }

    /// Index of s_i(r_j).
    pub fn reflect(&self, i: usize, j: usize) -> usize {
        let c = self.inner(i, j);
        let v: Vec8 = std::array::from_fn(|k| self.roots[j][k] - c * self.roots[i][k]);
        self.index[&v]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.coords[i].iter().sum()
    }
}

pub fn e8() -> &'static E8 {
    static CELL: OnceLock<E8> = OnceLock::new();
    CELL.get_or_init(E8::build)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_shape() {
        let e = e8();
        assert_eq!(e.roots().len(), 240);
        for i in 0..240 {
            assert_eq!(e.inner(i, i), 2);
            let c = e.coords(i);
            assert!(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0));
        }
        let maxh = (0..240).map(|i| e.height(i)).max().unwrap();
        assert_eq!(maxh, 29);
        let positive = (0..240).filter(|&i| e.height(i) > 0).count();
        assert_eq!(positive, 120);
    }

    #[test]
    fn reflections_permute_roots() {
        let e = e8();
        for &s in &e.simple_roots() {
            let mut img: Vec<usize> = (0..240).map(|j| e.reflect(s, j)).collect();
            img.sort();
            img.dedup();
            assert_eq!(img.len(), 240);
        }
    }
}
