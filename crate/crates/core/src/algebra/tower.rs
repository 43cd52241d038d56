//! Embeddings between finite fields and towers of successive extensions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::factor::roots;
use super::field::{Fe, Field, MAX_DEGREE};
use super::poly::UPoly;
use super::AlgebraError;

/// Field homomorphism GF(p^a) -> GF(p^b), determined by the image of the
/// generator: the smallest root of the source modulus in the target.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Field,
    dst: Field,
    powers: Arc<Vec<Fe>>,
}

fn cache() -> &'static Mutex<HashMap<(u64, u32, u32), Arc<Vec<Fe>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32), Arc<Vec<Fe>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Embedding, AlgebraError> {
        let p = src.characteristic();
        if p != dst.characteristic() || !dst.degree().is_multiple_of(src.degree()) {
            return Err(AlgebraError::NoEmbedding(src.to_string(), dst.to_string()));
        }
        let key = (p, src.degree(), dst.degree());
        if let Some(powers) = cache().lock().expect("embedding cache poisoned").get(&key) {
            return Ok(Embedding { src: src.clone(), dst: dst.clone(), powers: powers.clone() });
        }
        let k = src.degree() as usize;
        let powers = if k == 1 {
            vec![Fe::ONE]
        } else {
            let m: Vec<Fe> = src.modulus().iter().map(|&c| Fe(c)).collect();
            let rho = *roots(&UPoly::new(dst, m)).first().expect("finite fields of compatible degree embed");
            let mut v = Vec::with_capacity(k);
            let mut x = Fe::ONE;
            for _ in 0..k {
                v.push(x);
                x = dst.mul(x, rho);
            }
            v
        };
        let powers = Arc::new(powers);
        cache().lock().expect("embedding cache poisoned").insert(key, powers.clone());
        Ok(Embedding { src: src.clone(), dst: dst.clone(), powers })
    }

    pub fn source(&self) -> &Field {
        &self.src
    }

    pub fn target(&self) -> &Field {
        &self.dst
    }

    pub fn apply(&self, a: Fe) -> Fe {
        if self.src.degree() == 1 {
            return a;
        }
        let digits = self.src.digits(a);
        let dst = &self.dst;
        digits.iter().zip(self.powers.iter()).fold(Fe::ZERO, |acc, (&d, &g)| dst.add(acc, dst.mul(Fe(d), g)))
    }

    pub fn apply_poly(&self, f: &UPoly) -> UPoly {
        f.map(&self.dst, |c| self.apply(c))
    }
}

/// A chain GF(p) = F_0 ⊂ F_1 ⊂ ... of fields. Values computed at one level
/// are carried to a higher level through the composed embeddings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    levels: Vec<Field>,
}

impl FieldTower {
    pub fn new(base: &Field) -> FieldTower {
        FieldTower { levels: vec![base.clone()] }
    }

    pub fn top(&self) -> &Field {
        self.levels.last().expect("tower has a base")
    }

    pub fn base(&self) -> &Field {
        &self.levels[0]
    }

    pub fn levels(&self) -> &[Field] {
        &self.levels
    }

    /// New tower with one more level of relative degree `d` over the top.
    pub fn extend(&self, d: u32) -> Result<FieldTower, AlgebraError> {
        let top = self.top();
        let total = top.degree().checked_mul(d).ok_or(AlgebraError::ExtensionBudget)?;
        if total > MAX_DEGREE {
            return Err(AlgebraError::ExtensionBudget);
        }
        let next = Field::new(top.characteristic(), total)?;
        let mut levels = self.levels.clone();
        levels.push(next);
        Ok(FieldTower { levels })
    }

    /// Carry an element of level `from` up to the top level.
    pub fn lift(&self, a: Fe, from: usize) -> Result<Fe, AlgebraError> {
        let mut x = a;
        for w in self.levels[from..].windows(2) {
            x = Embedding::new(&w[0], &w[1])?.apply(x);
        }
        Ok(x)
    }

    /// Equality of elements living at two levels, decided at the higher one.
    pub fn equal_across(&self, a: Fe, la: usize, b: Fe, lb: usize) -> Result<bool, AlgebraError> {
        let join = la.max(lb);
        let lift_to = |x: Fe, from: usize| -> Result<Fe, AlgebraError> {
            let mut y = x;
            for w in self.levels[from..=join].windows(2) {
                y = Embedding::new(&w[0], &w[1])?.apply(y);
            }
            Ok(y)
        };
        Ok(lift_to(a, la)? == lift_to(b, lb)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_ring_map() {
        for (p, a, b) in [(2, 2, 4), (2, 3, 6), (3, 2, 4), (5, 1, 2), (2, 2, 6)] {
            let src = Field::new(p, a).unwrap();
            let dst = Field::new(p, b).unwrap();
            let e = Embedding::new(&src, &dst).unwrap();
            for x in src.elements() {
                for y in src.elements().step_by(3) {
                    assert_eq!(e.apply(src.mul(x, y)), dst.mul(e.apply(x), e.apply(y)));
                    assert_eq!(e.apply(src.add(x, y)), dst.add(e.apply(x), e.apply(y)));
                }
            }
        }
    }

    #[test]
    fn incompatible_degrees() {
        let a = Field::new(2, 2).unwrap();
        let b = Field::new(2, 3).unwrap();
        assert!(Embedding::new(&a, &b).is_err());
    }

    #[test]
    fn tower_budget() {
        let t = FieldTower::new(&Field::prime(2).unwrap());
        let t = t.extend(4).unwrap().extend(3).unwrap();
        assert_eq!(t.top().degree(), 12);
        assert!(matches!(t.extend(2), Err(AlgebraError::ExtensionBudget)));
    }

    #[test]
    fn cross_level_equality() {
        let t = FieldTower::new(&Field::prime(3).unwrap()).extend(2).unwrap().extend(2).unwrap();
        let g1 = t.levels()[1].generator();
        let lifted = t.lift(g1, 1).unwrap();
        assert!(t.equal_across(g1, 1, lifted, 2).unwrap());
        assert!(t.equal_across(Fe(2), 0, Fe(2), 2).unwrap());
    }
}
