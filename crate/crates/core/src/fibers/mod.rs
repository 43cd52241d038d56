//! Singular fibers of the elliptic fibration t:s ↦ [t:s] via Tate's algorithm
//! at every place of the discriminant.

mod tate;

pub use tate::{tate_local, LocalModel};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{factor_binary_form, AlgebraError, BiPoly, Embedding, Fe, Field, UPoly};
use crate::lattice::{AdeType, Dynkin, Letter};
use crate::weierstrass::{compute_invariants, WeierstrassEq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("quasi-elliptic or invalid")]
    SingularGenericFiber,
    #[error("not a rational elliptic surface")]
    NotMinimal,
    #[error("fiber contributions exceed rank 8")]
    RankOverflow,
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Kodaira's classification of singular fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Number of irreducible components of the fiber.
    pub fn components(self) -> u32 {
        match self {
            KodairaType::I(0) => 1,
            KodairaType::I(n) => n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IStar(n) => n + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// Dynkin diagram of the components missing the zero section.
    pub fn dynkin(self) -> Option<Dynkin> {
        let d = |l, r| Dynkin::new(l, r).ok();
        match self {
            KodairaType::I(n) if n >= 2 => d(Letter::A, n - 1),
            KodairaType::III => d(Letter::A, 1),
            KodairaType::IV => d(Letter::A, 2),
            KodairaType::IStar(n) => d(Letter::D, n + 4),
            KodairaType::IVStar => d(Letter::E, 6),
            KodairaType::IIIStar => d(Letter::E, 7),
            KodairaType::IIStar => d(Letter::E, 8),
            _ => None,
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{}", n),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{}*", n),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl Serialize for KodairaType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A closed point of P¹ where Δ vanishes: an irreducible factor of Δ.
#[derive(Clone, Debug)]
pub struct Place {
    pub form: BiPoly,
    /// Number of geometric points in the orbit.
    pub degree: u32,
    pub at_infinity: bool,
    /// Field of definition of one geometric point.
    pub field: Field,
    /// t-coordinate of that point when s = 1.
    pub root: Fe,
    /// Multiplicity of the factor in Δ.
    pub delta_valuation: u32,
}

impl Place {
    /// Whether the base point [t0 : 1] lies in this place.
    pub fn contains(&self, t0: Fe, field: &Field) -> Result<bool, AlgebraError> {
        if self.at_infinity {
            return Ok(false);
        }
        let lift = Embedding::new(self.form.field(), field)?;
        Ok(lift.apply_poly(&self.form.dehomogenize_s()).eval(t0) == Fe::ZERO)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.form)
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The places of a nonzero discriminant.
pub fn places_of_discriminant(delta: &BiPoly) -> Result<Vec<Place>, FiberError> {
    if delta.is_zero() {
        return Err(FiberError::SingularGenericFiber);
    }
    let (_, factors) = factor_binary_form(delta)?;
    Ok(factors
        .into_iter()
        .map(|bf| Place {
            degree: bf.degree(),
            at_infinity: bf.at_infinity,
            root: bf.roots.first().copied().unwrap_or(Fe::ZERO),
            field: bf.splitting_field.clone(),
            delta_valuation: bf.multiplicity,
            form: bf.form,
        })
        .collect())
}

/// The Weierstrass model over the local ring at `place`, in the uniformizer
/// u = t − α (finite places) or u = s (the place at infinity).
pub fn localize(eq: &WeierstrassEq, place: &Place) -> Result<LocalModel, FiberError> {
    let lift = Embedding::new(eq.field(), &place.field)?;
    let a = eq.coefficients().clone().map(|form| -> UPoly {
        if place.at_infinity {
            lift.apply_poly(&form.dehomogenize_t())
        } else {
            lift.apply_poly(&form.dehomogenize_s()).taylor_shift(place.root)
        }
    });
    Ok(LocalModel::new(&place.field, a))
}

#[derive(Clone, Debug, Serialize)]
pub struct Fiber {
    pub place: Place,
    pub kodaira: KodairaType,
    pub delta_valuation: u32,
    pub components: u32,
}

/// The singular fibers of an elliptic Weierstrass surface.
#[derive(Clone, Debug, Serialize)]
pub struct FiberConfiguration {
    pub fibers: Vec<Fiber>,
    /// Root lattice spanned by fiber components missing the zero section,
    /// over the algebraic closure.
    #[serde(serialize_with = "as_text")]
    pub root_type: AdeType,
    /// Σ deg(place)·v(Δ), which is 12 on a rational elliptic surface.
    pub euler_number: u32,
    /// Mordell–Weil rank over the algebraic closure by Shioda–Tate.
    pub mw_rank: u32,
}

fn as_text<S: serde::Serializer>(v: &AdeType, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn tate_classify(eq: &WeierstrassEq, place: &Place) -> Result<Fiber, FiberError> {
    let (kodaira, v) = tate_local(&localize(eq, place)?)?;
    Ok(Fiber { place: place.clone(), kodaira, delta_valuation: v, components: kodaira.components() })
}

pub fn fiber_configuration(eq: &WeierstrassEq) -> Result<FiberConfiguration, FiberError> {
    let delta = compute_invariants(eq).delta;
    let mut fibers = Vec::new();
    let mut lattice = Vec::new();
    let mut euler = 0;
    for place in places_of_discriminant(&delta)? {
        let fiber = tate_classify(eq, &place)?;
        euler += place.degree * fiber.delta_valuation;
        if let Some(d) = fiber.kodaira.dynkin() {
            lattice.extend(std::iter::repeat_n(d, place.degree as usize));
        }
        fibers.push(fiber);
    }
    let root_type = AdeType::new(lattice);
    let mw_rank = 8u32.checked_sub(root_type.rank()).ok_or(FiberError::RankOverflow)?;
    Ok(FiberConfiguration { fibers, root_type, euler_number: euler, mw_rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_equation;

    fn kinds(src: &str, p: u64) -> Vec<(String, String)> {
        let eq = parse_equation(src, p).unwrap();
        let fc = fiber_configuration(&eq).unwrap();
        assert_eq!(fc.euler_number, 12, "{}", src);
        fc.fibers.iter().map(|f| (f.place.to_string(), f.kodaira.to_string())).collect()
    }

    #[test]
    fn x211_char5() {
        let k = kinds("y^2 = x^3 + t^4*x + t^5*s", 5);
        assert!(k.contains(&("[t]".to_string(), "II*".to_string())));
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn e6_char3_single_fiber() {
        let eq = parse_equation("y^2 = x^3 + t^4*x + t^4*s^2", 3).unwrap();
        let fc = fiber_configuration(&eq).unwrap();
        assert_eq!(fc.fibers.len(), 1);
        assert_eq!(fc.fibers[0].kodaira, KodairaType::IVStar);
        assert_eq!(fc.fibers[0].delta_valuation, 12);
        assert_eq!(fc.mw_rank, 2);
    }

    #[test]
    fn e8_char2() {
        let k = kinds("y^2 + t*x*y = x^3 + t^5*s", 2);
        assert_eq!(k, vec![("[s]".to_string(), "I1".to_string()), ("[t]".to_string(), "II*".to_string())]);
    }
}
