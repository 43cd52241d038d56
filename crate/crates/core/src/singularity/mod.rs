//! Singular points of Weierstrass surfaces and their classification as
//! rational double points with coindex.

mod blowup;
mod classify;
mod tjurina;

pub use blowup::{blow_up_once, fingerprint, Fingerprint, MAX_DEPTH};
pub use classify::{
    calibration, classify_rdp, classify_with_type, non_taut_forms, normal_forms, Calibration, Classified, NormalForm,
};
pub use tjurina::{tjurina_dimension, TjurinaResult, TRUNCATIONS};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Fe, Field, LocalPoly, MPoly};
use crate::lattice::{RdpClass, RdpConfiguration};
use crate::weierstrass::WeierstrassEq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("positive-dimensional singular locus")]
    PositiveDimensional,
    #[error("already smooth")]
    AlreadySmooth,
    #[error("not a double point")]
    NotDoublePoint,
    #[error("point does not lie on the surface")]
    NotOnSurface,
    #[error("not a rational double point")]
    NotRdp,
    #[error("inconsistent singularity data")]
    Inconsistent,
    #[error("non-isolated or too degenerate")]
    NotCertified,
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Affine chart of the surface containing a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// s = 1, coordinates (t, x, y).
    S,
    /// t = 1, coordinates (s, x, y) with s = 0.
    T,
}

/// One Frobenius orbit of singular points.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub chart: Chart,
    /// Coordinates of a representative over `field`.
    pub coords: [Fe; 3],
    pub field: Field,
    /// The equation moved to the origin.
    pub local: LocalPoly,
    /// Number of conjugate points in the orbit.
    pub residue_degree: usize,
}

impl SingularPoint {
    /// The base point [t : s] as text.
    pub fn base_point(&self) -> String {
        match self.chart {
            Chart::S => format!("[{}:1]", self.field.format(self.coords[0])),
            Chart::T => "[1:0]".to_string(),
        }
    }

    pub fn describe(&self) -> String {
        let f = &self.field;
        format!("t:s = {}, x = {}, y = {}", self.base_point(), f.format(self.coords[1]), f.format(self.coords[2]))
    }
}

/// Singular points of the surface, one per Frobenius orbit.
pub fn singular_points(eq: &WeierstrassEq) -> Result<Vec<SingularPoint>, SingularityError> {
    let field = eq.field();
    let mut out = Vec::new();
    for l in blowup::singular_points_on(&eq.chart_s(), &[])? {
        out.push(SingularPoint {
            chart: Chart::S,
            coords: l.coords,
            field: l.field,
            local: l.local,
            residue_degree: l.orbit,
        });
    }
    for l in blowup::singular_points_on(&eq.chart_t(), &[MPoly::var(field, 0)])? {
        out.push(SingularPoint {
            chart: Chart::T,
            coords: l.coords,
            field: l.field,
            local: l.local,
            residue_degree: l.orbit,
        });
    }
    Ok(out)
}

pub fn singular_locus_is_finite(eq: &WeierstrassEq) -> bool {
    singular_points(eq).is_ok()
}

/// A singular point with its classification.
#[derive(Clone, Debug)]
pub struct ClassifiedPoint {
    pub point: SingularPoint,
    pub class: RdpClass,
    pub tjurina: TjurinaResult,
    pub fingerprint: Fingerprint,
}

/// Classify every singular point of the surface.
pub fn classify_surface(eq: &WeierstrassEq) -> Result<Vec<ClassifiedPoint>, SingularityError> {
    let points = singular_points(eq)?;
    let mut out = Vec::new();
    for point in points {
        let c = classify_rdp(&point.local)?;
        out.push(ClassifiedPoint { point, class: c.class, tjurina: c.tjurina, fingerprint: c.fingerprint });
    }
    Ok(out)
}

/// The configuration over the algebraic closure: each orbit contributes
/// one copy of its class per conjugate point.
pub fn configuration_of(points: &[ClassifiedPoint], p: u64) -> RdpConfiguration {
    let classes = points.iter().flat_map(|cp| std::iter::repeat_n(cp.class, cp.point.residue_degree)).collect();
    RdpConfiguration::new(p, classes).expect("classes come from characteristic p")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BiPoly;
    use crate::lattice::{Dynkin, Letter};

    #[test]
    fn calibration_is_injective_in_small_characteristics() {
        for p in [2, 3, 5, 7] {
            let cal = calibration(p).unwrap();
            assert!(cal.entries.len() >= 8);
            for (class, fp) in &cal.entries {
                assert_eq!(fp.rank() as u32, class.dynkin.rank, "{} in char {}", class.render(p), p);
            }
        }
    }

    #[test]
    fn x22_surface_char5() {
        // y² = x³ + t⁵s: one E8 point at t = 0
        let f = Field::prime(5).unwrap();
        let z = BiPoly::zero(&f);
        let eq =
            WeierstrassEq::new(&f, [z.clone(), z.clone(), z.clone(), z, BiPoly::monomial(&f, Fe::ONE, 5, 1)]).unwrap();
        let pts = classify_surface(&eq).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].class.dynkin, Dynkin::new(Letter::E, 8).unwrap());
        assert_eq!(pts[0].class.coindex, 0);
        assert_eq!(pts[0].point.base_point(), "[0:1]");
    }
}
