//! The full analysis of one Weierstrass surface: invariants, fibration kind,
//! fibers, singular points and their classes.

use serde::Serialize;
use thiserror::Error;

use crate::fibers::{fiber_configuration, FiberConfiguration, FiberError};
use crate::lattice::{Dynkin, RdpClass, RdpConfiguration};
use crate::singularity::{
    calibration, classify_with_type, fingerprint, singular_points, Chart, SingularPoint, SingularityError,
};
use crate::weierstrass::{compute_invariants, FibrationKind, SurfaceInvariants, WeierstrassEq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("Δ = 0 and the singular locus is not finite: not a rational quasi-elliptic surface")]
    Invalid,
    #[error("Δ = 0 in characteristic {0}: not a rational elliptic surface")]
    VanishingDiscriminant(u64),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
}

#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub chart: Chart,
    pub base_point: String,
    pub location: String,
    /// Number of conjugate points.
    pub orbit: usize,
    pub class: String,
    #[serde(skip)]
    pub rdp: RdpClass,
    pub tjurina: usize,
    /// Dynkin type read off the blow-up fingerprint, if it is a known one.
    pub fingerprint_type: Option<String>,
    /// Dynkin type of the fiber through the point (elliptic case).
    pub fiber_type: Option<String>,
    pub place: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceReport {
    pub characteristic: u64,
    pub equation: String,
    pub delta: String,
    pub j: String,
    pub kind: FibrationKind,
    pub fibers: Option<FiberConfiguration>,
    pub singular_points: Vec<PointReport>,
    pub configuration: String,
    #[serde(skip)]
    pub config: RdpConfiguration,
    #[serde(skip)]
    pub invariants: SurfaceInvariants,
    /// Disagreements between the fiber types and the fingerprint classifier.
    pub mismatches: Vec<String>,
}

fn on_place(point: &SingularPoint, fc: &FiberConfiguration) -> Result<Option<usize>, SingularityError> {
    for (i, f) in fc.fibers.iter().enumerate() {
        let hit = match point.chart {
            Chart::T => f.place.at_infinity,
            Chart::S => f.place.contains(point.coords[0], &point.field)?,
        };
        if hit {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn analyze(eq: &WeierstrassEq) -> Result<SurfaceReport, PipelineError> {
    let p = eq.characteristic();
    let invariants = compute_invariants(eq);
    let elliptic = !invariants.delta.is_zero();
    if !elliptic && !matches!(p, 2 | 3) {
        return Err(PipelineError::VanishingDiscriminant(p));
    }
    let points = match singular_points(eq) {
        Ok(pts) => pts,
        Err(SingularityError::PositiveDimensional) if !elliptic => return Err(PipelineError::Invalid),
        Err(e) => return Err(e.into()),
    };
    let kind = if elliptic { FibrationKind::Elliptic } else { FibrationKind::QuasiElliptic };
    let fibers = if elliptic { Some(fiber_configuration(eq)?) } else { None };
    let cal = calibration(p)?;
    let mut reports = Vec::new();
    let mut mismatches = Vec::new();
    let mut used = vec![false; fibers.as_ref().map_or(0, |fc| fc.fibers.len())];
    for point in &points {
        let fp = fingerprint(&point.local)?;
        let fp_type = cal.dynkin_of(&fp);
        let (place, fiber_type) = match &fibers {
            Some(fc) => match on_place(point, fc)? {
                Some(i) => {
                    used[i] = true;
                    let f = &fc.fibers[i];
                    if f.place.degree as usize != point.residue_degree {
                        mismatches.push(format!(
                            "point {} has {} conjugates but lies on a place of degree {}",
                            point.base_point(),
                            point.residue_degree,
                            f.place.degree
                        ));
                    }
                    (Some(f.place.to_string()), f.kodaira.dynkin())
                }
                None => (None, None),
            },
            None => (None, None),
        };
        let dynkin: Dynkin = match (fibers.is_some(), fiber_type, fp_type) {
            (true, Some(d), fpt) => {
                if fpt != Some(d) {
                    mismatches.push(format!(
                        "point {}: fiber gives {}, fingerprint gives {}",
                        point.base_point(),
                        d,
                        fpt.map_or("unknown".to_string(), |x| x.to_string())
                    ));
                }
                d
            }
            (true, None, _) => {
                mismatches.push(format!("point {} lies on no reducible fiber", point.base_point()));
                fp_type.ok_or(SingularityError::NotRdp)?
            }
            (false, _, fpt) => fpt.ok_or(SingularityError::NotRdp)?,
        };
        let c = classify_with_type(&point.local, dynkin, fp)?;
        reports.push(PointReport {
            chart: point.chart,
            base_point: point.base_point(),
            location: point.describe(),
            orbit: point.residue_degree,
            class: c.class.render(p),
            rdp: c.class,
            tjurina: c.tjurina.dimension,
            fingerprint_type: fp_type.map(|d| d.to_string()),
            fiber_type: fiber_type.map(|d| d.to_string()),
            place,
        });
    }
    if let Some(fc) = &fibers {
        for (f, seen) in fc.fibers.iter().zip(&used) {
            if !seen && f.kodaira.dynkin().is_some() {
                mismatches.push(format!("fiber {} at {} carries no singular point", f.kodaira, f.place));
            }
        }
    }
    let classes = reports.iter().flat_map(|r| std::iter::repeat_n(r.rdp, r.orbit)).collect();
    let config = RdpConfiguration::new(p, classes).expect("classes come from characteristic p");
    Ok(SurfaceReport {
        characteristic: p,
        equation: eq.to_string(),
        delta: invariants.delta.to_string(),
        j: invariants.j.to_string(),
        kind,
        fibers,
        singular_points: reports,
        configuration: config.to_string(),
        config,
        invariants,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_equation;

    #[test]
    fn e6_char3_report() {
        let r = analyze(&parse_equation("y^2 = x^3 + t^4*x + t^4*s^2", 3).unwrap()).unwrap();
        assert_eq!(r.delta, "-t^12");
        assert_eq!(r.j, "0");
        assert_eq!(r.singular_points.len(), 1);
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
    }

    #[test]
    fn quasi_elliptic_char3() {
        let r = analyze(&parse_equation("y^2 = x^3 + t^4*s^2", 3).unwrap()).unwrap();
        assert_eq!(r.kind, FibrationKind::QuasiElliptic);
        assert_eq!(r.configuration, "E6^0+A2");
    }

    #[test]
    fn vanishing_discriminant_in_char5() {
        let err = analyze(&parse_equation("y^2 = x^3", 5).unwrap()).unwrap_err();
        assert_eq!(err, PipelineError::VanishingDiscriminant(5));
    }
}
