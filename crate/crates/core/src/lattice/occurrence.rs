//! Which RDP configurations occur on RDP del Pezzo surfaces.

use serde::Serialize;

use super::ade::{AdeType, RdpConfiguration};
use super::subsystems::check_conditions;
use super::LatticeError;

/// A catalog row realizing a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogHit {
    pub row: String,
    pub degree_two_only: bool,
}

/// Lookup of configurations among the classified equations.
pub trait Membership {
    fn lookup(&self, config: &RdpConfiguration) -> Option<CatalogHit>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    DegreeOne,
    OnlyDegreeTwo,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rationale {
    /// Decided by (E8+T[ℓ=2]).
    TorsionTwo,
    /// Decided by the weak del Pezzo criterion in characteristic 2.
    WeakDelPezzo,
    /// Decided by catalog membership.
    Catalog,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub occurs: bool,
    pub witness: Witness,
    pub rationale: Rationale,
    pub catalog_row: Option<String>,
}

fn excluded_char2() -> [AdeType; 3] {
    ["2A3+2A1", "A3+4A1", "6A1"].map(|s| s.parse().expect("static type"))
}

pub fn decide_occurrence(config: &RdpConfiguration, catalog: &impl Membership) -> Result<Occurrence, LatticeError> {
    let p = config.p;
    let gamma = config.ade_type();
    let flags = check_conditions(&gamma, p);
    let witness_for = |yes: bool| {
        if yes {
            Witness::DegreeOne
        } else {
            Witness::None
        }
    };
    if p != 2 {
        let yes = flags.e8 && flags.t_ell2;
        let mut catalog_row = None;
        if config.has_non_taut() {
            let hit = catalog.lookup(config);
            if hit.is_some() != yes {
                return Err(LatticeError::Internal(format!(
                    "lattice criterion and catalog disagree on {} in characteristic {}",
                    config, p
                )));
            }
            catalog_row = hit.map(|h| h.row);
        }
        return Ok(Occurrence {
            occurs: yes,
            witness: witness_for(yes),
            rationale: Rationale::TorsionTwo,
            catalog_row,
        });
    }
    if !config.has_non_taut() {
        let yes = flags.e8 && !excluded_char2().contains(&gamma);
        let seven: AdeType = "7A1".parse().expect("static type");
        let witness = if !yes {
            Witness::None
        } else if gamma == seven {
            Witness::OnlyDegreeTwo
        } else {
            Witness::DegreeOne
        };
        return Ok(Occurrence { occurs: yes, witness, rationale: Rationale::WeakDelPezzo, catalog_row: None });
    }
    Ok(match catalog.lookup(config) {
        Some(hit) => Occurrence {
            occurs: true,
            witness: if hit.degree_two_only { Witness::OnlyDegreeTwo } else { Witness::DegreeOne },
            rationale: Rationale::Catalog,
            catalog_row: Some(hit.row),
        },
        None => Occurrence { occurs: false, witness: Witness::None, rationale: Rationale::Catalog, catalog_row: None },
    })
}
