//! Parameter assignments realizing each case of a row.

use serde::Serialize;

use crate::algebra::{Fe, Field};
use crate::parse::{Poly5, Predicate};

use super::{CatalogError, CatalogRow};

/// Assignments taken from GF(p) and from GF(p²) \ GF(p), each.
pub const MAX_PER_FIELD: usize = 2;
/// Assignments per case when that many exist.
pub const TARGET_PER_CASE: usize = 3;

/// Values of the row's parameters, over the smallest field containing them.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub field: Field,
    pub values: Vec<(String, Fe)>,
}

impl Assignment {
    pub fn get(&self, name: &str) -> Option<Fe> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn param(&self, name: &str) -> Option<Poly5> {
        self.get(name).map(|v| Poly5::constant(&self.field, v))
    }

    pub fn describe(&self) -> String {
        if self.values.is_empty() {
            return "-".to_string();
        }
        let parts: Vec<String> = self.values.iter().map(|(n, v)| format!("{}={}", n, self.field.format(*v))).collect();
        parts.join(", ")
    }
}

impl Serialize for Assignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.describe())
    }
}

/// Assignments for the base case (`subrow` None) or one sub-row.
#[derive(Clone, Debug)]
pub struct SubRowSample {
    pub subrow: Option<usize>,
    pub assignments: Vec<Assignment>,
}

fn holds(pred: &Predicate, field: &Field, values: &[(String, Fe)]) -> Result<bool, CatalogError> {
    let b = |name: &str| values.iter().find(|(n, _)| n == name).map(|(_, v)| Poly5::constant(field, *v));
    pred.eval(field, &b).map_err(|e| CatalogError { location: "predicate".to_string(), msg: e.to_string() })
}

/// The case an assignment belongs to, given which sub-row conditions hold:
/// 0 for none, else 1 + the sub-row of strictly largest rank among those
/// holding. Ties are ambiguous and give None.
fn assign_case(row: &CatalogRow, truth: &[bool]) -> Option<usize> {
    let holding: Vec<usize> = (0..truth.len()).filter(|&i| truth[i]).collect();
    let Some(&best) = holding.iter().max_by_key(|&&i| row.subrows[i].config.rank()) else {
        return Some(0);
    };
    let top = row.subrows[best].config.rank();
    if holding.iter().filter(|&&i| row.subrows[i].config.rank() == top).count() > 1 {
        return None;
    }
    Some(best + 1)
}

/// For each case of the row, assignments over GF(p²) satisfying the side
/// and nondegeneracy constraints and assigned to that case by `assign_case`. Enumeration is
/// lexicographic in the parameters' order of appearance; a case with no
/// assignment comes back empty.
pub fn sample_row_instances(row: &CatalogRow) -> Result<Vec<SubRowSample>, CatalogError> {
    let Some(eq) = &row.equation else {
        return Ok(Vec::new());
    };
    let big = Field::new(row.p, 2).map_err(|e| CatalogError { location: row.id.clone(), msg: e.to_string() })?;
    let prime = Field::prime(row.p).map_err(|e| CatalogError { location: row.id.clone(), msg: e.to_string() })?;
    let elements: Vec<Fe> = big.elements().collect();
    let n = eq.params.len();
    let cases = row.subrows.len() + 1;
    let mut found: Vec<(Vec<Assignment>, Vec<Assignment>)> = vec![(Vec::new(), Vec::new()); cases];
    let mut index = vec![0usize; n];
    loop {
        let values: Vec<(String, Fe)> =
            eq.params.iter().zip(&index).map(|(name, &i)| (name.clone(), elements[i])).collect();
        if holds(&eq.constraints, &big, &values)? && holds(&eq.nondegenerate, &big, &values)? {
            let mut truth = Vec::with_capacity(row.subrows.len());
            for s in &row.subrows {
                truth.push(holds(&s.condition, &big, &values)?);
            }
            let case = assign_case(row, &truth);
            if let Some(c) = case {
                let in_prime = values.iter().all(|(_, v)| v.0 < row.p);
                let (ps, es) = &mut found[c];
                if in_prime {
                    ps.push(Assignment { field: prime.clone(), values });
                } else {
                    es.push(Assignment { field: big.clone(), values });
                }
            }
        }
        // next tuple, last parameter fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(found
                    .into_iter()
                    .enumerate()
                    .map(|(c, (ps, es))| SubRowSample { subrow: c.checked_sub(1), assignments: select(ps, es) })
                    .collect());
            }
            k -= 1;
            index[k] += 1;
            if index[k] < elements.len() {
                break;
            }
            index[k] = 0;
        }
    }
}

fn select(prime: Vec<Assignment>, ext: Vec<Assignment>) -> Vec<Assignment> {
    let mut out: Vec<Assignment> = prime.iter().take(MAX_PER_FIELD).cloned().collect();
    out.extend(ext.iter().take(MAX_PER_FIELD).cloned());
    let mut rest = prime.into_iter().skip(MAX_PER_FIELD).chain(ext.into_iter().skip(MAX_PER_FIELD));
    while out.len() < TARGET_PER_CASE {
        match rest.next() {
            Some(a) => out.push(a),
            None => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::load_catalog;
    use super::*;

    fn row(id: &str) -> &'static CatalogRow {
        load_catalog().iter().find(|r| r.id == id).unwrap()
    }

    #[test]
    fn base_case_of_6a_avoids_the_condition() {
        let s = sample_row_instances(row("T3-6A-E60")).unwrap();
        assert_eq!(s.len(), 2);
        let base: Vec<String> = s[0].assignments.iter().map(|a| a.describe()).collect();
        assert_eq!(base, ["a65=1", "a65=2", "a65=g", "a65=g+1"]);
        let sub: Vec<String> = s[1].assignments.iter().map(|a| a.describe()).collect();
        assert_eq!(sub, ["a65=0"]);
    }

    #[test]
    fn sub_rows_are_exclusive_and_respect_constraints() {
        let r = row("T4-4A");
        let eq = r.equation.as_ref().unwrap();
        for sample in sample_row_instances(r).unwrap() {
            assert!(!sample.assignments.is_empty(), "{:?}", sample.subrow);
            for a in &sample.assignments {
                let b = |n: &str| a.param(n);
                assert!(eq.constraints.eval(&a.field, &b).unwrap());
                for (i, s) in r.subrows.iter().enumerate() {
                    let holds = s.condition.eval(&a.field, &b).unwrap();
                    match sample.subrow {
                        Some(j) if j == i => assert!(holds),
                        Some(j) if holds => assert!(s.config.rank() < r.subrows[j].config.rank()),
                        _ => assert!(!holds),
                    }
                }
            }
        }
    }

    #[test]
    fn rows_without_parameters_have_one_instance() {
        let s = sample_row_instances(row("T6-8.")).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].assignments.len(), 1);
        assert!(sample_row_instances(row("T6-E7^0")).unwrap().is_empty());
    }
}
