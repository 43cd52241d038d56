//! Normal forms of rational double points, the calibration table of
//! resolution fingerprints and classification of singular points.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::mpoly::Exp;
use crate::algebra::{Field, LocalPoly, MPoly};
use crate::lattice::{max_coindex, Dynkin, Letter, RdpClass};

use super::blowup::{fingerprint, Fingerprint};
use super::tjurina::{tjurina_dimension, TjurinaResult};
use super::SingularityError;

/// An equation of a rational double point with its Tjurina dimension m.
/// Non-taut classes carry the tabulated m; taut ones leave it to be computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub class: RdpClass,
    pub terms: Vec<(i64, Exp)>,
    pub m: Option<usize>,
}

impl NormalForm {
    pub fn poly(&self, field: &Field) -> LocalPoly {
        MPoly::from_terms(field, self.terms.iter().map(|&(c, e)| (e, field.from_i64(c))))
    }
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

fn mono(pows: &[(usize, u16)]) -> (i64, Exp) {
    let mut e = [0u16; 3];
    for &(v, k) in pows {
        e[v] += k;
    }
    (1, e)
}

fn dynkin(letter: Letter, rank: u32) -> Dynkin {
    Dynkin::new(letter, rank).expect("valid Dynkin type")
}

fn form(letter: Letter, rank: u32, coindex: u32, terms: Vec<(i64, Exp)>, m: Option<usize>) -> NormalForm {
    NormalForm { class: RdpClass { dynkin: dynkin(letter, rank), coindex }, terms, m }
}

/// The non-taut normal forms of characteristic p together with their m.
pub fn non_taut_forms(p: u64) -> Vec<NormalForm> {
    use Letter::*;
    let z2 = mono(&[(Z, 2)]);
    let x3 = mono(&[(X, 3)]);
    let mut out = Vec::new();
    match p {
        2 => {
            for n in 2..=4u16 {
                // D_{2n}^r: z² + x²y + xyⁿ + xy^{n-r}z
                let base = vec![z2, mono(&[(X, 2), (Y, 1)]), mono(&[(X, 1), (Y, n)])];
                out.push(form(D, 2 * n as u32, 0, base.clone(), Some(4 * n as usize)));
                for r in 1..n {
                    let mut t = base.clone();
                    t.push(mono(&[(X, 1), (Y, n - r), (Z, 1)]));
                    out.push(form(D, 2 * n as u32, r as u32, t, Some(4 * n as usize - 2 * r as usize)));
                }
            }
            for n in 2..=3u16 {
                // D_{2n+1}^r: z² + x²y + yⁿz + xy^{n-r}z
                let base = vec![z2, mono(&[(X, 2), (Y, 1)]), mono(&[(Y, n), (Z, 1)])];
                out.push(form(D, 2 * n as u32 + 1, 0, base.clone(), Some(4 * n as usize)));
                for r in 1..n {
                    let mut t = base.clone();
                    t.push(mono(&[(X, 1), (Y, n - r), (Z, 1)]));
                    out.push(form(D, 2 * n as u32 + 1, r as u32, t, Some(4 * n as usize - 2 * r as usize)));
                }
            }
            let e6 = vec![z2, x3, mono(&[(Y, 2), (Z, 1)])];
            out.push(form(E, 6, 0, e6.clone(), Some(8)));
            out.push(form(E, 6, 1, [e6, vec![mono(&[(X, 1), (Y, 1), (Z, 1)])]].concat(), Some(6)));
            let e7 = vec![z2, x3, mono(&[(X, 1), (Y, 3)])];
            let e7_extra = [
                None,
                Some(mono(&[(X, 2), (Y, 1), (Z, 1)])),
                Some(mono(&[(Y, 3), (Z, 1)])),
                Some(mono(&[(X, 1), (Y, 1), (Z, 1)])),
            ];
            for (k, extra) in e7_extra.into_iter().enumerate() {
                let t = [e7.clone(), extra.into_iter().collect()].concat();
                out.push(form(E, 7, k as u32, t, Some(14 - 2 * k)));
            }
            let e8 = vec![z2, x3, mono(&[(Y, 5)])];
            let e8_extra = [
                None,
                Some(mono(&[(X, 1), (Y, 3), (Z, 1)])),
                Some(mono(&[(X, 1), (Y, 2), (Z, 1)])),
                Some(mono(&[(Y, 3), (Z, 1)])),
                Some(mono(&[(X, 1), (Y, 1), (Z, 1)])),
            ];
            for (k, extra) in e8_extra.into_iter().enumerate() {
                let t = [e8.clone(), extra.into_iter().collect()].concat();
                out.push(form(E, 8, k as u32, t, Some(16 - 2 * k)));
            }
        }
        3 => {
            let e6 = vec![z2, x3, mono(&[(Y, 4)])];
            out.push(form(E, 6, 0, e6.clone(), Some(9)));
            out.push(form(E, 6, 1, [e6, vec![mono(&[(X, 2), (Y, 2)])]].concat(), Some(7)));
            let e7 = vec![z2, x3, mono(&[(X, 1), (Y, 3)])];
            out.push(form(E, 7, 0, e7.clone(), Some(9)));
            out.push(form(E, 7, 1, [e7, vec![mono(&[(X, 2), (Y, 2)])]].concat(), Some(7)));
            let e8 = vec![z2, x3, mono(&[(Y, 5)])];
            out.push(form(E, 8, 0, e8.clone(), Some(12)));
            out.push(form(E, 8, 1, [e8.clone(), vec![mono(&[(X, 2), (Y, 3)])]].concat(), Some(10)));
            out.push(form(E, 8, 2, [e8, vec![mono(&[(X, 2), (Y, 2)])]].concat(), Some(8)));
        }
        5 => {
            let e8 = vec![z2, x3, mono(&[(Y, 5)])];
            out.push(form(E, 8, 0, e8.clone(), Some(10)));
            out.push(form(E, 8, 1, [e8, vec![mono(&[(X, 1), (Y, 4)])]].concat(), Some(8)));
        }
        _ => {}
    }
    out
}

/// Equations for every class of rank ≤ 8 in characteristic p: the
/// non-taut table plus the standard forms of taut graphs.
pub fn normal_forms(p: u64) -> Vec<NormalForm> {
    use Letter::*;
    let mut out = Vec::new();
    for n in 1..=8u32 {
        // A_n: xy + z^{n+1}
        out.push(form(A, n, 0, vec![mono(&[(X, 1), (Y, 1)]), mono(&[(Z, n as u16 + 1)])], None));
    }
    let taut = |d: Dynkin| max_coindex(d, p) == 0;
    for n in 4..=8u32 {
        if taut(dynkin(D, n)) {
            let t = vec![mono(&[(Z, 2)]), mono(&[(X, 2), (Y, 1)]), mono(&[(Y, n as u16 - 1)])];
            out.push(form(D, n, 0, t, None));
        }
    }
    let e_forms: [(u32, Vec<(i64, Exp)>); 3] = [
        (6, vec![mono(&[(Z, 2)]), mono(&[(X, 3)]), mono(&[(Y, 4)])]),
        (7, vec![mono(&[(Z, 2)]), mono(&[(X, 3)]), mono(&[(X, 1), (Y, 3)])]),
        (8, vec![mono(&[(Z, 2)]), mono(&[(X, 3)]), mono(&[(Y, 5)])]),
    ];
    for (n, t) in e_forms {
        if taut(dynkin(E, n)) {
            out.push(form(E, n, 0, t, None));
        }
    }
    out.extend(non_taut_forms(p));
    out
}

/// Fingerprints of all normal forms in one characteristic.
#[derive(Debug)]
pub struct Calibration {
    pub p: u64,
    pub entries: Vec<(RdpClass, Fingerprint)>,
    by_fingerprint: HashMap<Fingerprint, Dynkin>,
}

impl Calibration {
    fn build(p: u64) -> Result<Calibration, SingularityError> {
        let field = Field::prime(p)?;
        let forms = normal_forms(p);
        let fps: Vec<Result<Fingerprint, SingularityError>> =
            forms.par_iter().map(|nf| fingerprint(&nf.poly(&field))).collect();
        let mut entries = Vec::new();
        let mut by_fingerprint: HashMap<Fingerprint, Dynkin> = HashMap::new();
        for (nf, fp) in forms.iter().zip(fps) {
            let fp = fp?;
            if let Some(m) = nf.m {
                if fp.tjurina != m {
                    return Err(SingularityError::Calibration(format!(
                        "{} has Tjurina dimension {} but tabulated m = {}",
                        nf.class.render(p),
                        fp.tjurina,
                        m
                    )));
                }
            }
            if let Some(prev) = by_fingerprint.insert(fp.clone(), nf.class.dynkin) {
                if prev != nf.class.dynkin {
                    return Err(SingularityError::Calibration(format!(
                        "fingerprint {} shared by {} and {}",
                        fp, prev, nf.class.dynkin
                    )));
                }
            }
            entries.push((nf.class, fp));
        }
        Ok(Calibration { p, entries, by_fingerprint })
    }

    pub fn dynkin_of(&self, fp: &Fingerprint) -> Option<Dynkin> {
        self.by_fingerprint.get(fp).copied()
    }

    /// Class with the given graph and Tjurina dimension.
    pub fn class_with(&self, d: Dynkin, m: usize) -> Option<RdpClass> {
        self.entries.iter().find(|(c, fp)| c.dynkin == d && fp.tjurina == m).map(|(c, _)| *c)
    }

    pub fn m_value(&self, class: RdpClass) -> Option<usize> {
        self.entries.iter().find(|(c, _)| *c == class).map(|(_, fp)| fp.tjurina)
    }
}

/// The calibration table for characteristic p, built once.
pub fn calibration(p: u64) -> Result<Arc<Calibration>, SingularityError> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Calibration>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("calibration cache").get(&p) {
        return Ok(c.clone());
    }
    let built = Arc::new(Calibration::build(p)?);
    let mut guard = cache.lock().expect("calibration cache");
    Ok(guard.entry(p).or_insert(built).clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classified {
    pub class: RdpClass,
    pub tjurina: TjurinaResult,
    pub fingerprint: Fingerprint,
}

/// Dynkin type by fingerprint, then coindex by the Tjurina dimension.
pub fn classify_rdp(f: &LocalPoly) -> Result<Classified, SingularityError> {
    let p = f.field().characteristic();
    let cal = calibration(p)?;
    let fp = fingerprint(f)?;
    let d = cal.dynkin_of(&fp).ok_or(SingularityError::NotRdp)?;
    classify_with_type(f, d, fp)
}

/// Coindex assignment for a point whose Dynkin type is known from elsewhere.
pub fn classify_with_type(f: &LocalPoly, d: Dynkin, fp: Fingerprint) -> Result<Classified, SingularityError> {
    let p = f.field().characteristic();
    let cal = calibration(p)?;
    let tjurina = tjurina_dimension(f)?;
    let class = cal.class_with(d, tjurina.dimension).ok_or(SingularityError::Inconsistent)?;
    Ok(Classified { class, tjurina, fingerprint: fp })
}
