//! ADE types, rational double point classes and configurations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LatticeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    D,
    E,
}

impl Letter {
    fn rank_order(self) -> u8 {
        match self {
            Letter::E => 0,
            Letter::D => 1,
            Letter::A => 2,
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// E before D before A, matching the usual way configurations are written.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank_order().cmp(&other.rank_order())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Letter::A => 'A',
            Letter::D => 'D',
            Letter::E => 'E',
        };
        write!(f, "{}", c)
    }
}

/// An irreducible Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dynkin {
    pub letter: Letter,
    pub rank: u32,
}

impl Dynkin {
    pub fn new(letter: Letter, rank: u32) -> Result<Dynkin, LatticeError> {
        let ok = match letter {
            Letter::A => rank >= 1,
            Letter::D => rank >= 4,
            Letter::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(Dynkin { letter, rank })
        } else {
            Err(LatticeError::BadType(format!("{}{}", letter, rank)))
        }
    }

    /// Determinant of the (positive definite) Cartan matrix.
    pub fn determinant(self) -> i64 {
        match self.letter {
            Letter::A => self.rank as i64 + 1,
            Letter::D => 4,
            Letter::E => 9 - self.rank as i64,
        }
    }

    /// Whether the singularity with this graph is unique in characteristic p.
    pub fn is_taut(self, p: u64) -> bool {
        max_coindex(self, p) == 0
    }
}

impl PartialOrd for Dynkin {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dynkin {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letter.cmp(&other.letter).then(other.rank.cmp(&self.rank))
    }
}

impl fmt::Display for Dynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// Largest Artin coindex of a rational double point with graph `d` in
/// characteristic `p`; 0 for taut graphs.
pub fn max_coindex(d: Dynkin, p: u64) -> u32 {
    match (p, d.letter, d.rank) {
        (2, Letter::D, n) => n / 2 - 1,
        (2, Letter::E, 6) => 1,
        (2, Letter::E, 7) => 3,
        (2, Letter::E, 8) => 4,
        (3, Letter::E, 6) => 1,
        (3, Letter::E, 7) => 1,
        (3, Letter::E, 8) => 2,
        (5, Letter::E, 8) => 1,
        _ => 0,
    }
}

/// A root lattice: multiset of irreducible components, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct AdeType {
    components: Vec<Dynkin>,
}

impl AdeType {
    pub fn new(mut components: Vec<Dynkin>) -> AdeType {
        components.sort();
        AdeType { components }
    }

    pub fn empty() -> AdeType {
        AdeType::default()
    }

    pub fn components(&self) -> &[Dynkin] {
        &self.components
    }

    pub fn rank(&self) -> u32 {
        self.components.iter().map(|d| d.rank).sum()
    }

    pub fn determinant(&self) -> i64 {
        self.components.iter().map(|d| d.determinant()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &AdeType) -> AdeType {
        let mut c = self.components.clone();
        c.extend_from_slice(&other.components);
        AdeType::new(c)
    }
}

fn write_grouped<T: PartialEq + Copy>(
    f: &mut fmt::Formatter<'_>,
    items: &[T],
    show: impl Fn(T) -> String,
) -> fmt::Result {
    if items.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    let mut i = 0;
    while i < items.len() {
        let mut j = i;
        while j < items.len() && items[j] == items[i] {
            j += 1;
        }
        if !first {
            write!(f, "+")?;
        }
        first = false;
        if j - i > 1 {
            write!(f, "{}", j - i)?;
        }
        write!(f, "{}", show(items[i]))?;
        i = j;
    }
    Ok(())
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grouped(f, &self.components, |d| d.to_string())
    }
}

/// A rational double point: Dynkin graph plus Artin coindex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RdpClass {
    pub dynkin: Dynkin,
    pub coindex: u32,
}

impl RdpClass {
    pub fn new(dynkin: Dynkin, coindex: u32, p: u64) -> Result<RdpClass, LatticeError> {
        if coindex > max_coindex(dynkin, p) {
            return Err(LatticeError::NoSuchSingularity(format!("{}^{}", dynkin, coindex), p));
        }
        Ok(RdpClass { dynkin, coindex })
    }

    pub fn taut(dynkin: Dynkin) -> RdpClass {
        RdpClass { dynkin, coindex: 0 }
    }

    /// Notation with the coindex shown only for non-taut graphs.
    pub fn render(&self, p: u64) -> String {
        if self.dynkin.is_taut(p) {
            self.dynkin.to_string()
        } else {
            format!("{}^{}", self.dynkin, self.coindex)
        }
    }
}

impl PartialOrd for RdpClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RdpClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dynkin.cmp(&other.dynkin).then(self.coindex.cmp(&other.coindex))
    }
}

/// A multiset of rational double points in a fixed characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RdpConfiguration {
    pub p: u64,
    classes: Vec<RdpClass>,
}

impl RdpConfiguration {
    pub fn new(p: u64, mut classes: Vec<RdpClass>) -> Result<RdpConfiguration, LatticeError> {
        for c in &classes {
            RdpClass::new(c.dynkin, c.coindex, p)?;
        }
        classes.sort();
        Ok(RdpConfiguration { p, classes })
    }

    pub fn empty(p: u64) -> RdpConfiguration {
        RdpConfiguration { p, classes: Vec::new() }
    }

    pub fn classes(&self) -> &[RdpClass] {
        &self.classes
    }

    pub fn ade_type(&self) -> AdeType {
        AdeType::new(self.classes.iter().map(|c| c.dynkin).collect())
    }

    pub fn rank(&self) -> u32 {
        self.classes.iter().map(|c| c.dynkin.rank).sum()
    }

    pub fn has_non_taut(&self) -> bool {
        self.classes.iter().any(|c| !c.dynkin.is_taut(self.p))
    }

    pub fn add(&self, other: &RdpConfiguration) -> RdpConfiguration {
        let mut c = self.classes.clone();
        c.extend_from_slice(&other.classes);
        c.sort();
        RdpConfiguration { p: self.p, classes: c }
    }

    pub fn parse(text: &str, p: u64) -> Result<RdpConfiguration, LatticeError> {
        let items = parse_items(text)?;
        let mut classes = Vec::new();
        for (mult, dynkin, coindex) in items {
            let k = match coindex {
                Some(k) => k,
                None if dynkin.is_taut(p) => 0,
                None => return Err(LatticeError::MissingCoindex(dynkin.to_string(), p)),
            };
            let c = RdpClass::new(dynkin, k, p)?;
            classes.extend(std::iter::repeat_n(c, mult as usize));
        }
        RdpConfiguration::new(p, classes)
    }
}

impl fmt::Display for RdpConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        write_grouped(f, &self.classes, |c| c.render(p))
    }
}

impl FromStr for AdeType {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<AdeType, LatticeError> {
        let mut comps = Vec::new();
        for (mult, dynkin, coindex) in parse_items(s)? {
            if coindex.is_some() {
                return Err(LatticeError::Syntax(s.to_string(), "coindex not allowed in a lattice type".into()));
            }
            comps.extend(std::iter::repeat_n(dynkin, mult as usize));
        }
        Ok(AdeType::new(comps))
    }
}

const MAX_MULTIPLICITY: u32 = 64;
const MAX_RANK: u32 = 64;

fn parse_items(text: &str) -> Result<Vec<(u32, Dynkin, Option<u32>)>, LatticeError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| LatticeError::Syntax(text.to_string(), msg.to_string());
    if compact.is_empty() {
        return Err(err("empty configuration"));
    }
    if compact == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for item in compact.split('+') {
        let bytes = item.as_bytes();
        let mut i = 0;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mult = if i == 0 { 1 } else { item[..i].parse::<u32>().map_err(|_| err("bad multiplicity"))? };
        if mult == 0 || mult > MAX_MULTIPLICITY {
            return Err(err("multiplicity out of range"));
        }
        let letter = match bytes.get(i) {
            Some(b'A') => Letter::A,
            Some(b'D') => Letter::D,
            Some(b'E') => Letter::E,
            _ => return Err(err("expected one of A, D, E")),
        };
        i += 1;
        let (rank_part, coindex_part) = match item[i..].split_once('^') {
            Some((r, k)) => (r, Some(k)),
            None => (&item[i..], None),
        };
        let rank_part = rank_part.trim_start_matches('_');
        if rank_part.is_empty() || !rank_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected a rank"));
        }
        let rank = rank_part.parse::<u32>().map_err(|_| err("bad rank"))?;
        if rank > MAX_RANK {
            return Err(err("rank out of range"));
        }
        let coindex = match coindex_part {
            None => None,
            Some(k) => {
                let k = k.trim_start_matches('{').trim_end_matches('}');
                if k.is_empty() || !k.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err("expected a coindex after '^'"));
                }
                Some(k.parse::<u32>().map_err(|_| err("bad coindex"))?)
            }
        };
        out.push((mult, Dynkin::new(letter, rank)?, coindex));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let c = RdpConfiguration::parse("D4^0+3A1", 2).unwrap();
        assert_eq!(c.to_string(), "D4^0+3A1");
        assert_eq!(c.rank(), 7);
        let c = RdpConfiguration::parse("A1 + E7^1", 3).unwrap();
        assert_eq!(c.to_string(), "E7^1+A1");
        let c = RdpConfiguration::parse("2A3+2A1", 5).unwrap();
        assert_eq!(c.to_string(), "2A3+2A1");
        assert_eq!("A1+D4+A1+A1+A1".parse::<AdeType>().unwrap().to_string(), "D4+4A1");
    }

    #[test]
    fn coindex_ranges() {
        assert!(RdpConfiguration::parse("E8^4", 2).is_ok());
        assert!(matches!(RdpConfiguration::parse("E8^5", 2), Err(LatticeError::NoSuchSingularity(_, 2))));
        assert!(RdpConfiguration::parse("E8^1", 7).is_err());
        assert!(RdpConfiguration::parse("E8", 7).is_ok());
        assert!(matches!(RdpConfiguration::parse("E8", 5), Err(LatticeError::MissingCoindex(_, 5))));
        assert_eq!(max_coindex(Dynkin::new(Letter::D, 8).unwrap(), 2), 3);
        assert_eq!(max_coindex(Dynkin::new(Letter::D, 7).unwrap(), 2), 2);
        assert_eq!(max_coindex(Dynkin::new(Letter::D, 4).unwrap(), 2), 1);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "F4", "D3", "E9", "A0", "3", "A1+", "E8^", "0A1", "A1^x"] {
            assert!(RdpConfiguration::parse(s, 2).is_err(), "{s}");
        }
    }
}
