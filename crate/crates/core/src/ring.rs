use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of variables a ring may carry; variable sets are `u64` bitmasks.
pub const MAX_VARS: usize = 64;

/// Ambient polynomial ring `K[x_1, ..., x_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRing")]
pub struct RingContext {
    names: Vec<String>,
    characteristic: u64,
}

impl RingContext {
    pub fn new(names: Vec<String>, characteristic: u64) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Malformed("a ring needs at least one variable".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::Malformed(format!(
                "at most {MAX_VARS} variables are supported, got {}",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::Malformed(format!("invalid variable name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::Malformed(format!("duplicate variable name {name:?}")));
            }
        }
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::Malformed(format!(
                "characteristic must be 0 or prime, got {characteristic}"
            )));
        }
        Ok(RingContext {
            names,
            characteristic,
        })
    }

    /// `x1, ..., xn` over the rationals.
    pub fn indexed(prefix: &str, n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")).collect(), 0)
    }

    /// Ring whose variables are the given single names, e.g. `"xyzt"`.
    pub fn from_letters(letters: &str) -> Result<Self> {
        Self::new(letters.chars().map(|c| c.to_string()).collect(), 0)
    }

    /// Parses `x1..x5` (indexed range) or a comma-separated name list.
    pub fn parse_spec(spec: &str, characteristic: u64) -> Result<Self> {
        let spec = spec.trim();
        if let Some((lo, hi)) = spec.split_once("..") {
            let (prefix, start) = split_index(lo.trim())
                .ok_or_else(|| Error::Malformed(format!("bad range start {lo:?}")))?;
            let (prefix2, end) = split_index(hi.trim())
                .ok_or_else(|| Error::Malformed(format!("bad range end {hi:?}")))?;
            if prefix != prefix2 || start > end {
                return Err(Error::Malformed(format!("bad variable range {spec:?}")));
            }
            return Self::new(
                (start..=end).map(|i| format!("{prefix}{i}")).collect(),
                characteristic,
            );
        }
        Self::new(
            spec.split(',').map(|s| s.trim().to_string()).collect(),
            characteristic,
        )
    }

    pub fn with_characteristic(&self, characteristic: u64) -> Result<Self> {
        Self::new(self.names.clone(), characteristic)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }
}

fn split_index(s: &str) -> Option<(&str, usize)> {
    let pos = s.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = s.split_at(pos);
    if prefix.is_empty() {
        return None;
    }
    Some((prefix, digits.parse().ok()?))
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Deserialize)]
struct RawRing {
    names: Vec<String>,
    characteristic: u64,
}

impl TryFrom<RawRing> for RingContext {
    type Error = Error;

    fn try_from(raw: RawRing) -> Result<Self> {
        RingContext::new(raw.names, raw.characteristic)
    }
}

/// A set of variable indices, stored as a bitmask; serialized as the sorted
/// index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct VarSet(pub u64);

impl From<VarSet> for Vec<usize> {
    fn from(v: VarSet) -> Self {
        v.to_vec()
    }
}

impl TryFrom<Vec<usize>> for VarSet {
    type Error = Error;

    fn try_from(indices: Vec<usize>) -> Result<Self> {
        match indices.iter().find(|&&i| i >= MAX_VARS) {
            Some(i) => Err(Error::Malformed(format!("variable index {i} out of range"))),
            None => Ok(VarSet::from_indices(indices)),
        }
    }
}

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn full(n: usize) -> VarSet {
        if n >= 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> VarSet {
        VarSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> VarSet {
        VarSet(it.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, n: usize) -> VarSet {
        VarSet::full(n).difference(self)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Canonical order: lexicographic on the sorted index lists.
impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges_and_lists() {
        let r = RingContext::parse_spec("x1..x3", 0).unwrap();
        assert_eq!(r.names(), ["x1", "x2", "x3"]);
        let r = RingContext::parse_spec("x, y,z", 3).unwrap();
        assert_eq!(r.names(), ["x", "y", "z"]);
        assert_eq!(r.characteristic(), 3);
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(RingContext::new(vec![], 0).is_err());
        assert!(RingContext::new(vec!["x".into(), "x".into()], 0).is_err());
        assert!(RingContext::from_letters("xy").unwrap().with_characteristic(4).is_err());
        assert!(RingContext::parse_spec("x3..x1", 0).is_err());
    }

    #[test]
    fn varset_order_is_lexicographic_on_indices() {
        let a = VarSet::from_indices([0]);
        let b = VarSet::from_indices([0, 1]);
        let c = VarSet::from_indices([1]);
        assert!(a < b && b < c);
        assert_eq!(VarSet::full(3).complement(3), VarSet::EMPTY);
    }
}
