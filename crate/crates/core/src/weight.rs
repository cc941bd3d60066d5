use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }

    /// Exact division by `k`, if every coordinate is divisible.
    pub fn div_exact(&self, k: i64) -> Option<Weight> {
        if self.0.iter().all(|a| a.rem_euclid(k) == 0) {
            Some(Weight(self.0.iter().map(|a| a / k).collect()))
        } else {
            None
        }
    }

    pub fn divisible_by(&self, k: i64) -> bool {
        self.0.iter().all(|a| a.rem_euclid(k) == 0)
    }

    /// Coordinatewise residue in `[0, k)`.
    pub fn rem(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a.rem_euclid(k)).collect())
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Formal character: weight -> multiplicity, zero entries never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TChar(BTreeMap<Weight, u64>);

impl TChar {
    pub fn new() -> Self {
        TChar(BTreeMap::new())
    }

    pub fn add(&mut self, w: Weight, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.0.entry(w).or_insert(0) += mult;
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &u64)> {
        self.0.iter()
    }

    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> TChar {
        let mut out = TChar::new();
        for (w, m) in self.iter() {
            out.add(f(w), *m);
        }
        out
    }

    /// Entries where `self` exceeds `other`, with the excess.
    pub fn excess_over(&self, other: &TChar) -> TChar {
        let mut out = TChar::new();
        for (w, &m) in self.iter() {
            let o = other.get(w);
            if m > o {
                out.add(w.clone(), m - o);
            }
        }
        out
    }
}

impl FromIterator<(Weight, u64)> for TChar {
    fn from_iter<I: IntoIterator<Item = (Weight, u64)>>(iter: I) -> Self {
        let mut t = TChar::new();
        for (w, m) in iter {
            t.add(w, m);
        }
        t
    }
}

impl fmt::Display for TChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(w, m)| format!("{w}^{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
