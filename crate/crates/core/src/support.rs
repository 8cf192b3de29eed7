//! Index subsets of `{1..p}` stored as bit masks.
//!
//! Internally indices are 0-based (bit `k` is index `k + 1` in the usual
//! 1-based notation). Everything that leaves the process (display, JSON)
//! uses 1-based indices.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported dimension.
pub const MAX_INDEX: usize = 32;

/// A subset of `{0..p}` as a fixed-width bit mask.
///
/// The derived ordering compares raw masks, which orders sets of equal size
/// colexicographically (by largest differing element). This is the order in
/// which supports of equal size are enumerated and indexed.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet(u32);

impl SupportSet {
    pub const fn empty() -> Self {
        SupportSet(0)
    }

    pub const fn from_bits(bits: u32) -> Self {
        SupportSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The set `{0..p}`.
    pub fn full(p: usize) -> Self {
        assert!(p <= MAX_INDEX, "dimension {p} exceeds {MAX_INDEX}");
        if p == MAX_INDEX {
            SupportSet(u32::MAX)
        } else {
            SupportSet((1u32 << p) - 1)
        }
    }

    pub fn singleton(k: usize) -> Self {
        assert!(k < MAX_INDEX, "index {k} out of range");
        SupportSet(1 << k)
    }

    /// Builds a set from 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(SupportSet::empty(), |acc, k| acc.with(k))
    }

    /// Builds a set from 1-based indices, as written in formulas and files.
    pub fn from_one_based<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Self::from_indices(indices.into_iter().map(|k| {
            assert!(k >= 1, "1-based index must be positive");
            k - 1
        }))
    }

    #[must_use]
    pub fn with(self, k: usize) -> Self {
        SupportSet(self.0 | Self::singleton(k).0)
    }

    #[must_use]
    pub fn without(self, k: usize) -> Self {
        SupportSet(self.0 & !Self::singleton(k).0)
    }

    pub fn contains(self, k: usize) -> bool {
        k < MAX_INDEX && self.0 & (1 << k) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Non-strict containment `self ⊆ other`.
    pub fn is_subset(self, other: SupportSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[must_use]
    pub fn union(self, other: SupportSet) -> Self {
        SupportSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: SupportSet) -> Self {
        SupportSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: SupportSet) -> Self {
        SupportSet(self.0 & !other.0)
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Highest member plus one (0 for the empty set).
    pub fn span(self) -> usize {
        (u32::BITS - self.0.leading_zeros()) as usize
    }

    /// Members in ascending order, 0-based.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|k| k + 1).collect()
    }

    /// All `k`-element subsets of `self`, in increasing mask order.
    pub fn subsets_of_size(self, k: usize) -> SubsetsOfSize {
        let positions: Vec<usize> = self.iter().collect();
        let n = positions.len();
        let next = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some((1u64 << k) - 1)
        };
        SubsetsOfSize { positions, k, next }
    }
}

/// Iterator over the members of a [`SupportSet`].
#[derive(Clone, Debug)]
pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let k = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(k)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Iterator over fixed-size subsets, see [`SupportSet::subsets_of_size`].
///
/// Walks `k`-combinations of the member positions with Gosper's hack and
/// scatters each combination back onto the members. Scattering onto an
/// increasing sequence of bit positions preserves numeric order.
#[derive(Clone, Debug)]
pub struct SubsetsOfSize {
    positions: Vec<usize>,
    k: usize,
    next: Option<u64>,
}

impl Iterator for SubsetsOfSize {
    type Item = SupportSet;

    fn next(&mut self) -> Option<SupportSet> {
        let combo = self.next?;
        let n = self.positions.len();
        let mut out = SupportSet::empty();
        let mut rest = combo;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out = out.with(self.positions[i]);
            rest &= rest - 1;
        }
        self.next = if self.k == 0 {
            None
        } else {
            let lowest = combo & combo.wrapping_neg();
            let ripple = combo + lowest;
            let following = (((ripple ^ combo) >> 2) / lowest) | ripple;
            (following < (1u64 << n)).then_some(following)
        };
        Some(out)
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, k) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", k + 1)?;
        }
        f.write_str("}")
    }
}

impl Serialize for SupportSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|k| k + 1))
    }
}

impl<'de> Deserialize<'de> for SupportSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        let mut out = SupportSet::empty();
        for k in indices {
            if k == 0 || k > MAX_INDEX {
                return Err(serde::de::Error::custom(format!(
                    "support index {k} outside 1..={MAX_INDEX}"
                )));
            }
            out = out.with(k - 1);
        }
        Ok(out)
    }
}
