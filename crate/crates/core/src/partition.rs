//! Integer partitions and the centralizer-dimension formula built on them.
//!
//! Partitions are the combinatorial currency of the whole crate: Jordan block
//! sizes, eigenspace dimensions, and their transposes are all partitions.

use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A nonincreasing sequence of positive integers.
///
/// The canonical representation carries no trailing zeros. The empty
/// partition exists only as internal padding and is never produced by the
/// public operations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts that are already nonincreasing.
    /// The empty partition is not constructible from outside; it exists
    /// only as internal padding.
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition);
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self, Error> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPartition);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned (sum of the parts).
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Transpose (conjugate) partition: part `k` of the result counts the
    /// parts of `self` that are at least `k + 1`.
    pub fn transpose(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols)
            .map(|k| self.parts.iter().take_while(|&&p| p >= k).count())
            .collect();
        Partition { parts }
    }

    /// Componentwise sum, padding shorter part lists with zeros.
    pub fn add<'a, I>(summands: I) -> Partition
    where
        I: IntoIterator<Item = &'a Partition>,
    {
        let mut acc: Vec<usize> = Vec::new();
        let mut seen = 0usize;
        for p in summands {
            seen += 1;
            if p.parts.len() > acc.len() {
                acc.resize(p.parts.len(), 0);
            }
            for (slot, &part) in acc.iter_mut().zip(p.parts.iter()) {
                *slot += part;
            }
        }
        assert!(seen >= 1, "sum of partitions needs at least one summand");
        Partition { parts: acc }
    }

    /// Multiset union of the parts, sorted nonincreasing.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            if j >= other.parts.len() || (i < self.parts.len() && self.parts[i] >= other.parts[j]) {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Partition { parts }
    }

    /// Dimension of the centralizer of a nilpotent matrix with these Jordan
    /// block sizes: the sum of the squared transpose parts, which equals
    /// `sum_i (2i - 1) * part_i`. Both routes are computed and must agree.
    pub fn centralizer_dim(&self) -> usize {
        let by_transpose: usize = self.transpose().parts.iter().map(|&d| d * d).sum();
        let by_parts: usize = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &p)| (2 * i + 1) * p)
            .sum();
        assert_eq!(by_transpose, by_parts, "centralizer formulas disagree");
        by_transpose
    }

    /// All partitions of `n`, each exactly once, in lexicographically
    /// decreasing order: `(n)` first, `(1, ..., 1)` last.
    pub fn enumerate(n: usize) -> Vec<Partition> {
        assert!(n >= 1, "partitions are enumerated for n >= 1");
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        descend(n, n, &mut prefix, &mut out);
        out
    }
}

fn descend(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    for k in (1..=max_part.min(remaining)).rev() {
        prefix.push(k);
        descend(remaining - k, k, prefix, out);
        prefix.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}
