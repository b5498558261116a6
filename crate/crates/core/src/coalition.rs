//! Coalitions as bitmasks over player positions.

use std::fmt;

/// Bit `k` is set when the player at position `k` (0-based) belongs to the coalition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn singleton(k: usize) -> Self {
        Coalition(1 << k)
    }

    /// All positions `0..n`.
    pub fn full(n: usize) -> Self {
        if n == 64 {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> Self {
        Coalition(positions.into_iter().fold(0, |acc, k| acc | (1 << k)))
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn with(self, k: usize) -> Self {
        Coalition(self.0 | (1 << k))
    }

    pub fn without(self, k: usize) -> Self {
        Coalition(self.0 & !(1 << k))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Coalition(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement within positions `0..n`.
    pub fn complement(self, n: usize) -> Self {
        Coalition::full(n).difference(self)
    }

    /// Member positions in increasing order.
    pub fn members(self) -> Members {
        Members(self.0)
    }

    /// Every subset of this coalition, starting from the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: Some(0),
        }
    }

    /// Every coalition over `n` players in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Coalition> {
        (0..1u64 << n).map(Coalition)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, k) in self.members().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", k + 1)?;
        }
        write!(f, "}}")
    }
}

pub struct Members(u64);

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
}

pub struct Subsets {
    set: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let current = self.next?;
        self.next = if current == self.set {
            None
        } else {
            Some((current.wrapping_sub(self.set)) & self.set)
        };
        Some(Coalition(current))
    }
}
