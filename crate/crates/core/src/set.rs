//! Fixed-width node sets.
//!
//! Graph vertices, context objects and context attributes share the same
//! dense index space, so one bitset type covers extents, intents and
//! cliques alike.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    bits: FixedBitSet,
}

impl NodeSet {
    /// Empty set over a universe of `width` elements.
    pub fn empty(width: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(width),
        }
    }

    pub fn full(width: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(width);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(width: usize, members: I) -> Self {
        let mut set = Self::empty(width);
        for m in members {
            set.insert(m);
        }
        set
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn intersect_with(&mut self, other: &NodeSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &NodeSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn intersection_len(&self, other: &NodeSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// Lowest member.
    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    /// True when `self` and `other` agree on every index below `bound`.
    pub fn agrees_below(&self, other: &NodeSet, bound: usize) -> bool {
        let mut diff = self.bits.clone();
        diff.symmetric_difference_with(&other.bits);
        diff.minimum().is_none_or(|m| m >= bound)
    }

    /// Lexicographic order on the sorted member lists.
    pub fn lex_cmp(&self, other: &NodeSet) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Canonical order used throughout: larger sets first, then
    /// lexicographic on sorted members.
    pub fn canonical_cmp(&self, other: &NodeSet) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.lex_cmp(other))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Sorts sets into canonical order in place.
pub fn sort_canonical(sets: &mut [NodeSet]) {
    sets.sort_by(|a, b| a.canonical_cmp(b));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut sets = vec![
            NodeSet::from_members(8, [4, 5]),
            NodeSet::from_members(8, [0, 1, 2]),
            NodeSet::from_members(8, [1, 2]),
            NodeSet::from_members(8, [0, 3, 4]),
        ];
        sort_canonical(&mut sets);
        let got: Vec<Vec<usize>> = sets.iter().map(NodeSet::to_vec).collect();
        assert_eq!(
            got,
            vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 2], vec![4, 5]]
        );
    }

    #[test]
    fn agrees_below_ignores_higher_bits() {
        let a = NodeSet::from_members(10, [1, 3, 7]);
        let b = NodeSet::from_members(10, [1, 3, 9]);
        assert!(a.agrees_below(&b, 7));
        assert!(!a.agrees_below(&b, 8));
    }

    #[test]
    fn full_set_has_width_members() {
        let s = NodeSet::full(70);
        assert_eq!(s.len(), 70);
        assert!(s.contains(69));
    }
}
