use std::fmt;

use fixedbitset::FixedBitSet;

/// A set of nodes over a dense id range `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSubset {
    bits: FixedBitSet,
    len: usize,
}

impl NodeSubset {
    pub fn empty(universe: usize) -> Self {
        NodeSubset {
            bits: FixedBitSet::with_capacity(universe),
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        NodeSubset {
            bits,
            len: universe,
        }
    }

    /// Panics if a member is outside `0..universe`.
    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Self {
        let mut s = NodeSubset::empty(universe);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn from_mask(universe: usize, mask: u64) -> Self {
        NodeSubset::from_members(universe, (0..universe).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let added = !self.bits.put(v);
        if added {
            self.len += 1;
        }
        added
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let present = self.bits.contains(v);
        if present {
            self.bits.set(v, false);
            self.len -= 1;
        }
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        NodeSubset {
            len: self.universe() - self.len,
            bits,
        }
    }

    pub fn is_subset(&self, other: &NodeSubset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_strict_subset(&self, other: &NodeSubset) -> bool {
        self.len < other.len && self.is_subset(other)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for NodeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complement_and_subset() {
        let s = NodeSubset::from_members(5, [0, 3]);
        let c = s.complement();
        assert_eq!(c.to_vec(), vec![1, 2, 4]);
        assert_eq!(c.len(), 3);
        assert!(s.is_strict_subset(&NodeSubset::full(5)));
        assert!(!s.is_strict_subset(&s));
    }

    proptest! {
        #[test]
        fn cardinality_matches_popcount(ops in proptest::collection::vec((0usize..40, any::<bool>()), 0..80)) {
            let mut s = NodeSubset::empty(40);
            for (v, add) in ops {
                if add { s.insert(v); } else { s.remove(v); }
            }
            prop_assert_eq!(s.len(), s.iter().count());
            prop_assert_eq!(s.complement().len(), 40 - s.len());
        }
    }
}
