use std::fmt;

/// A set of poset element indices, stored as a 128-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IdealSet(u128);

impl IdealSet {
    pub const CAPACITY: usize = 128;

    pub const fn empty() -> Self {
        IdealSet(0)
    }

    pub fn singleton(i: usize) -> Self {
        IdealSet(1u128 << i)
    }

    pub fn full(len: usize) -> Self {
        if len == 128 {
            IdealSet(u128::MAX)
        } else {
            IdealSet((1u128 << len) - 1)
        }
    }

    pub fn from_bits(bits: u128) -> Self {
        IdealSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn with(self, i: usize) -> Self {
        IdealSet(self.0 | 1u128 << i)
    }

    pub fn without(self, i: usize) -> Self {
        IdealSet(self.0 & !(1u128 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        IdealSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        IdealSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        IdealSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for IdealSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = IdealSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for IdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_operations() {
        let a: IdealSet = [0, 2, 5].into_iter().collect();
        let b: IdealSet = [2, 3].into_iter().collect();
        assert_eq!(a.union(b).iter().collect::<Vec<_>>(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(b).iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(a.difference(b).len(), 2);
        assert!(IdealSet::singleton(2).is_subset(a));
        assert!(!b.is_subset(a));
        assert_eq!(IdealSet::full(128).len(), 128);
        assert!(IdealSet::full(128).contains(127));
    }
}
